#pragma once

// Swarm state and what each process can observe of it.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "myopic/geometry.hpp"

namespace myopic {

/// Default tie band, relative. Two distances a <= b are tied when
/// b <= a * (1 + eps); two positions coincide when they are within
/// eps * diameter of each other.
inline constexpr double kDefaultTieTolerance = 1e-9;

struct ProcessRecord {
  Point position;
  bool crashed = false;
};

/// The whole swarm at one time step. Process ids are indices into records()
/// and are never shown to movement rules.
class Configuration {
 public:
  /// Throws UsageError when empty, when dimensions differ or exceed
  /// kMaxDimension.
  Configuration(std::size_t time, std::vector<ProcessRecord> records);
  static Configuration from_positions(std::vector<Point> positions, std::size_t time = 0);

  std::size_t time() const { return time_; }
  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return records_.size(); }

  std::span<const ProcessRecord> records() const { return records_; }
  const Point& position(std::size_t p) const { return records_.at(p).position; }
  bool crashed(std::size_t p) const { return records_.at(p).crashed; }
  std::vector<Point> positions() const;

  /// Same processes at time()+1 with new positions. Crash flags carry over.
  Configuration advanced(std::vector<Point> next) const;
  Configuration with_crashed(std::size_t p, bool crashed = true) const;

  friend bool operator==(const Configuration& a, const Configuration& b);

 private:
  std::size_t time_;
  std::size_t dimension_;
  std::vector<ProcessRecord> records_;
};

/// Distinct occupied positions (Omega) after tie-band clustering.
struct Occupancy {
  /// Cluster representatives in position order. Each is the
  /// lexicographically smallest member of its cluster.
  std::vector<Point> positions;
  std::vector<std::size_t> multiplicity;
  /// Process id -> index into positions.
  std::vector<std::size_t> cluster_of;

  std::size_t count() const { return positions.size(); }
};

Occupancy occupancy(const Configuration& config, double eps_tie = kDefaultTieTolerance);

struct Candidate {
  std::size_t process;
  std::size_t cluster;
  friend bool operator==(const Candidate&, const Candidate&) = default;
};

/// What process p sees: D(p) and the tie set N(p).
struct NeighborView {
  std::size_t process = 0;
  double closest_distance = 0.0;
  /// Sorted by (cluster, process); cluster order is position order.
  std::vector<Candidate> candidates;

  bool empty() const { return candidates.empty(); }
  /// Distinct candidate clusters, in position order.
  std::vector<std::size_t> candidate_clusters() const;
};

/// Occupancy plus every process's view, computed once per configuration.
class SwarmView {
 public:
  SwarmView(const Configuration& config, double eps_tie = kDefaultTieTolerance);

  const Configuration& configuration() const { return config_; }
  const Occupancy& occupancy() const { return occ_; }
  const NeighborView& view(std::size_t p) const { return views_.at(p); }
  /// Rank of p's position in Omega (position order).
  std::size_t rank_of(std::size_t p) const { return occ_.cluster_of.at(p); }
  double tie_tolerance() const { return eps_tie_; }

 private:
  Configuration config_;
  double eps_tie_;
  Occupancy occ_;
  std::vector<NeighborView> views_;
};

/// Throws UsageError when p is not a process of config.
NeighborView neighbor_view(const Configuration& config, std::size_t p,
                           double eps_tie = kDefaultTieTolerance);

struct GatherWitness {
  bool gathered = false;
  Point center;
  double radius = 0.0;
};

/// (G, eps)-gathered test: the smallest enclosing ball of Omega has radius <= eps.
GatherWitness is_gathered(const Configuration& config, double eps,
                          double eps_tie = kDefaultTieTolerance);

/// Largest pairwise distance between processes.
double diameter(std::span<const Point> points);

}  // namespace myopic
