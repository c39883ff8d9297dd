#include "myopic/swarm.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

#include "myopic/errors.hpp"

namespace myopic {

Configuration::Configuration(std::size_t time, std::vector<ProcessRecord> records)
    : time_(time), dimension_(0), records_(std::move(records)) {
  if (records_.empty()) throw UsageError("a configuration needs at least one process");
  dimension_ = records_.front().position.dimension();
  if (dimension_ == 0 || dimension_ > kMaxDimension) {
    std::ostringstream msg;
    msg << "dimension must be in [1, " << kMaxDimension << "], got " << dimension_;
    throw UsageError(msg.str());
  }
  for (const auto& r : records_) require_same_dimension(records_.front().position, r.position);
}

Configuration Configuration::from_positions(std::vector<Point> positions, std::size_t time) {
  std::vector<ProcessRecord> records;
  records.reserve(positions.size());
  for (auto& p : positions) records.push_back({std::move(p), false});
  return Configuration(time, std::move(records));
}

std::vector<Point> Configuration::positions() const {
  std::vector<Point> out;
  out.reserve(records_.size());
  for (const auto& r : records_) out.push_back(r.position);
  return out;
}

Configuration Configuration::advanced(std::vector<Point> next) const {
  if (next.size() != records_.size()) throw UsageError("advanced: wrong number of positions");
  std::vector<ProcessRecord> records(records_);
  for (std::size_t i = 0; i < records.size(); ++i) records[i].position = std::move(next[i]);
  return Configuration(time_ + 1, std::move(records));
}

Configuration Configuration::with_crashed(std::size_t p, bool crashed) const {
  if (p >= records_.size()) throw UsageError("unknown process id " + std::to_string(p));
  std::vector<ProcessRecord> records(records_);
  records[p].crashed = crashed;
  return Configuration(time_, std::move(records));
}

bool operator==(const Configuration& a, const Configuration& b) {
  if (a.time_ != b.time_ || a.records_.size() != b.records_.size()) return false;
  for (std::size_t i = 0; i < a.records_.size(); ++i) {
    if (a.records_[i].crashed != b.records_[i].crashed ||
        !(a.records_[i].position == b.records_[i].position))
      return false;
  }
  return true;
}

double diameter(std::span<const Point> points) {
  double d = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) d = std::max(d, distance(points[i], points[j]));
  return d;
}

namespace {

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a), b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

Occupancy cluster(const Configuration& config, const std::vector<double>& dist, double eps_tie) {
  if (eps_tie < 0.0) throw UsageError("tie tolerance must be nonnegative");
  const std::size_t n = config.size();
  double diam = 0.0;
  for (double v : dist) diam = std::max(diam, v);
  const double merge_below = eps_tie * diam;

  DisjointSets sets(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (dist[i * n + j] <= merge_below) sets.unite(i, j);

  // Representative: lexicographically smallest member of each set.
  std::vector<std::size_t> rep_of_root(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t& rep = rep_of_root[sets.find(i)];
    if (rep == n || position_less(config.position(i), config.position(rep))) rep = i;
  }
  std::vector<std::size_t> reps;
  for (std::size_t r = 0; r < n; ++r)
    if (rep_of_root[r] != n) reps.push_back(rep_of_root[r]);
  std::sort(reps.begin(), reps.end(), [&](std::size_t a, std::size_t b) {
    return position_less(config.position(a), config.position(b));
  });

  Occupancy occ;
  occ.cluster_of.assign(n, 0);
  std::vector<std::size_t> index_of_root(n, 0);
  for (std::size_t k = 0; k < reps.size(); ++k) {
    occ.positions.push_back(config.position(reps[k]));
    index_of_root[sets.find(reps[k])] = k;
  }
  occ.multiplicity.assign(reps.size(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    occ.cluster_of[i] = index_of_root[sets.find(i)];
    ++occ.multiplicity[occ.cluster_of[i]];
  }
  return occ;
}

std::vector<double> pairwise_distances(const Configuration& config) {
  const std::size_t n = config.size();
  std::vector<double> dist(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      dist[i * n + j] = dist[j * n + i] = distance(config.position(i), config.position(j));
  return dist;
}

NeighborView view_of(const Configuration& config, const Occupancy& occ,
                     const std::vector<double>& dist, std::size_t p, double eps_tie) {
  const std::size_t n = config.size();
  NeighborView v;
  v.process = p;
  if (occ.count() < 2) return v;

  const std::size_t own = occ.cluster_of[p];
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t q = 0; q < n; ++q)
    if (occ.cluster_of[q] != own) best = std::min(best, dist[p * n + q]);
  v.closest_distance = best;

  const double band = best * (1.0 + eps_tie);
  for (std::size_t q = 0; q < n; ++q)
    if (occ.cluster_of[q] != own && dist[p * n + q] <= band) v.candidates.push_back({q, occ.cluster_of[q]});
  std::sort(v.candidates.begin(), v.candidates.end(), [](const Candidate& a, const Candidate& b) {
    return a.cluster != b.cluster ? a.cluster < b.cluster : a.process < b.process;
  });
  return v;
}

}  // namespace

Occupancy occupancy(const Configuration& config, double eps_tie) {
  return cluster(config, pairwise_distances(config), eps_tie);
}

std::vector<std::size_t> NeighborView::candidate_clusters() const {
  std::vector<std::size_t> out;
  for (const auto& c : candidates)
    if (out.empty() || out.back() != c.cluster) out.push_back(c.cluster);
  return out;
}

SwarmView::SwarmView(const Configuration& config, double eps_tie)
    : config_(config), eps_tie_(eps_tie) {
  const auto dist = pairwise_distances(config_);
  occ_ = cluster(config_, dist, eps_tie_);
  views_.reserve(config_.size());
  for (std::size_t p = 0; p < config_.size(); ++p) views_.push_back(view_of(config_, occ_, dist, p, eps_tie_));
}

NeighborView neighbor_view(const Configuration& config, std::size_t p, double eps_tie) {
  if (p >= config.size()) throw UsageError("unknown process id " + std::to_string(p));
  const auto dist = pairwise_distances(config);
  const auto occ = cluster(config, dist, eps_tie);
  return view_of(config, occ, dist, p, eps_tie);
}

GatherWitness is_gathered(const Configuration& config, double eps, double eps_tie) {
  if (eps < 0.0) throw UsageError("gathering tolerance must be nonnegative");
  const auto occ = occupancy(config, eps_tie);
  const Ball ball = smallest_enclosing_ball(occ.positions);
  return {ball.radius <= eps, ball.center, ball.radius};
}

}  // namespace myopic
