#pragma once

// Generators for the configuration families: adversary constructions, the
// worst-case chain, random clouds and fault setups.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "myopic/engine.hpp"
#include "myopic/policies.hpp"
#include "myopic/swarm.hpp"

namespace myopic {

/// Where the equilateral triangle sits. `vertex` puts the first vertex at
/// the origin; `barycenter` centers the triangle on the origin, which keeps
/// full relative precision as the triangle shrinks.
enum class TriangleAnchor { vertex, barycenter };

/// A configuration bundled with the adversary it was built for.
struct Scenario {
  std::string kind;
  Configuration configuration;
  TiePolicy tie;
  OrthogonalChoice ortho;
  CrashPlan crashes;
  /// Process id -> group (two-triangles uses groups 0 and 1; otherwise 0).
  std::vector<std::size_t> group;
};

/// Three processes at an equilateral triangle with side `side`, in the first
/// two coordinates, with the cyclic adversary. Throws UsageError for d < 2 or
/// side <= 0.
Scenario make_equilateral(double side, std::size_t d, TriangleAnchor anchor = TriangleAnchor::vertex);

/// Two equilateral triangles of side `bound`, barycenters
/// `separation_factor * bound` apart along the first axis and symmetric about
/// the origin; processes 0-2 form group 0, 3-5 group 1.
Scenario make_two_triangles(double bound, double separation_factor = 10.0, std::size_t d = 2);

/// n processes at (iD, 0, ..., 0), i = 0..n-1, with order-based ties.
Scenario make_chain(std::size_t n, double spacing, std::size_t d = 1);

/// n i.i.d. uniform positions in [0, scale]^d. Process i's coordinates come
/// from a stream keyed by (seed, i).
Scenario make_random_cloud(std::size_t n, std::size_t d, std::uint64_t seed, double scale = 1.0);

/// n positions drawn uniformly from the integer grid {0..extent-1}^d, so
/// exact ties and coincident processes are common.
Scenario make_grid_cloud(std::size_t n, std::size_t d, std::uint64_t seed, std::size_t extent);

/// Barycenter of each group's positions.
std::vector<Point> group_barycenters(const Configuration& config, const std::vector<std::size_t>& group);

/// Smallest distance between processes of different groups.
double min_intergroup_distance(const Configuration& config, const std::vector<std::size_t>& group);

struct ParameterSchema {
  std::string name;
  std::string type;
  std::string description;
  std::optional<std::string> default_value;
};

struct ScenarioKind {
  std::string name;
  std::vector<std::string> aliases;
  std::string summary;
  std::vector<ParameterSchema> parameters;
};

/// The catalog printed by `scenario list`.
const std::vector<ScenarioKind>& scenario_catalog();

/// Canonical kind name for a name or alias. Throws UsageError when unknown.
std::string canonical_kind(const std::string& name);

}  // namespace myopic
