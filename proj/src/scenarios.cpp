#include "myopic/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "myopic/errors.hpp"
#include "myopic/random.hpp"

namespace myopic {

namespace {

Point embed(std::size_t d, double x, double y = 0.0) {
  std::vector<double> c(d, 0.0);
  c[0] = x;
  if (d > 1) c[1] = y;
  return Point(std::move(c));
}

Scenario plain(std::string kind, std::vector<Point> positions) {
  const std::size_t n = positions.size();
  return Scenario{std::move(kind), Configuration::from_positions(std::move(positions)),
                  TiePolicy::order_based(), OrthogonalChoice::fixed_positive(), CrashPlan{},
                  std::vector<std::size_t>(n, 0)};
}

// Vertices of an equilateral triangle centered on (cx, 0).
std::vector<Point> centered_triangle(std::size_t d, double side, double cx) {
  const double h = side / std::sqrt(3.0);  // circumradius
  return {embed(d, cx - side / 2.0, -h / 2.0), embed(d, cx + side / 2.0, -h / 2.0), embed(d, cx, h)};
}

}  // namespace

Scenario make_equilateral(double side, std::size_t d, TriangleAnchor anchor) {
  if (d < 2) throw UsageError("equilateral triangle needs d >= 2");
  if (d > kMaxDimension) throw UsageError("dimension above limit");
  if (!(side > 0.0) || !std::isfinite(side)) throw UsageError("triangle side must be positive");
  std::vector<Point> vertices;
  if (anchor == TriangleAnchor::vertex) {
    vertices = {embed(d, 0.0), embed(d, side), embed(d, side / 2.0, side * std::sqrt(3.0) / 2.0)};
  } else {
    vertices = centered_triangle(d, side, 0.0);
  }
  Scenario s = plain("equilateral", std::move(vertices));
  s.tie = TiePolicy::cyclic();
  return s;
}

Scenario make_two_triangles(double bound, double separation_factor, std::size_t d) {
  if (!(bound > 0.0) || !std::isfinite(bound)) throw UsageError("two-triangles: bound must be positive");
  if (!(separation_factor >= 0.0) || !std::isfinite(separation_factor))
    throw UsageError("two-triangles: separation factor must be >= 0");
  if (d < 2 || d > kMaxDimension) throw UsageError("two-triangles needs 2 <= d <= 8");
  const double half = separation_factor * bound / 2.0;
  auto positions = centered_triangle(d, bound, -half);
  for (auto& p : centered_triangle(d, bound, half)) positions.push_back(std::move(p));
  Scenario s = plain("two-triangles", std::move(positions));
  s.tie = TiePolicy::cyclic();
  s.group = {0, 0, 0, 1, 1, 1};
  return s;
}

Scenario make_chain(std::size_t n, double spacing, std::size_t d) {
  if (n < 2) throw UsageError("chain needs n >= 2");
  if (!(spacing > 0.0) || !std::isfinite(spacing)) throw UsageError("chain spacing must be positive");
  if (d < 1 || d > kMaxDimension) throw UsageError("dimension out of range");
  std::vector<Point> positions;
  positions.reserve(n);
  for (std::size_t i = 0; i < n; ++i) positions.push_back(embed(d, static_cast<double>(i) * spacing));
  return plain("chain", std::move(positions));
}

Scenario make_random_cloud(std::size_t n, std::size_t d, std::uint64_t seed, double scale) {
  if (n < 1) throw UsageError("random cloud needs n >= 1");
  if (d < 1 || d > kMaxDimension) throw UsageError("dimension out of range");
  if (!(scale > 0.0) || !std::isfinite(scale)) throw UsageError("random cloud scale must be positive");
  std::vector<Point> positions;
  positions.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    CounterRng rng(derive_seed(seed, stream_key("scenario"), i));
    std::vector<double> c(d);
    for (auto& x : c) x = rng.uniform(0.0, scale);
    positions.emplace_back(std::move(c));
  }
  return plain("random-cloud", std::move(positions));
}

Scenario make_grid_cloud(std::size_t n, std::size_t d, std::uint64_t seed, std::size_t extent) {
  if (n < 1) throw UsageError("grid cloud needs n >= 1");
  if (d < 1 || d > kMaxDimension) throw UsageError("dimension out of range");
  if (extent < 1) throw UsageError("grid extent must be >= 1");
  std::vector<Point> positions;
  positions.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    CounterRng rng(derive_seed(seed, stream_key("grid"), i));
    std::vector<double> c(d);
    for (auto& x : c) x = static_cast<double>(rng.below(extent));
    positions.emplace_back(std::move(c));
  }
  return plain("grid-cloud", std::move(positions));
}

std::vector<Point> group_barycenters(const Configuration& config, const std::vector<std::size_t>& group) {
  if (group.size() != config.size()) throw UsageError("group labels do not match the configuration");
  const std::size_t groups = group.empty() ? 0 : *std::max_element(group.begin(), group.end()) + 1;
  std::vector<Vector> sum(groups, Vector::zero(config.dimension()));
  std::vector<std::size_t> count(groups, 0);
  for (std::size_t p = 0; p < config.size(); ++p) {
    sum[group[p]] = sum[group[p]] + (config.position(p) - Point::origin(config.dimension()));
    ++count[group[p]];
  }
  std::vector<Point> out;
  for (std::size_t g = 0; g < groups; ++g) {
    if (count[g] == 0) throw UsageError("empty group");
    out.push_back(Point::origin(config.dimension()) + (1.0 / static_cast<double>(count[g])) * sum[g]);
  }
  return out;
}

double min_intergroup_distance(const Configuration& config, const std::vector<std::size_t>& group) {
  if (group.size() != config.size()) throw UsageError("group labels do not match the configuration");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p < config.size(); ++p)
    for (std::size_t q = p + 1; q < config.size(); ++q)
      if (group[p] != group[q]) best = std::min(best, distance(config.position(p), config.position(q)));
  return best;
}

const std::vector<ScenarioKind>& scenario_catalog() {
  static const std::vector<ScenarioKind> catalog = {
      {"equilateral",
       {"equilateral-triangle", "triangle"},
       "three processes on an equilateral triangle, cyclic adversary",
       {{"side", "real > 0", "triangle side", "1"},
        {"d", "int >= 2", "dimension", "2"},
        {"anchor", "vertex|barycenter", "first vertex at the origin, or barycenter at the origin", "vertex"}}},
      {"two-triangles",
       {},
       "six processes on two equilateral triangles far apart, cyclic adversary",
       {{"bound", "real > 0", "triangle side (each vertex stays within this of its barycenter)", "1"},
        {"separation", "real >= 0", "barycenter distance in units of bound", "10"},
        {"d", "int >= 2", "dimension", "2"}}},
      {"chain",
       {"collinear-chain"},
       "n collinear processes with constant spacing, order-based ties",
       {{"n", "int >= 2", "process count", std::nullopt},
        {"D", "real > 0", "spacing", "1"},
        {"d", "int >= 1", "dimension", "1"}}},
      {"random-cloud",
       {"random"},
       "n i.i.d. uniform positions in [0, scale]^d",
       {{"n", "int >= 1", "process count", std::nullopt},
        {"d", "int >= 1", "dimension", "2"},
        {"seed", "uint64", "generator seed (defaults to --seed)", std::nullopt},
        {"scale", "real > 0", "cube side", "1"}}},
      {"grid-cloud",
       {"grid"},
       "n positions on the integer grid {0..extent-1}^d (many exact ties)",
       {{"n", "int >= 1", "process count", std::nullopt},
        {"d", "int >= 1", "dimension", "2"},
        {"seed", "uint64", "generator seed (defaults to --seed)", std::nullopt},
        {"extent", "int >= 1", "grid points per axis", "4"}}},
      {"custom",
       {},
       "explicit positions",
       {{"positions", "[[real]]", "one coordinate list per process", std::nullopt},
        {"crashed", "[bool]", "optional crash flags, same length as positions", std::nullopt}}},
  };
  return catalog;
}

std::string canonical_kind(const std::string& name) {
  for (const auto& k : scenario_catalog()) {
    if (k.name == name) return k.name;
    if (std::find(k.aliases.begin(), k.aliases.end(), name) != k.aliases.end()) return k.name;
  }
  throw UsageError("unknown scenario kind '" + name + "'");
}

}  // namespace myopic
