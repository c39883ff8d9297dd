#include <doctest.h>

#include <algorithm>

#include "../oracle_values.hpp"
#include "myopic/errors.hpp"
#include "myopic/swarm.hpp"

using namespace myopic;

namespace {
Configuration line(std::initializer_list<double> xs) {
  std::vector<Point> p;
  for (double x : xs) p.push_back({x});
  return Configuration::from_positions(p);
}
}  // namespace

TEST_CASE("configuration validation") {
  CHECK_THROWS_AS(Configuration(0, {}), UsageError);
  CHECK_THROWS_AS(Configuration::from_positions({{0}, {0, 1}}), UsageError);
  CHECK_THROWS_AS(Configuration::from_positions({Point(std::vector<double>(kMaxDimension + 1, 0.0))}), UsageError);
  const auto c = line({0, 1});
  CHECK(c.advanced({{2}, {3}}).time() == 1);
  CHECK_THROWS_AS(c.advanced({{2}}), UsageError);
  CHECK(c.with_crashed(1).crashed(1));
}

TEST_CASE("occupancy examples") {
  const auto occ = occupancy(line({0, 0, 5}));  // [TRIVIAL]
  REQUIRE(occ.count() == 2);
  CHECK(occ.multiplicity == std::vector<std::size_t>{2, 1});
  CHECK(occ.cluster_of == std::vector<std::size_t>{0, 0, 1});

  CHECK(occupancy(line({3, 3, 3, 3})).count() == 1);  // [TRIVIAL]
  CHECK(occupancy(line({0, 1e-15, 1}), 1e-9).count() == 2);  // [DERIVED] 1e-15 < 1e-9 * diameter 1
  CHECK(occupancy(line({0, 1e-15, 1}), 0.0).count() == 3);
}

TEST_CASE("occupancy representative is the smallest member") {
  const auto occ = occupancy(line({1e-12, 0, 4}));
  CHECK(occ.positions[0] == Point{0});
  CHECK(occ.multiplicity[0] == 2);
}

TEST_CASE("neighbor view examples") {
  const auto v = neighbor_view(line({0, 1, 3}), 0);  // [TRIVIAL]
  CHECK(v.closest_distance == 1.0);
  REQUIRE(v.candidates.size() == 1);
  CHECK(v.candidates[0].process == 1);

  // [PAPER] every vertex of an equilateral triangle sees both others at distance D.
  const auto tri = Configuration::from_positions({{0, 0}, {1, 0}, {0.5, oracle::kUnitTriangleHeight}});
  for (std::size_t p = 0; p < 3; ++p) {
    const auto w = neighbor_view(tri, p);
    CHECK(w.closest_distance == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(w.candidates.size() == 2);
  }

  const auto pair = line({2, 2});  // [TRIVIAL]
  CHECK(neighbor_view(pair, 0).empty());
  CHECK(neighbor_view(pair, 1).empty());
  CHECK_THROWS_AS(neighbor_view(pair, 2), UsageError);
}

TEST_CASE("co-located processes are invisible to each other") {
  const auto v = neighbor_view(line({0, 0, 2, 2, 5}), 0);
  CHECK(v.closest_distance == 2.0);
  REQUIRE(v.candidates.size() == 2);
  CHECK(v.candidate_clusters() == std::vector<std::size_t>{1});
}

TEST_CASE("is_gathered examples") {
  CHECK(is_gathered(line({1, 1, 1}), 0.0).gathered);  // [TRIVIAL]
  CHECK_FALSE(is_gathered(line({0, 1}), 0.4).gathered);  // [TRIVIAL]
  const auto w = is_gathered(line({0, 1}), 0.5);  // [TRIVIAL]
  CHECK(w.gathered);
  CHECK(w.center[0] == doctest::Approx(0.5));
}

TEST_CASE("swarm view ranks follow position order") {
  const auto c = line({5, 1, 3});
  const SwarmView s(c);
  CHECK(s.rank_of(0) == 2);
  CHECK(s.rank_of(1) == 0);
  CHECK(s.rank_of(2) == 1);
}
