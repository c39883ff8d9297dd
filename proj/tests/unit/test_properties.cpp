#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "myopic/analysis.hpp"
#include "myopic/engine.hpp"
#include "myopic/random.hpp"
#include "myopic/scenarios.hpp"
#include "myopic/seb_oracle.hpp"
#include "myopic/verify.hpp"

using namespace myopic;

// Randomized invariants. Every sample comes from a fixed counter stream, so
// failures reproduce exactly.

namespace {

Point random_point(CounterRng& rng, std::size_t d, double scale = 10.0) {
  std::vector<double> c(d);
  for (auto& x : c) x = rng.uniform(-scale, scale);
  return Point(c);
}

Configuration random_config(std::uint64_t key, std::size_t n, std::size_t d) {
  CounterRng rng(key);
  if (rng.below(3) == 0) return make_grid_cloud(n, d, key, 3).configuration;
  std::vector<Point> pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back(random_point(rng, d));
  return Configuration::from_positions(pts);
}

const MoveRule kMM = MoveRule::move_to_middle();
const OrthogonalChoice kPos = OrthogonalChoice::fixed_positive();

}  // namespace

TEST_CASE("distance is a metric and midpoints are equidistant") {
  CounterRng rng(stream_key("metric"));
  for (int i = 0; i < 2000; ++i) {
    const std::size_t d = 1 + rng.below(4);
    const Point a = random_point(rng, d), b = random_point(rng, d), c = random_point(rng, d);
    CHECK(distance(a, b) == distance(b, a));
    CHECK(distance(a, a) == 0.0);
    CHECK(distance(a, c) <= (distance(a, b) + distance(b, c)) * (1 + 1e-15));
    const Point m = midpoint(a, b);
    CHECK(m == midpoint(b, a));
    CHECK(std::abs(distance(a, m) - distance(b, m)) <= 1e-14 * distance(a, b) + 1e-300);
  }
}

TEST_CASE("position_less is a strict total order") {
  CounterRng rng(stream_key("order"));
  for (int i = 0; i < 2000; ++i) {
    const std::size_t d = 1 + rng.below(3);
    // Coarse coordinates so equal prefixes happen often.
    auto pick = [&] {
      std::vector<double> c(d);
      for (auto& x : c) x = static_cast<double>(rng.below(3));
      return Point(c);
    };
    const Point a = pick(), b = pick(), c = pick();
    CHECK_FALSE(position_less(a, a));
    CHECK_FALSE((position_less(a, b) && position_less(b, a)));
    CHECK((a == b || position_less(a, b) || position_less(b, a)));
    if (position_less(a, b) && position_less(b, c)) CHECK(position_less(a, c));
  }
}

TEST_CASE("incremental enclosing ball matches the brute-force oracle") {
  CounterRng rng(stream_key("seb"));
  for (int i = 0; i < 600; ++i) {
    const std::size_t d = 1 + rng.below(3);
    const std::size_t n = 1 + rng.below(8);
    std::vector<Point> pts;
    for (std::size_t k = 0; k < n; ++k) pts.push_back(random_point(rng, d));
    const Ball fast = smallest_enclosing_ball(pts, rng.next());
    const Ball slow = brute_force_enclosing_ball(pts);
    CHECK(fast.radius == doctest::Approx(slow.radius).epsilon(1e-9));
    for (const auto& p : pts) CHECK(distance(p, fast.center) <= fast.radius * (1 + 1e-9) + 1e-12);
  }
}

TEST_CASE("complement bases are orthonormal") {
  CounterRng rng(stream_key("basis"));
  for (int i = 0; i < 500; ++i) {
    const std::size_t d = 2 + rng.below(5);
    std::vector<double> c(d);
    for (auto& x : c) x = rng.normal();
    const Vector x = Vector(c).normalized();
    const auto basis = orthogonal_complement_basis(x);
    REQUIRE(basis.size() == d - 1);
    for (std::size_t a = 0; a < basis.size(); ++a) {
      CHECK(std::abs(dot(basis[a], x)) < 1e-12);
      CHECK(std::abs(basis[a].norm() - 1.0) < 1e-12);
      for (std::size_t b = a + 1; b < basis.size(); ++b) CHECK(std::abs(dot(basis[a], basis[b])) < 1e-12);
    }
    const Vector y = orthonormal_complement_sample(x, OrthogonalSelector::seeded(rng.next()));
    CHECK(std::abs(dot(y, x)) < 1e-12);
    CHECK(std::abs(y.norm() - 1.0) < 1e-12);
  }
}

TEST_CASE("occupancy does not depend on process order") {
  CounterRng rng(stream_key("perm"));
  for (int i = 0; i < 300; ++i) {
    const auto c = random_config(rng.next(), 2 + rng.below(9), 1 + rng.below(3));
    auto pts = c.positions();
    std::vector<std::size_t> perm(pts.size());
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t k = perm.size(); k > 1; --k) std::swap(perm[k - 1], perm[rng.below(k)]);
    std::vector<Point> shuffled;
    for (auto k : perm) shuffled.push_back(pts[k]);
    const auto a = occupancy(c);
    const auto b = occupancy(Configuration::from_positions(shuffled));
    CHECK(a.positions == b.positions);
    CHECK(a.multiplicity == b.multiplicity);
    for (std::size_t k = 0; k < perm.size(); ++k) CHECK(b.cluster_of[k] == a.cluster_of[perm[k]]);
  }
}

TEST_CASE("neighbor views hold exactly the closest tie band") {
  CounterRng rng(stream_key("view"));
  for (int i = 0; i < 300; ++i) {
    const auto c = random_config(rng.next(), 2 + rng.below(9), 1 + rng.below(3));
    const SwarmView sw(c);
    const auto& occ = sw.occupancy();
    for (std::size_t p = 0; p < c.size(); ++p) {
      const auto& v = sw.view(p);
      if (occ.count() == 1) {
        CHECK(v.empty());
        continue;
      }
      REQUIRE_FALSE(v.empty());
      const auto self = occ.cluster_of[p];
      double best = INFINITY;
      for (std::size_t k = 0; k < occ.count(); ++k)
        if (k != self) best = std::min(best, distance(occ.positions[self], occ.positions[k]));
      CHECK(v.closest_distance == doctest::Approx(best).epsilon(1e-12));
      for (const auto& cand : v.candidates) {
        CHECK(cand.cluster != self);
        CHECK(occ.cluster_of[cand.process] == cand.cluster);
        CHECK(distance(occ.positions[self], occ.positions[cand.cluster]) <= best * (1 + 2e-9));
      }
      for (std::size_t q = 0; q < c.size(); ++q) {
        const auto k = occ.cluster_of[q];
        if (k == self) continue;
        const bool listed = std::any_of(v.candidates.begin(), v.candidates.end(),
                                        [&](const Candidate& cd) { return cd.process == q; });
        if (distance(occ.positions[self], occ.positions[k]) < best * (1 + 0.5e-9)) CHECK(listed);
      }
    }
  }
}

TEST_CASE("move-to-middle invariants") {
  CounterRng rng(stream_key("mm"));
  for (int i = 0; i < 300; ++i) {
    const std::size_t d = 1 + rng.below(3);
    const auto c = random_config(rng.next(), 2 + rng.below(9), d);
    const auto rec = evaluate_step(c, kMM, TiePolicy::order_based(), kPos);
    const auto next = step(c, kMM, TiePolicy::order_based(), kPos);
    const auto occ = occupancy(c);
    for (std::size_t p = 0; p < c.size(); ++p) {
      if (occ.count() == 1) {
        CHECK_FALSE(rec.neighbor[p]);
        continue;
      }
      REQUIRE(rec.neighbor[p]);
      const auto q = *rec.neighbor[p];
      CHECK(next.position(p) == midpoint(occ.positions[occ.cluster_of[p]], occ.positions[occ.cluster_of[q]]));
    }
    // Co-located processes stay together.
    for (std::size_t p = 0; p < c.size(); ++p)
      for (std::size_t q = p + 1; q < c.size(); ++q)
        if (c.position(p) == c.position(q)) CHECK(next.position(p) == next.position(q));

    const auto before = metrics(c), after = metrics(next);
    CHECK(after.radius <= before.radius * (1 + 1e-9) + 1e-12);
    CHECK(after.d_max <= before.d_max * (1 + 1e-9) + 1e-12);
    CHECK(after.omega <= before.omega);
    if (d == 1 && before.omega >= 2) CHECK(after.d_max < before.d_max);
  }
}

TEST_CASE("C-graph loops match a direct chain walk") {
  CounterRng rng(stream_key("cgraph"));
  for (int i = 0; i < 500; ++i) {
    auto c = random_config(rng.next(), 2 + rng.below(6), 1 + rng.below(3));
    if (rng.below(2) == 0) c = c.with_crashed(rng.below(c.size()));
    const auto policy = rng.below(2) == 0 ? TiePolicy::order_based() : TiePolicy::seeded_random(rng.next());
    const auto g = cgraph(c, policy);
    const auto walk = loop_members_by_chain_walk(g.successor);
    std::vector<bool> listed(c.size(), false);
    for (const auto& loop : g.loops)
      for (auto p : loop) listed[p] = true;
    CHECK(listed == walk);
    // Roles: a loop member is in_loop unless its cycle touches a crashed position.
    for (std::size_t p = 0; p < c.size(); ++p)
      if (g.role[p] == ProcessRole::in_loop) CHECK(walk[p]);
    for (const auto& loop : g.loops) {
      CHECK(loop.size() >= 2);
      CHECK(loop.front() == *std::min_element(loop.begin(), loop.end()));
    }
    if (policy.kind == TiePolicy::Kind::order_based) CHECK(g.all_loops_are_pairs());
  }
}

TEST_CASE("one round shortens a chain by one spacing") {
  // Both ends move inward by D/2.
  for (std::size_t n = 3; n <= 12; ++n) {
    const auto s = make_chain(n, 1.0);
    const auto next = step(s.configuration, kMM, s.tie, s.ortho);
    const auto m0 = metrics(s.configuration), m1 = metrics(next);
    CHECK(m1.d_max == doctest::Approx(m0.d_max - 1.0));
  }
}
