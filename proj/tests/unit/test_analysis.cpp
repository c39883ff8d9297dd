#include <doctest.h>

#include <cmath>

#include "../oracle_values.hpp"
#include "myopic/analysis.hpp"
#include "myopic/errors.hpp"
#include "myopic/scenarios.hpp"

using namespace myopic;

TEST_CASE("metrics examples") {
  const auto m = metrics(Configuration::from_positions({{0}, {1}}));  // [TRIVIAL]
  CHECK(m.omega == 2);
  CHECK(m.d_min == 1.0);
  CHECK(m.d_max == 1.0);
  CHECK(m.radius == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_FALSE(m.gathered);
  CHECK_FALSE(m.crash_distance);

  const auto tri = metrics(make_equilateral(1.0, 2).configuration);  // [DERIVED]
  CHECK(tri.d_min == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(tri.d_max == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(tri.radius == doctest::Approx(oracle::kUnitTriangleCircumradius).epsilon(1e-12));

  const auto g = metrics(Configuration::from_positions({{2, 2}, {2, 2}}));  // [TRIVIAL]
  CHECK(g.omega == 1);
  CHECK(g.radius == 0.0);
  CHECK(g.gathered);
}

TEST_CASE("metrics count distinct positions only") {
  const auto m = metrics(Configuration::from_positions({{0}, {0}, {0}, {4}}));
  CHECK(m.omega == 2);
  CHECK(m.radius == doctest::Approx(2.0));
}

TEST_CASE("crash distance is reported when f = 1") {
  const auto c = Configuration::from_positions({{0, 0}, {3, 4}, {1, 0}}).with_crashed(0);
  const auto m = metrics(c);
  REQUIRE(m.crash_distance);
  CHECK(*m.crash_distance == 5.0);
  CHECK_FALSE(metrics(c.with_crashed(1)).crash_distance);
}

TEST_CASE("alpha and k(n) against frozen values") {
  CHECK(alpha(1) == doctest::Approx(oracle::kAlpha1).epsilon(1e-15));  // [DERIVED]
  CHECK(alpha(2) == doctest::Approx(oracle::kAlpha2).epsilon(1e-15));
  CHECK(alpha(10) == doctest::Approx(oracle::kAlpha10).epsilon(1e-15));
  CHECK(alpha(1000) == doctest::Approx(oracle::kAlpha1000).epsilon(1e-15));
  CHECK_THROWS_AS(alpha(0.5), UsageError);
  CHECK(fault_factor(2) == doctest::Approx(oracle::kFault2).epsilon(1e-15));  // [DERIVED]
  CHECK(fault_factor(5) == doctest::Approx(oracle::kFault5).epsilon(1e-15));
  CHECK(fault_factor(10) == doctest::Approx(oracle::kFault10).epsilon(1e-15));
  CHECK_THROWS_AS(fault_factor(0), UsageError);
}

TEST_CASE("certificate report records the first violation") {
  CertificateReport r;
  CHECK(r.check(0, 1.0, 1.0, 1.0));
  CHECK(r.check(1, 1.0 + 5e-10, 1.0, 1.0));  // inside relative tolerance
  CHECK_FALSE(r.check(2, 1.1, 1.0, 1.0));
  CHECK_FALSE(r.check(3, 2.0, 1.0, 1.0));
  CHECK(r.violations == 2);
  REQUIRE(r.first_violation);
  CHECK(r.first_violation->step == 2);
  CHECK(r.first_violation->lhs == 1.1);
  CHECK(r.check(4, 5e-13, 0.0, 0.0));  // absolute floor
}

TEST_CASE("monotonicity and alpha checks on a synthetic series") {
  std::vector<MetricsRow> rows(3);
  rows[0] = {0, 3, 1.0, 2.0, 1.0, false, {}};
  rows[1] = {1, 3, 1.0, 2.0, 0.8, false, {}};
  rows[2] = {2, 3, 1.0, 2.5, 0.9, false, {}};
  CHECK(radius_monotonicity_check(rows).violations == 1);
  CHECK(diameter_monotonicity_check(rows).violations == 1);
  const auto a = alpha_contraction_check(rows, 1.0);
  CHECK(a.steps.size() == 2);
  CHECK(a.violations == 1);  // 0.9 > alpha(1) * 0.8
  rows[0].radius = 5.0;      // R > K d_min: step skipped
  CHECK(alpha_contraction_check(rows, 1.0).steps.size() == 1);
}

TEST_CASE("five-point midpoint examples") {
  // [DERIVED] A=B=C=(0,0), D=(100,0), E=(50,40).
  const std::array<Point, 5> s = {Point{0, 0}, Point{0, 0}, Point{0, 0}, Point{100, 0}, Point{50, 40}};
  const auto r = five_point_midpoint_check(s);
  CHECK(r.status == FivePointResult::Status::holds);
  CHECK(r.lhs == doctest::Approx(oracle::kFivePointDmaxMid).epsilon(1e-14));
  CHECK(r.rhs == doctest::Approx(0.99 * oracle::kFivePointDmax).epsilon(1e-14));

  const std::array<Point, 5> bad = {Point{0, 0}, Point{0, 0}, Point{0, 0}, Point{100, 0}, Point{100, 0}};
  CHECK(five_point_midpoint_check(bad).status == FivePointResult::Status::not_applicable);  // [TRIVIAL]
}

TEST_CASE("cgraph examples") {
  const auto two = Configuration::from_positions({{0}, {1}});
  const auto g = cgraph(two, TiePolicy::order_based());  // [TRIVIAL]
  REQUIRE(g.loops.size() == 1);
  CHECK(g.loops[0] == std::vector<std::size_t>{0, 1});
  CHECK(g.has_pair());

  // [TRIVIAL] chain toward a crashed process: all attracted, no loops.
  const auto chain = Configuration::from_positions({{0}, {1}, {3}, {7}}).with_crashed(0);
  const auto gc = cgraph(chain, TiePolicy::order_based());
  CHECK(gc.loops.empty());
  CHECK(gc.all_correct_attracted());
  CHECK(gc.role[0] == ProcessRole::crashed);

  const auto gathered = Configuration::from_positions({{1}, {1}});
  const auto gg = cgraph(gathered, TiePolicy::order_based());
  CHECK(gg.role[0] == ProcessRole::idle);
  CHECK(gg.loops.empty());
}

TEST_CASE("cgraph roles on an explicit successor map") {
  const auto c = Configuration::from_positions({{0}, {1}, {2}, {3}, {10}}).with_crashed(4);
  // 0 -> 1 -> 2 -> 0 is a 3-loop; 3 feeds it.
  const auto g = cgraph(c, {1, 2, 0, 2, std::nullopt});
  REQUIRE(g.loops.size() == 1);
  CHECK(g.loops[0] == std::vector<std::size_t>{0, 1, 2});
  CHECK_FALSE(g.all_loops_are_pairs());
  CHECK(g.role[3] == ProcessRole::feeds_loop);
  CHECK(g.role[0] == ProcessRole::in_loop);
  CHECK_THROWS_AS(cgraph(c, {1, 2, 0, 2, 0}), UsageError);
  CHECK_THROWS_AS(cgraph(c, {1, 2}), UsageError);
}

TEST_CASE("fault certificate on a small run") {
  auto c = Configuration::from_positions({{0, 0}, {1, 0}, {3, 1}, {-2, 2}, {0.5, 4}});
  const std::size_t id[] = {2};
  const auto inj = inject_crash(c, id);
  RunSettings s;
  s.max_steps = 400;
  const auto t = run(inj.configuration, MoveRule::move_to_middle(), TiePolicy::order_based(),
                     OrthogonalChoice::fixed_positive(), s);
  const auto cert = fault_contraction_check(t);
  CHECK(cert.applicable);
  REQUIRE(cert.attracted_from);
  CHECK(cert.contraction.passed());
  CHECK(cert.edge_bound.passed());
  CHECK(cert.crash_distance.back() < 1e-6 * cert.crash_distance.front());

  const auto none = run(c, MoveRule::move_to_middle(), TiePolicy::order_based(), OrthogonalChoice::fixed_positive(), s);
  CHECK_FALSE(fault_contraction_check(none).applicable);  // [TRIVIAL] f != 1
}
