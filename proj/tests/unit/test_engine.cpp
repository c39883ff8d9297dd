#include <doctest.h>

#include "myopic/errors.hpp"
#include "myopic/engine.hpp"
#include "myopic/scenarios.hpp"

using namespace myopic;

namespace {
const MoveRule kMM = MoveRule::move_to_middle();
const TiePolicy kOrder = TiePolicy::order_based();
const OrthogonalChoice kPos = OrthogonalChoice::fixed_positive();

Configuration line(std::initializer_list<double> xs) {
  std::vector<Point> p;
  for (double x : xs) p.push_back({x});
  return Configuration::from_positions(p);
}
}  // namespace

TEST_CASE("step examples") {
  const auto gathered = line({4, 4, 4});  // [TRIVIAL]
  const auto g1 = step(gathered, kMM, kOrder, kPos);
  CHECK(g1.time() == 1);
  CHECK(g1.positions() == gathered.positions());

  const auto two = step(line({0, 1}), kMM, kOrder, kPos);  // [PAPER]
  CHECK(two.positions() == std::vector<Point>{{0.5}, {0.5}});

  // [DERIVED] hand simulation: 0 -> 0.5; 1 pairs with 2 -> 1.5; 2 pairs with 1 -> 1.5.
  const auto three = step(line({0, 1, 2}), kMM, kOrder, kPos);
  CHECK(three.positions() == std::vector<Point>{{0.5}, {1.5}, {1.5}});
  CHECK(occupancy(three).count() == 2);
}

TEST_CASE("run examples") {
  RunSettings s;
  for (std::size_t d = 1; d <= 4; ++d) {  // [PAPER] n = 2 gathers in one step
    std::vector<double> a(d, 0.25), b(d, -1.5);
    const auto t = run(Configuration::from_positions({Point(a), Point(b)}), kMM, kOrder, kPos, s);
    CHECK(t.stop == StopReason::gathered);
    CHECK(t.step_count() == 1);
  }

  const auto chain = make_chain(5, 1.0);  // [PAPER] gathered at step 4
  const auto t5 = run(chain.configuration, kMM, chain.tie, chain.ortho, s);
  CHECK(t5.stop == StopReason::gathered);
  CHECK(t5.step_count() == 4);

  RunSettings budget;
  budget.max_steps = 50;  // [PAPER] never gathered, 50 steps
  const auto tri = make_equilateral(1.0, 2, TriangleAnchor::barycenter);
  const auto tt = run(tri.configuration, kMM, tri.tie, tri.ortho, budget);
  CHECK(tt.stop == StopReason::budget);
  CHECK(tt.step_count() == 50);
  for (const auto& c : tt.configurations()) CHECK(occupancy(c).count() == 3);
}

TEST_CASE("run validates settings") {
  RunSettings s;
  s.max_steps = 0;
  CHECK_THROWS_AS(run(line({0, 1}), kMM, kOrder, kPos, s), UsageError);
  s.max_steps = 5;
  s.eps_tie = -1;
  CHECK_THROWS_AS(run(line({0, 1}), kMM, kOrder, kPos, s), UsageError);
}

TEST_CASE("crash injection examples") {
  auto cloud = make_random_cloud(6, 2, 5).configuration;
  const std::size_t one[] = {0};
  CHECK(inject_crash(cloud, one).f == 1);  // [TRIVIAL]

  const auto colo = Configuration::from_positions({{0, 0}, {0, 0}, {3, 1}, {2, 2}});
  const std::size_t both[] = {0, 1};
  CHECK(inject_crash(colo, both).f == 1);  // [PAPER] crashed positions form a set

  const auto apart = Configuration::from_positions({{0, 0}, {1, 0}, {3, 1}});
  const auto inj = inject_crash(apart, both);
  CHECK(inj.f == 2);  // [PAPER]
  CHECK_FALSE(convergence_possible(inj.configuration));

  const std::size_t bad[] = {9};
  CHECK_THROWS_AS(inject_crash(apart, bad), UsageError);
}

TEST_CASE("crashed processes never move and crash times are honored") {
  const auto c = line({0, 1, 2, 7});
  CrashPlan plan;
  const std::size_t id[] = {3};
  plan.schedule(c, id, 2);
  RunSettings s;
  s.max_steps = 30;
  const auto t = run(c, kMM, kOrder, kPos, s, plan);
  const auto configs = t.configurations();
  CHECK_FALSE(configs[1].crashed(3));
  CHECK(configs[2].crashed(3));
  for (std::size_t k = 2; k < configs.size(); ++k) CHECK(configs[k].position(3) == configs[2].position(3));
  CHECK_THROWS_AS(plan.schedule(c, std::vector<std::size_t>{4}, 0), UsageError);
}

TEST_CASE("schedule_at crashes everything at a position") {
  const auto c = Configuration::from_positions({{0, 0}, {0, 0}, {1, 1}});
  CrashPlan plan;
  plan.schedule_at(c, {0, 0}, 0);
  CHECK(plan.events().size() == 2);
  CHECK_THROWS_AS(plan.schedule_at(c, {5, 5}, 0), UsageError);
}

TEST_CASE("two crashed positions stop at a fixpoint or the budget") {
  const auto c = Configuration::from_positions({{0}, {1}});
  const std::size_t ids[] = {0, 1};
  const auto inj = inject_crash(c, ids);
  RunSettings s;
  s.max_steps = 10;
  const auto t = run(inj.configuration, kMM, kOrder, kPos, s);
  CHECK(t.stop == StopReason::fixpoint);
  CHECK(t.step_count() == 0);
}

TEST_CASE("step records hold the time-t snapshot") {
  const auto c = line({0, 1, 2});
  const auto rec = evaluate_step(c, kMM, kOrder, kPos);
  CHECK(rec.configuration == c);
  CHECK(rec.neighbor[0] == std::optional<std::size_t>(1));
  CHECK(rec.neighbor[1] == std::optional<std::size_t>(2));
  CHECK(rec.neighbor[2] == std::optional<std::size_t>(1));
  CHECK(rec.target[0] == Point{0.5});
}

TEST_CASE("stop predicate") {
  RunSettings s;
  s.stop_when = [](const Configuration& c) { return c.time() == 2; };
  const auto t = run(make_chain(10, 1.0).configuration, kMM, kOrder, kPos, s);
  CHECK(t.stop == StopReason::predicate);
  CHECK(t.step_count() == 2);
}

TEST_CASE("runs are deterministic") {
  const auto c = make_grid_cloud(12, 2, 77, 3).configuration;
  RunSettings s;
  s.max_steps = 40;
  const auto policy = TiePolicy::seeded_random(5);
  const auto a = run(c, kMM, policy, kPos, s);
  const auto b = run(c, kMM, policy, kPos, s);
  REQUIRE(a.step_count() == b.step_count());
  for (std::size_t i = 0; i < a.step_count(); ++i) {
    CHECK(a.steps[i].target == b.steps[i].target);
    CHECK(a.steps[i].neighbor == b.steps[i].neighbor);
  }
}
