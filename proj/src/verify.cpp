#include "myopic/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <thread>

#include "myopic/errors.hpp"
#include "myopic/random.hpp"
#include "myopic/seb_oracle.hpp"

namespace myopic {

namespace {

struct TrialOutcome {
  bool ok = true;
  bool skipped = false;
  std::size_t violations = 0;
  std::string detail;
  Json counterexample;
  Json stats;  // optional per-trial numbers merged by the suite
};

using TrialFn = std::function<TrialOutcome(std::size_t trial, std::uint64_t seed)>;

std::vector<TrialOutcome> fan_out(const std::string& suite, const SuiteOptions& opt, std::size_t trials,
                                  const TrialFn& fn) {
  std::vector<TrialOutcome> out(trials);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < trials; i = next++) {
      const std::uint64_t seed = derive_seed(opt.seed, stream_key(suite), i);
      try {
        out[i] = fn(i, seed);
      } catch (const std::exception& e) {
        out[i].ok = false;
        out[i].detail = std::string("exception: ") + e.what();
        out[i].counterexample = {{"trial", i}, {"seed", seed}};
      }
    }
  };
  const std::size_t jobs = std::max<std::size_t>(1, std::min(opt.jobs, trials));
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

SuiteResult collect(const std::string& suite, std::vector<TrialOutcome> outcomes) {
  SuiteResult r;
  r.suite = suite;
  r.trials = outcomes.size();
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    auto& o = outcomes[i];
    r.violations += o.violations;
    if (o.skipped) {
      ++r.skipped;
      continue;
    }
    if (!o.ok) {
      ++r.failures;
      if (!r.counterexample) {
        Json ce = o.counterexample.is_object() ? o.counterexample : Json::object();
        ce["trial"] = i;
        ce["detail"] = o.detail;
        r.counterexample = std::move(ce);
      }
    }
  }
  std::ostringstream v;
  v << (r.trials - r.failures - r.skipped) << "/" << (r.trials - r.skipped) << " trials passed";
  if (r.skipped) v << ", " << r.skipped << " not applicable";
  v << ", " << r.violations << " violations";
  r.verdict = v.str();
  return r;
}

std::size_t pick(CounterRng& rng, std::size_t lo, std::size_t hi) { return lo + rng.below(hi - lo + 1); }

// Random positions, or integer grid positions (exact ties) every third time.
Configuration random_configuration(CounterRng& rng, std::size_t n, std::size_t d, std::uint64_t seed, bool allow_grid) {
  if (allow_grid && rng.below(3) == 0) return make_grid_cloud(n, d, seed, pick(rng, 2, 5)).configuration;
  return make_random_cloud(n, d, seed, 1.0).configuration;
}

Json failure_dump(std::uint64_t seed, const Configuration& config) {
  return {{"seed", seed}, {"configuration", to_json(config)}};
}

TiePolicy tie_by_index(std::size_t k, std::uint64_t seed) {
  switch (k % 3) {
    case 0: return TiePolicy::order_based();
    case 1: return TiePolicy::seeded_random(derive_seed(seed, stream_key("tie")));
    default: return TiePolicy::lowest_id();
  }
}

SuiteResult monotonicity(const SuiteOptions& opt, std::size_t trials) {
  const auto mm = MoveRule::move_to_middle();
  return collect("monotonicity", fan_out("monotonicity", opt, trials, [&](std::size_t, std::uint64_t seed) {
    CounterRng rng(seed);
    const std::size_t n = pick(rng, 2, 12), d = pick(rng, 1, 3);
    const Configuration start = random_configuration(rng, n, d, seed, true);
    const TiePolicy tie = tie_by_index(rng.below(3), seed);
    RunSettings settings;
    settings.max_steps = 50;
    const Trace trace = run(start, mm, tie, OrthogonalChoice::fixed_positive(), settings);
    const auto rows = metrics(trace);
    const auto r = radius_monotonicity_check(rows);
    const auto dm = diameter_monotonicity_check(rows);
    TrialOutcome o;
    o.violations = r.violations + dm.violations;
    for (const auto& row : rows) {
      if (row.omega < 2) continue;
      const double slack = kCertificateRelativeTolerance * row.d_max;
      if (row.d_min > row.d_max + slack || row.d_max > 2.0 * row.radius + slack) ++o.violations;
    }
    if (o.violations) {
      o.ok = false;
      o.detail = "monotonicity violated under tie policy " + tie.name();
      o.counterexample = failure_dump(seed, start);
      o.counterexample["radius"] = to_json(r);
      o.counterexample["diameter"] = to_json(dm);
    }
    return o;
  }));
}

// Rejection-samples a configuration with R <= K d_min; shrinks n after
// repeated misses (n = 2 always qualifies).
std::optional<Configuration> sample_with_ratio(double k, std::size_t n, std::size_t d,
                                               std::uint64_t seed) {
  for (; n >= 2; --n) {
    for (std::size_t attempt = 0; attempt < 200; ++attempt) {
      auto config = make_random_cloud(n, d, derive_seed(seed, n, attempt), 1.0).configuration;
      const auto row = metrics(config);
      if (row.omega >= 2 && row.radius <= k * row.d_min) return config;
    }
  }
  return std::nullopt;
}

SuiteResult alpha_contraction(const SuiteOptions& opt, std::size_t trials) {
  const std::vector<double> ks = {1.0, 2.0, 10.0};
  const auto mm = MoveRule::move_to_middle();
  auto outcomes = fan_out("alpha-contraction", opt, trials * ks.size(), [&](std::size_t i, std::uint64_t seed) {
    const double k = ks[i % ks.size()];
    CounterRng rng(seed);
    const std::size_t n = pick(rng, 2, 5), d = pick(rng, 1, 3);
    TrialOutcome o;
    const auto config = sample_with_ratio(k, n, d, seed);
    if (!config) {
      o.skipped = true;
      return o;
    }
    const Configuration next = step(*config, mm, TiePolicy::order_based(), OrthogonalChoice::fixed_positive());
    const std::vector<MetricsRow> rows = {metrics(*config), metrics(next)};
    const auto report = alpha_contraction_check(rows, k);
    o.violations = report.violations;
    o.stats = {{"n", config->size()}};
    if (!report.passed()) {
      o.ok = false;
      o.detail = "R(t+1) > alpha(K) R(t)";
      o.counterexample = failure_dump(seed, *config);
      o.counterexample["K"] = k;
      o.counterexample["report"] = to_json(report);
    }
    return o;
  });
  auto r = collect("alpha-contraction", std::move(outcomes));
  r.stats["K"] = ks;
  r.stats["samples_per_K"] = trials;
  return r;
}

Point random_in_ball(CounterRng& rng, const Point& center, double radius) {
  const std::size_t d = center.dimension();
  std::vector<double> g(d);
  double norm = 0.0;
  do {
    norm = 0.0;
    for (auto& x : g) {
      x = rng.normal();
      norm += x * x;
    }
    norm = std::sqrt(norm);
  } while (norm == 0.0);
  const double r = radius * std::pow(rng.uniform(), 1.0 / static_cast<double>(d));
  std::vector<double> c(center.coords().begin(), center.coords().end());
  for (std::size_t i = 0; i < d; ++i) c[i] += r * g[i] / norm;
  return Point(std::move(c));
}

SuiteResult five_point_midpoint(const SuiteOptions& opt, std::size_t trials) {
  auto outcomes = fan_out("five-point", opt, trials, [&](std::size_t, std::uint64_t seed) {
    CounterRng rng(seed);
    const std::size_t d = pick(rng, 1, 3);
    const double x = rng.uniform(0.01, 10.0);
    const Point a = random_in_ball(rng, Point::origin(d), 10.0);
    TrialOutcome o;
    // D at distance 100x from A; B, C near A; E within 100x of A, away from D.
    for (std::size_t attempt = 0; attempt < 1000; ++attempt) {
      const Point dir = random_in_ball(rng, Point::origin(d), 1.0);
      const Vector u = dir - Point::origin(d);
      if (u.norm() < 1e-3) continue;
      const Point dd = a + (100.0 * x / u.norm()) * u;
      const std::array<Point, 5> s = {a, random_in_ball(rng, a, x), random_in_ball(rng, a, x), dd,
                                      random_in_ball(rng, a, 100.0 * x)};
      const auto res = five_point_midpoint_check(s);
      if (res.status == FivePointResult::Status::not_applicable) continue;
      o.stats = {{"ratio", res.lhs / (res.rhs / 0.99)}};
      if (res.status == FivePointResult::Status::violated) {
        o.ok = false;
        o.violations = 1;
        o.detail = "D_max(S') > 0.99 D_max(S)";
        Json pts = Json::array();
        for (const auto& p : s) pts.push_back(to_json(p));
        o.counterexample = {{"seed", seed}, {"points", pts}, {"lhs", res.lhs}, {"rhs", res.rhs}};
      }
      return o;
    }
    o.skipped = true;
    return o;
  });
  double worst = 0.0;
  for (const auto& o : outcomes)
    if (o.stats.contains("ratio")) worst = std::max(worst, o.stats["ratio"].get<double>());
  auto r = collect("five-point", std::move(outcomes));
  r.stats["largest_ratio"] = worst;
  return r;
}

SuiteResult order_gathering(const std::string& name, const SuiteOptions& opt, std::size_t trials, std::size_t n_lo,
                            std::size_t n_hi, bool allow_grid) {
  const auto mm = MoveRule::move_to_middle();
  auto outcomes = fan_out(name, opt, trials, [&](std::size_t, std::uint64_t seed) {
    CounterRng rng(seed);
    const std::size_t n = pick(rng, n_lo, n_hi), d = pick(rng, 1, 3);
    const Configuration start = random_configuration(rng, n, d, seed, allow_grid);
    RunSettings settings;
    settings.max_steps = n;  // one extra step would expose a late gathering
    const Trace trace = run(start, mm, TiePolicy::order_based(), OrthogonalChoice::fixed_positive(), settings);
    TrialOutcome o;
    o.stats = {{"steps", trace.step_count()}};
    if (trace.stop != StopReason::gathered || trace.step_count() > n - 1) {
      o.ok = false;
      o.violations = 1;
      o.detail = "not gathered within n-1 = " + std::to_string(n - 1) + " steps (stop: " + to_string(trace.stop) + ")";
      o.counterexample = failure_dump(seed, start);
    }
    return o;
  });
  std::size_t worst = 0;
  for (const auto& o : outcomes)
    if (o.stats.contains("steps")) worst = std::max(worst, o.stats["steps"].get<std::size_t>());
  auto r = collect(name, std::move(outcomes));
  r.stats["max_steps_used"] = worst;
  return r;
}

SuiteResult pair_structure(const SuiteOptions& opt, std::size_t trials) {
  auto outcomes = fan_out("pair-structure", opt, trials, [&](std::size_t, std::uint64_t seed) {
    CounterRng rng(seed);
    const std::size_t n = pick(rng, 2, 7), d = pick(rng, 1, 3);
    // Redraw gathered configurations so every trial checks a C-graph.
    std::optional<Configuration> drawn;
    for (std::uint64_t attempt = 0; !drawn || occupancy(*drawn).count() < 2; ++attempt)
      drawn = random_configuration(rng, n, d, derive_seed(seed, attempt), true);
    const Configuration config = *drawn;
    TrialOutcome o;
    const CGraph g = cgraph(config, TiePolicy::order_based());
    const auto walk = loop_members_by_chain_walk(g.successor);
    std::vector<bool> on_loop(n, false);
    for (const auto& l : g.loops)
      for (std::size_t p : l) on_loop[p] = true;
    bool pair_distinct = false;
    for (const auto& l : g.loops)
      if (l.size() == 2 && !(config.position(l[0]) == config.position(l[1]))) pair_distinct = true;
    std::string why;
    if (!pair_distinct) why = "no mutual pair at distinct positions";
    else if (!g.all_loops_are_pairs()) why = "a loop longer than 2";
    else if (walk != on_loop) why = "loop detection disagrees with chain walk";
    if (!why.empty()) {
      o.ok = false;
      o.violations = 1;
      o.detail = why;
      o.counterexample = failure_dump(seed, config);
    }
    return o;
  });
  return collect("pair-structure", std::move(outcomes));
}

double crash_distance(const Configuration& c, const Point& x) {
  double l = 0.0;
  for (std::size_t p = 0; p < c.size(); ++p) l = std::max(l, distance(x, c.position(p)));
  return l;
}

SuiteResult fault_f1(const SuiteOptions& opt, std::size_t trials) {
  const auto mm = MoveRule::move_to_middle();
  auto outcomes = fan_out("fault-f1", opt, trials, [&](std::size_t, std::uint64_t seed) {
    CounterRng rng(seed);
    const std::size_t n = pick(rng, 3, 10), d = pick(rng, 1, 3);
    const Configuration cloud = make_random_cloud(n, d, seed, 1.0).configuration;
    const std::size_t victim = rng.below(n);
    const auto injected = inject_crash(cloud, std::span<const std::size_t>(&victim, 1));
    const Point x = cloud.position(victim);
    const double l0 = crash_distance(cloud, x);
    RunSettings settings;
    settings.max_steps = 2000 * n;
    settings.stop_when = [&](const Configuration& c) { return crash_distance(c, x) < 1e-6 * l0; };
    const Trace trace = run(injected.configuration, mm, TiePolicy::order_based(), OrthogonalChoice::fixed_positive(),
                            settings);
    const auto cert = fault_contraction_check(trace);
    TrialOutcome o;
    o.violations = cert.contraction.violations + cert.edge_bound.violations;
    o.stats = {{"steps", trace.step_count()}, {"t_A", cert.attracted_from ? Json(*cert.attracted_from) : Json()}};
    std::string why;
    if (injected.f != 1) why = "f != 1 after injection";
    else if (!cert.attracted_from) why = "correct processes never all attracted";
    else if (!cert.contraction.passed()) why = "L(t+1) > k(n) L(t) after t_A";
    else if (!cert.edge_bound.passed()) why = "attracted edge shorter than L(p)/n";
    else if (trace.stop != StopReason::predicate) why = "L(t) did not fall below 1e-6 L(0) within 2000 n steps";
    for (std::size_t t = 0; t < trace.step_count() && why.empty(); ++t)
      if (!(trace.steps[t].configuration.position(victim) == x)) why = "crashed process moved";
    if (!why.empty()) {
      o.ok = false;
      o.detail = why;
      o.counterexample = failure_dump(seed, injected.configuration);
      o.counterexample["certificate"] = to_json(cert);
      o.counterexample["certificate"].erase("L");
    }
    return o;
  });
  std::size_t worst = 0, worst_ta = 0;
  for (const auto& o : outcomes) {
    if (o.stats.contains("steps")) worst = std::max(worst, o.stats["steps"].get<std::size_t>());
    if (o.stats.contains("t_A") && !o.stats["t_A"].is_null())
      worst_ta = std::max(worst_ta, o.stats["t_A"].get<std::size_t>());
  }
  auto r = collect("fault-f1", std::move(outcomes));
  r.stats["max_steps_to_1e-6"] = worst;
  r.stats["max_t_A"] = worst_ta;
  return r;
}

SuiteResult fault_f2(const SuiteOptions& opt, std::size_t trials) {
  const auto mm = MoveRule::move_to_middle();
  auto outcomes = fan_out("fault-f2", opt, trials, [&](std::size_t, std::uint64_t seed) {
    CounterRng rng(seed);
    const std::size_t n = pick(rng, 3, 10), d = pick(rng, 1, 3);
    auto positions = make_random_cloud(n, d, seed, 1.0).configuration.positions();
    positions[0] = Point::origin(d);
    std::vector<double> one(d, 0.0);
    one[0] = 1.0;
    positions[1] = Point(one);
    const Configuration cloud = Configuration::from_positions(positions);
    const std::size_t ids[] = {0, 1};
    const auto injected = inject_crash(cloud, ids);
    RunSettings settings;
    settings.max_steps = 2000;
    const Trace trace = run(injected.configuration, mm, TiePolicy::order_based(), OrthogonalChoice::fixed_positive(),
                            settings);
    TrialOutcome o;
    std::string why;
    if (injected.f != 2) why = "expected f = 2";
    if (convergence_possible(injected.configuration)) why = "convergence wrongly reported possible";
    for (const auto& c : trace.configurations()) {
      if (distance(c.position(0), c.position(1)) != 1.0) why = "inter-crash distance changed";
      if (occupancy(c).count() == 1) why = "gathered despite two crashed positions";
    }
    if (trace.stop != StopReason::fixpoint && trace.stop != StopReason::budget) why = "unexpected stop " + to_string(trace.stop);
    o.stats = {{"stop", to_string(trace.stop)}};
    if (!why.empty()) {
      o.ok = false;
      o.violations = 1;
      o.detail = why;
      o.counterexample = failure_dump(seed, injected.configuration);
    }
    return o;
  });
  std::size_t fixpoints = 0;
  for (const auto& o : outcomes)
    if (o.stats.contains("stop") && o.stats["stop"] == "fixpoint") ++fixpoints;
  auto r = collect("fault-f2", std::move(outcomes));
  r.stats["fixpoint_stops"] = fixpoints;
  r.stats["budget_stops"] = r.trials - fixpoints;
  if (r.passed()) r.verdict += "; convergence impossible: two crashed positions at constant distance";
  return r;
}

SuiteResult impossibility_n6(const SuiteOptions& opt, std::size_t trials) {
  const auto mm = MoveRule::move_to_middle();
  auto outcomes = fan_out("impossibility-n6", opt, trials, [&](std::size_t i, std::uint64_t seed) {
    CounterRng rng(seed);
    const double bound = i == 0 ? 1.0 : std::exp2(rng.uniform(-4.0, 4.0));
    const std::size_t d = i == 0 ? 2 : pick(rng, 2, 3);
    const Scenario s = make_two_triangles(bound, 10.0, d);
    RunSettings settings;
    settings.max_steps = 60;
    const Trace trace = run(s.configuration, mm, s.tie, s.ortho, settings);
    double min_gap = std::numeric_limits<double>::infinity(), min_bary = min_gap;
    for (const auto& c : trace.configurations()) {
      min_gap = std::min(min_gap, min_intergroup_distance(c, s.group));
      const auto g = group_barycenters(c, s.group);
      min_bary = std::min(min_bary, distance(g[0], g[1]));
    }
    TrialOutcome o;
    o.stats = {{"min_gap", min_gap / bound}, {"min_barycenter_distance", min_bary / bound}};
    if (trace.step_count() != 60 || min_gap < (8.0 - 1e-6) * bound || min_bary < 9.9 * bound) {
      o.ok = false;
      o.violations = 1;
      o.detail = "groups came closer than 8 D_bound or barycenters closer than 9.9 D_bound";
      o.counterexample = failure_dump(seed, s.configuration);
      o.counterexample["stats"] = o.stats;
    }
    return o;
  });
  double gap = std::numeric_limits<double>::infinity(), bary = gap;
  for (const auto& o : outcomes) {
    if (!o.stats.contains("min_gap")) continue;
    gap = std::min(gap, o.stats["min_gap"].get<double>());
    bary = std::min(bary, o.stats["min_barycenter_distance"].get<double>());
  }
  auto r = collect("impossibility-n6", std::move(outcomes));
  r.stats["min_gap_over_bound"] = gap;
  r.stats["min_barycenter_distance_over_bound"] = bary;
  return r;
}

SuiteResult seb_oracle(const SuiteOptions& opt, std::size_t trials) {
  auto outcomes = fan_out("seb-oracle", opt, trials, [&](std::size_t, std::uint64_t seed) {
    CounterRng rng(seed);
    const std::size_t n = pick(rng, 1, 8), d = pick(rng, 1, 3);
    std::vector<Point> pts;
    switch (rng.below(4)) {
      case 0: pts = make_grid_cloud(n, d, seed, 3).configuration.positions(); break;
      case 1: {  // cospherical
        for (std::size_t i = 0; i < n; ++i) {
          Point q = random_in_ball(rng, Point::origin(d), 1.0);
          const Vector v = q - Point::origin(d);
          pts.push_back(v.norm() > 0 ? Point::origin(d) + (1.0 / v.norm()) * v : q);
        }
        break;
      }
      default: pts = make_random_cloud(n, d, seed, 1.0).configuration.positions();
    }
    const Ball fast = smallest_enclosing_ball(pts, derive_seed(seed, stream_key("seb")));
    const Ball slow = brute_force_enclosing_ball(pts);
    TrialOutcome o;
    const double diff = std::abs(fast.radius - slow.radius);
    o.stats = {{"diff", diff}};
    if (diff > 1e-9 * std::max(1.0, slow.radius)) {
      o.ok = false;
      o.violations = 1;
      o.detail = "incremental radius differs from the oracle";
      Json p = Json::array();
      for (const auto& q : pts) p.push_back(to_json(q));
      o.counterexample = {{"seed", seed}, {"points", p}, {"incremental", fast.radius}, {"oracle", slow.radius}};
    }
    return o;
  });
  double worst = 0.0;
  for (const auto& o : outcomes)
    if (o.stats.contains("diff")) worst = std::max(worst, o.stats["diff"].get<double>());
  auto r = collect("seb-oracle", std::move(outcomes));
  r.stats["max_radius_difference"] = worst;
  return r;
}

SuiteResult chain_lower_bound(const SuiteOptions& opt, std::size_t trials) {
  const auto mm = MoveRule::move_to_middle();
  auto outcomes = fan_out("chain-lower-bound", opt, trials, [&](std::size_t i, std::uint64_t) {
    const std::size_t n = 2 + i % 63;
    const Scenario s = make_chain(n, 1.0);
    RunSettings settings;
    settings.max_steps = n;
    const Trace trace = run(s.configuration, mm, s.tie, s.ortho, settings);
    TrialOutcome o;
    std::string why;
    if (trace.stop != StopReason::gathered || trace.step_count() != n - 1) why = "gathered at the wrong step";
    const auto configs = trace.configurations();
    for (std::size_t k = 0; k < configs.size() && why.empty(); ++k) {
      const auto occ = occupancy(configs[k]);
      if (occ.count() != n - k) why = "|Omega(k)| != n - k at k = " + std::to_string(k);
      for (std::size_t j = 0; j < occ.count() && why.empty(); ++j)
        if (std::abs(occ.positions[j].coords()[0] - (static_cast<double>(j) + k / 2.0)) > 1e-12)
          why = "Omega(k) differs from {(i + k/2) D} at k = " + std::to_string(k);
    }
    if (!why.empty()) {
      o.ok = false;
      o.violations = 1;
      o.detail = why + " (n = " + std::to_string(n) + ")";
      o.counterexample = {{"n", n}};
    }
    return o;
  });
  return collect("chain-lower-bound", std::move(outcomes));
}

SuiteResult triangle_livelock(const SuiteOptions& opt, std::size_t trials) {
  const auto mm = MoveRule::move_to_middle();
  auto outcomes = fan_out("triangle-livelock", opt, trials, [&](std::size_t i, std::uint64_t seed) {
    CounterRng rng(seed);
    const double side = i == 0 ? 1.0 : std::exp2(rng.uniform(-3.0, 3.0));
    const std::size_t d = i == 0 ? 2 : pick(rng, 2, 4);
    const Scenario s = make_equilateral(side, d, TriangleAnchor::barycenter);
    RunSettings settings;
    settings.max_steps = 40;
    const Trace trace = run(s.configuration, mm, s.tie, s.ortho, settings);
    TrialOutcome o;
    std::string why;
    const auto configs = trace.configurations();
    if (configs.size() != 41) why = "run stopped early: " + to_string(trace.stop);
    for (std::size_t t = 0; t < configs.size() && why.empty(); ++t) {
      const auto occ = occupancy(configs[t]);
      if (occ.count() != 3) {
        why = "|Omega| != 3 at t = " + std::to_string(t);
        break;
      }
      const double expect = side * std::exp2(-static_cast<double>(t));
      for (std::size_t a = 0; a < 3; ++a)
        if (std::abs(distance(occ.positions[a], occ.positions[(a + 1) % 3]) - expect) > 1e-9 * expect)
          why = "side differs from 2^-t at t = " + std::to_string(t);
    }
    if (!why.empty()) {
      o.ok = false;
      o.violations = 1;
      o.detail = why;
      o.counterexample = failure_dump(seed, s.configuration);
    }
    return o;
  });
  return collect("triangle-livelock", std::move(outcomes));
}

}  // namespace

std::vector<bool> loop_members_by_chain_walk(const std::vector<std::optional<std::size_t>>& successor) {
  const std::size_t n = successor.size();
  std::vector<bool> out(n, false);
  for (std::size_t p = 0; p < n; ++p) {
    std::optional<std::size_t> cur = successor[p];
    for (std::size_t k = 0; k < n && cur; ++k) {
      if (*cur == p) {
        out[p] = true;
        break;
      }
      cur = successor[*cur];
    }
  }
  return out;
}

const std::vector<SuiteInfo>& suite_catalog() {
  static const std::vector<SuiteInfo> catalog = {
      {"monotonicity", 500, "R and d_max never increase along random MM traces (any tie policy)"},
      {"alpha-contraction", 10000, "R(t+1) <= alpha(K) R(t) after one MM step when R <= K d_min, K in {1, 2, 10}"},
      {"five-point", 10000, "five-point sets: the ten midpoints have diameter <= 0.99 of the original"},
      {"order-gathering", 200, "order-based MM gathers random clouds (n in 2..64) within n-1 steps"},
      {"pair-structure", 10000, "order-based C-graphs: a mutual pair exists and every loop is a pair"},
      {"fault-f1", 200, "one crashed process: attraction, L contraction by k(n), L -> 0"},
      {"fault-f2", 20, "two crashed positions: no gathering, inter-crash distance constant"},
      {"impossibility-n6", 20, "two far triangles under the cyclic adversary stay >= 8 D_bound apart"},
      {"seb-oracle", 3000, "incremental smallest enclosing ball matches the brute-force oracle"},
      {"chain-lower-bound", 63, "collinear chains n = 2..64 gather in exactly n-1 steps through Omega(k)"},
      {"small-n-convergence", 1000, "random clouds with n <= 5, d <= 3 gather within n-1 steps"},
      {"triangle-livelock", 20, "equilateral triangles under the cyclic adversary halve forever"},
  };
  return catalog;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& options) {
  const auto& catalog = suite_catalog();
  const auto it = std::find_if(catalog.begin(), catalog.end(), [&](const SuiteInfo& s) { return s.name == name; });
  if (it == catalog.end()) throw UsageError("unknown suite \"" + name + "\"");
  const std::size_t trials = options.trials ? options.trials : it->default_trials;
  if (name == "monotonicity") return monotonicity(options, trials);
  if (name == "alpha-contraction") return alpha_contraction(options, trials);
  if (name == "five-point") return five_point_midpoint(options, trials);
  if (name == "order-gathering") return order_gathering(name, options, trials, 2, 64, true);
  if (name == "pair-structure") return pair_structure(options, trials);
  if (name == "fault-f1") return fault_f1(options, trials);
  if (name == "fault-f2") return fault_f2(options, trials);
  if (name == "impossibility-n6") return impossibility_n6(options, trials);
  if (name == "seb-oracle") return seb_oracle(options, trials);
  if (name == "chain-lower-bound") return chain_lower_bound(options, trials);
  if (name == "small-n-convergence") return order_gathering(name, options, trials, 2, 5, false);
  return triangle_livelock(options, trials);
}

Json to_json(const SuiteResult& r) {
  Json out = {{"suite", r.suite},       {"passed", r.passed()},       {"trials", r.trials},
              {"failures", r.failures}, {"not_applicable", r.skipped}, {"violations", r.violations},
              {"verdict", r.verdict},   {"stats", r.stats}};
  out["counterexample"] = r.counterexample ? *r.counterexample : Json(nullptr);
  return out;
}

}  // namespace myopic
