#include "myopic/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "myopic/errors.hpp"

namespace myopic {

MetricsRow metrics(const Configuration& config, double eps_tie) {
  const auto occ = occupancy(config, eps_tie);
  MetricsRow row;
  row.t = config.time();
  row.omega = occ.count();
  row.gathered = occ.count() == 1;
  if (occ.count() >= 2) {
    row.d_min = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < occ.count(); ++i) {
      for (std::size_t j = i + 1; j < occ.count(); ++j) {
        const double d = distance(occ.positions[i], occ.positions[j]);
        row.d_min = std::min(row.d_min, d);
        row.d_max = std::max(row.d_max, d);
      }
    }
    row.radius = smallest_enclosing_ball(occ.positions).radius;
  }

  std::optional<std::size_t> crashed_cluster;
  bool single = true;
  std::size_t anchor = 0;
  for (std::size_t p = 0; p < config.size(); ++p) {
    if (!config.crashed(p)) continue;
    if (crashed_cluster && *crashed_cluster != occ.cluster_of[p]) single = false;
    if (!crashed_cluster) anchor = p;
    crashed_cluster = occ.cluster_of[p];
  }
  if (crashed_cluster && single) {
    double l = 0.0;
    for (std::size_t p = 0; p < config.size(); ++p)
      l = std::max(l, distance(config.position(anchor), config.position(p)));
    row.crash_distance = l;
  }
  return row;
}

std::vector<MetricsRow> metrics(const Trace& trace, double eps_tie) {
  std::vector<MetricsRow> rows;
  rows.reserve(trace.step_count() + 1);
  for (const auto& s : trace.steps) rows.push_back(metrics(s.configuration, eps_tie));
  rows.push_back(metrics(trace.final_state, eps_tie));
  return rows;
}

double alpha(double k) {
  if (!(k >= 1.0)) throw UsageError("alpha(K) needs K >= 1");
  return std::sqrt(1.0 - 1.0 / (4.0 * k * k));
}

double fault_factor(std::size_t n) {
  if (n < 1) throw UsageError("k(n) needs n >= 1");
  const double two_n = 2.0 * static_cast<double>(n);
  return std::sqrt(1.0 - 1.0 / (two_n * two_n));
}

bool CertificateReport::check(std::size_t step, double lhs, double rhs, double scale) {
  const double slack = std::max(relative_tolerance * std::abs(scale), absolute_floor);
  const bool ok = lhs <= rhs + slack;
  steps.push_back(step);
  per_step.push_back(ok);
  if (!ok) {
    ++violations;
    if (!first_violation) first_violation = Violation{step, lhs, rhs};
  }
  return ok;
}

CertificateReport radius_monotonicity_check(std::span<const MetricsRow> rows) {
  CertificateReport r;
  r.name = "radius-monotonicity";
  r.inequality = "R(t+1) <= R(t)";
  for (std::size_t i = 0; i + 1 < rows.size(); ++i)
    r.check(rows[i].t, rows[i + 1].radius, rows[i].radius, rows[i].radius);
  return r;
}

CertificateReport diameter_monotonicity_check(std::span<const MetricsRow> rows) {
  CertificateReport r;
  r.name = "diameter-monotonicity";
  r.inequality = "d_max(t+1) <= d_max(t)";
  for (std::size_t i = 0; i + 1 < rows.size(); ++i)
    r.check(rows[i].t, rows[i + 1].d_max, rows[i].d_max, rows[i].d_max);
  return r;
}

CertificateReport alpha_contraction_check(std::span<const MetricsRow> rows, double k) {
  const double a = alpha(k);
  CertificateReport r;
  std::ostringstream ineq;
  ineq << "R(t+1) <= alpha(" << k << ") R(t) when R(t) <= " << k << " d_min(t)";
  r.name = "alpha-contraction";
  r.inequality = ineq.str();
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    const auto& now = rows[i];
    if (now.omega < 2 || now.radius > k * now.d_min) continue;
    r.check(now.t, rows[i + 1].radius, a * now.radius, now.radius);
  }
  if (r.steps.empty()) {
    r.applicable = false;
    r.note = "no step satisfied R <= K d_min";
  }
  return r;
}

FivePointResult five_point_midpoint_check(const std::array<Point, 5>& s) {
  const Point &a = s[0], &b = s[1], &c = s[2], &d = s[3], &e = s[4];
  FivePointResult out;
  const double x = distance(a, d) / 100.0;
  if (!(x > 0.0) || distance(a, b) > x || distance(a, c) > x || distance(a, e) > 100.0 * x ||
      distance(d, e) < 40.0 * x)
    return out;

  std::vector<Point> mids;
  double dmax = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      mids.push_back(midpoint(s[i], s[j]));
      dmax = std::max(dmax, distance(s[i], s[j]));
    }
  }
  double dmax_mid = 0.0;
  for (std::size_t i = 0; i < mids.size(); ++i)
    for (std::size_t j = i + 1; j < mids.size(); ++j) dmax_mid = std::max(dmax_mid, distance(mids[i], mids[j]));

  out.lhs = dmax_mid;
  out.rhs = 0.99 * dmax;
  const double slack = std::max(kCertificateRelativeTolerance * dmax, kCertificateAbsoluteFloor);
  out.status = out.lhs <= out.rhs + slack ? FivePointResult::Status::holds
                                          : FivePointResult::Status::violated;
  return out;
}

std::string to_string(ProcessRole role) {
  switch (role) {
    case ProcessRole::crashed: return "crashed";
    case ProcessRole::idle: return "idle";
    case ProcessRole::attracted: return "attracted";
    case ProcessRole::in_loop: return "in-loop";
    case ProcessRole::feeds_loop: return "feeds-loop";
  }
  return "?";
}

bool CGraph::has_pair() const {
  return std::any_of(loops.begin(), loops.end(), [](const auto& l) { return l.size() == 2; });
}

bool CGraph::all_loops_are_pairs() const {
  return std::all_of(loops.begin(), loops.end(), [](const auto& l) { return l.size() == 2; });
}

bool CGraph::all_correct_attracted() const {
  return std::all_of(role.begin(), role.end(),
                     [](ProcessRole r) { return r == ProcessRole::crashed || r == ProcessRole::attracted; });
}

CGraph cgraph(const Configuration& config, const std::vector<std::optional<std::size_t>>& successor,
              double eps_tie) {
  const std::size_t n = config.size();
  if (successor.size() != n) throw UsageError("cgraph: one successor entry per process is required");
  for (std::size_t p = 0; p < n; ++p) {
    if (successor[p] && *successor[p] >= n) throw UsageError("cgraph: successor out of range");
    if (successor[p] && config.crashed(p)) throw UsageError("cgraph: crashed processes have no successor");
  }

  CGraph g;
  g.successor = successor;
  g.role.assign(n, ProcessRole::idle);

  // Cycles of the functional graph: walk from every unvisited node, marking
  // the current path; meeting the path again closes a cycle.
  enum : unsigned char { unseen, on_path, done };
  std::vector<unsigned char> state(n, unseen);
  std::vector<bool> on_cycle(n, false);
  std::vector<std::size_t> path;
  for (std::size_t start = 0; start < n; ++start) {
    path.clear();
    std::optional<std::size_t> cur = start;
    while (cur && state[*cur] == unseen) {
      state[*cur] = on_path;
      path.push_back(*cur);
      cur = successor[*cur];
    }
    if (cur && state[*cur] == on_path) {
      const auto from = std::find(path.begin(), path.end(), *cur);
      std::vector<std::size_t> loop(from, path.end());
      for (std::size_t p : loop) on_cycle[p] = true;
      std::rotate(loop.begin(), std::min_element(loop.begin(), loop.end()), loop.end());
      g.loops.push_back(std::move(loop));
    }
    for (std::size_t p : path) state[p] = done;
  }
  std::sort(g.loops.begin(), g.loops.end());

  const auto occ = occupancy(config, eps_tie);
  std::vector<bool> crashed_cluster(occ.count(), false);
  for (std::size_t p = 0; p < n; ++p)
    if (config.crashed(p)) crashed_cluster[occ.cluster_of[p]] = true;

  for (std::size_t p = 0; p < n; ++p) {
    if (config.crashed(p)) {
      g.role[p] = ProcessRole::crashed;
      continue;
    }
    bool attracted = false;
    std::optional<std::size_t> cur = p;
    for (std::size_t hops = 0; cur && hops <= n; ++hops, cur = successor[*cur]) {
      if (crashed_cluster[occ.cluster_of[*cur]]) {
        attracted = true;
        break;
      }
    }
    if (attracted) g.role[p] = ProcessRole::attracted;
    else if (!successor[p]) g.role[p] = ProcessRole::idle;
    else if (on_cycle[p]) g.role[p] = ProcessRole::in_loop;
    else g.role[p] = ProcessRole::feeds_loop;
  }
  return g;
}

CGraph cgraph(const Configuration& config, const TiePolicy& tie, double eps_tie) {
  const SwarmView swarm(config, eps_tie);
  std::vector<std::optional<std::size_t>> successor(config.size());
  for (std::size_t p = 0; p < config.size(); ++p) {
    if (config.crashed(p) || swarm.view(p).empty()) continue;
    successor[p] = select_neighbor(swarm.view(p), tie, {config.time(), swarm.rank_of(p)});
  }
  return cgraph(config, successor, eps_tie);
}

FaultCertificate fault_contraction_check(const Trace& trace, double eps_tie) {
  FaultCertificate out;
  const auto configs = trace.configurations();
  const Configuration& first = configs.front();
  out.n = first.size();
  out.contraction.name = "fault-contraction";
  out.contraction.inequality = "L(t+1) <= k(n) L(t) for t >= t_A";
  out.edge_bound.name = "attracted-edge-bound";
  out.edge_bound.inequality = "L(p)/n <= d(M_p, M_C(p)) for attracted p";

  if (crashed_position_count(first, eps_tie) != 1) {
    out.note = "requires exactly one crashed position (f = 1)";
    out.contraction.applicable = out.edge_bound.applicable = false;
    return out;
  }
  out.applicable = true;
  out.factor = fault_factor(out.n);

  std::size_t anchor = 0;
  while (!first.crashed(anchor)) ++anchor;
  const Point crash = first.position(anchor);
  for (const auto& c : configs) {
    double l = 0.0;
    for (std::size_t p = 0; p < c.size(); ++p) l = std::max(l, distance(crash, c.position(p)));
    out.crash_distance.push_back(l);
  }

  const double n = static_cast<double>(out.n);
  std::optional<std::size_t> last_unattracted;
  for (const auto& s : trace.steps) {
    const auto g = cgraph(s.configuration, s.neighbor, eps_tie);
    if (!g.all_correct_attracted()) last_unattracted = s.time;
    for (std::size_t p = 0; p < s.configuration.size(); ++p) {
      if (g.role[p] != ProcessRole::attracted || !s.neighbor[p]) continue;
      const double lp = distance(crash, s.configuration.position(p));
      const double edge = distance(s.configuration.position(p), s.configuration.position(*s.neighbor[p]));
      out.edge_bound.check(s.time, lp / n, edge, lp / n);
    }
  }
  const std::size_t t0 = first.time();
  const std::size_t t_end = t0 + trace.step_count();
  const std::size_t t_a = last_unattracted ? *last_unattracted + 1 : t0;
  if (t_a <= t_end) out.attracted_from = t_a;
  if (!out.attracted_from) {
    out.note = "some correct process was never attracted";
    return out;
  }
  for (std::size_t t = t_a; t < t_end; ++t) {
    const double now = out.crash_distance[t - t0];
    out.contraction.check(t, out.crash_distance[t - t0 + 1], out.factor * now, now);
  }
  return out;
}

}  // namespace myopic
