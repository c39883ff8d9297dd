#include "myopic/engine.hpp"

#include <algorithm>
#include <set>

#include "myopic/errors.hpp"

namespace myopic {

std::string to_string(StopReason reason) {
  switch (reason) {
    case StopReason::gathered: return "gathered";
    case StopReason::budget: return "budget";
    case StopReason::fixpoint: return "fixpoint";
    case StopReason::predicate: return "predicate";
  }
  return "?";
}

void CrashPlan::schedule(const Configuration& config, std::span<const std::size_t> ids, std::size_t at_time) {
  for (std::size_t id : ids) {
    if (id >= config.size()) throw UsageError("crash: unknown process id " + std::to_string(id));
  }
  for (std::size_t id : ids) events_.push_back({id, at_time});
}

void CrashPlan::schedule_at(const Configuration& config, const Point& position, std::size_t at_time,
                            double eps_tie) {
  require_same_dimension(config.position(0), position);
  const double scale = std::max(1.0, diameter(config.positions()));
  std::vector<std::size_t> ids;
  for (std::size_t p = 0; p < config.size(); ++p)
    if (distance(config.position(p), position) <= eps_tie * scale) ids.push_back(p);
  if (ids.empty()) throw UsageError("crash: no process at the requested position");
  schedule(config, ids, at_time);
}

Configuration CrashPlan::apply(const Configuration& config) const {
  std::vector<ProcessRecord> records(config.records().begin(), config.records().end());
  bool changed = false;
  for (const auto& e : events_) {
    if (e.at_time <= config.time() && !records.at(e.process).crashed) {
      records[e.process].crashed = true;
      changed = true;
    }
  }
  if (!changed) return config;
  return Configuration(config.time(), std::move(records));
}

std::size_t crashed_position_count(const Configuration& config, double eps_tie) {
  const auto occ = occupancy(config, eps_tie);
  std::set<std::size_t> clusters;
  for (std::size_t p = 0; p < config.size(); ++p)
    if (config.crashed(p)) clusters.insert(occ.cluster_of[p]);
  return clusters.size();
}

bool convergence_possible(const Configuration& config, double eps_tie) {
  return crashed_position_count(config, eps_tie) <= 1;
}

CrashInjection inject_crash(const Configuration& config, std::span<const std::size_t> ids, double eps_tie) {
  CrashPlan plan;
  plan.schedule(config, ids, config.time());
  Configuration crashed = plan.apply(config);
  const std::size_t f = crashed_position_count(crashed, eps_tie);
  return {std::move(crashed), f};
}

StepRecord evaluate_step(const Configuration& config, const MoveRule& rule, const TiePolicy& tie,
                         const OrthogonalChoice& ortho, double eps_tie) {
  const SwarmView swarm(config, eps_tie);
  StepRecord rec{config.time(), config, {}, {}, 0};
  rec.neighbor.resize(config.size());
  rec.target.reserve(config.size());
  // Every target depends on the time-t snapshot only.
  for (std::size_t p = 0; p < config.size(); ++p) {
    if (config.crashed(p) || swarm.view(p).empty()) {
      rec.target.push_back(config.position(p));
      continue;
    }
    const Decision choice = decide(swarm, p, rule, tie, ortho);
    rec.neighbor[p] = choice.neighbor;
    rec.fallbacks += choice.fallback ? 1 : 0;
    rec.target.push_back(next_position(config.position(p), config.position(choice.neighbor), rule, choice.ortho));
  }
  return rec;
}

Configuration step(const Configuration& config, const MoveRule& rule, const TiePolicy& tie,
                   const OrthogonalChoice& ortho, double eps_tie) {
  return config.advanced(evaluate_step(config, rule, tie, ortho, eps_tie).target);
}

std::vector<Configuration> Trace::configurations() const {
  std::vector<Configuration> out;
  out.reserve(steps.size() + 1);
  for (const auto& s : steps) out.push_back(s.configuration);
  out.push_back(final_state);
  return out;
}

namespace {

bool is_fixpoint(const StepRecord& rec) {
  const auto& config = rec.configuration;
  const double scale = diameter(config.positions());
  double moved = 0.0;
  for (std::size_t p = 0; p < config.size(); ++p) moved = std::max(moved, distance(config.position(p), rec.target[p]));
  return moved <= kFixpointTolerance * scale;
}

}  // namespace

Trace run(const Configuration& initial, const MoveRule& rule, const TiePolicy& tie,
          const OrthogonalChoice& ortho, const RunSettings& settings, const CrashPlan& crashes) {
  if (settings.max_steps < 1) throw UsageError("run: max_steps must be at least 1");
  if (settings.eps_tie < 0.0 || settings.eps_gather < 0.0) throw UsageError("run: tolerances must be nonnegative");

  Trace trace{{}, crashes.apply(initial), StopReason::budget};
  for (;;) {
    const Configuration& current = trace.final_state;
    if (settings.stop_on_gathered && occupancy(current, settings.eps_tie).count() == 1) {
      trace.stop = StopReason::gathered;
      break;
    }
    if (settings.stop_when && settings.stop_when(current)) {
      trace.stop = StopReason::predicate;
      break;
    }
    if (trace.steps.size() >= settings.max_steps) {
      trace.stop = StopReason::budget;
      break;
    }
    StepRecord rec = evaluate_step(current, rule, tie, ortho, settings.eps_tie);
    if (settings.stop_on_fixpoint && is_fixpoint(rec)) {
      trace.stop = StopReason::fixpoint;
      break;
    }
    Configuration next = crashes.apply(current.advanced(rec.target));
    trace.steps.push_back(std::move(rec));
    trace.final_state = std::move(next);
  }
  return trace;
}

}  // namespace myopic
