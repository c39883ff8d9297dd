#pragma once

// Synchronous rounds: every process looks at the time-t snapshot, then all
// move at once.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "myopic/policies.hpp"
#include "myopic/swarm.hpp"

namespace myopic {

/// Largest displacement, relative to the configuration diameter, that still
/// counts as "not moving" for the fixpoint detector.
inline constexpr double kFixpointTolerance = 1e-15;

struct StepRecord {
  std::size_t time = 0;
  Configuration configuration;
  /// C(p), or nullopt for crashed processes and empty views.
  std::vector<std::optional<std::size_t>> neighbor;
  std::vector<Point> target;
  /// Processes for which the cyclic adversary fell back to order-based.
  std::size_t fallbacks = 0;
};

enum class StopReason { gathered, budget, fixpoint, predicate };

std::string to_string(StopReason reason);

struct RunSettings {
  std::size_t max_steps = 1000;
  double eps_tie = kDefaultTieTolerance;
  /// Threshold for (G, eps)-gathered reporting. The gathered stop itself
  /// fires only when Omega is a single position.
  double eps_gather = 1e-12;
  bool stop_on_gathered = true;
  bool stop_on_fixpoint = true;
  /// Optional extra stop condition, checked before each step.
  std::function<bool(const Configuration&)> stop_when;
};

struct CrashEvent {
  std::size_t process;
  std::size_t at_time;
};

/// Crashes to apply during a run. Validated against the initial configuration.
class CrashPlan {
 public:
  CrashPlan() = default;

  /// Throws UsageError for ids outside config.
  void schedule(const Configuration& config, std::span<const std::size_t> ids, std::size_t at_time);
  /// Crash every process within the tie band of `position` at `at_time`
  /// (positions are taken from config). Throws UsageError when none is there.
  void schedule_at(const Configuration& config, const Point& position, std::size_t at_time,
                   double eps_tie = kDefaultTieTolerance);

  const std::vector<CrashEvent>& events() const { return events_; }
  bool empty() const { return events_.empty(); }
  /// Marks every process whose crash time is <= config.time().
  Configuration apply(const Configuration& config) const;

 private:
  std::vector<CrashEvent> events_;
};

struct CrashInjection {
  Configuration configuration;
  /// Number of distinct positions occupied by crashed processes.
  std::size_t f;
};

/// Crash the given processes now.
CrashInjection inject_crash(const Configuration& config, std::span<const std::size_t> ids,
                            double eps_tie = kDefaultTieTolerance);

/// f = |S_c|, the number of distinct crashed positions.
std::size_t crashed_position_count(const Configuration& config, double eps_tie = kDefaultTieTolerance);

/// Convergence is achievable only while at most one position holds crashed
/// processes.
bool convergence_possible(const Configuration& config, double eps_tie = kDefaultTieTolerance);

/// Neighbor choices and targets for one round, without applying them.
StepRecord evaluate_step(const Configuration& config, const MoveRule& rule, const TiePolicy& tie,
                         const OrthogonalChoice& ortho, double eps_tie = kDefaultTieTolerance);

/// One synchronous round.
Configuration step(const Configuration& config, const MoveRule& rule, const TiePolicy& tie,
                   const OrthogonalChoice& ortho, double eps_tie = kDefaultTieTolerance);

struct Trace {
  std::vector<StepRecord> steps;
  Configuration final_state;
  StopReason stop = StopReason::budget;

  std::size_t step_count() const { return steps.size(); }
  /// Configurations at t = 0 .. step_count().
  std::vector<Configuration> configurations() const;
};

Trace run(const Configuration& initial, const MoveRule& rule, const TiePolicy& tie,
          const OrthogonalChoice& ortho, const RunSettings& settings, const CrashPlan& crashes = {});

}  // namespace myopic
