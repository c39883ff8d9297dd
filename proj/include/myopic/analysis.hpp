#pragma once

// Metrics over configurations and traces, the contraction/monotonicity
// certificates, and the closest-neighbor graph (C-graph).

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "myopic/engine.hpp"
#include "myopic/policies.hpp"
#include "myopic/swarm.hpp"

namespace myopic {

/// Certificate tolerance: relative, with an absolute floor.
inline constexpr double kCertificateRelativeTolerance = 1e-9;
inline constexpr double kCertificateAbsoluteFloor = 1e-12;

struct MetricsRow {
  std::size_t t = 0;
  std::size_t omega = 0;
  double d_min = 0.0;
  double d_max = 0.0;
  double radius = 0.0;
  bool gathered = false;
  /// Largest distance to the crashed position; set only when f = 1.
  std::optional<double> crash_distance;
};

/// All quantities are computed over Omega, not the raw process list.
MetricsRow metrics(const Configuration& config, double eps_tie = kDefaultTieTolerance);
std::vector<MetricsRow> metrics(const Trace& trace, double eps_tie = kDefaultTieTolerance);

/// sqrt(1 - 1/(4K^2)). Throws UsageError for K < 1.
double alpha(double k);
/// sqrt(1 - 1/(2n)^2). Throws UsageError for n < 1.
double fault_factor(std::size_t n);

struct Violation {
  std::size_t step = 0;
  double lhs = 0.0;
  double rhs = 0.0;
};

/// Outcome of checking `lhs <= rhs (+ tolerance)` at a series of steps.
struct CertificateReport {
  std::string name;
  std::string inequality;
  double relative_tolerance = kCertificateRelativeTolerance;
  double absolute_floor = kCertificateAbsoluteFloor;
  bool applicable = true;
  std::string note;
  std::vector<std::size_t> steps;
  std::vector<bool> per_step;
  std::size_t violations = 0;
  std::optional<Violation> first_violation;

  bool passed() const { return violations == 0; }
  /// Checks lhs <= rhs + max(relative_tolerance * |scale|, absolute_floor).
  bool check(std::size_t step, double lhs, double rhs, double scale);
};

/// R(t+1) <= R(t) over a sequence of configurations.
CertificateReport radius_monotonicity_check(std::span<const MetricsRow> rows);
/// d_max(t+1) <= d_max(t).
CertificateReport diameter_monotonicity_check(std::span<const MetricsRow> rows);

/// R(t+1) <= alpha(K) R(t) at every step where R(t) <= K d_min(t) and
/// |Omega(t)| >= 2; other steps are skipped.
CertificateReport alpha_contraction_check(std::span<const MetricsRow> rows, double k);

struct FivePointResult {
  enum class Status { holds, violated, not_applicable };
  Status status = Status::not_applicable;
  double lhs = 0.0;  // D_max(S')
  double rhs = 0.0;  // 0.99 D_max(S)
};

/// Five labeled points A, B, C, D, E with x = d(A,D)/100 > 0, d(A,B) <= x,
/// d(A,C) <= x, d(A,E) <= 100x and d(D,E) >= 40x. S' is the set of midpoints
/// of the ten pairs. Checks D_max(S') <= 0.99 D_max(S).
FivePointResult five_point_midpoint_check(const std::array<Point, 5>& labeled);

enum class ProcessRole {
  crashed,
  idle,        // correct, sees nobody (gathered)
  attracted,   // C-chain reaches a crashed position
  in_loop,     // on a cycle of correct processes
  feeds_loop   // C-chain ends in a cycle
};

std::string to_string(ProcessRole role);

struct CGraph {
  std::vector<std::optional<std::size_t>> successor;
  std::vector<ProcessRole> role;
  /// Each cycle, rotated to start at its smallest id; sorted.
  std::vector<std::vector<std::size_t>> loops;

  bool has_pair() const;
  bool all_loops_are_pairs() const;
  bool all_correct_attracted() const;
};

/// C-graph for given neighbor choices (as recorded in a StepRecord).
/// Attraction is positional: a chain that reaches any process sharing a
/// crashed process's position counts as attracted.
CGraph cgraph(const Configuration& config, const std::vector<std::optional<std::size_t>>& successor,
              double eps_tie = kDefaultTieTolerance);

/// C-graph under a tie policy (not cyclic).
CGraph cgraph(const Configuration& config, const TiePolicy& tie, double eps_tie = kDefaultTieTolerance);

struct FaultCertificate {
  bool applicable = false;
  std::string note;
  std::size_t n = 0;
  double factor = 0.0;  // k(n)
  /// First t such that every correct process is attracted at t and at
  /// every later recorded step.
  std::optional<std::size_t> attracted_from;
  std::vector<double> crash_distance;  // L(t), t = 0 .. step_count
  CertificateReport contraction;       // L(t+1) <= k(n) L(t), t >= attracted_from
  CertificateReport edge_bound;        // L(p)/n <= d(M_p, M_C(p)) for attracted p

  bool passed() const { return applicable && attracted_from && contraction.passed() && edge_bound.passed(); }
};

/// Requires f = 1 on the trace's first configuration; otherwise the result
/// is marked not applicable.
FaultCertificate fault_contraction_check(const Trace& trace, double eps_tie = kDefaultTieTolerance);

}  // namespace myopic
