#pragma once

// Brute-force smallest enclosing ball, kept separate from the incremental
// solver so the two can check each other.

#include <cstddef>
#include <optional>
#include <span>

#include "myopic/geometry.hpp"

namespace myopic {

/// Largest input the oracle accepts (it enumerates all support subsets).
inline constexpr std::size_t kOracleMaxPoints = 12;

/// Circumscribed ball of `support` within its affine hull, or nullopt when
/// the support points are affinely dependent.
std::optional<Ball> circumscribed_ball(std::span<const Point> support);

/// Minimum over all subsets of at most d+1 points whose circumscribed ball
/// contains every input point. Throws UsageError above kOracleMaxPoints.
Ball brute_force_enclosing_ball(std::span<const Point> points);

}  // namespace myopic
