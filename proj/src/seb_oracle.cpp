#include "myopic/seb_oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "myopic/errors.hpp"

namespace myopic {

// The center is written as an affine combination c = sum w_i p_i with
// sum w_i = 1. Equal distances to every p_i give the bordered system
//   [2 G  -1] [w]   [diag G]
//   [1^T   0] [nu] = [  1   ]
// with G the Gram matrix of the (centered) support points.
std::optional<Ball> circumscribed_ball(std::span<const Point> support) {
  if (support.empty()) return std::nullopt;
  const auto k = static_cast<Eigen::Index>(support.size());
  const auto d = static_cast<Eigen::Index>(support.front().dimension());
  if (k == 1) return Ball{support.front(), 0.0};

  Eigen::MatrixXd pts(d, k);
  for (Eigen::Index j = 0; j < k; ++j)
    for (Eigen::Index i = 0; i < d; ++i) pts(i, j) = support[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
  const Eigen::VectorXd centroid = pts.rowwise().mean();
  pts.colwise() -= centroid;

  const Eigen::MatrixXd gram = pts.transpose() * pts;
  Eigen::MatrixXd sys = Eigen::MatrixXd::Zero(k + 1, k + 1);
  sys.topLeftCorner(k, k) = 2.0 * gram;
  sys.topRightCorner(k, 1).setConstant(-1.0);
  sys.bottomLeftCorner(1, k).setConstant(1.0);
  Eigen::VectorXd rhs(k + 1);
  rhs.head(k) = gram.diagonal();
  rhs(k) = 1.0;

  Eigen::FullPivLU<Eigen::MatrixXd> lu(sys);
  lu.setThreshold(1e-10);
  if (!lu.isInvertible()) return std::nullopt;
  const Eigen::VectorXd sol = lu.solve(rhs);
  const Eigen::VectorXd center = pts * sol.head(k) + centroid;

  std::vector<double> c(center.data(), center.data() + d);
  Ball ball{Point(std::move(c)), 0.0};
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& p : support) {
    const double r = distance(ball.center, p);
    ball.radius = std::max(ball.radius, r);
    lo = std::min(lo, r);
  }
  // A singular-but-accepted system shows up as unequal distances.
  if (ball.radius - lo > 1e-7 * std::max(1.0, ball.radius)) return std::nullopt;
  return ball;
}

Ball brute_force_enclosing_ball(std::span<const Point> points) {
  if (points.empty()) throw UsageError("brute_force_enclosing_ball: empty point set");
  if (points.size() > kOracleMaxPoints) throw UsageError("brute_force_enclosing_ball: too many points");
  for (const auto& p : points) require_same_dimension(points.front(), p);

  const std::size_t n = points.size();
  const std::size_t max_support = points.front().dimension() + 1;
  double scale = 0.0;
  for (const auto& p : points)
    for (double c : p.coords()) scale = std::max(scale, std::abs(c));

  std::optional<Ball> best;
  std::vector<Point> subset;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    const auto size = static_cast<std::size_t>(__builtin_popcount(mask));
    if (size > max_support) continue;
    subset.clear();
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) subset.push_back(points[i]);
    const auto ball = circumscribed_ball(subset);
    if (!ball) continue;
    if (best && ball->radius >= best->radius) continue;
    const double slack = 1e-10 * ball->radius + 1e-13 * std::max(1.0, scale);
    const bool covers = std::all_of(points.begin(), points.end(), [&](const Point& p) {
      return distance(ball->center, p) <= ball->radius + slack;
    });
    if (covers) best = ball;
  }
  // Every point set has an affinely independent support, so best is set.
  return *best;
}

}  // namespace myopic
