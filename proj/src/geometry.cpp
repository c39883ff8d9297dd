#include "myopic/geometry.hpp"

#include <algorithm>
#include <array>
#include <cfloat>
#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

#include "myopic/errors.hpp"
#include "myopic/random.hpp"

namespace myopic {

// ---------------------------------------------------------------------------
// Vector / Point

Vector::Vector(std::vector<double> components) : c_(std::move(components)) {}
Vector::Vector(std::initializer_list<double> components) : c_(components) {}

Vector Vector::zero(std::size_t d) { return Vector(std::vector<double>(d, 0.0)); }

double Vector::norm() const { return std::sqrt(dot(*this, *this)); }

Vector Vector::normalized() const {
  const double n = norm();
  if (!(n > 0.0)) throw UsageError("cannot normalize a zero vector");
  return (1.0 / n) * *this;
}

Vector Vector::operator-() const { return -1.0 * *this; }

Vector operator+(const Vector& a, const Vector& b) {
  if (a.dimension() != b.dimension()) throw UsageError("vector dimension mismatch");
  std::vector<double> out(a.dimension());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.c_[i] + b.c_[i];
  return Vector(std::move(out));
}

Vector operator-(const Vector& a, const Vector& b) {
  if (a.dimension() != b.dimension()) throw UsageError("vector dimension mismatch");
  std::vector<double> out(a.dimension());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.c_[i] - b.c_[i];
  return Vector(std::move(out));
}

Vector operator*(double s, const Vector& v) {
  std::vector<double> out(v.dimension());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = s * v.c_[i];
  return Vector(std::move(out));
}

double dot(const Vector& a, const Vector& b) {
  if (a.dimension() != b.dimension()) throw UsageError("vector dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.dimension(); ++i) s += a[i] * b[i];
  return s;
}

namespace {

void check_finite(const std::vector<double>& c) {
  if (c.empty()) throw UsageError("a point needs at least one coordinate");
  for (double x : c) {
    if (!std::isfinite(x)) throw UsageError("point coordinates must be finite");
  }
}

}  // namespace

Point::Point(std::vector<double> coords) : c_(std::move(coords)) { check_finite(c_); }
Point::Point(std::initializer_list<double> coords) : c_(coords) { check_finite(c_); }

Point Point::origin(std::size_t d) { return Point(std::vector<double>(d, 0.0)); }

Vector operator-(const Point& a, const Point& b) {
  require_same_dimension(a, b);
  std::vector<double> out(a.dimension());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.c_[i] - b.c_[i];
  return Vector(std::move(out));
}

Point operator+(const Point& p, const Vector& v) {
  if (p.dimension() != v.dimension()) throw UsageError("point/vector dimension mismatch");
  std::vector<double> out(p.dimension());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = p.c_[i] + v[i];
  return Point(std::move(out));
}

Point operator-(const Point& p, const Vector& v) { return p + (-v); }

void require_same_dimension(const Point& a, const Point& b) {
  if (a.dimension() != b.dimension()) {
    std::ostringstream msg;
    msg << "dimension mismatch: " << a.dimension() << " vs " << b.dimension();
    throw UsageError(msg.str());
  }
}

double distance(const Point& a, const Point& b) {
  require_same_dimension(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    const double t = a[i] - b[i];
    s += t * t;
  }
  return std::sqrt(s);
}

Point midpoint(const Point& a, const Point& b) {
  require_same_dimension(a, b);
  std::vector<double> out(a.dimension());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (a[i] + b[i]) / 2.0;
  return Point(std::move(out));
}

bool position_less(const Point& a, const Point& b) {
  require_same_dimension(a, b);
  const auto ca = a.coords();
  const auto cb = b.coords();
  return std::lexicographical_compare(ca.begin(), ca.end(), cb.begin(), cb.end());
}

// ---------------------------------------------------------------------------
// Smallest enclosing ball

namespace {

// Solves the symmetric system A x = b (row-major, k x k) with full pivoting.
// Directions whose pivot is negligible are left at zero, which amounts to
// dropping affinely dependent support points.
std::vector<double> solve_dropping_dependent(std::vector<double> a, std::vector<double> b,
                                             std::size_t k) {
  std::vector<std::size_t> col(k);
  std::iota(col.begin(), col.end(), 0);
  double scale = 0.0;
  for (double v : a) scale = std::max(scale, std::abs(v));
  const double tiny = scale * 1e-13;

  std::size_t rank = 0;
  for (; rank < k; ++rank) {
    std::size_t pr = rank, pc = rank;
    double best = -1.0;
    for (std::size_t r = rank; r < k; ++r)
      for (std::size_t c = rank; c < k; ++c)
        if (std::abs(a[r * k + c]) > best) best = std::abs(a[r * k + c]), pr = r, pc = c;
    if (!(best > tiny)) break;
    if (pr != rank) {
      for (std::size_t c = 0; c < k; ++c) std::swap(a[pr * k + c], a[rank * k + c]);
      std::swap(b[pr], b[rank]);
    }
    if (pc != rank) {
      for (std::size_t r = 0; r < k; ++r) std::swap(a[r * k + pc], a[r * k + rank]);
      std::swap(col[pc], col[rank]);
    }
    for (std::size_t r = rank + 1; r < k; ++r) {
      const double f = a[r * k + rank] / a[rank * k + rank];
      if (f == 0.0) continue;
      for (std::size_t c = rank; c < k; ++c) a[r * k + c] -= f * a[rank * k + c];
      b[r] -= f * b[rank];
    }
  }

  std::vector<double> y(k, 0.0);
  for (std::size_t i = rank; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < rank; ++c) s -= a[i * k + c] * y[c];
    y[i] = s / a[i * k + i];
  }
  std::vector<double> x(k, 0.0);
  for (std::size_t i = 0; i < k; ++i) x[col[i]] = y[i];
  return x;
}

class WelzlSolver {
 public:
  WelzlSolver(std::span<const Point> pts, std::uint64_t seed)
      : pts_(pts), dim_(pts.front().dimension()), order_(pts.size()) {
    std::iota(order_.begin(), order_.end(), 0);
    CounterRng rng(seed);
    for (std::size_t i = order_.size(); i > 1; --i) std::swap(order_[i - 1], order_[rng.below(i)]);
    double mag = 0.0;
    for (const auto& p : pts)
      for (double c : p.coords()) mag = std::max(mag, std::abs(c));
    slack_ = 16.0 * DBL_EPSILON * mag;
  }

  Ball solve() {
    support_.clear();
    return move_to_front(order_.size());
  }

 private:
  bool inside(const Ball& b, const Point& p) const {
    if (b.radius < 0.0) return false;
    return distance(b.center, p) <= b.radius * (1.0 + 1e-12) + slack_;
  }

  // Circumscribed ball of the support points within their affine hull.
  Ball support_ball() const {
    if (support_.empty()) return {Point::origin(dim_), -1.0};
    const Point& q0 = pts_[support_[0]];
    if (support_.size() == 1) return {q0, 0.0};

    const std::size_t k = support_.size() - 1;
    std::vector<Vector> u;
    u.reserve(k);
    for (std::size_t i = 1; i <= k; ++i) u.push_back(pts_[support_[i]] - q0);
    std::vector<double> a(k * k), rhs(k);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i; j < k; ++j) a[i * k + j] = a[j * k + i] = 2.0 * dot(u[i], u[j]);
      rhs[i] = dot(u[i], u[i]);
    }
    const auto lambda = solve_dropping_dependent(std::move(a), std::move(rhs), k);
    Vector offset = Vector::zero(dim_);
    for (std::size_t i = 0; i < k; ++i) offset = offset + lambda[i] * u[i];
    Ball b{q0 + offset, 0.0};
    for (std::size_t s : support_) b.radius = std::max(b.radius, distance(b.center, pts_[s]));
    return b;
  }

  Ball move_to_front(std::size_t end) {
    Ball b = support_ball();
    if (support_.size() == dim_ + 1) return b;
    for (std::size_t i = 0; i < end; ++i) {
      const std::size_t idx = order_[i];
      if (inside(b, pts_[idx])) continue;
      support_.push_back(idx);
      b = move_to_front(i);
      support_.pop_back();
      std::rotate(order_.begin(), order_.begin() + static_cast<std::ptrdiff_t>(i),
                  order_.begin() + static_cast<std::ptrdiff_t>(i) + 1);
    }
    return b;
  }

  std::span<const Point> pts_;
  std::size_t dim_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> support_;
  double slack_ = 0.0;
};

}  // namespace

Ball smallest_enclosing_ball(std::span<const Point> points, std::uint64_t seed) {
  if (points.empty()) throw UsageError("smallest_enclosing_ball: empty point set");
  const std::size_t d = points.front().dimension();
  if (d > kMaxDimension) throw UsageError("smallest_enclosing_ball: dimension above limit");
  for (const auto& p : points) require_same_dimension(points.front(), p);

  Ball b = WelzlSolver(points, seed).solve();
  // Round-off can leave a point a few ulps outside; widen to cover it.
  for (const auto& p : points) b.radius = std::max(b.radius, distance(b.center, p));
  return b;
}

// ---------------------------------------------------------------------------
// Orthogonal complement

OrthogonalSelector OrthogonalSelector::seeded(std::uint64_t seed) {
  OrthogonalSelector s;
  s.kind = Kind::seeded_random;
  s.seed = seed;
  return s;
}

OrthogonalSelector OrthogonalSelector::basis_vector(std::size_t index, bool flip) {
  OrthogonalSelector s;
  s.kind = Kind::basis;
  s.index = index;
  s.flip = flip;
  return s;
}

OrthogonalSelector OrthogonalSelector::along(Vector direction) {
  OrthogonalSelector s;
  s.kind = Kind::explicit_vector;
  s.direction = std::move(direction);
  return s;
}

namespace {

void require_unit_axis(const Vector& x) {
  if (x.dimension() < 2) throw UsageError("orthogonal direction needs d >= 2");
  if (std::abs(x.norm() - 1.0) > kUnitNormTolerance) throw UsageError("axis must be a unit vector");
}

// Removes the components along x and the basis vectors, then normalizes.
// Returns an empty vector when nothing is left.
Vector project_out(Vector v, const Vector& x, const std::vector<Vector>& basis) {
  // Two passes of modified Gram-Schmidt keep orthogonality at ~1e-16.
  for (int pass = 0; pass < 2; ++pass) {
    v = v - dot(v, x) * x;
    for (const auto& b : basis) v = v - dot(v, b) * b;
  }
  const double n = v.norm();
  if (n < 1e-8) return {};
  return (1.0 / n) * v;
}

}  // namespace

std::vector<Vector> orthogonal_complement_basis(const Vector& x) {
  require_unit_axis(x);
  const std::size_t d = x.dimension();
  if (d == 2) return {Vector{-x[1], x[0]}};

  std::vector<Vector> basis;
  for (std::size_t i = 0; i < d && basis.size() + 1 < d; ++i) {
    std::vector<double> e(d, 0.0);
    e[i] = 1.0;
    Vector v = project_out(Vector(std::move(e)), x, basis);
    if (v.dimension() != 0) basis.push_back(std::move(v));
  }
  return basis;
}

Vector orthonormal_complement_sample(const Vector& x, const OrthogonalSelector& selector) {
  require_unit_axis(x);
  const std::size_t d = x.dimension();
  using Kind = OrthogonalSelector::Kind;
  switch (selector.kind) {
    case Kind::positive:
      return orthogonal_complement_basis(x).front();
    case Kind::negative:
      return -orthogonal_complement_basis(x).front();
    case Kind::basis: {
      const auto basis = orthogonal_complement_basis(x);
      if (selector.index >= basis.size()) throw UsageError("complement basis index out of range");
      return selector.flip ? -basis[selector.index] : basis[selector.index];
    }
    case Kind::seeded_random: {
      CounterRng rng(selector.seed);
      for (;;) {
        std::vector<double> g(d);
        for (auto& c : g) c = rng.normal();
        Vector v = project_out(Vector(std::move(g)), x, {});
        if (v.dimension() != 0) return v;
      }
    }
    case Kind::explicit_vector: {
      if (selector.direction.dimension() != d) throw UsageError("orthogonal direction dimension mismatch");
      Vector v = project_out(selector.direction, x, {});
      if (v.dimension() == 0) throw UsageError("orthogonal direction is parallel to the axis");
      return v;
    }
  }
  throw UsageError("unknown orthogonal selector");
}

}  // namespace myopic
