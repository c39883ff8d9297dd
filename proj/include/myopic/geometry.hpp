#pragma once

// Euclidean primitives for d-dimensional point swarms.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace myopic {

/// Largest supported dimension. All constructions used by the suites live in
/// d <= 3; the limit only bounds the cost of the enclosing-ball solver.
inline constexpr std::size_t kMaxDimension = 8;

/// |1 - ||v||| allowed for a vector that is supposed to be unit length.
inline constexpr double kUnitNormTolerance = 1e-12;

/// Seed used for the enclosing-ball shuffle when the caller does not pass one.
inline constexpr std::uint64_t kDefaultSebSeed = 0x5eb5eedULL;

class Vector {
 public:
  Vector() = default;
  explicit Vector(std::vector<double> components);
  Vector(std::initializer_list<double> components);

  /// The zero vector of dimension d.
  static Vector zero(std::size_t d);

  std::size_t dimension() const { return c_.size(); }
  double operator[](std::size_t i) const { return c_[i]; }
  std::span<const double> components() const { return c_; }

  double norm() const;
  Vector normalized() const;

  Vector operator-() const;
  friend Vector operator+(const Vector& a, const Vector& b);
  friend Vector operator-(const Vector& a, const Vector& b);
  friend Vector operator*(double s, const Vector& v);
  friend bool operator==(const Vector&, const Vector&) = default;

 private:
  std::vector<double> c_;
};

double dot(const Vector& a, const Vector& b);

/// A position. Coordinates are always finite.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords);
  Point(std::initializer_list<double> coords);

  static Point origin(std::size_t d);

  std::size_t dimension() const { return c_.size(); }
  double operator[](std::size_t i) const { return c_[i]; }
  std::span<const double> coords() const { return c_; }

  friend Vector operator-(const Point& a, const Point& b);
  friend Point operator+(const Point& p, const Vector& v);
  friend Point operator-(const Point& p, const Vector& v);
  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<double> c_;
};

struct Ball {
  Point center;
  double radius = 0.0;
};

/// Throws UsageError unless a and b have the same dimension.
void require_same_dimension(const Point& a, const Point& b);

double distance(const Point& a, const Point& b);

/// Coordinate-wise mean. Symmetric bit for bit: midpoint(a, b) == midpoint(b, a).
Point midpoint(const Point& a, const Point& b);

/// Lexicographic order on coordinates; the first differing coordinate decides.
/// Equal points are not less in either direction.
bool position_less(const Point& a, const Point& b);

/// Smallest ball containing every point (randomized move-to-front Welzl).
/// Throws UsageError on empty input, mixed dimensions or d > kMaxDimension.
Ball smallest_enclosing_ball(std::span<const Point> points,
                             std::uint64_t seed = kDefaultSebSeed);

/// Adversary's pick of the direction orthogonal to the motion axis.
struct OrthogonalSelector {
  enum class Kind {
    positive,        // d=2: x rotated +90 degrees; d>=3: first complement basis vector
    negative,        // opposite of positive
    seeded_random,   // uniform direction in the complement, from `seed`
    basis,           // complement basis vector `index`, negated when `flip`
    explicit_vector  // caller-provided direction, projected and normalized
  };

  Kind kind = Kind::positive;
  std::uint64_t seed = 0;
  std::size_t index = 0;
  bool flip = false;
  Vector direction;

  static OrthogonalSelector positive() { return {}; }
  static OrthogonalSelector negative() {
    OrthogonalSelector s;
    s.kind = Kind::negative;
    return s;
  }
  static OrthogonalSelector seeded(std::uint64_t seed);
  static OrthogonalSelector basis_vector(std::size_t index, bool flip);
  static OrthogonalSelector along(Vector direction);
};

/// Orthonormal basis of the complement of unit vector x (d-1 vectors).
/// For d = 2 the single vector is x rotated counterclockwise by 90 degrees.
std::vector<Vector> orthogonal_complement_basis(const Vector& x);

/// A unit vector orthogonal to unit vector x, chosen by the selector.
/// Throws UsageError when d = 1 or x is not unit length.
Vector orthonormal_complement_sample(const Vector& x, const OrthogonalSelector& selector);

}  // namespace myopic
