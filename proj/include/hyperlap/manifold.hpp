#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace hyperlap {

/// Largest supported ambient dimension. Coordinates are stored inline.
inline constexpr int kMaxAmbientDim = 16;

using Vector = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxAmbientDim, 1>;

enum class ManifoldKind { Euclidean, Sphere, Hyperbolic };

std::string_view to_string(ManifoldKind kind);
/// Parses "euclidean", "sphere" or "hyperbolic". Throws DomainError otherwise.
ManifoldKind parse_manifold_kind(std::string_view name);

/// One of R^n, the unit sphere S^n, or hyperbolic space H^n.
///
/// Points and tangent vectors are stored in ambient coordinates:
///   - Euclidean(n): n coordinates.
///   - Sphere(n): n+1 coordinates of unit Euclidean norm.
///   - Hyperbolic(n): n+1 coordinates on the upper sheet of the hyperboloid
///     <x,x>_L = -1, where <x,y>_L = x_0 y_0 + ... + x_{n-1} y_{n-1} - x_n y_n.
///     The time coordinate is the last one and is positive.
class Manifold {
 public:
  static Manifold euclidean(int dim) { return {ManifoldKind::Euclidean, dim}; }
  static Manifold sphere(int dim) { return {ManifoldKind::Sphere, dim}; }
  static Manifold hyperbolic(int dim) { return {ManifoldKind::Hyperbolic, dim}; }

  /// Throws DomainError if dim < 1.
  Manifold(ManifoldKind kind, int dim);

  ManifoldKind kind() const noexcept { return kind_; }
  int dim() const noexcept { return dim_; }
  int ambient_dim() const noexcept {
    return kind_ == ManifoldKind::Euclidean ? dim_ : dim_ + 1;
  }

  /// Riemannian metric expressed in ambient coordinates (dot product, or the
  /// Minkowski form for hyperbolic space).
  double inner(const Vector& a, const Vector& b) const;

  std::string describe() const;

  friend bool operator==(const Manifold&, const Manifold&) = default;

 private:
  ManifoldKind kind_;
  int dim_;
};

/// A point on a manifold.
class Point {
 public:
  /// Validates the manifold constraint (to 1e-9) and then renormalizes so the
  /// stored coordinates satisfy it to rounding. Throws DomainError.
  Point(const Manifold& manifold, Vector coords);

  /// Maps arbitrary ambient coordinates onto the manifold: normalization for
  /// the sphere, lifting the spatial part for hyperbolic space. Throws
  /// DomainError for a zero vector on the sphere.
  static Point projected(const Manifold& manifold, Vector coords);

  const Manifold& manifold() const noexcept { return manifold_; }
  const Vector& coords() const noexcept { return coords_; }

  /// Exact coordinate equality.
  friend bool operator==(const Point& a, const Point& b) {
    return a.manifold_ == b.manifold_ && a.coords_ == b.coords_;
  }

 private:
  struct Normalized {};
  Point(Normalized, const Manifold& manifold, Vector coords)
      : manifold_(manifold), coords_(std::move(coords)) {}

  Manifold manifold_;
  Vector coords_;
};

/// A tangent vector anchored at a base point.
class TangentVector {
 public:
  /// Validates tangency to the base (to 1e-10, relative to |coords| when
  /// larger than one). Throws DomainError.
  TangentVector(Point base, Vector coords);

  /// Orthogonal projection of ambient coordinates onto the tangent space.
  static TangentVector projected(Point base, Vector coords);
  static TangentVector zero(Point base);

  const Point& base() const noexcept { return base_; }
  const Manifold& manifold() const noexcept { return base_.manifold(); }
  const Vector& coords() const noexcept { return coords_; }

  /// Riemannian norm at the base point.
  double norm() const;

  TangentVector& operator+=(const TangentVector& other);
  TangentVector& operator-=(const TangentVector& other);
  TangentVector& operator*=(double s);
  TangentVector& operator/=(double s);

  friend TangentVector operator+(TangentVector a, const TangentVector& b) { return a += b; }
  friend TangentVector operator-(TangentVector a, const TangentVector& b) { return a -= b; }
  friend TangentVector operator*(double s, TangentVector v) { return v *= s; }
  friend TangentVector operator*(TangentVector v, double s) { return v *= s; }
  friend TangentVector operator/(TangentVector v, double s) { return v /= s; }
  friend TangentVector operator-(TangentVector v) { return v *= -1.0; }

 private:
  struct Trusted {};
  TangentVector(Trusted, Point base, Vector coords)
      : base_(std::move(base)), coords_(std::move(coords)) {}
  void require_same_base(const TangentVector& other) const;

  Point base_;
  Vector coords_;
};

/// Riemannian inner product of two vectors at the same base point.
/// Throws DomainError when the bases differ.
double inner(const TangentVector& a, const TangentVector& b);

/// Geodesic distance. Throws DomainError on manifold mismatch.
double distance(const Point& a, const Point& b);

/// Riemannian logarithm log_base(target).
/// Throws SingularityError for (near) antipodal sphere points, i.e. when
/// <base, target> <= -1 + 1e-9.
TangentVector log_map(const Point& base, const Point& target);

/// Riemannian exponential exp_base(v). Throws DomainError unless v is
/// anchored at base.
Point exp_map(const Point& base, const TangentVector& v);

/// Parallel transport of v (anchored at `from`) to `to` along the minimizing
/// geodesic. Identity when from == to. Throws SingularityError for antipodal
/// sphere points.
TangentVector parallel_transport(const Point& from, const Point& to, const TangentVector& v);

struct FrechetMeanOptions {
  double tolerance = 1e-10;
  int max_iterations = 200;
};

/// Weighted Fréchet mean by Riemannian gradient descent with unit step,
///   m <- exp_m( sum_i w_i log_m(x_i) / sum_i w_i ),
/// stopping once the tangent mean has norm below `tolerance`.
///
/// Empty weights mean unit weights. Euclidean inputs return the weighted
/// arithmetic mean directly; a single point (or identical points) is returned
/// unchanged. Throws DomainError on empty input, mixed manifolds, negative
/// weights or zero total weight; ConvergenceError when the iteration budget is
/// exhausted; SingularityError if an antipodal pair is met.
Point frechet_mean(std::span<const Point> points, std::span<const double> weights = {},
                   const FrechetMeanOptions& options = {});

}  // namespace hyperlap
