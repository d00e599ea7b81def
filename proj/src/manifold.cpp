#include "hyperlap/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hyperlap/errors.hpp"

namespace hyperlap {
namespace {

constexpr double kPointTolerance = 1e-9;
constexpr double kStoredTolerance = 1e-12;
constexpr double kTangentTolerance = 1e-10;
constexpr double kAntipodalMargin = 1e-9;

double minkowski(const Vector& a, const Vector& b) {
  const Eigen::Index n = a.size() - 1;
  return a.head(n).dot(b.head(n)) - a[n] * b[n];
}

void require_same_manifold(const Manifold& a, const Manifold& b, const char* op) {
  if (a != b) {
    throw DomainError(std::string(op) + ": manifold mismatch (" + a.describe() + " vs " +
                      b.describe() + ")");
  }
}

// Spatial part is free; the time coordinate is determined by it.
Vector lift_to_hyperboloid(Vector coords) {
  const Eigen::Index n = coords.size() - 1;
  coords[n] = std::sqrt(1.0 + coords.head(n).squaredNorm());
  return coords;
}

Vector tangent_projection(const Manifold& m, const Vector& base, const Vector& v) {
  switch (m.kind()) {
    case ManifoldKind::Euclidean:
      return v;
    case ManifoldKind::Sphere:
      return v - base.dot(v) * base;
    case ManifoldKind::Hyperbolic:
      return v + minkowski(base, v) * base;
  }
  return v;
}

void check_antipodal(const Point& a, const Point& b, const char* op) {
  if (a.manifold().kind() == ManifoldKind::Sphere &&
      a.coords().dot(b.coords()) <= -1.0 + kAntipodalMargin) {
    throw SingularityError(std::string(op) + ": antipodal points on the sphere");
  }
}

}  // namespace

std::string_view to_string(ManifoldKind kind) {
  switch (kind) {
    case ManifoldKind::Euclidean:
      return "euclidean";
    case ManifoldKind::Sphere:
      return "sphere";
    case ManifoldKind::Hyperbolic:
      return "hyperbolic";
  }
  return "unknown";
}

ManifoldKind parse_manifold_kind(std::string_view name) {
  if (name == "euclidean") return ManifoldKind::Euclidean;
  if (name == "sphere") return ManifoldKind::Sphere;
  if (name == "hyperbolic") return ManifoldKind::Hyperbolic;
  throw DomainError("unknown manifold kind '" + std::string(name) + "'");
}

Manifold::Manifold(ManifoldKind kind, int dim) : kind_(kind), dim_(dim) {
  if (dim < 1) throw DomainError("manifold dimension must be positive");
  if (ambient_dim() > kMaxAmbientDim) {
    throw DomainError("ambient dimension " + std::to_string(ambient_dim()) + " exceeds " +
                      std::to_string(kMaxAmbientDim));
  }
}

double Manifold::inner(const Vector& a, const Vector& b) const {
  return kind_ == ManifoldKind::Hyperbolic ? minkowski(a, b) : a.dot(b);
}

std::string Manifold::describe() const {
  std::ostringstream os;
  os << to_string(kind_) << "(" << dim_ << ")";
  return os.str();
}

// ---------------------------------------------------------------------------
// Point

Point::Point(const Manifold& manifold, Vector coords) : manifold_(manifold) {
  if (coords.size() != manifold.ambient_dim()) {
    throw DomainError("point on " + manifold.describe() + " needs " +
                      std::to_string(manifold.ambient_dim()) + " coordinates, got " +
                      std::to_string(coords.size()));
  }
  if (!coords.allFinite()) throw DomainError("point coordinates must be finite");
  switch (manifold.kind()) {
    case ManifoldKind::Euclidean:
      break;
    case ManifoldKind::Sphere: {
      const double norm = coords.norm();
      if (std::abs(norm - 1.0) > kPointTolerance) {
        throw DomainError("sphere point must have unit norm (norm = " + std::to_string(norm) +
                          ")");
      }
      // Coordinates already within the storage tolerance are kept bit-exact.
      if (std::abs(norm - 1.0) > kStoredTolerance) coords /= norm;
      break;
    }
    case ManifoldKind::Hyperbolic: {
      const Eigen::Index n = coords.size() - 1;
      const double form = minkowski(coords, coords);
      if (coords[n] <= 0.0 ||
          std::abs(form + 1.0) > kPointTolerance * std::max(1.0, coords.squaredNorm())) {
        throw DomainError("hyperbolic point must lie on the upper hyperboloid sheet");
      }
      if (std::abs(form + 1.0) > kStoredTolerance * std::max(1.0, coords.squaredNorm())) {
        coords = lift_to_hyperboloid(std::move(coords));
      }
      break;
    }
  }
  coords_ = std::move(coords);
}

Point Point::projected(const Manifold& manifold, Vector coords) {
  if (coords.size() != manifold.ambient_dim()) {
    throw DomainError("wrong number of ambient coordinates for " + manifold.describe());
  }
  switch (manifold.kind()) {
    case ManifoldKind::Euclidean:
      break;
    case ManifoldKind::Sphere: {
      const double norm = coords.norm();
      if (!(norm > 0.0)) throw DomainError("cannot project the zero vector onto the sphere");
      coords /= norm;
      break;
    }
    case ManifoldKind::Hyperbolic:
      coords = lift_to_hyperboloid(std::move(coords));
      break;
  }
  return Point(Normalized{}, manifold, std::move(coords));
}

// ---------------------------------------------------------------------------
// TangentVector

TangentVector::TangentVector(Point base, Vector coords)
    : base_(std::move(base)), coords_(std::move(coords)) {
  const Manifold& m = base_.manifold();
  if (coords_.size() != m.ambient_dim()) {
    throw DomainError("tangent vector on " + m.describe() + " needs " +
                      std::to_string(m.ambient_dim()) + " coordinates");
  }
  if (m.kind() != ManifoldKind::Euclidean) {
    const double normal = m.inner(base_.coords(), coords_);
    const double scale = std::max(1.0, coords_.norm() * base_.coords().norm());
    if (std::abs(normal) > kTangentTolerance * scale) {
      throw DomainError("vector is not tangent at its base point");
    }
  }
}

TangentVector TangentVector::projected(Point base, Vector coords) {
  if (coords.size() != base.manifold().ambient_dim()) {
    throw DomainError("wrong number of ambient coordinates for a tangent vector");
  }
  Vector t = tangent_projection(base.manifold(), base.coords(), coords);
  return TangentVector(Trusted{}, std::move(base), std::move(t));
}

TangentVector TangentVector::zero(Point base) {
  Vector z = Vector::Zero(base.coords().size());
  return TangentVector(Trusted{}, std::move(base), std::move(z));
}

double TangentVector::norm() const {
  return std::sqrt(std::max(0.0, manifold().inner(coords_, coords_)));
}

void TangentVector::require_same_base(const TangentVector& other) const {
  if (!(base_ == other.base_)) {
    throw DomainError("tangent vectors anchored at different base points");
  }
}

TangentVector& TangentVector::operator+=(const TangentVector& other) {
  require_same_base(other);
  coords_ += other.coords_;
  return *this;
}

TangentVector& TangentVector::operator-=(const TangentVector& other) {
  require_same_base(other);
  coords_ -= other.coords_;
  return *this;
}

TangentVector& TangentVector::operator*=(double s) {
  coords_ *= s;
  return *this;
}

TangentVector& TangentVector::operator/=(double s) {
  coords_ /= s;
  return *this;
}

double inner(const TangentVector& a, const TangentVector& b) {
  if (!(a.base() == b.base())) {
    throw DomainError("inner product of vectors at different base points");
  }
  return a.manifold().inner(a.coords(), b.coords());
}

// ---------------------------------------------------------------------------
// Geometry

double distance(const Point& a, const Point& b) {
  require_same_manifold(a.manifold(), b.manifold(), "distance");
  const Vector& x = a.coords();
  const Vector& y = b.coords();
  switch (a.manifold().kind()) {
    case ManifoldKind::Euclidean:
      return (x - y).norm();
    case ManifoldKind::Sphere:
      // |x - y| = 2 sin(d/2), |x + y| = 2 cos(d/2): exact symmetry and full
      // relative accuracy for nearby points, unlike arccos of the dot product.
      return 2.0 * std::atan2((x - y).norm(), (x + y).norm());
    case ManifoldKind::Hyperbolic: {
      // <x-y, x-y>_L = (2 sinh(d/2))^2, clamped against roundoff.
      const Vector diff = x - y;
      const double chord = std::sqrt(std::max(0.0, minkowski(diff, diff)));
      return 2.0 * std::asinh(0.5 * chord);
    }
  }
  return 0.0;
}

TangentVector log_map(const Point& base, const Point& target) {
  require_same_manifold(base.manifold(), target.manifold(), "log");
  const Vector& x = base.coords();
  const Vector& y = target.coords();
  if (x == y) return TangentVector::zero(base);
  switch (base.manifold().kind()) {
    case ManifoldKind::Euclidean:
      return TangentVector::projected(base, y - x);
    case ManifoldKind::Sphere: {
      check_antipodal(base, target, "log");
      Vector v = y - x.dot(y) * x;
      const double vnorm = v.norm();
      if (!(vnorm > 0.0)) return TangentVector::zero(base);
      const double d = distance(base, target);
      return TangentVector::projected(base, (d / vnorm) * v);
    }
    case ManifoldKind::Hyperbolic: {
      Vector v = y + minkowski(x, y) * x;
      const double vnorm = std::sqrt(std::max(0.0, minkowski(v, v)));
      if (!(vnorm > 0.0)) return TangentVector::zero(base);
      const double d = distance(base, target);
      return TangentVector::projected(base, (d / vnorm) * v);
    }
  }
  return TangentVector::zero(base);
}

Point exp_map(const Point& base, const TangentVector& v) {
  if (!(v.base() == base)) throw DomainError("exp: tangent vector is not anchored at base");
  const Vector& x = base.coords();
  const Vector& w = v.coords();
  switch (base.manifold().kind()) {
    case ManifoldKind::Euclidean:
      return Point::projected(base.manifold(), x + w);
    case ManifoldKind::Sphere: {
      const double t = w.norm();
      if (t == 0.0) return base;
      return Point::projected(base.manifold(), std::cos(t) * x + (std::sin(t) / t) * w);
    }
    case ManifoldKind::Hyperbolic: {
      const double t = std::sqrt(std::max(0.0, minkowski(w, w)));
      if (t == 0.0) return base;
      return Point::projected(base.manifold(), std::cosh(t) * x + (std::sinh(t) / t) * w);
    }
  }
  return base;
}

TangentVector parallel_transport(const Point& from, const Point& to, const TangentVector& v) {
  require_same_manifold(from.manifold(), to.manifold(), "parallel_transport");
  if (!(v.base() == from)) {
    throw DomainError("parallel_transport: vector is not anchored at the source point");
  }
  if (from == to) return v;
  const ManifoldKind kind = from.manifold().kind();
  if (kind == ManifoldKind::Euclidean) return TangentVector::projected(to, v.coords());

  check_antipodal(from, to, "parallel_transport");
  const TangentVector direction = log_map(from, to);
  const double d = direction.norm();
  if (!(d > 0.0)) return TangentVector::projected(to, v.coords());

  // Split v into its component a*u along the unit geodesic direction u and a
  // remainder orthogonal to the geodesic plane, which is carried unchanged.
  // The along-geodesic part rotates with the velocity
  //   sphere:     u -> cos(d) u - sin(d) x
  //   hyperbolic: u -> cosh(d) u + sinh(d) x
  const Manifold& m = from.manifold();
  const Vector u = direction.coords() / d;
  const double a = m.inner(u, v.coords());
  const Vector& x = from.coords();
  Vector out;
  if (kind == ManifoldKind::Sphere) {
    out = v.coords() + (a * (std::cos(d) - 1.0)) * u - (a * std::sin(d)) * x;
  } else {
    out = v.coords() + (a * (std::cosh(d) - 1.0)) * u + (a * std::sinh(d)) * x;
  }
  return TangentVector::projected(to, std::move(out));
}

Point frechet_mean(std::span<const Point> points, std::span<const double> weights,
                   const FrechetMeanOptions& options) {
  if (points.empty()) throw DomainError("frechet_mean: empty point set");
  if (!weights.empty() && weights.size() != points.size()) {
    throw DomainError("frechet_mean: weight count does not match point count");
  }
  const Manifold& m = points.front().manifold();
  double total = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    require_same_manifold(m, points[i].manifold(), "frechet_mean");
    const double w = weights.empty() ? 1.0 : weights[i];
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw DomainError("frechet_mean: weights must be finite and nonnegative");
    }
    total += w;
  }
  if (!(total > 0.0)) throw DomainError("frechet_mean: total weight must be positive");
  auto weight = [&](std::size_t i) { return weights.empty() ? 1.0 : weights[i]; };

  const bool all_equal = std::all_of(points.begin(), points.end(),
                                     [&](const Point& p) { return p == points.front(); });
  if (all_equal) return points.front();

  Vector ambient = Vector::Zero(m.ambient_dim());
  for (std::size_t i = 0; i < points.size(); ++i) ambient += weight(i) * points[i].coords();
  ambient /= total;
  if (m.kind() == ManifoldKind::Euclidean) return Point::projected(m, std::move(ambient));

  // Start from the projected ambient mean; for the sphere fall back to the
  // heaviest point if the ambient mean (nearly) vanishes.
  Point mean = points.front();
  if (m.kind() == ManifoldKind::Sphere && ambient.norm() < 1e-8) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < points.size(); ++i) {
      if (weight(i) > weight(best)) best = i;
    }
    mean = points[best];
  } else {
    mean = Point::projected(m, std::move(ambient));
  }

  double residual = 0.0;
  for (int iter = 0; iter <= options.max_iterations; ++iter) {
    Vector step = Vector::Zero(m.ambient_dim());
    for (std::size_t i = 0; i < points.size(); ++i) {
      const double w = weight(i);
      if (w == 0.0) continue;
      step += w * log_map(mean, points[i]).coords();
    }
    step /= total;
    TangentVector tangent = TangentVector::projected(mean, std::move(step));
    residual = tangent.norm();
    if (residual < options.tolerance) return mean;
    if (iter == options.max_iterations) break;
    mean = exp_map(mean, tangent);
  }
  throw ConvergenceError("frechet_mean: no convergence after " +
                             std::to_string(options.max_iterations) +
                             " iterations (residual " + std::to_string(residual) + ")",
                         residual);
}

}  // namespace hyperlap
