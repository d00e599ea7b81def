#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hyperlap/calculus.hpp"
#include "hyperlap/random.hpp"

namespace hyperlap {

// Randomized property batteries behind `hyperlap check`: the geometry
// identities, the gradient symmetry identities, the Euclidean Dirichlet identity,
// p = 2 coincidence, eta scaling and reduction to the graph p-Laplacian.

/// Uniform random point (sphere), or a point at most `radius` from the origin
/// of R^n / the bottom of the hyperboloid.
Point random_point(const Manifold& m, Rng& rng, double radius = 1.0);

/// exp_center of a uniformly oriented tangent vector with norm uniform in
/// [0, radius).
Point random_point_near(const Point& center, double radius, Rng& rng);

/// Random tangent vector at base with standard normal ambient components,
/// projected.
TangentVector random_tangent(const Point& base, Rng& rng, double scale = 1.0);

struct InstanceOptions {
  std::size_t min_vertices = 4;
  std::size_t max_vertices = 20;
  std::size_t max_edges = 8;
  std::size_t max_cardinality = 4;
  /// Geodesic radius of the cluster the features are drawn from; keeps
  /// Fréchet means unique and logs defined.
  double feature_radius = 0.6;
  /// Draw symmetric weights in [0.5, 2] instead of unit weights.
  bool random_weights = true;
  /// Probability that an edge is made constant (all its vertices share one
  /// value) after drawing the features.
  double constant_edge_probability = 0.25;
};

/// Random symmetric hypergraph with localized features; deterministic in seed.
VertexFunction random_instance(const Manifold& m, std::uint64_t seed,
                               const InstanceOptions& options = {});

using TransportFn = std::function<TangentVector(const Point&, const Point&, const TangentVector&)>;

struct GeometryErrors {
  double exp_log = 0.0;          ///< |exp_x(log_x y) - y|
  double transport_norm = 0.0;   ///< ||PT v| - |v||
  double transport_inner = 0.0;  ///< |<PT v, PT w> - <v, w>|
  double distance_log = 0.0;     ///< |d(x, y) - |log_x y||
};

/// Worst errors over `samples` random (x, y, v, w) draws.
GeometryErrors geometry_errors(const Manifold& m, std::uint64_t seed, std::size_t samples);

/// Largest Fréchet gradient norm over edges on which f is constant.
double constant_frechet_gradient_error(const VertexFunction& f);

/// max_e |grad^F f(e) + PT_{x_out -> x_in} grad^F f(reverse e)|.
double frechet_antisymmetry_error(const VertexFunction& f,
                                        const TransportFn& transport = parallel_transport);

struct KernelCheck {
  /// Largest pairwise gradient entry on edges where f is constant.
  double forward_error = 0.0;
  /// Edges whose values differ by more than `separation` yet have an all-zero
  /// pairwise gradient block.
  std::size_t reverse_violations = 0;
  std::size_t constant_edges = 0;
  std::size_t separated_edges = 0;
};
KernelCheck pairwise_kernel_check(const VertexFunction& f, double separation = 1e-6);

/// max |grad^P f(e)(u,v) + PT_{f(u) -> f(v)} grad^P f(reverse e)(v,u)|.
double pairwise_antisymmetry_error(const VertexFunction& f,
                                         const TransportFn& transport = parallel_transport);

/// Largest difference between isotropic and anisotropic Laplacians at p = 2,
/// over all vertices, both frameworks and eta in {0, 1}.
double p2_coincidence_error(const VertexFunction& f);

/// Number of (vertex, variant, p) triples where the eta = 1 Laplacian is not
/// bit-identical to the eta = 0 Laplacian divided by the in-degree.
std::size_t eta_scaling_mismatches(const VertexFunction& f, std::span<const double> ps);

/// For Euclidean f, |E - 2 <f, Laplacian_2 f>_stnd| / (1 + E), E the Dirichlet
/// energy of the framework (eta = 0). On symmetric hypergraphs the energy is
/// twice the canonical pairing of f with its 2-Laplacian.
double dirichlet_pairing_error(const VertexFunction& f, Framework framework);

/// Graph p-Laplacian written directly on the adjacency of a graph-shaped
/// hypergraph (singleton in/out sets), independent of the hypergraph code path.
TangentVector reference_graph_laplacian(const VertexFunction& f, VertexId u,
                                        const LaplaceParams& params);

/// Largest deviation of all four variants from reference_graph_laplacian at
/// exponent p (eta = 0 and 1). f must live on a graph-shaped hypergraph.
double graph_reduction_error(const VertexFunction& f, double p);

struct CheckOptions {
  std::size_t seeds = 50;
  std::uint64_t base_seed = 1;
  std::vector<ManifoldKind> kinds = {ManifoldKind::Euclidean, ManifoldKind::Sphere,
                                     ManifoldKind::Hyperbolic};
  std::size_t max_vertices = 20;
  std::size_t max_cardinality = 4;
};

struct PropertyResult {
  std::string name;
  std::string manifold;
  std::size_t instances = 0;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool passed = true;
  /// Seed of the worst (or first failing) instance.
  std::uint64_t worst_seed = 0;
};

struct CheckReport {
  std::vector<PropertyResult> results;
  bool passed() const;
};

CheckReport run_checks(const CheckOptions& options);

}  // namespace hyperlap
