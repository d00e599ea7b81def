#pragma once

#include <memory>
#include <string_view>
#include <vector>

#include "hyperlap/hypergraph.hpp"
#include "hyperlap/manifold.hpp"

namespace hyperlap {

/// Manifold-valued vertex function: one point per vertex of a hypergraph.
class VertexFunction {
 public:
  /// Throws DomainError unless there is exactly one value per vertex and all
  /// values share one manifold.
  VertexFunction(std::shared_ptr<const OrientedHypergraph> graph, std::vector<Point> values);

  const OrientedHypergraph& graph() const noexcept { return *graph_; }
  const std::shared_ptr<const OrientedHypergraph>& graph_ptr() const noexcept { return graph_; }
  const Manifold& manifold() const noexcept { return values_.front().manifold(); }
  const std::vector<Point>& values() const noexcept { return values_; }

  /// Value at 1-based vertex id u.
  const Point& at(VertexId u) const;

  /// Same hypergraph, new values.
  VertexFunction with_values(std::vector<Point> values) const {
    return VertexFunction(graph_, std::move(values));
  }

 private:
  std::shared_ptr<const OrientedHypergraph> graph_;
  std::vector<Point> values_;
};

/// Fréchet means of an edge's in-set and out-set.
struct EdgeMean {
  Point in;
  Point out;
};
using EdgeMeans = std::vector<EdgeMean>;

/// Per-edge unit-weight Fréchet means. Errors are rethrown tagged with the
/// offending edge.
EdgeMeans edge_means(const VertexFunction& f);

/// One tangent vector per edge, anchored at that edge's in-set mean.
struct FrechetEdgeField {
  std::shared_ptr<const OrientedHypergraph> graph;
  std::vector<TangentVector> values;
};

/// Per edge, the block of tangent vectors indexed by e.in x e.out.
/// entries[e][i * |e.out| + j] belongs to the pair (e.in[i], e.out[j]) and is
/// anchored at f(e.in[i]).
struct PairwiseEdgeField {
  std::shared_ptr<const OrientedHypergraph> graph;
  std::vector<std::vector<TangentVector>> entries;

  /// Entry for the vertex pair (u, v) of edge e. Throws DomainError if the
  /// pair is not in e.in x e.out.
  const TangentVector& at(EdgeIndex e, VertexId u, VertexId v) const;
};

/// grad^F f(e) = sqrt(w(e)) log_{x_in} x_out.
FrechetEdgeField frechet_gradient(const VertexFunction& f);

/// grad^P f(e)(u,v) = sqrt(w(e)) / (|e.in| |e.out|) log_{f(u)} f(v).
PairwiseEdgeField pairwise_gradient(const VertexFunction& f);

/// sum_e <H(e), G(e)> at x_in.
double frechet_inner_product(const FrechetEdgeField& h, const FrechetEdgeField& g);

/// sum_e sum_{u in e.in} sum_{v in e.out} <H(e)(u,v), G(e)(u,v)> at f(u).
double pairwise_inner_product(const PairwiseEdgeField& h, const PairwiseEdgeField& g);

/// Semi inner product on pairwise edge fields:
///   sum_u sum_{e in N_in(u)} 1/|e.in| <PTsum_u H(e), PTsum_u G(e)> at f(u),
/// where PTsum_u transports every entry (u1, u2) from f(u1) to f(u) and sums.
double pairwise_semi_inner_product(const PairwiseEdgeField& h, const PairwiseEdgeField& g,
                                   const VertexFunction& f);

enum class Framework { Frechet, Pairwise };

enum class LaplacianVariant {
  IsotropicFrechet,
  AnisotropicFrechet,
  IsotropicPairwise,
  AnisotropicPairwise,
};

std::string_view to_string(LaplacianVariant v);
LaplacianVariant parse_laplacian_variant(std::string_view name);
Framework framework_of(LaplacianVariant v);
bool is_isotropic(LaplacianVariant v);

struct LaplaceParams {
  double p = 2.0;
  /// 1 normalizes by in-degree, 0 does not.
  int eta = 0;
  LaplacianVariant variant = LaplacianVariant::IsotropicFrechet;
};

/// Throws DomainError unless p > 0 (finite) and eta is 0 or 1.
void validate(const LaplaceParams& params);

/// Distances below this count as coincident points when raised to a negative
/// power (p < 2).
inline constexpr double kCoincidenceEpsilon = 1e-12;

/// Hypergraph p-Laplacian of f at vertex u, anchored at f(u).
///
/// With N = N_in(u) and the per-edge log transported to f(u):
///   isotropic Fréchet     -(A^{(p-2)/2} sum_e w/|e.in| PT log_{x_in} x_out) / |N|^eta,
///                         A = sum_e w d^2(x_in, x_out) / |e.in|
///   anisotropic Fréchet   -(sum_e w^{p/2} d^{p-2} / |e.in| PT log_{x_in} x_out) / |N|^eta
///   isotropic pairwise    -(A^{(p-2)/2} sum_e w/(|e.in|^2|e.out|)
///                            sum_{u1} PT_{f(u1)->f(u)} sum_{u2} log_{f(u1)} f(u2)) / |N|^eta,
///                         A = sum_e sum_{u1,u2} w d^2(f(u1), f(u2)) / (|e.in|^2 |e.out|)
///   anisotropic pairwise  -(sum_e w^{p/2} / (|e.in|^p |e.out|^{p-1})
///                            sum_{u1,u2} d^{p-2} PT_{f(u1)->f(u)} log_{f(u1)} f(u2)) / |N|^eta
///
/// Zero when N is empty. For p < 2 a coincident term (distance, or sqrt(A),
/// below kCoincidenceEpsilon) on a positively weighted edge raises
/// SingularityError.
TangentVector p_laplacian(const VertexFunction& f, VertexId u, const LaplaceParams& params);

/// p_laplacian at every vertex, in vertex order. Edge means are computed once.
/// Failures are collected and rethrown naming every failing vertex.
std::vector<TangentVector> laplacian_field(const VertexFunction& f, const LaplaceParams& params);

/// Same as laplacian_field but reuses precomputed edge means (ignored by the
/// pairwise variants).
std::vector<TangentVector> laplacian_field(const VertexFunction& f, const LaplaceParams& params,
                                           const EdgeMeans& means);

/// Fréchet: <grad^F f, grad^F f>. Pairwise: the semi inner product of
/// grad^P f with itself.
double dirichlet_energy(const VertexFunction& f, Framework framework);

/// Canonical vertex inner product sum_u <f(u), g(u)> for Euclidean f, with
/// g given as tangent vectors (identified with R^d). Throws DomainError for
/// non-Euclidean f.
double standard_inner_product(const VertexFunction& f, const std::vector<TangentVector>& g);

}  // namespace hyperlap
