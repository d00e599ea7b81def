#include "hyperlap/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include "hyperlap/errors.hpp"

namespace hyperlap {
namespace {

std::vector<Point> gather(const VertexFunction& f, const std::vector<VertexId>& ids) {
  std::vector<Point> pts;
  pts.reserve(ids.size());
  for (VertexId v : ids) pts.push_back(f.at(v));
  return pts;
}

EdgeMean mean_of_edge(const VertexFunction& f, EdgeIndex e) {
  const HyperEdge& edge = f.graph().edge(e);
  try {
    const std::vector<Point> in = gather(f, edge.in);
    const std::vector<Point> out = gather(f, edge.out);
    return EdgeMean{frechet_mean(in), frechet_mean(out)};
  } catch (const Error&) {
    rethrow_with_context("edge " + std::to_string(e));
  }
}

void require_same_structure(const std::shared_ptr<const OrientedHypergraph>& a,
                            const std::shared_ptr<const OrientedHypergraph>& b,
                            const char* op) {
  if (!a || !b) throw DomainError(std::string(op) + ": field without a hypergraph");
  if (a != b && !(*a == *b)) {
    throw DomainError(std::string(op) + ": fields live on different hypergraphs");
  }
}

// Runs fn, prefixing any library error with the lazily built context.
template <class Fn, class Context>
auto guarded(Fn&& fn, Context&& context) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error&) {
    rethrow_with_context(context());
  }
}

[[noreturn]] void coincident(VertexId u, EdgeIndex e, const char* what) {
  throw SingularityError("vertex " + std::to_string(u) + ", edge " + std::to_string(e) + ": " +
                         what + " is zero and raised to a negative power (p < 2)");
}

// Finishes a Laplacian from the accumulated (unsigned, unnormalized) sum:
// negation, then division by in-degree when eta = 1. Kept as the last two
// operations so the eta = 1 result is exactly the eta = 0 result / degree.
TangentVector finish(const Point& fu, Vector sum, std::size_t degree, int eta) {
  TangentVector r = TangentVector::projected(fu, std::move(sum));
  r *= -1.0;
  if (eta == 1) r /= static_cast<double>(degree);
  return r;
}

TangentVector frechet_laplacian(const VertexFunction& f, VertexId u,
                                const LaplaceParams& params, const EdgeMeans* means) {
  const OrientedHypergraph& g = f.graph();
  const Point& fu = f.at(u);
  const auto nbhd = g.in_neighborhood(u);
  if (nbhd.empty()) return TangentVector::zero(fu);

  const bool isotropic = is_isotropic(params.variant);
  const double p = params.p;
  Vector sum = Vector::Zero(fu.coords().size());
  double aggregate = 0.0;
  for (EdgeIndex e : nbhd) {
    const HyperEdge& edge = g.edge(e);
    const double w = edge.weight;
    const double n_in = static_cast<double>(edge.in.size());
    const EdgeMean m = means ? (*means)[e] : mean_of_edge(f, e);
    auto where = [&] { return "vertex " + std::to_string(u) + ", edge " + std::to_string(e); };
    const TangentVector direction = guarded([&] { return log_map(m.in, m.out); }, where);
    const TangentVector moved =
        guarded([&] { return parallel_transport(m.in, fu, direction); }, where);
    const double d = direction.norm();
    if (isotropic) {
      aggregate += w * d * d / n_in;
      sum += (w / n_in) * moved.coords();
    } else {
      if (w == 0.0) continue;
      if (p < 2.0 && d < kCoincidenceEpsilon) coincident(u, e, "distance between edge means");
      sum += (std::pow(w, 0.5 * p) * std::pow(d, p - 2.0) / n_in) * moved.coords();
    }
  }
  if (isotropic && p != 2.0) {
    if (p < 2.0 && std::sqrt(aggregate) < kCoincidenceEpsilon) {
      coincident(u, nbhd.front(), "isotropic aggregate");
    }
    sum *= std::pow(aggregate, 0.5 * (p - 2.0));
  }
  return finish(fu, std::move(sum), nbhd.size(), params.eta);
}

// Sum over the out-set of logs taken at one source vertex of an edge, shared by
// every vertex whose in-neighborhood contains the edge.
struct SourceSum {
  Vector local;
  double squared = 0.0;
  double nearest = 0.0;
  VertexId nearest_target = 0;
};

using SourceCache = std::vector<std::vector<std::optional<SourceSum>>>;

SourceSum source_sum(const VertexFunction& f, const HyperEdge& edge, VertexId u1,
                     const LaplaceParams& params) {
  const Point& source = f.at(u1);
  const bool isotropic = is_isotropic(params.variant);
  SourceSum r{Vector::Zero(source.coords().size())};
  r.nearest = std::numeric_limits<double>::infinity();
  for (VertexId u2 : edge.out) {
    const TangentVector lg = log_map(source, f.at(u2));
    const double d = lg.norm();
    if (d < r.nearest) {
      r.nearest = d;
      r.nearest_target = u2;
    }
    if (isotropic) {
      r.squared += d * d;
      r.local += lg.coords();
    } else {
      r.local += std::pow(d, params.p - 2.0) * lg.coords();
    }
  }
  return r;
}

TangentVector pairwise_laplacian(const VertexFunction& f, VertexId u,
                                 const LaplaceParams& params, SourceCache* cache) {
  const OrientedHypergraph& g = f.graph();
  const Point& fu = f.at(u);
  const auto nbhd = g.in_neighborhood(u);
  if (nbhd.empty()) return TangentVector::zero(fu);

  const bool isotropic = is_isotropic(params.variant);
  const double p = params.p;
  Vector sum = Vector::Zero(fu.coords().size());
  double aggregate = 0.0;
  for (EdgeIndex e : nbhd) {
    const HyperEdge& edge = g.edge(e);
    const double w = edge.weight;
    const double n_in = static_cast<double>(edge.in.size());
    const double n_out = static_cast<double>(edge.out.size());
    if (!isotropic && w == 0.0) continue;
    const double scale = isotropic
                             ? w / (n_in * n_in * n_out)
                             : std::pow(w, 0.5 * p) / (std::pow(n_in, p) * std::pow(n_out, p - 1.0));
    Vector edge_sum = Vector::Zero(fu.coords().size());
    for (std::size_t i = 0; i < edge.in.size(); ++i) {
      const VertexId u1 = edge.in[i];
      const Point& source = f.at(u1);
      auto where = [&] {
        return "vertex " + std::to_string(u) + ", edge " + std::to_string(e) +
               ", source vertex " + std::to_string(u1);
      };
      std::optional<SourceSum> fresh;
      std::optional<SourceSum>& slot = cache ? (*cache)[e][i] : fresh;
      if (!slot) slot = guarded([&] { return source_sum(f, edge, u1, params); }, where);
      const SourceSum& part = *slot;
      if (isotropic) {
        aggregate += w * part.squared / (n_in * n_in * n_out);
      } else if (p < 2.0 && part.nearest < kCoincidenceEpsilon) {
        coincident(u, e, ("distance f(" + std::to_string(u1) + ") to f(" +
                          std::to_string(part.nearest_target) + ")").c_str());
      }
      const TangentVector partial = TangentVector::projected(source, part.local);
      edge_sum += guarded([&] { return parallel_transport(source, fu, partial); }, where).coords();
    }
    sum += scale * edge_sum;
  }
  if (isotropic && p != 2.0) {
    if (p < 2.0 && std::sqrt(aggregate) < kCoincidenceEpsilon) {
      coincident(u, nbhd.front(), "isotropic aggregate");
    }
    sum *= std::pow(aggregate, 0.5 * (p - 2.0));
  }
  return finish(fu, std::move(sum), nbhd.size(), params.eta);
}

TangentVector vertex_laplacian(const VertexFunction& f, VertexId u, const LaplaceParams& params,
                               const EdgeMeans* means, SourceCache* cache) {
  if (framework_of(params.variant) == Framework::Frechet) {
    return frechet_laplacian(f, u, params, means);
  }
  return pairwise_laplacian(f, u, params, cache);
}

}  // namespace

// ---------------------------------------------------------------------------

VertexFunction::VertexFunction(std::shared_ptr<const OrientedHypergraph> graph,
                               std::vector<Point> values)
    : graph_(std::move(graph)), values_(std::move(values)) {
  if (!graph_) throw DomainError("vertex function needs a hypergraph");
  if (values_.size() != graph_->num_vertices()) {
    throw DomainError("vertex function has " + std::to_string(values_.size()) +
                      " values for " + std::to_string(graph_->num_vertices()) + " vertices");
  }
  for (std::size_t i = 1; i < values_.size(); ++i) {
    if (values_[i].manifold() != values_.front().manifold()) {
      throw DomainError("vertex " + std::to_string(i + 1) + " lies on a different manifold");
    }
  }
}

const Point& VertexFunction::at(VertexId u) const {
  if (u < 1 || u > values_.size()) {
    throw DomainError("vertex " + std::to_string(u) + " outside [1, " +
                      std::to_string(values_.size()) + "]");
  }
  return values_[u - 1];
}

EdgeMeans edge_means(const VertexFunction& f) {
  EdgeMeans means;
  means.reserve(f.graph().num_edges());
  for (EdgeIndex e = 0; e < f.graph().num_edges(); ++e) means.push_back(mean_of_edge(f, e));
  return means;
}

const TangentVector& PairwiseEdgeField::at(EdgeIndex e, VertexId u, VertexId v) const {
  const HyperEdge& edge = graph->edge(e);
  auto iu = std::lower_bound(edge.in.begin(), edge.in.end(), u);
  auto iv = std::lower_bound(edge.out.begin(), edge.out.end(), v);
  if (iu == edge.in.end() || *iu != u || iv == edge.out.end() || *iv != v) {
    throw DomainError("pair (" + std::to_string(u) + ", " + std::to_string(v) +
                      ") is not in edge " + std::to_string(e));
  }
  const auto i = static_cast<std::size_t>(iu - edge.in.begin());
  const auto j = static_cast<std::size_t>(iv - edge.out.begin());
  return entries.at(e).at(i * edge.out.size() + j);
}

FrechetEdgeField frechet_gradient(const VertexFunction& f) {
  const EdgeMeans means = edge_means(f);
  FrechetEdgeField field{f.graph_ptr(), {}};
  field.values.reserve(means.size());
  for (EdgeIndex e = 0; e < means.size(); ++e) {
    try {
      field.values.push_back(std::sqrt(f.graph().edge(e).weight) *
                             log_map(means[e].in, means[e].out));
    } catch (const Error&) {
      rethrow_with_context("edge " + std::to_string(e));
    }
  }
  return field;
}

PairwiseEdgeField pairwise_gradient(const VertexFunction& f) {
  const OrientedHypergraph& g = f.graph();
  PairwiseEdgeField field{f.graph_ptr(), {}};
  field.entries.reserve(g.num_edges());
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
    const HyperEdge& edge = g.edge(e);
    const double scale = std::sqrt(edge.weight) /
                         (static_cast<double>(edge.in.size()) * static_cast<double>(edge.out.size()));
    std::vector<TangentVector> block;
    block.reserve(edge.in.size() * edge.out.size());
    for (VertexId u : edge.in) {
      for (VertexId v : edge.out) {
        try {
          block.push_back(scale * log_map(f.at(u), f.at(v)));
        } catch (const Error&) {
          rethrow_with_context("edge " + std::to_string(e) + ", pair (" + std::to_string(u) +
                               ", " + std::to_string(v) + ")");
        }
      }
    }
    field.entries.push_back(std::move(block));
  }
  return field;
}

double frechet_inner_product(const FrechetEdgeField& h, const FrechetEdgeField& g) {
  require_same_structure(h.graph, g.graph, "frechet_inner_product");
  if (h.values.size() != h.graph->num_edges() || g.values.size() != h.values.size()) {
    throw DomainError("frechet_inner_product: field size does not match edge count");
  }
  double total = 0.0;
  for (std::size_t e = 0; e < h.values.size(); ++e) total += inner(h.values[e], g.values[e]);
  return total;
}

double pairwise_inner_product(const PairwiseEdgeField& h, const PairwiseEdgeField& g) {
  require_same_structure(h.graph, g.graph, "pairwise_inner_product");
  const OrientedHypergraph& graph = *h.graph;
  if (h.entries.size() != graph.num_edges() || g.entries.size() != h.entries.size()) {
    throw DomainError("pairwise_inner_product: field size does not match edge count");
  }
  double total = 0.0;
  for (EdgeIndex e = 0; e < graph.num_edges(); ++e) {
    const std::size_t block = graph.edge(e).in.size() * graph.edge(e).out.size();
    if (h.entries[e].size() != block || g.entries[e].size() != block) {
      throw DomainError("pairwise_inner_product: edge " + std::to_string(e) +
                        " block has the wrong size");
    }
    for (std::size_t k = 0; k < block; ++k) total += inner(h.entries[e][k], g.entries[e][k]);
  }
  return total;
}

double pairwise_semi_inner_product(const PairwiseEdgeField& h, const PairwiseEdgeField& g,
                                   const VertexFunction& f) {
  require_same_structure(h.graph, g.graph, "pairwise_semi_inner_product");
  require_same_structure(h.graph, f.graph_ptr(), "pairwise_semi_inner_product");
  const OrientedHypergraph& graph = f.graph();
  if (h.entries.size() != graph.num_edges() || g.entries.size() != graph.num_edges()) {
    throw DomainError("pairwise_semi_inner_product: field size does not match edge count");
  }

  // PTsum_u of one edge block.
  auto transported_sum = [&](const std::vector<TangentVector>& block, const HyperEdge& edge,
                             EdgeIndex e, VertexId u) {
    const Point& fu = f.at(u);
    if (block.size() != edge.in.size() * edge.out.size()) {
      throw DomainError("pairwise_semi_inner_product: edge " + std::to_string(e) +
                        " block has the wrong size");
    }
    Vector total = Vector::Zero(fu.coords().size());
    for (std::size_t i = 0; i < edge.in.size(); ++i) {
      const Point& source = f.at(edge.in[i]);
      for (std::size_t j = 0; j < edge.out.size(); ++j) {
        const TangentVector& entry = block[i * edge.out.size() + j];
        if (!(entry.base() == source)) {
          throw DomainError("pairwise_semi_inner_product: entry of edge " + std::to_string(e) +
                            " is not anchored at f(" + std::to_string(edge.in[i]) + ")");
        }
        try {
          total += parallel_transport(source, fu, entry).coords();
        } catch (const Error&) {
          rethrow_with_context("edge " + std::to_string(e) + ", vertex " + std::to_string(u) +
                               ", source vertex " + std::to_string(edge.in[i]));
        }
      }
    }
    return TangentVector::projected(fu, std::move(total));
  };

  double result = 0.0;
  for (VertexId u = 1; u <= graph.num_vertices(); ++u) {
    for (EdgeIndex e : graph.in_neighborhood(u)) {
      const HyperEdge& edge = graph.edge(e);
      const TangentVector hs = transported_sum(h.entries[e], edge, e, u);
      const TangentVector gs = &h == &g ? hs : transported_sum(g.entries[e], edge, e, u);
      result += inner(hs, gs) / static_cast<double>(edge.in.size());
    }
  }
  return result;
}

// ---------------------------------------------------------------------------

std::string_view to_string(LaplacianVariant v) {
  switch (v) {
    case LaplacianVariant::IsotropicFrechet:
      return "isotropic-frechet";
    case LaplacianVariant::AnisotropicFrechet:
      return "anisotropic-frechet";
    case LaplacianVariant::IsotropicPairwise:
      return "isotropic-pairwise";
    case LaplacianVariant::AnisotropicPairwise:
      return "anisotropic-pairwise";
  }
  return "unknown";
}

LaplacianVariant parse_laplacian_variant(std::string_view name) {
  for (auto v : {LaplacianVariant::IsotropicFrechet, LaplacianVariant::AnisotropicFrechet,
                 LaplacianVariant::IsotropicPairwise, LaplacianVariant::AnisotropicPairwise}) {
    if (to_string(v) == name) return v;
  }
  throw DomainError("unknown Laplacian variant '" + std::string(name) + "'");
}

Framework framework_of(LaplacianVariant v) {
  return v == LaplacianVariant::IsotropicFrechet || v == LaplacianVariant::AnisotropicFrechet
             ? Framework::Frechet
             : Framework::Pairwise;
}

bool is_isotropic(LaplacianVariant v) {
  return v == LaplacianVariant::IsotropicFrechet || v == LaplacianVariant::IsotropicPairwise;
}

void validate(const LaplaceParams& params) {
  if (!(params.p > 0.0) || !std::isfinite(params.p)) {
    throw DomainError("p must be a finite positive number");
  }
  if (params.eta != 0 && params.eta != 1) throw DomainError("eta must be 0 or 1");
}

TangentVector p_laplacian(const VertexFunction& f, VertexId u, const LaplaceParams& params) {
  validate(params);
  return vertex_laplacian(f, u, params, nullptr, nullptr);
}

std::vector<TangentVector> laplacian_field(const VertexFunction& f, const LaplaceParams& params,
                                           const EdgeMeans& means) {
  validate(params);
  const bool frechet = framework_of(params.variant) == Framework::Frechet;
  if (frechet && means.size() != f.graph().num_edges()) {
    throw DomainError("laplacian_field: edge mean count does not match edge count");
  }
  SourceCache cache;
  if (!frechet) {
    for (const HyperEdge& e : f.graph().edges()) cache.emplace_back(e.in.size());
  }
  std::vector<TangentVector> field;
  field.reserve(f.graph().num_vertices());
  std::exception_ptr first;
  std::ostringstream failures;
  std::size_t failed = 0;
  for (VertexId u = 1; u <= f.graph().num_vertices(); ++u) {
    try {
      field.push_back(vertex_laplacian(f, u, params, frechet ? &means : nullptr, &cache));
    } catch (const Error& err) {
      if (!first) first = std::current_exception();
      failures << (failed++ ? "; " : "") << err.what();
      field.push_back(TangentVector::zero(f.at(u)));
    }
  }
  if (first) {
    try {
      std::rethrow_exception(first);
    } catch (const Error&) {
      rethrow_with_context("laplacian failed at " + std::to_string(failed) + " vertex(es) [" +
                           failures.str() + "]; first");
    }
  }
  return field;
}

std::vector<TangentVector> laplacian_field(const VertexFunction& f, const LaplaceParams& params) {
  validate(params);
  if (framework_of(params.variant) == Framework::Frechet) {
    return laplacian_field(f, params, edge_means(f));
  }
  return laplacian_field(f, params, EdgeMeans{});
}

double dirichlet_energy(const VertexFunction& f, Framework framework) {
  if (framework == Framework::Frechet) {
    const FrechetEdgeField grad = frechet_gradient(f);
    return frechet_inner_product(grad, grad);
  }
  const PairwiseEdgeField grad = pairwise_gradient(f);
  return pairwise_semi_inner_product(grad, grad, f);
}

double standard_inner_product(const VertexFunction& f, const std::vector<TangentVector>& g) {
  if (f.manifold().kind() != ManifoldKind::Euclidean) {
    throw DomainError("standard_inner_product is defined for Euclidean vertex functions only");
  }
  if (g.size() != f.values().size()) {
    throw DomainError("standard_inner_product: size mismatch");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) total += f.values()[i].coords().dot(g[i].coords());
  return total;
}

}  // namespace hyperlap
