#include "hyperlap/checks.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <sstream>

#include "hyperlap/errors.hpp"

namespace hyperlap {
namespace {

constexpr LaplacianVariant kVariants[] = {
    LaplacianVariant::IsotropicFrechet, LaplacianVariant::AnisotropicFrechet,
    LaplacianVariant::IsotropicPairwise, LaplacianVariant::AnisotropicPairwise};

Vector normal_vector(Eigen::Index n, Rng& rng) {
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = rng.normal();
  return v;
}

double difference_norm(const TangentVector& a, const TangentVector& b) {
  return std::sqrt(std::max(0.0, a.manifold().inner(a.coords() - b.coords(),
                                                    a.coords() - b.coords())));
}

bool constant_on(const VertexFunction& f, const HyperEdge& e) {
  const Point& first = f.at(e.in.front());
  auto same = [&](VertexId v) { return f.at(v) == first; };
  return std::all_of(e.in.begin(), e.in.end(), same) &&
         std::all_of(e.out.begin(), e.out.end(), same);
}

LaplaceParams params_for(LaplacianVariant v, double p, int eta) { return LaplaceParams{p, eta, v}; }

LaplacianVariant isotropic_variant(Framework fw) {
  return fw == Framework::Frechet ? LaplacianVariant::IsotropicFrechet
                                  : LaplacianVariant::IsotropicPairwise;
}

LaplacianVariant anisotropic_variant(Framework fw) {
  return fw == Framework::Frechet ? LaplacianVariant::AnisotropicFrechet
                                  : LaplacianVariant::AnisotropicPairwise;
}

// Replaces unit weights by random ones, equal on each edge / reverse pair.
OrientedHypergraph with_random_weights(const OrientedHypergraph& g, Rng& rng) {
  std::vector<HyperEdge> edges = g.edges();
  for (EdgeIndex i = 0; i < edges.size(); ++i) {
    const auto j = g.find(edges[i].out, edges[i].in);
    edges[i].weight = (j && *j < i) ? edges[*j].weight : rng.uniform(0.5, 2.0);
  }
  return OrientedHypergraph(g.num_vertices(), std::move(edges));
}

std::string format_exponent(double p) {
  std::ostringstream os;
  os << p;
  return os.str();
}

}  // namespace

Point random_point(const Manifold& m, Rng& rng, double radius) {
  switch (m.kind()) {
    case ManifoldKind::Euclidean:
      return Point::projected(m, radius * normal_vector(m.ambient_dim(), rng));
    case ManifoldKind::Sphere: {
      Vector v;
      do {
        v = normal_vector(m.ambient_dim(), rng);
      } while (v.norm() < 1e-6);
      return Point::projected(m, std::move(v));
    }
    case ManifoldKind::Hyperbolic: {
      Vector origin = Vector::Zero(m.ambient_dim());
      origin[m.dim()] = 1.0;
      return random_point_near(Point(m, std::move(origin)), radius, rng);
    }
  }
  throw DomainError("random_point: unknown manifold");
}

TangentVector random_tangent(const Point& base, Rng& rng, double scale) {
  return scale * TangentVector::projected(base, normal_vector(base.coords().size(), rng));
}

Point random_point_near(const Point& center, double radius, Rng& rng) {
  TangentVector direction = random_tangent(center, rng);
  while (direction.norm() < 1e-6) direction = random_tangent(center, rng);
  const double length = rng.uniform(0.0, radius);
  return exp_map(center, (length / direction.norm()) * direction);
}

VertexFunction random_instance(const Manifold& m, std::uint64_t seed,
                               const InstanceOptions& options) {
  Rng rng(seed);
  const std::size_t n = static_cast<std::size_t>(
      rng.uniform_int(std::max<std::size_t>(2, options.min_vertices), options.max_vertices));
  const std::size_t c = static_cast<std::size_t>(
      rng.uniform_int(1, std::max<std::size_t>(1, std::min(options.max_cardinality, n / 2))));
  const std::size_t edges = static_cast<std::size_t>(rng.uniform_int(1, options.max_edges));
  OrientedHypergraph g = random_hypergraph(n, edges, c, rng.next_u64());
  if (options.random_weights) g = with_random_weights(g, rng);
  auto graph = std::make_shared<const OrientedHypergraph>(std::move(g));

  const Point center = random_point(m, rng, 1.0);
  std::vector<Point> values;
  values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    values.push_back(random_point_near(center, options.feature_radius, rng));
  }
  for (const HyperEdge& e : graph->edges()) {
    if (rng.uniform01() >= options.constant_edge_probability) continue;
    const Point value = values[e.in.front() - 1];
    for (VertexId v : e.in) values[v - 1] = value;
    for (VertexId v : e.out) values[v - 1] = value;
  }
  return VertexFunction(std::move(graph), std::move(values));
}

GeometryErrors geometry_errors(const Manifold& m, std::uint64_t seed, std::size_t samples) {
  Rng rng(seed);
  GeometryErrors err;
  // Stay clear of the sphere's cut locus at distance pi.
  const double reach = m.kind() == ManifoldKind::Sphere ? 3.0 : 2.5;
  for (std::size_t s = 0; s < samples; ++s) {
    const Point x = random_point(m, rng, 1.5);
    const Point y = random_point_near(x, reach, rng);
    const TangentVector l = log_map(x, y);
    const Point back = exp_map(x, l);
    err.exp_log = std::max(err.exp_log, (back.coords() - y.coords()).lpNorm<Eigen::Infinity>());
    err.distance_log = std::max(err.distance_log, std::abs(distance(x, y) - l.norm()));

    const TangentVector v = random_tangent(x, rng);
    const TangentVector w = random_tangent(x, rng);
    const TangentVector pv = parallel_transport(x, y, v);
    const TangentVector pw = parallel_transport(x, y, w);
    err.transport_norm = std::max(err.transport_norm, std::abs(pv.norm() - v.norm()));
    err.transport_inner = std::max(err.transport_inner, std::abs(inner(pv, pw) - inner(v, w)));
  }
  return err;
}

double constant_frechet_gradient_error(const VertexFunction& f) {
  const FrechetEdgeField grad = frechet_gradient(f);
  double worst = 0.0;
  for (EdgeIndex e = 0; e < f.graph().num_edges(); ++e) {
    if (constant_on(f, f.graph().edge(e))) worst = std::max(worst, grad.values[e].norm());
  }
  return worst;
}

double frechet_antisymmetry_error(const VertexFunction& f, const TransportFn& transport) {
  const OrientedHypergraph& g = f.graph();
  const FrechetEdgeField grad = frechet_gradient(f);
  const EdgeMeans means = edge_means(f);
  double worst = 0.0;
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
    const auto r = g.find(g.edge(e).out, g.edge(e).in);
    if (!r) throw DomainError("frechet_antisymmetry_error: hypergraph is not symmetric");
    const TangentVector back = transport(means[e].out, means[e].in, grad.values[*r]);
    worst = std::max(worst, (grad.values[e].coords() + back.coords()).norm());
  }
  return worst;
}

KernelCheck pairwise_kernel_check(const VertexFunction& f, double separation) {
  const OrientedHypergraph& g = f.graph();
  const PairwiseEdgeField grad = pairwise_gradient(f);
  KernelCheck check;
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
    const HyperEdge& edge = g.edge(e);
    double largest_entry = 0.0;
    for (const TangentVector& t : grad.entries[e]) largest_entry = std::max(largest_entry, t.norm());
    if (constant_on(f, edge)) {
      ++check.constant_edges;
      check.forward_error = std::max(check.forward_error, largest_entry);
      continue;
    }
    bool separated = false;
    for (VertexId u : edge.in) {
      for (VertexId v : edge.out) separated |= distance(f.at(u), f.at(v)) > separation;
    }
    if (separated) {
      ++check.separated_edges;
      if (!(largest_entry > 0.0)) ++check.reverse_violations;
    }
  }
  return check;
}

double pairwise_antisymmetry_error(const VertexFunction& f, const TransportFn& transport) {
  const OrientedHypergraph& g = f.graph();
  const PairwiseEdgeField grad = pairwise_gradient(f);
  double worst = 0.0;
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
    const HyperEdge& edge = g.edge(e);
    const auto r = g.find(edge.out, edge.in);
    if (!r) throw DomainError("pairwise_antisymmetry_error: hypergraph is not symmetric");
    for (VertexId u : edge.in) {
      for (VertexId v : edge.out) {
        // The reverse entry lives at f(v); carry it back along the same
        // geodesic to f(u).
        const TangentVector back = transport(f.at(v), f.at(u), grad.at(*r, v, u));
        worst = std::max(worst, (grad.at(e, u, v).coords() + back.coords()).norm());
      }
    }
  }
  return worst;
}

double p2_coincidence_error(const VertexFunction& f) {
  double worst = 0.0;
  for (Framework fw : {Framework::Frechet, Framework::Pairwise}) {
    for (int eta : {0, 1}) {
      const auto iso = laplacian_field(f, params_for(isotropic_variant(fw), 2.0, eta));
      const auto aniso = laplacian_field(f, params_for(anisotropic_variant(fw), 2.0, eta));
      for (std::size_t i = 0; i < iso.size(); ++i) {
        worst = std::max(worst, difference_norm(iso[i], aniso[i]));
      }
    }
  }
  return worst;
}

std::size_t eta_scaling_mismatches(const VertexFunction& f, std::span<const double> ps) {
  std::size_t mismatches = 0;
  for (LaplacianVariant v : kVariants) {
    for (double p : ps) {
      const auto plain = laplacian_field(f, params_for(v, p, 0));
      const auto normalized = laplacian_field(f, params_for(v, p, 1));
      for (VertexId u = 1; u <= f.graph().num_vertices(); ++u) {
        const std::size_t degree = f.graph().in_degree(u);
        if (degree == 0) continue;
        const Vector expected = plain[u - 1].coords() / static_cast<double>(degree);
        if (expected != normalized[u - 1].coords()) ++mismatches;
      }
    }
  }
  return mismatches;
}

double dirichlet_pairing_error(const VertexFunction& f, Framework framework) {
  const double energy = dirichlet_energy(f, framework);
  const auto lap = laplacian_field(f, params_for(isotropic_variant(framework), 2.0, 0));
  const double pairing = standard_inner_product(f, lap);
  return std::abs(energy - 2.0 * pairing) / (1.0 + energy);
}

TangentVector reference_graph_laplacian(const VertexFunction& f, VertexId u,
                                        const LaplaceParams& params) {
  const Point& fu = f.at(u);
  std::vector<std::pair<VertexId, double>> neighbors;
  for (const HyperEdge& e : f.graph().edges()) {
    if (e.in.size() != 1 || e.out.size() != 1) {
      throw DomainError("reference_graph_laplacian: hypergraph is not graph-shaped");
    }
    if (e.in[0] == u) neighbors.emplace_back(e.out[0], e.weight);
  }
  if (neighbors.empty()) return TangentVector::zero(fu);

  const double p = params.p;
  Vector sum = Vector::Zero(fu.coords().size());
  if (is_isotropic(params.variant)) {
    double gradient_sq = 0.0;
    for (auto [v, w] : neighbors) {
      const TangentVector l = log_map(fu, f.at(v));
      gradient_sq += w * l.norm() * l.norm();
      sum += w * l.coords();
    }
    sum *= std::pow(gradient_sq, 0.5 * (p - 2.0));
  } else {
    for (auto [v, w] : neighbors) {
      const TangentVector l = log_map(fu, f.at(v));
      sum += std::pow(w, 0.5 * p) * std::pow(l.norm(), p - 2.0) * l.coords();
    }
  }
  const double normalizer = params.eta == 1 ? static_cast<double>(neighbors.size()) : 1.0;
  return TangentVector::projected(fu, -sum / normalizer);
}

double graph_reduction_error(const VertexFunction& f, double p) {
  double worst = 0.0;
  for (LaplacianVariant v : kVariants) {
    for (int eta : {0, 1}) {
      const LaplaceParams params = params_for(v, p, eta);
      const auto field = laplacian_field(f, params);
      for (VertexId u = 1; u <= f.graph().num_vertices(); ++u) {
        worst = std::max(worst,
                         difference_norm(field[u - 1], reference_graph_laplacian(f, u, params)));
      }
    }
  }
  return worst;
}

// ---------------------------------------------------------------------------

bool CheckReport::passed() const {
  return std::all_of(results.begin(), results.end(),
                     [](const PropertyResult& r) { return r.passed; });
}

CheckReport run_checks(const CheckOptions& options) {
  CheckReport report;
  for (ManifoldKind kind : options.kinds) {
    const Manifold m(kind, kind == ManifoldKind::Euclidean ? 3 : 2);
    const std::string label = m.describe();
    std::map<std::string, PropertyResult> results;
    std::vector<std::string> order;
    auto record = [&](const std::string& name, double tolerance, double error,
                      std::uint64_t seed) {
      auto [it, fresh] = results.try_emplace(name);
      PropertyResult& r = it->second;
      if (fresh) {
        order.push_back(name);
        r = PropertyResult{name, label, 0, 0.0, tolerance, true, seed};
      }
      ++r.instances;
      const bool ok = error <= tolerance;
      if ((r.passed && !ok) || (r.passed == ok && error > r.max_error)) r.worst_seed = seed;
      r.max_error = std::max(r.max_error, error);
      r.passed = r.passed && ok;
    };

    InstanceOptions instance;
    instance.max_vertices = options.max_vertices;
    instance.max_cardinality = options.max_cardinality;
    InstanceOptions generic = instance;
    generic.constant_edge_probability = 0.0;
    InstanceOptions graph_like = generic;
    graph_like.max_cardinality = 1;

    const double exponents[] = {1.5, 2.0, 3.0};
    for (std::size_t k = 0; k < options.seeds; ++k) {
      const std::uint64_t seed = options.base_seed + k;
      const GeometryErrors geo = geometry_errors(m, seed, 20);
      record("exp/log inversion", 1e-9, geo.exp_log, seed);
      record("transport isometry (norm)", 1e-10, geo.transport_norm, seed);
      record("transport isometry (inner product)", 1e-10, geo.transport_inner, seed);
      record("distance = |log|", 1e-10, geo.distance_log, seed);

      const VertexFunction f = random_instance(m, seed, instance);
      record("frechet gradient vanishes on constant edges", 1e-10,
             constant_frechet_gradient_error(f), seed);
      record("frechet gradient antisymmetry", 1e-9, frechet_antisymmetry_error(f), seed);
      const KernelCheck kernel = pairwise_kernel_check(f);
      record("pairwise gradient kernel (forward)", 1e-10, kernel.forward_error, seed);
      record("pairwise gradient kernel (reverse violations)", 0.0,
             static_cast<double>(kernel.reverse_violations), seed);
      record("pairwise gradient antisymmetry", 1e-9, pairwise_antisymmetry_error(f), seed);
      record("isotropic = anisotropic at p = 2", 1e-10, p2_coincidence_error(f), seed);

      const double p2[] = {2.0};
      record("eta = 1 is eta = 0 / in-degree (mismatches)", 0.0,
             static_cast<double>(eta_scaling_mismatches(f, p2)), seed);
      const VertexFunction h = random_instance(m, seed, generic);
      record("eta = 1 is eta = 0 / in-degree, p in {1.5, 3} (mismatches)", 0.0,
             static_cast<double>(eta_scaling_mismatches(h, std::span(exponents).subspan(0, 1)) +
                                 eta_scaling_mismatches(h, std::span(exponents).subspan(2, 1))),
             seed);

      const VertexFunction graph = random_instance(m, seed, graph_like);
      for (double p : exponents) {
        record("graph reduction p = " + format_exponent(p), 1e-10, graph_reduction_error(graph, p),
               seed);
      }

      if (kind == ManifoldKind::Euclidean) {
        record("dirichlet pairing (frechet)", 1e-9, dirichlet_pairing_error(f, Framework::Frechet),
               seed);
        record("dirichlet pairing (pairwise)", 1e-9,
               dirichlet_pairing_error(f, Framework::Pairwise), seed);
      }
    }
    for (const std::string& name : order) report.results.push_back(results[name]);
  }
  return report;
}

}  // namespace hyperlap
