#include "hyperlap/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>
#include <tuple>

#include "hyperlap/errors.hpp"
#include "hyperlap/random.hpp"

namespace hyperlap {
namespace {

void normalize_set(std::vector<VertexId>& ids, const char* which) {
  if (ids.empty()) throw DomainError(std::string("hyperedge ") + which + "-set is empty");
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw DomainError(std::string("hyperedge ") + which + "-set repeats a vertex");
  }
}

std::string edge_label(EdgeIndex i) { return "edge " + std::to_string(i); }

}  // namespace

HyperEdge make_edge(std::vector<VertexId> in, std::vector<VertexId> out, double weight) {
  normalize_set(in, "in");
  normalize_set(out, "out");
  std::vector<VertexId> common;
  std::set_intersection(in.begin(), in.end(), out.begin(), out.end(),
                        std::back_inserter(common));
  if (!common.empty()) {
    throw DomainError("hyperedge in- and out-sets share vertex " + std::to_string(common[0]));
  }
  if (!(weight >= 0.0) || !std::isfinite(weight)) {
    throw DomainError("hyperedge weight must be finite and nonnegative");
  }
  return HyperEdge{std::move(in), std::move(out), weight};
}

HyperEdge reversed(const HyperEdge& e) { return HyperEdge{e.out, e.in, e.weight}; }

OrientedHypergraph::OrientedHypergraph(std::size_t num_vertices, std::vector<HyperEdge> edges)
    : num_vertices_(num_vertices), in_index_(num_vertices) {
  if (num_vertices == 0) throw DomainError("hypergraph needs at least one vertex");
  edges_.reserve(edges.size());
  for (EdgeIndex i = 0; i < edges.size(); ++i) {
    HyperEdge e;
    try {
      e = make_edge(std::move(edges[i].in), std::move(edges[i].out), edges[i].weight);
    } catch (const DomainError& err) {
      throw DomainError(edge_label(i) + ": " + err.what());
    }
    if (e.in.front() < 1 || e.out.front() < 1 || e.in.back() > num_vertices ||
        e.out.back() > num_vertices) {
      throw DomainError(edge_label(i) + ": vertex id outside [1, " +
                        std::to_string(num_vertices) + "]");
    }
    auto [it, inserted] = lookup_.emplace(std::make_pair(e.in, e.out), i);
    if (!inserted) {
      throw DomainError(edge_label(i) + " duplicates " + edge_label(it->second));
    }
    for (VertexId u : e.in) in_index_[u - 1].push_back(i);
    edges_.push_back(std::move(e));
  }
}

std::span<const EdgeIndex> OrientedHypergraph::in_neighborhood(VertexId u) const {
  if (u < 1 || u > num_vertices_) {
    throw DomainError("vertex " + std::to_string(u) + " outside [1, " +
                      std::to_string(num_vertices_) + "]");
  }
  return in_index_[u - 1];
}

std::optional<EdgeIndex> OrientedHypergraph::find(const std::vector<VertexId>& in,
                                                  const std::vector<VertexId>& out) const {
  auto it = lookup_.find(std::make_pair(in, out));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

bool OrientedHypergraph::is_graph() const {
  return std::all_of(edges_.begin(), edges_.end(),
                     [](const HyperEdge& e) { return e.in.size() == 1 && e.out.size() == 1; });
}

bool same_edge_set(const OrientedHypergraph& a, const OrientedHypergraph& b) {
  if (a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges()) return false;
  for (const HyperEdge& e : a.edges()) {
    auto j = b.find(e.in, e.out);
    if (!j || b.edge(*j).weight != e.weight) return false;
  }
  return true;
}

OrientedHypergraph opposite(const OrientedHypergraph& g) {
  std::vector<HyperEdge> edges;
  edges.reserve(g.num_edges());
  for (const HyperEdge& e : g.edges()) edges.push_back(reversed(e));
  return OrientedHypergraph(g.num_vertices(), std::move(edges));
}

bool is_symmetric(const OrientedHypergraph& g) {
  for (const HyperEdge& e : g.edges()) {
    auto j = g.find(e.out, e.in);
    if (!j || g.edge(*j).weight != e.weight) return false;
  }
  return true;
}

OrientedHypergraph symmetrize(const OrientedHypergraph& g) {
  std::vector<HyperEdge> edges = g.edges();
  for (EdgeIndex i = 0; i < g.num_edges(); ++i) {
    const HyperEdge& e = g.edge(i);
    if (auto j = g.find(e.out, e.in)) {
      if (g.edge(*j).weight != e.weight) {
        throw DomainError("symmetrize: edge " + std::to_string(i) + " and its reverse (edge " +
                          std::to_string(*j) + ") have different weights");
      }
      continue;
    }
    edges.push_back(reversed(e));
  }
  return OrientedHypergraph(g.num_vertices(), std::move(edges));
}

OrientedHypergraph random_hypergraph(std::size_t num_vertices, std::size_t num_edges,
                                     std::size_t max_cardinality, std::uint64_t seed) {
  if (num_vertices < 2) throw DomainError("random_hypergraph: need at least 2 vertices");
  if (num_edges < 1) throw DomainError("random_hypergraph: need at least 1 edge");
  if (max_cardinality < 1) throw DomainError("random_hypergraph: max cardinality must be >= 1");
  if (2 * max_cardinality > num_vertices) {
    throw DomainError("random_hypergraph: 2 * max_cardinality exceeds the vertex count, "
                      "disjoint in/out sets are impossible");
  }

  Rng rng(seed);
  std::vector<VertexId> pool(num_vertices);
  std::iota(pool.begin(), pool.end(), VertexId{1});

  std::vector<HyperEdge> base;
  std::set<std::pair<std::vector<VertexId>, std::vector<VertexId>>> seen;
  for (std::size_t k = 0; k < num_edges; ++k) {
    const auto n_in = static_cast<std::size_t>(rng.uniform_int(1, max_cardinality));
    const auto n_out = static_cast<std::size_t>(rng.uniform_int(1, max_cardinality));
    // Partial Fisher-Yates: the first n_in + n_out slots become a uniform
    // sample without replacement.
    for (std::size_t j = 0; j < n_in + n_out; ++j) {
      std::swap(pool[j], pool[rng.uniform_int(j, num_vertices - 1)]);
    }
    std::vector<VertexId> in(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n_in));
    std::vector<VertexId> out(pool.begin() + static_cast<std::ptrdiff_t>(n_in),
                              pool.begin() + static_cast<std::ptrdiff_t>(n_in + n_out));
    HyperEdge e = make_edge(std::move(in), std::move(out), 1.0);
    // A repeat, or the reverse of an earlier edge, adds nothing after
    // symmetrization.
    if (seen.count({e.in, e.out}) || seen.count({e.out, e.in})) continue;
    seen.emplace(e.in, e.out);
    base.push_back(std::move(e));
  }
  return symmetrize(OrientedHypergraph(num_vertices, std::move(base)));
}

OrientedHypergraph expand_to_graph(const OrientedHypergraph& g) {
  std::vector<HyperEdge> edges;
  std::set<std::pair<VertexId, VertexId>> seen;
  for (const HyperEdge& e : g.edges()) {
    for (VertexId u : e.in) {
      for (VertexId v : e.out) {
        if (seen.emplace(u, v).second) edges.push_back(HyperEdge{{u}, {v}, 1.0});
      }
    }
  }
  return OrientedHypergraph(g.num_vertices(), std::move(edges));
}

std::vector<std::size_t> cardinality_histogram(const OrientedHypergraph& g) {
  std::vector<std::size_t> histogram;
  for (const HyperEdge& e : g.edges()) {
    const std::size_t k = e.in.size() + e.out.size();
    if (histogram.size() <= k) histogram.resize(k + 1, 0);
    ++histogram[k];
  }
  return histogram;
}

}  // namespace hyperlap
