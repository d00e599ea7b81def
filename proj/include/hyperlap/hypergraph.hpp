#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace hyperlap {

/// Vertex ids are 1-based: a hypergraph on N vertices uses ids 1..N.
using VertexId = std::uint32_t;
/// Edge indices are 0-based positions in OrientedHypergraph::edges().
using EdgeIndex = std::size_t;

/// Oriented hyperedge (in_set, out_set) with a nonnegative weight.
struct HyperEdge {
  std::vector<VertexId> in;
  std::vector<VertexId> out;
  double weight = 1.0;

  friend bool operator==(const HyperEdge&, const HyperEdge&) = default;
};

/// Builds an edge with sorted vertex sets. Throws DomainError if a set is
/// empty or has repeated ids, if the sets intersect, or if the weight is
/// negative or not finite.
HyperEdge make_edge(std::vector<VertexId> in, std::vector<VertexId> out, double weight = 1.0);

/// The same edge with in and out sets swapped.
HyperEdge reversed(const HyperEdge& e);

/// Immutable weighted oriented hypergraph with an in-neighborhood index.
class OrientedHypergraph {
 public:
  /// Validates every edge (see make_edge), ids in [1, num_vertices], and the
  /// absence of duplicate (in, out) pairs. Throws DomainError.
  OrientedHypergraph(std::size_t num_vertices, std::vector<HyperEdge> edges);

  std::size_t num_vertices() const noexcept { return num_vertices_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  const std::vector<HyperEdge>& edges() const noexcept { return edges_; }
  const HyperEdge& edge(EdgeIndex e) const { return edges_.at(e); }

  /// Edges whose in-set contains u, in increasing edge order.
  /// Throws DomainError for ids outside [1, N].
  std::span<const EdgeIndex> in_neighborhood(VertexId u) const;
  std::size_t in_degree(VertexId u) const { return in_neighborhood(u).size(); }

  /// Index of the edge with exactly these (sorted) sets, if present.
  std::optional<EdgeIndex> find(const std::vector<VertexId>& in,
                                const std::vector<VertexId>& out) const;

  /// True when every edge has singleton in- and out-sets.
  bool is_graph() const;

  friend bool operator==(const OrientedHypergraph& a, const OrientedHypergraph& b) {
    return a.num_vertices_ == b.num_vertices_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t num_vertices_;
  std::vector<HyperEdge> edges_;
  std::vector<std::vector<EdgeIndex>> in_index_;
  std::map<std::pair<std::vector<VertexId>, std::vector<VertexId>>, EdgeIndex> lookup_;
};

/// Equality of the weighted edge sets, ignoring edge order.
bool same_edge_set(const OrientedHypergraph& a, const OrientedHypergraph& b);

/// Every edge reversed, weights kept, edge order kept.
OrientedHypergraph opposite(const OrientedHypergraph& g);

/// True iff every edge's reverse is present with equal weight.
bool is_symmetric(const OrientedHypergraph& g);

/// Union of g and its opposite. Original edges keep their order; missing
/// reverses are appended in the order of their source edges. Throws
/// DomainError if a reverse already exists with a different weight.
OrientedHypergraph symmetrize(const OrientedHypergraph& g);

/// Random unit-weight symmetric hypergraph.
///
/// Draws `num_edges` base edges: in/out cardinalities uniform in
/// [1, max_cardinality], vertices sampled without replacement so that the two
/// sets are disjoint. Repeated base edges collapse to one; the result is then
/// symmetrized. Deterministic in `seed`.
/// Throws DomainError if num_vertices < 2, num_edges < 1, max_cardinality < 1,
/// or 2 * max_cardinality > num_vertices.
OrientedHypergraph random_hypergraph(std::size_t num_vertices, std::size_t num_edges,
                                     std::size_t max_cardinality, std::uint64_t seed);

/// Graph expansion: one unit-weight edge ({u},{v}) per edge e and pair
/// u in e.in, v in e.out, first occurrence kept.
OrientedHypergraph expand_to_graph(const OrientedHypergraph& g);

/// histogram[k] = number of edges with |in| + |out| == k.
std::vector<std::size_t> cardinality_histogram(const OrientedHypergraph& g);

}  // namespace hyperlap
