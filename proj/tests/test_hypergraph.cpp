#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "hyperlap/errors.hpp"
#include "hyperlap/hypergraph.hpp"

using namespace hyperlap;

namespace {

std::vector<EdgeIndex> neighborhood(const OrientedHypergraph& g, VertexId u) {
  const auto span = g.in_neighborhood(u);
  return {span.begin(), span.end()};
}

}  // namespace

TEST(MakeEdge, ValidatesStructure) {
  EXPECT_THROW(make_edge({}, {1}), DomainError);
  EXPECT_THROW(make_edge({1}, {}), DomainError);
  EXPECT_THROW(make_edge({1, 2}, {2, 3}), DomainError);
  EXPECT_THROW(make_edge({1, 1}, {2}), DomainError);
  EXPECT_THROW(make_edge({1}, {2}, -1.0), DomainError);
  const HyperEdge e = make_edge({3, 1}, {5, 2}, 0.5);
  EXPECT_EQ(e.in, (std::vector<VertexId>{1, 3}));
  EXPECT_EQ(e.out, (std::vector<VertexId>{2, 5}));
}

TEST(Hypergraph, RejectsOutOfRangeAndDuplicates) {
  EXPECT_THROW(OrientedHypergraph(2, {make_edge({1}, {3})}), DomainError);
  EXPECT_THROW(OrientedHypergraph(3, {make_edge({1}, {2}), make_edge({1}, {2}, 2.0)}), DomainError);
}

TEST(InNeighborhood, Example) {
  const OrientedHypergraph g(3, {make_edge({1}, {2}), make_edge({2}, {1, 3})});
  EXPECT_EQ(neighborhood(g, 2), (std::vector<EdgeIndex>{1}));
}

TEST(InNeighborhood, EmptyAndFull) {
  const OrientedHypergraph g(4, {make_edge({1}, {2}), make_edge({1, 3}, {4}), make_edge({1}, {3})});
  EXPECT_TRUE(neighborhood(g, 2).empty());
  EXPECT_EQ(neighborhood(g, 1), (std::vector<EdgeIndex>{0, 1, 2}));
  EXPECT_THROW(g.in_neighborhood(0), DomainError);
  EXPECT_THROW(g.in_neighborhood(5), DomainError);
}

TEST(Opposite, SwapsInAndOut) {
  const OrientedHypergraph g(2, {make_edge({1}, {2})});
  EXPECT_EQ(opposite(g), OrientedHypergraph(2, {make_edge({2}, {1})}));
  const OrientedHypergraph s(2, {make_edge({1}, {2}), make_edge({2}, {1})});
  EXPECT_TRUE(same_edge_set(opposite(s), s));
  EXPECT_EQ(opposite(OrientedHypergraph(3, {})).num_edges(), 0u);
}

TEST(IsSymmetric, Examples) {
  EXPECT_TRUE(is_symmetric(OrientedHypergraph(2, {make_edge({1}, {2}), make_edge({2}, {1})})));
  EXPECT_FALSE(is_symmetric(OrientedHypergraph(2, {make_edge({1}, {2})})));
  EXPECT_FALSE(
      is_symmetric(OrientedHypergraph(2, {make_edge({1}, {2}, 1), make_edge({2}, {1}, 2)})));
}

TEST(Symmetrize, Examples) {
  const OrientedHypergraph one(2, {make_edge({1}, {2})});
  EXPECT_TRUE(same_edge_set(symmetrize(one),
                            OrientedHypergraph(2, {make_edge({1}, {2}), make_edge({2}, {1})})));
  const OrientedHypergraph sym(2, {make_edge({1}, {2}), make_edge({2}, {1})});
  EXPECT_EQ(symmetrize(sym), sym);
  const OrientedHypergraph h(3, {make_edge({1, 2}, {3}, 0.5)});
  const OrientedHypergraph s = symmetrize(h);
  ASSERT_TRUE(s.find({3}, {1, 2}).has_value());
  EXPECT_EQ(s.edge(*s.find({3}, {1, 2})).weight, 0.5);
}

TEST(Symmetrize, ConflictingWeightsThrow) {
  const OrientedHypergraph g(2, {make_edge({1}, {2}, 1), make_edge({2}, {1}, 2)});
  EXPECT_THROW(symmetrize(g), DomainError);
}

TEST(RandomHypergraph, Deterministic) {
  EXPECT_EQ(random_hypergraph(6, 2, 2, 42), random_hypergraph(6, 2, 2, 42));
}

TEST(RandomHypergraph, SymmetricDisjointAndBounded) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const OrientedHypergraph g = random_hypergraph(15, 6, 4, seed);
    EXPECT_TRUE(is_symmetric(g));
    for (const HyperEdge& e : g.edges()) {
      EXPECT_LE(e.in.size(), 4u);
      EXPECT_LE(e.out.size(), 4u);
      EXPECT_EQ(e.weight, 1.0);
    }
  }
}

TEST(RandomHypergraph, CardinalityOneIsGraph) {
  const OrientedHypergraph g = random_hypergraph(8, 6, 1, 3);
  EXPECT_TRUE(g.is_graph());
  EXPECT_TRUE(is_symmetric(g));
}

TEST(RandomHypergraph, DomainErrors) {
  EXPECT_THROW(random_hypergraph(5, 2, 3, 1), DomainError);
  EXPECT_THROW(random_hypergraph(1, 2, 1, 1), DomainError);
  EXPECT_THROW(random_hypergraph(5, 0, 1, 1), DomainError);
  EXPECT_THROW(random_hypergraph(5, 2, 0, 1), DomainError);
}

TEST(ExpandToGraph, Examples) {
  const OrientedHypergraph a(3, {make_edge({1}, {2, 3})});
  EXPECT_EQ(expand_to_graph(a), OrientedHypergraph(3, {make_edge({1}, {2}), make_edge({1}, {3})}));

  const OrientedHypergraph g(3, {make_edge({1}, {2}), make_edge({2}, {3})});
  EXPECT_EQ(expand_to_graph(g), g);

  const OrientedHypergraph b(4, {make_edge({1, 2}, {3, 4})});
  EXPECT_EQ(expand_to_graph(b),
            OrientedHypergraph(4, {make_edge({1}, {3}), make_edge({1}, {4}), make_edge({2}, {3}),
                                   make_edge({2}, {4})}));
}

TEST(ExpandToGraph, KeepsSymmetry) {
  const OrientedHypergraph g = random_hypergraph(12, 5, 4, 9);
  const OrientedHypergraph x = expand_to_graph(g);
  EXPECT_TRUE(x.is_graph());
  EXPECT_TRUE(is_symmetric(x));
}

TEST(CardinalityHistogram, SumsToEdgeCount) {
  const OrientedHypergraph g = random_hypergraph(12, 7, 4, 5);
  const auto h = cardinality_histogram(g);
  EXPECT_EQ(std::accumulate(h.begin(), h.end(), std::size_t{0}), g.num_edges());
}
