#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "hyperlap/calculus.hpp"
#include "hyperlap/checks.hpp"
#include "hyperlap/errors.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace hyperlap;
using hyperlap::test::graph;
using hyperlap::test::pt;
using hyperlap::test::scalar_function;
using hyperlap::test::vec;

namespace {

const Manifold S2 = Manifold::sphere(2);
constexpr LaplacianVariant kAll[] = {
    LaplacianVariant::IsotropicFrechet, LaplacianVariant::AnisotropicFrechet,
    LaplacianVariant::IsotropicPairwise, LaplacianVariant::AnisotropicPairwise};

}  // namespace

TEST(EdgeMeans, Examples) {
  const Manifold r1 = Manifold::euclidean(1);
  const auto f = scalar_function(graph(3, {make_edge({1}, {2, 3})}), {7, 1, 3});
  const EdgeMeans means = edge_means(f);
  EXPECT_EQ(means[0].in.coords()[0], 7.0);
  EXPECT_EQ(means[0].out.coords()[0], 2.0);

  const VertexFunction s(graph(3, {make_edge({1, 2}, {3})}),
                         {pt(S2, {0, 0, 1}), pt(S2, {1, 0, 0}), pt(S2, {0, 1, 0})});
  const Vector expected = vec({1 / std::sqrt(2.0), 0, 1 / std::sqrt(2.0)});
  EXPECT_LE((edge_means(s)[0].in.coords() - expected).norm(), 1e-12);
}

TEST(FrechetGradient, SphereGraphEdge) {
  const VertexFunction f(graph(2, {make_edge({1}, {2})}), {pt(S2, {0, 0, 1}), pt(S2, {1, 0, 0})});
  const FrechetEdgeField g = frechet_gradient(f);
  EXPECT_LE((g.values[0].coords() - vec({std::numbers::pi / 2, 0, 0})).norm(), 1e-14);
  EXPECT_EQ(g.values[0].base(), f.at(1));
}

TEST(FrechetGradient, ConstantEdgeIsZero) {
  const Point x = pt(S2, {0, 0.6, 0.8});
  const VertexFunction f(graph(3, {make_edge({1}, {2, 3})}), {x, x, x});
  EXPECT_EQ(frechet_gradient(f).values[0].norm(), 0.0);
}

TEST(FrechetGradient, WeightedEuclidean) {
  const auto f = scalar_function(graph(3, {make_edge({1}, {2, 3}, 4.0)}), {0, 1, 3});
  EXPECT_EQ(frechet_gradient(f).values[0].coords()[0], 4.0);
}

TEST(PairwiseGradient, GraphEdge) {
  const auto f = scalar_function(graph(2, {make_edge({1}, {2})}), {0, 5});
  EXPECT_EQ(pairwise_gradient(f).at(0, 1, 2).coords()[0], 5.0);
}

TEST(PairwiseGradient, AveragesByCardinality) {
  const auto f = scalar_function(graph(3, {make_edge({1, 2}, {3})}), {0, 2, 4});
  const PairwiseEdgeField g = pairwise_gradient(f);
  EXPECT_EQ(g.at(0, 1, 3).coords()[0], 2.0);
  EXPECT_EQ(g.at(0, 2, 3).coords()[0], 1.0);
  EXPECT_THROW(g.at(0, 3, 1), DomainError);
}

TEST(PairwiseGradient, ConstantEdgeIsZero) {
  const Point x = pt(S2, {0.6, 0, 0.8});
  const VertexFunction f(graph(4, {make_edge({1, 2}, {3, 4})}), {x, x, x, x});
  const PairwiseEdgeField g = pairwise_gradient(f);
  for (const TangentVector& v : g.entries[0]) EXPECT_EQ(v.norm(), 0.0);
}

TEST(InnerProducts, ZeroAndSelf) {
  const auto zero = scalar_function(graph(2, {make_edge({1}, {2})}), {1, 1});
  const auto g0 = frechet_gradient(zero);
  EXPECT_EQ(frechet_inner_product(g0, g0), 0.0);

  const Manifold r2 = Manifold::euclidean(2);
  const VertexFunction f(graph(2, {make_edge({1}, {2})}), {pt(r2, {0, 0}), pt(r2, {3, 4})});
  const auto g = frechet_gradient(f);
  EXPECT_EQ(frechet_inner_product(g, g), 25.0);
  const auto p = pairwise_gradient(f);
  EXPECT_EQ(pairwise_inner_product(p, p), 25.0);
  const auto pz = pairwise_gradient(zero);
  EXPECT_EQ(pairwise_semi_inner_product(pz, pz, zero), 0.0);
}

TEST(InnerProducts, Bilinear) {
  const auto f = scalar_function(graph(3, {make_edge({1}, {2, 3}), make_edge({2, 3}, {1})}), {0, 1, 3});
  const auto gf = frechet_gradient(f);
  FrechetEdgeField gh = gf;
  for (std::size_t i = 0; i < gh.values.size(); ++i) {
    gh.values[i] = TangentVector(gf.values[i].base(), gf.values[i].coords() * -0.5 + vec({1.0}));
  }
  FrechetEdgeField sum = gf;
  for (std::size_t i = 0; i < sum.values.size(); ++i) sum.values[i] = gf.values[i] + gh.values[i];
  EXPECT_DOUBLE_EQ(frechet_inner_product(sum, gh),
                   frechet_inner_product(gf, gh) + frechet_inner_product(gh, gh));
  EXPECT_DOUBLE_EQ(frechet_inner_product(gf, gh), frechet_inner_product(gh, gf));
}

TEST(InnerProducts, MismatchedStructure) {
  const auto a = scalar_function(graph(2, {make_edge({1}, {2})}), {0, 1});
  const auto b = scalar_function(graph(3, {make_edge({1}, {2, 3})}), {0, 1, 2});
  EXPECT_THROW(frechet_inner_product(frechet_gradient(a), frechet_gradient(b)), DomainError);
  EXPECT_THROW(pairwise_inner_product(pairwise_gradient(a), pairwise_gradient(b)), DomainError);
}

TEST(Laplacian, HandExample) {
  const auto f = scalar_function(graph(3, {make_edge({1}, {2, 3})}), {0, 1, 3});
  const LaplaceParams frechet{2.0, 0, LaplacianVariant::IsotropicFrechet};
  const LaplaceParams pairwise{2.0, 0, LaplacianVariant::IsotropicPairwise};
  EXPECT_EQ(p_laplacian(f, 1, frechet).coords()[0], -2.0);
  EXPECT_EQ(p_laplacian(f, 1, pairwise).coords()[0], -2.0);
}

TEST(Laplacian, EmptyNeighborhoodIsZero) {
  const auto f = scalar_function(graph(3, {make_edge({1}, {2, 3})}), {0, 1, 3});
  for (LaplacianVariant v : kAll) {
    for (int eta : {0, 1}) EXPECT_EQ(p_laplacian(f, 2, {1.5, eta, v}).norm(), 0.0);
  }
}

TEST(Laplacian, ConstantFunctionIsZero) {
  const Point x = pt(S2, {0, 0.6, 0.8});
  const VertexFunction f(graph(4, {make_edge({1, 2}, {3, 4}), make_edge({3, 4}, {1, 2})}),
                         {x, x, x, x});
  for (LaplacianVariant v : kAll) {
    for (const TangentVector& t : laplacian_field(f, {2.0, 1, v})) EXPECT_EQ(t.norm(), 0.0);
  }
}

TEST(Laplacian, SingularBelowTwo) {
  const auto f = scalar_function(graph(2, {make_edge({1}, {2}), make_edge({2}, {1})}), {1, 1});
  for (LaplacianVariant v : kAll) {
    EXPECT_THROW(p_laplacian(f, 1, {1.5, 0, v}), SingularityError) << to_string(v);
    EXPECT_NO_THROW(p_laplacian(f, 1, {3.0, 0, v}));
  }
}

TEST(Laplacian, FieldNamesFailingVertices) {
  const auto f = scalar_function(graph(2, {make_edge({1}, {2}), make_edge({2}, {1})}), {1, 1});
  try {
    laplacian_field(f, {1.5, 0, LaplacianVariant::AnisotropicFrechet});
    FAIL() << "expected a singularity";
  } catch (const SingularityError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("vertex 1"), std::string::npos) << what;
    EXPECT_NE(what.find("vertex 2"), std::string::npos) << what;
  }
}

TEST(Laplacian, FieldMatchesPointwise) {
  const VertexFunction f = random_instance(S2, 17);
  for (LaplacianVariant v : kAll) {
    const LaplaceParams params{2.5, 1, v};
    const auto field = laplacian_field(f, params);
    for (VertexId u = 1; u <= f.graph().num_vertices(); ++u) {
      EXPECT_EQ(field[u - 1].coords(), p_laplacian(f, u, params).coords());
    }
  }
}

TEST(Laplacian, InvalidParams) {
  const auto f = scalar_function(graph(2, {make_edge({1}, {2})}), {0, 1});
  EXPECT_THROW(p_laplacian(f, 1, {0.0, 0, LaplacianVariant::IsotropicFrechet}), DomainError);
  EXPECT_THROW(p_laplacian(f, 1, {2.0, 2, LaplacianVariant::IsotropicFrechet}), DomainError);
  EXPECT_THROW(p_laplacian(f, 3, {2.0, 0, LaplacianVariant::IsotropicFrechet}), DomainError);
}

TEST(Laplacian, GraphOracle) {
  InstanceOptions options;
  options.max_cardinality = 1;
  options.constant_edge_probability = 0.0;
  for (const Manifold& m : {Manifold::euclidean(3), S2, Manifold::hyperbolic(2)}) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const VertexFunction f = random_instance(m, seed, options);
      ASSERT_TRUE(f.graph().is_graph());
      const hyperlap::test::GraphLaplacianOracle oracle(f.graph());
      for (double p : {1.5, 2.0, 3.0}) {
        for (LaplacianVariant v : kAll) {
          for (int eta : {0, 1}) {
            const auto field = laplacian_field(f, {p, eta, v});
            for (std::size_t u = 0; u < field.size(); ++u) {
              const Vector expected = oracle(f.values(), u, p, is_isotropic(v), eta == 1);
              EXPECT_LE((field[u].coords() - expected).norm(), 1e-10)
                  << m.describe() << " seed " << seed << " p " << p << " " << to_string(v);
            }
          }
        }
      }
    }
  }
}

TEST(Energy, Examples) {
  const auto f = scalar_function(graph(2, {make_edge({1}, {2})}), {0, 3});
  EXPECT_EQ(dirichlet_energy(f, Framework::Frechet), 9.0);
  const Point x = pt(S2, {0, 0, 1});
  const VertexFunction c(graph(3, {make_edge({1}, {2, 3}), make_edge({2, 3}, {1})}), {x, x, x});
  EXPECT_EQ(dirichlet_energy(c, Framework::Frechet), 0.0);
  EXPECT_EQ(dirichlet_energy(c, Framework::Pairwise), 0.0);
}

TEST(Energy, Nonnegative) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const VertexFunction f = random_instance(Manifold::hyperbolic(2), seed);
    EXPECT_GE(dirichlet_energy(f, Framework::Frechet), 0.0);
    EXPECT_GE(dirichlet_energy(f, Framework::Pairwise), 0.0);
  }
}

TEST(Energy, EuclideanPairingIdentity) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const VertexFunction f = random_instance(Manifold::euclidean(3), seed);
    EXPECT_LE(dirichlet_pairing_error(f, Framework::Frechet), 1e-9) << seed;
    EXPECT_LE(dirichlet_pairing_error(f, Framework::Pairwise), 1e-9) << seed;
  }
}

TEST(GradientIdentities, HoldOnRandomInstances) {
  for (const Manifold& m : {Manifold::euclidean(3), S2, Manifold::hyperbolic(2)}) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const VertexFunction f = random_instance(m, seed);
      EXPECT_LE(constant_frechet_gradient_error(f), 1e-10);
      EXPECT_LE(frechet_antisymmetry_error(f), 1e-9);
      const KernelCheck k = pairwise_kernel_check(f);
      EXPECT_EQ(k.forward_error, 0.0);
      EXPECT_EQ(k.reverse_violations, 0u);
      EXPECT_LE(pairwise_antisymmetry_error(f), 1e-9);
      EXPECT_LE(p2_coincidence_error(f), 1e-10);
      const double p2[] = {2.0};
      EXPECT_EQ(eta_scaling_mismatches(f, p2), 0u);
      InstanceOptions generic;
      generic.constant_edge_probability = 0.0;
      const double ps[] = {1.5, 3.0};
      EXPECT_EQ(eta_scaling_mismatches(random_instance(m, seed, generic), ps), 0u);
    }
  }
}

TEST(GradientIdentities, SignFlippedTransportIsCaught) {
  const TransportFn flipped = [](const Point& from, const Point& to, const TangentVector& v) {
    return -parallel_transport(from, to, v);
  };
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    worst = std::max(worst, frechet_antisymmetry_error(random_instance(S2, seed), flipped));
  }
  EXPECT_GT(worst, 1e-3);
}
