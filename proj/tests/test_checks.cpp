#include <gtest/gtest.h>

#include "hyperlap/checks.hpp"
#include "hyperlap/hypergraph.hpp"

using namespace hyperlap;

TEST(RandomInstance, SymmetricAndDeterministic) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const VertexFunction f = random_instance(Manifold::sphere(2), seed);
    EXPECT_TRUE(is_symmetric(f.graph()));
    EXPECT_LE(f.graph().num_vertices(), 20u);
    for (const HyperEdge& e : f.graph().edges()) {
      EXPECT_LE(e.in.size(), 4u);
      EXPECT_LE(e.out.size(), 4u);
    }
    EXPECT_EQ(random_instance(Manifold::sphere(2), seed).values(), f.values());
  }
}

TEST(RunChecks, SmallRunPasses) {
  CheckOptions options;
  options.seeds = 5;
  const CheckReport report = run_checks(options);
  EXPECT_TRUE(report.passed());
  for (const PropertyResult& r : report.results) {
    EXPECT_TRUE(r.passed) << r.name << " on " << r.manifold << ": " << r.max_error;
    EXPECT_GT(r.instances, 0u);
  }
}

TEST(GeometryErrors, SmallOnAllKinds) {
  for (const Manifold& m : {Manifold::euclidean(3), Manifold::sphere(2), Manifold::hyperbolic(3)}) {
    const GeometryErrors e = geometry_errors(m, 9, 200);
    EXPECT_LE(e.exp_log, 1e-9) << m.describe();
    EXPECT_LE(e.transport_norm, 1e-9) << m.describe();
    EXPECT_LE(e.transport_inner, 1e-9) << m.describe();
    EXPECT_LE(e.distance_log, 1e-9) << m.describe();
  }
}
