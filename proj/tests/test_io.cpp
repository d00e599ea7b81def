#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "hyperlap/checks.hpp"
#include "hyperlap/diffusion.hpp"
#include "hyperlap/errors.hpp"
#include "hyperlap/io.hpp"
#include "support.hpp"

using namespace hyperlap;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "hyperlap_io_test";
  fs::create_directories(dir);
  return dir / name;
}

HypergraphDocument doc_for(const VertexFunction& f) {
  HypergraphDocument doc;
  doc.manifold = f.manifold();
  doc.graph = f.graph_ptr();
  doc.features = f;
  doc.provenance = {{"note", "test"}};
  return doc;
}

}  // namespace

TEST(HypergraphIo, RoundTripIsExact) {
  for (const Manifold& m : {Manifold::euclidean(3), Manifold::sphere(2), Manifold::hyperbolic(2)}) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const VertexFunction f = random_instance(m, seed);
      const HypergraphDocument back = parse_hypergraph(dump_hypergraph(doc_for(f)));
      EXPECT_EQ(back.manifold, m);
      EXPECT_EQ(*back.graph, f.graph());
      ASSERT_TRUE(back.features.has_value());
      EXPECT_EQ(back.features->values(), f.values());
      EXPECT_EQ(dump_hypergraph(back), dump_hypergraph(doc_for(f)));
    }
  }
}

TEST(HypergraphIo, FileRoundTrip) {
  const VertexFunction f = random_instance(Manifold::sphere(2), 3);
  const fs::path path = scratch("doc.json");
  save_hypergraph(path, doc_for(f));
  const HypergraphDocument back = load_hypergraph(path);
  EXPECT_EQ(back.features->values(), f.values());
}

TEST(HypergraphIo, EmptyEdgesLoad) {
  const auto doc = parse_hypergraph(
      R"({"schema_version":"1.0","manifold":{"kind":"sphere","dim":2},"num_vertices":3,"edges":[]})");
  EXPECT_EQ(doc.graph->num_edges(), 0u);
  EXPECT_FALSE(doc.features.has_value());
}

TEST(HypergraphIo, OverlappingSetsRejected) {
  try {
    parse_hypergraph(R"({"schema_version":"1.0","manifold":{"kind":"euclidean","dim":1},
      "num_vertices":3,"edges":[{"in":[1],"out":[2]},{"in":[1,2],"out":[2,3]}]})");
    FAIL() << "expected a validation error";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("edge 1"), std::string::npos) << e.what();
  }
}

TEST(HypergraphIo, SchemaErrorsCarryLocation) {
  try {
    parse_hypergraph(R"({"schema_version":"1.0","manifold":{"kind":"euclidean","dim":1},
      "num_vertices":3,"edges":[{"in":[1],"out":[2]},{"in":"x","out":[3]}]})");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("$.edges[1].in"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_hypergraph("{not json"), ParseError);
  EXPECT_THROW(parse_hypergraph(R"({"schema_version":"1.0"})"), ParseError);
}

TEST(HypergraphIo, OffManifoldFeatureRejected) {
  EXPECT_THROW(parse_hypergraph(R"({"schema_version":"1.0","manifold":{"kind":"sphere","dim":2},
      "num_vertices":1,"edges":[],"features":[[0,0,2]]})"),
               ValidationError);
}

TEST(TraceIo, RoundTrip) {
  const VertexFunction f = embed_random_octant(
      std::make_shared<const OrientedHypergraph>(random_hypergraph(8, 4, 3, 2)), 2);
  DiffusionConfig c;
  c.max_steps = 500;
  c.record_every = 50;
  const TraceDocument doc = make_trace_document(diffuse(f, c), {{"p", 2}});
  const std::string csv = trace_csv(doc);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), kTraceCsvHeader);
  const TraceDocument back = parse_trace(csv, trace_metadata(doc));
  EXPECT_EQ(back, doc);
  EXPECT_EQ(trace_csv(back), csv);
}

TEST(TraceIo, RowCountMismatchRejected) {
  const VertexFunction f = hyperlap::test::scalar_function(
      hyperlap::test::graph(2, {make_edge({1}, {2}), make_edge({2}, {1})}), {0, 1});
  const TraceDocument doc = make_trace_document(diffuse(f, DiffusionConfig{}), {});
  std::string csv = trace_csv(doc);
  csv += "999999,0,0,0\n";
  EXPECT_THROW(parse_trace(csv, trace_metadata(doc)), ValidationError);
}

TEST(FormatDouble, ShortestRoundTrip) {
  for (double x : {0.1, 1e-300, 3.0, -2.5e17, 1.0 / 3.0}) {
    EXPECT_EQ(std::stod(format_double(x)), x);
  }
  EXPECT_EQ(format_double(0.5), "0.5");
}

TEST(WriteFileAtomic, ReplacesContent) {
  const fs::path path = scratch("atomic.txt");
  write_file_atomic(path, "first");
  write_file_atomic(path, "second");
  EXPECT_EQ(read_file(path), "second");
}
