#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hyperlap/calculus.hpp"
#include "hyperlap/diffusion.hpp"

namespace hyperlap {

inline constexpr std::string_view kSchemaVersion = "1.0";

/// A hypergraph, its manifold, and optionally one feature point per vertex.
///
/// JSON layout:
///   {
///     "schema_version": "1.0",
///     "manifold": {"kind": "sphere", "dim": 2},
///     "num_vertices": 3,
///     "edges": [{"in": [1], "out": [2, 3], "weight": 1.0}, ...],
///     "features": [[x, y, z], ...],   // optional
///     "provenance": {...}             // optional, free-form
///   }
struct HypergraphDocument {
  Manifold manifold = Manifold::sphere(2);
  std::shared_ptr<const OrientedHypergraph> graph;
  std::optional<VertexFunction> features;
  nlohmann::ordered_json provenance;
};

nlohmann::ordered_json to_json(const HypergraphDocument& doc);
/// Throws ParseError for schema violations (with the offending location) and
/// ValidationError for hypergraph or manifold invariant violations.
HypergraphDocument hypergraph_from_json(const nlohmann::ordered_json& j);

std::string dump_hypergraph(const HypergraphDocument& doc);
HypergraphDocument parse_hypergraph(std::string_view text);

void save_hypergraph(const std::filesystem::path& path, const HypergraphDocument& doc);
HypergraphDocument load_hypergraph(const std::filesystem::path& path);

/// One CSV row of a diffusion trace.
struct TraceRow {
  std::size_t step = 0;
  double residual = 0.0;
  double energy = 0.0;
  double vertex_spread = 0.0;

  friend bool operator==(const TraceRow&, const TraceRow&) = default;
};

/// A diffusion run: the CSV time series plus its JSON metadata sidecar.
struct TraceDocument {
  /// Everything needed to re-run the computation.
  nlohmann::ordered_json config;
  std::vector<TraceRow> rows;
  std::vector<std::vector<double>> final_coords;
  bool converged = false;
  std::size_t steps_taken = 0;
  std::string classification;
  double spread_threshold = kConstantSpreadThreshold;

  friend bool operator==(const TraceDocument&, const TraceDocument&) = default;
};

inline constexpr std::string_view kTraceCsvHeader = "step,residual,energy,vertex_spread";

TraceDocument make_trace_document(const DiffusionTrace& trace, nlohmann::ordered_json config);

/// CSV with header kTraceCsvHeader; shortest round-trip decimals, independent
/// of the process locale.
std::string trace_csv(const TraceDocument& doc);
std::string trace_metadata(const TraceDocument& doc);
/// Throws ParseError.
TraceDocument parse_trace(std::string_view csv, std::string_view metadata);

/// Shortest decimal that parses back to exactly x.
std::string format_double(double x);

std::string read_file(const std::filesystem::path& path);
/// Writes to a sibling temporary file, then renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace hyperlap
