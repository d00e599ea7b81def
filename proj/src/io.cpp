#include "hyperlap/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>
#include <unistd.h>

#include "hyperlap/errors.hpp"

namespace hyperlap {
namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what);
}

const Json& member(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) schema_error(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(where, std::string("missing key '") + key + "'");
  return *it;
}

std::uint64_t positive_integer(const Json& j, const std::string& where) {
  if (!j.is_number_unsigned() || j.get<std::uint64_t>() == 0) {
    schema_error(where, "expected a positive integer");
  }
  return j.get<std::uint64_t>();
}

double number(const Json& j, const std::string& where) {
  if (!j.is_number()) schema_error(where, "expected a number");
  return j.get<double>();
}

std::vector<VertexId> id_list(const Json& j, const std::string& where) {
  if (!j.is_array()) schema_error(where, "expected an array of vertex ids");
  std::vector<VertexId> ids;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::uint64_t id = positive_integer(j[i], where + "[" + std::to_string(i) + "]");
    if (id > std::numeric_limits<VertexId>::max()) {
      schema_error(where + "[" + std::to_string(i) + "]", "vertex id too large");
    }
    ids.push_back(static_cast<VertexId>(id));
  }
  return ids;
}

Json coords_json(const Vector& v) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

double parse_double(std::string_view text, const std::string& where) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    schema_error(where, "malformed number '" + std::string(text) + "'");
  }
  return value;
}

std::size_t parse_size(std::string_view text, const std::string& where) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    schema_error(where, "malformed integer '" + std::string(text) + "'");
  }
  return value;
}

Json parse_json_text(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) throw Error("format_double: conversion failed");
  return std::string(buf, ptr);
}

// ---------------------------------------------------------------------------
// Hypergraph documents

Json to_json(const HypergraphDocument& doc) {
  if (!doc.graph) throw DomainError("hypergraph document without a hypergraph");
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["manifold"] = {{"kind", to_string(doc.manifold.kind())}, {"dim", doc.manifold.dim()}};
  j["num_vertices"] = doc.graph->num_vertices();
  Json edges = Json::array();
  for (const HyperEdge& e : doc.graph->edges()) {
    edges.push_back({{"in", e.in}, {"out", e.out}, {"weight", e.weight}});
  }
  j["edges"] = std::move(edges);
  if (doc.features) {
    Json features = Json::array();
    for (const Point& p : doc.features->values()) features.push_back(coords_json(p.coords()));
    j["features"] = std::move(features);
  }
  if (!doc.provenance.is_null()) j["provenance"] = doc.provenance;
  return j;
}

HypergraphDocument hypergraph_from_json(const Json& j) {
  if (!j.is_object()) schema_error("$", "expected an object");
  const Json& version = member(j, "schema_version", "$");
  if (!version.is_string() || version.get<std::string>() != kSchemaVersion) {
    schema_error("$.schema_version", "unsupported schema version (expected \"" +
                                         std::string(kSchemaVersion) + "\")");
  }
  const Json& mj = member(j, "manifold", "$");
  const Json& kind = member(mj, "kind", "$.manifold");
  if (!kind.is_string()) schema_error("$.manifold.kind", "expected a string");
  const auto dim = positive_integer(member(mj, "dim", "$.manifold"), "$.manifold.dim");
  if (dim > static_cast<std::size_t>(kMaxAmbientDim)) {
    schema_error("$.manifold.dim", "dimension above " + std::to_string(kMaxAmbientDim));
  }

  HypergraphDocument doc;
  try {
    doc.manifold = Manifold(parse_manifold_kind(kind.get<std::string>()), static_cast<int>(dim));
  } catch (const DomainError& e) {
    schema_error("$.manifold", e.what());
  }

  const auto n = positive_integer(member(j, "num_vertices", "$"), "$.num_vertices");
  const Json& ej = member(j, "edges", "$");
  if (!ej.is_array()) schema_error("$.edges", "expected an array");
  std::vector<HyperEdge> edges;
  edges.reserve(ej.size());
  for (std::size_t i = 0; i < ej.size(); ++i) {
    const std::string where = "$.edges[" + std::to_string(i) + "]";
    HyperEdge e;
    e.in = id_list(member(ej[i], "in", where), where + ".in");
    e.out = id_list(member(ej[i], "out", where), where + ".out");
    auto w = ej[i].find("weight");
    e.weight = w == ej[i].end() ? 1.0 : number(*w, where + ".weight");
    edges.push_back(std::move(e));
  }
  try {
    doc.graph = std::make_shared<const OrientedHypergraph>(n, std::move(edges));
  } catch (const DomainError& e) {
    throw ValidationError(e.what());
  }

  if (auto fj = j.find("features"); fj != j.end() && !fj->is_null()) {
    if (!fj->is_array()) schema_error("$.features", "expected an array");
    if (fj->size() != n) {
      throw ValidationError("features: " + std::to_string(fj->size()) + " points for " +
                            std::to_string(n) + " vertices");
    }
    std::vector<Point> values;
    values.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::string where = "$.features[" + std::to_string(i) + "]";
      const Json& pj = (*fj)[i];
      if (!pj.is_array()) schema_error(where, "expected an array of coordinates");
      if (pj.size() != static_cast<std::size_t>(doc.manifold.ambient_dim())) {
        throw ValidationError("vertex " + std::to_string(i + 1) + ": expected " +
                              std::to_string(doc.manifold.ambient_dim()) + " coordinates, got " +
                              std::to_string(pj.size()));
      }
      Vector v(static_cast<Eigen::Index>(pj.size()));
      for (std::size_t k = 0; k < pj.size(); ++k) {
        v[static_cast<Eigen::Index>(k)] = number(pj[k], where + "[" + std::to_string(k) + "]");
      }
      try {
        values.emplace_back(doc.manifold, std::move(v));
      } catch (const DomainError& e) {
        throw ValidationError("vertex " + std::to_string(i + 1) + ": " + e.what());
      }
    }
    doc.features.emplace(doc.graph, std::move(values));
  }
  if (auto pj = j.find("provenance"); pj != j.end()) doc.provenance = *pj;
  return doc;
}

std::string dump_hypergraph(const HypergraphDocument& doc) { return to_json(doc).dump(2) + "\n"; }

HypergraphDocument parse_hypergraph(std::string_view text) {
  return hypergraph_from_json(parse_json_text(text));
}

void save_hypergraph(const std::filesystem::path& path, const HypergraphDocument& doc) {
  write_file_atomic(path, dump_hypergraph(doc));
}

HypergraphDocument load_hypergraph(const std::filesystem::path& path) {
  try {
    return parse_hypergraph(read_file(path));
  } catch (const Error&) {
    rethrow_with_context(path.string());
  }
}

// ---------------------------------------------------------------------------
// Trace documents

TraceDocument make_trace_document(const DiffusionTrace& trace, Json config) {
  TraceDocument doc;
  doc.config = std::move(config);
  for (const DiffusionSnapshot& s : trace.snapshots) {
    doc.rows.push_back(TraceRow{s.step, s.residual, s.energy, s.spread});
  }
  for (const Point& p : trace.final_snapshot().state.values()) {
    doc.final_coords.emplace_back(p.coords().data(), p.coords().data() + p.coords().size());
  }
  doc.converged = trace.converged;
  doc.steps_taken = trace.steps_taken;
  doc.classification = std::string(to_string(classify(trace)));
  return doc;
}

std::string trace_csv(const TraceDocument& doc) {
  std::string out(kTraceCsvHeader);
  out += '\n';
  for (const TraceRow& r : doc.rows) {
    out += std::to_string(r.step);
    out += ',';
    out += format_double(r.residual);
    out += ',';
    out += format_double(r.energy);
    out += ',';
    out += format_double(r.vertex_spread);
    out += '\n';
  }
  return out;
}

std::string trace_metadata(const TraceDocument& doc) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["config"] = doc.config;
  j["rows"] = doc.rows.size();
  j["converged"] = doc.converged;
  j["steps_taken"] = doc.steps_taken;
  j["classification"] = doc.classification;
  j["constant_spread_threshold"] = doc.spread_threshold;
  j["final_coords"] = doc.final_coords;
  return j.dump(2) + "\n";
}

TraceDocument parse_trace(std::string_view csv, std::string_view metadata) {
  TraceDocument doc;
  const Json j = parse_json_text(metadata);
  if (!j.is_object()) schema_error("$", "expected an object");
  const Json& version = member(j, "schema_version", "$");
  if (!version.is_string() || version.get<std::string>() != kSchemaVersion) {
    schema_error("$.schema_version", "unsupported schema version");
  }
  doc.config = member(j, "config", "$");
  const Json& converged = member(j, "converged", "$");
  if (!converged.is_boolean()) schema_error("$.converged", "expected a boolean");
  doc.converged = converged.get<bool>();
  const Json& steps = member(j, "steps_taken", "$");
  if (!steps.is_number_unsigned()) schema_error("$.steps_taken", "expected an integer");
  doc.steps_taken = steps.get<std::size_t>();
  const Json& cls = member(j, "classification", "$");
  if (!cls.is_string()) schema_error("$.classification", "expected a string");
  doc.classification = cls.get<std::string>();
  doc.spread_threshold =
      number(member(j, "constant_spread_threshold", "$"), "$.constant_spread_threshold");
  const Json& fc = member(j, "final_coords", "$");
  if (!fc.is_array()) schema_error("$.final_coords", "expected an array");
  for (std::size_t i = 0; i < fc.size(); ++i) {
    const std::string where = "$.final_coords[" + std::to_string(i) + "]";
    if (!fc[i].is_array()) schema_error(where, "expected an array");
    std::vector<double> coords;
    for (std::size_t k = 0; k < fc[i].size(); ++k) {
      coords.push_back(number(fc[i][k], where + "[" + std::to_string(k) + "]"));
    }
    doc.final_coords.push_back(std::move(coords));
  }

  std::istringstream lines{std::string(csv)};
  std::string line;
  if (!std::getline(lines, line) || line != kTraceCsvHeader) {
    schema_error("csv line 1", "expected header '" + std::string(kTraceCsvHeader) + "'");
  }
  std::size_t lineno = 1;
  while (std::getline(lines, line)) {
    ++lineno;
    if (line.empty()) continue;
    const std::string where = "csv line " + std::to_string(lineno);
    std::vector<std::string_view> fields;
    std::string_view rest(line);
    for (std::size_t pos; (pos = rest.find(',')) != std::string_view::npos;) {
      fields.push_back(rest.substr(0, pos));
      rest.remove_prefix(pos + 1);
    }
    fields.push_back(rest);
    if (fields.size() != 4) schema_error(where, "expected 4 fields");
    doc.rows.push_back(TraceRow{parse_size(fields[0], where), parse_double(fields[1], where),
                                parse_double(fields[2], where), parse_double(fields[3], where)});
  }
  const Json& rows = member(j, "rows", "$");
  if (!rows.is_number_unsigned() || rows.get<std::size_t>() != doc.rows.size()) {
    throw ValidationError("trace metadata row count does not match the CSV");
  }
  return doc;
}

// ---------------------------------------------------------------------------
// Files

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error("cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

}  // namespace hyperlap
