#include "hyperlap/cli.hpp"

#include <iomanip>
#include <memory>
#include <ostream>

#include <CLI11.hpp>

#include "hyperlap/checks.hpp"
#include "hyperlap/diffusion.hpp"
#include "hyperlap/errors.hpp"
#include "hyperlap/io.hpp"
#include "hyperlap/random.hpp"

namespace hyperlap::cli {
namespace {

using Json = nlohmann::ordered_json;

struct GenerateArgs {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t max_cardinality = 0;
  std::uint64_t seed = 0;
  std::string out;
};

struct ExpandArgs {
  std::string in;
  std::string out;
};

struct DiffuseArgs {
  std::string in;
  std::string variant = "frechet";
  bool anisotropic = false;
  double p = 2.0;
  int eta = 1;
  double tau = 0.1;
  double tol = 1e-8;
  std::size_t max_steps = 100000;
  std::size_t record_every = 100;
  std::string out;
};

struct CheckArgs {
  std::size_t seeds = 50;
  std::uint64_t base_seed = 1;
  std::string manifold = "all";
  std::size_t max_vertices = 20;
  std::size_t max_cardinality = 4;
};

int generate(const GenerateArgs& a, std::ostream& out) {
  Rng rng(a.seed);
  const std::uint64_t graph_seed = rng.next_u64();
  const std::uint64_t embed_seed = rng.next_u64();
  auto graph = std::make_shared<const OrientedHypergraph>(
      random_hypergraph(a.vertices, a.edges, a.max_cardinality, graph_seed));

  HypergraphDocument doc;
  doc.manifold = Manifold::sphere(2);
  doc.graph = graph;
  doc.features = embed_random_octant(graph, embed_seed);
  doc.provenance = {{"command", "generate"},
                    {"rng", Rng::kName},
                    {"seed", a.seed},
                    {"graph_seed", graph_seed},
                    {"embed_seed", embed_seed},
                    {"vertices", a.vertices},
                    {"edges", a.edges},
                    {"max_cardinality", a.max_cardinality}};
  save_hypergraph(a.out, doc);

  out << "wrote " << a.out << ": " << graph->num_vertices() << " vertices, "
      << graph->num_edges() << " oriented edges (symmetric)\n";
  out << "edge cardinality |in|+|out| histogram:\n";
  const auto histogram = cardinality_histogram(*graph);
  for (std::size_t k = 0; k < histogram.size(); ++k) {
    if (histogram[k] != 0) out << "  " << std::setw(3) << k << ": " << histogram[k] << "\n";
  }
  return kOk;
}

int expand(const ExpandArgs& a, std::ostream& out) {
  const HypergraphDocument source = load_hypergraph(a.in);
  HypergraphDocument doc;
  doc.manifold = source.manifold;
  doc.graph = std::make_shared<const OrientedHypergraph>(expand_to_graph(*source.graph));
  if (source.features) doc.features = source.features->with_values(source.features->values());
  if (doc.features) doc.features = VertexFunction(doc.graph, doc.features->values());
  doc.provenance = {{"command", "expand"}, {"source", source.provenance}};
  save_hypergraph(a.out, doc);
  out << "wrote " << a.out << ": " << doc.graph->num_edges() << " graph edges from "
      << source.graph->num_edges() << " hyperedges\n";
  return kOk;
}

std::vector<std::string> diffuse_argv(const DiffuseArgs& a) {
  std::vector<std::string> argv = {"diffuse",
                                   "--in", a.in,
                                   "--variant", a.variant,
                                   "--p", format_double(a.p),
                                   "--eta", std::to_string(a.eta),
                                   "--tau", format_double(a.tau),
                                   "--tol", format_double(a.tol),
                                   "--max-steps", std::to_string(a.max_steps),
                                   "--record-every", std::to_string(a.record_every)};
  if (a.anisotropic) argv.emplace_back("--anisotropic");
  return argv;
}

int diffuse_command(const DiffuseArgs& a, std::ostream& out) {
  const HypergraphDocument doc = load_hypergraph(a.in);
  if (!doc.features) throw ValidationError(a.in + ": document has no features to diffuse");

  VertexFunction initial = *doc.features;
  if (a.variant == "graph") {
    auto graph = std::make_shared<const OrientedHypergraph>(expand_to_graph(*doc.graph));
    initial = VertexFunction(graph, doc.features->values());
  }

  DiffusionConfig config;
  const bool pairwise = a.variant == "pairwise";
  config.params.variant =
      pairwise ? (a.anisotropic ? LaplacianVariant::AnisotropicPairwise
                                : LaplacianVariant::IsotropicPairwise)
               : (a.anisotropic ? LaplacianVariant::AnisotropicFrechet
                                : LaplacianVariant::IsotropicFrechet);
  config.params.p = a.p;
  config.params.eta = a.eta;
  config.step_size = a.tau;
  config.residual_tol = a.tol;
  config.max_steps = a.max_steps;
  config.record_every = a.record_every;
  validate(config);

  const DiffusionTrace trace = diffuse(initial, config);

  Json echo = {{"command", "diffuse"},
               {"rng", Rng::kName},
               {"input", a.in},
               {"input_provenance", doc.provenance},
               {"variant", a.variant},
               {"laplacian", to_string(config.params.variant)},
               {"p", a.p},
               {"eta", a.eta},
               {"tau", a.tau},
               {"tol", a.tol},
               {"max_steps", a.max_steps},
               {"record_every", a.record_every},
               {"argv", diffuse_argv(a)}};
  const TraceDocument tdoc = make_trace_document(trace, std::move(echo));
  write_file_atomic(a.out, trace_csv(tdoc));
  write_file_atomic(a.out + ".json", trace_metadata(tdoc));

  const DiffusionSnapshot& last = trace.final_snapshot();
  out << "variant " << a.variant << " (" << to_string(config.params.variant) << "), "
      << trace.steps_taken << " steps\n"
      << "residual " << format_double(last.residual) << ", energy "
      << format_double(last.energy) << ", vertex spread " << format_double(last.spread) << "\n"
      << "classification: " << tdoc.classification << "\n"
      << "wrote " << a.out << " and " << a.out << ".json\n";
  return trace.converged ? kOk : kNotConverged;
}

int check_command(const CheckArgs& a, std::ostream& out) {
  CheckOptions options;
  options.seeds = a.seeds;
  options.base_seed = a.base_seed;
  options.max_vertices = a.max_vertices;
  options.max_cardinality = a.max_cardinality;
  if (a.manifold != "all") options.kinds = {parse_manifold_kind(a.manifold)};

  const CheckReport report = run_checks(options);
  out << std::left << std::setw(60) << "property" << std::setw(14) << "manifold"
      << std::setw(11) << "instances" << std::setw(14) << "max error" << std::setw(12)
      << "tolerance"
      << "result\n";
  for (const PropertyResult& r : report.results) {
    std::ostringstream err, tol;
    err << std::scientific << std::setprecision(3) << r.max_error;
    tol << std::scientific << std::setprecision(1) << r.tolerance;
    out << std::left << std::setw(60) << r.name << std::setw(14) << r.manifold << std::setw(11)
        << r.instances << std::setw(14) << err.str() << std::setw(12) << tol.str()
        << (r.passed ? "PASS" : "FAIL") << "\n";
  }
  bool ok = true;
  for (const PropertyResult& r : report.results) {
    if (r.passed) continue;
    ok = false;
    const std::string kind = r.manifold.substr(0, r.manifold.find('('));
    out << "violation: " << r.name << " on " << r.manifold << " (seed " << r.worst_seed
        << ")\n  reproduce: hyperlap check --manifold " << kind << " --base-seed "
        << r.worst_seed << " --seeds 1 --max-vertices " << a.max_vertices
        << " --max-cardinality " << a.max_cardinality << "\n";
  }
  out << (ok ? "all properties hold\n" : "property violations found\n");
  return ok ? kOk : kFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"hypergraph Laplacians and diffusion for points on curved spaces", "hyperlap"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* gen_cmd = app.add_subcommand(
      "generate", "random symmetric unit-weight hypergraph embedded in an octant of S^2");
  gen_cmd->add_option("--vertices", gen.vertices, "number of vertices")->required();
  gen_cmd->add_option("--edges", gen.edges, "number of base edges before symmetrization")
      ->required();
  gen_cmd->add_option("--max-cardinality", gen.max_cardinality,
                      "largest in-set and out-set size")
      ->required();
  gen_cmd->add_option("--seed", gen.seed, "64-bit seed")->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "output hypergraph document (JSON)")->required();

  ExpandArgs exp;
  auto* exp_cmd = app.add_subcommand("expand", "replace every hyperedge by its in x out graph edges");
  exp_cmd->add_option("--in", exp.in, "input hypergraph document")
      ->required()
      ->check(CLI::ExistingFile);
  exp_cmd->add_option("--out", exp.out, "output graph document")->required();

  DiffuseArgs dif;
  auto* dif_cmd = app.add_subcommand("diffuse", "integrate the heat equation to equilibrium");
  dif_cmd->add_option("--in", dif.in, "input hypergraph document with features")
      ->required()
      ->check(CLI::ExistingFile);
  dif_cmd->add_option("--variant", dif.variant, "frechet, pairwise, or graph (expanded graph)")
      ->check(CLI::IsMember({"frechet", "pairwise", "graph"}))
      ->capture_default_str();
  dif_cmd->add_flag("--anisotropic", dif.anisotropic, "use the anisotropic Laplacian");
  dif_cmd->add_option("--p", dif.p, "exponent p > 0")->capture_default_str();
  dif_cmd->add_option("--eta", dif.eta, "1 normalizes by in-degree, 0 does not")
      ->check(CLI::IsMember({0, 1}))
      ->capture_default_str();
  dif_cmd->add_option("--tau", dif.tau, "step size")->capture_default_str();
  dif_cmd->add_option("--tol", dif.tol, "residual tolerance")->capture_default_str();
  dif_cmd->add_option("--max-steps", dif.max_steps, "step budget")->capture_default_str();
  dif_cmd->add_option("--record-every", dif.record_every, "snapshot interval")
      ->capture_default_str();
  dif_cmd->add_option("--out", dif.out, "trace CSV path; metadata goes to <out>.json")
      ->required();

  CheckArgs chk;
  auto* chk_cmd = app.add_subcommand("check", "run the randomized property batteries");
  chk_cmd->add_option("--seeds", chk.seeds, "instances per manifold")->capture_default_str();
  chk_cmd->add_option("--base-seed", chk.base_seed, "first seed")->capture_default_str();
  chk_cmd->add_option("--manifold", chk.manifold, "all, euclidean, sphere or hyperbolic")
      ->check(CLI::IsMember({"all", "euclidean", "sphere", "hyperbolic"}))
      ->capture_default_str();
  chk_cmd->add_option("--max-vertices", chk.max_vertices, "largest instance")
      ->capture_default_str();
  chk_cmd->add_option("--max-cardinality", chk.max_cardinality, "largest in/out set")
      ->capture_default_str();

  std::vector<const char*> argv{"hyperlap"};
  for (const std::string& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen_cmd) return generate(gen, out);
    if (*exp_cmd) return expand(exp, out);
    if (*dif_cmd) return diffuse_command(dif, out);
    if (*chk_cmd) return check_command(chk, out);
  } catch (const SingularityError& e) {
    err << "numerical singularity: " << e.what() << "\n";
    return kSingular;
  } catch (const ConvergenceError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kSingular;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const ValidationError& e) {
    err << "invalid document: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}

}  // namespace hyperlap::cli
