#include "hyperlap/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hyperlap/errors.hpp"
#include "hyperlap/random.hpp"

namespace hyperlap {
namespace {

struct Evaluation {
  std::vector<TangentVector> laplacian;
  double residual;
};

Evaluation evaluate(const VertexFunction& f, const DiffusionConfig& config) {
  Evaluation ev{laplacian_field(f, config.params), 0.0};
  ev.residual = max_residual(ev.laplacian);
  return ev;
}

VertexFunction advance(const VertexFunction& f, const std::vector<TangentVector>& laplacian,
                       double step_size) {
  std::vector<Point> next;
  next.reserve(laplacian.size());
  for (std::size_t i = 0; i < laplacian.size(); ++i) {
    next.push_back(exp_map(f.values()[i], (-step_size) * laplacian[i]));
  }
  return f.with_values(std::move(next));
}

DiffusionSnapshot snapshot(std::size_t step, const VertexFunction& f, double residual,
                           Framework framework) {
  return DiffusionSnapshot{step, f, residual, dirichlet_energy(f, framework), vertex_spread(f)};
}

}  // namespace

void validate(const DiffusionConfig& config) {
  validate(config.params);
  if (!(config.step_size >= 0.0) || !std::isfinite(config.step_size)) {
    throw DomainError("step size must be finite and nonnegative");
  }
  if (!(config.residual_tol > 0.0)) throw DomainError("residual tolerance must be positive");
  if (config.max_steps == 0) throw DomainError("max_steps must be positive");
  if (config.record_every == 0) throw DomainError("record_every must be positive");
}

VertexFunction diffusion_step(const VertexFunction& f, const DiffusionConfig& config) {
  validate(config);
  return advance(f, laplacian_field(f, config.params), config.step_size);
}

DiffusionTrace diffuse(const VertexFunction& initial, const DiffusionConfig& config) {
  validate(config);
  const Framework framework = framework_of(config.params.variant);
  DiffusionTrace trace;
  VertexFunction state = initial;
  for (std::size_t step = 0;; ++step) {
    Evaluation ev = evaluate(state, config);
    const bool converged = ev.residual < config.residual_tol;
    const bool last = converged || step == config.max_steps;
    if (step % config.record_every == 0 || last) {
      trace.snapshots.push_back(snapshot(step, state, ev.residual, framework));
    }
    if (last) {
      trace.converged = converged;
      trace.steps_taken = step;
      break;
    }
    state = advance(state, ev.laplacian, config.step_size);
  }
  return trace;
}

double vertex_spread(const VertexFunction& f) {
  const auto& v = f.values();
  double spread = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) spread = std::max(spread, distance(v[i], v[j]));
  }
  return spread;
}

double max_residual(const std::vector<TangentVector>& laplacian) {
  double r = 0.0;
  for (const TangentVector& t : laplacian) r = std::max(r, t.norm());
  return r;
}

Point sphere_point(double theta, double phi) {
  Vector x(3);
  x << std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta);
  return Point::projected(Manifold::sphere(2), std::move(x));
}

VertexFunction embed_random_octant(std::shared_ptr<const OrientedHypergraph> graph,
                                   std::uint64_t seed) {
  if (!graph) throw DomainError("embed_random_octant: no hypergraph");
  Rng rng(seed);
  constexpr double kQuarter = 0.5 * std::numbers::pi;
  std::vector<Point> values;
  values.reserve(graph->num_vertices());
  for (std::size_t i = 0; i < graph->num_vertices(); ++i) {
    const double theta = rng.uniform(0.0, kQuarter);
    const double phi = rng.uniform_closed(0.0, kQuarter);
    values.push_back(sphere_point(theta, phi));
  }
  return VertexFunction(std::move(graph), std::move(values));
}

std::string_view to_string(Equilibrium e) {
  switch (e) {
    case Equilibrium::Constant:
      return "constant";
    case Equilibrium::NonConstant:
      return "non-constant equilibrium";
    case Equilibrium::NotConverged:
      return "not converged";
  }
  return "unknown";
}

Equilibrium classify(const DiffusionTrace& trace) {
  if (!trace.converged) return Equilibrium::NotConverged;
  return trace.final_snapshot().spread < kConstantSpreadThreshold ? Equilibrium::Constant
                                                                  : Equilibrium::NonConstant;
}

}  // namespace hyperlap
