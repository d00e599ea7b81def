#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string_view>
#include <vector>

#include "hyperlap/calculus.hpp"

namespace hyperlap {

/// Explicit geodesic Euler scheme for d/dt f(u) = -Laplacian f(u).
struct DiffusionConfig {
  /// Defaults to the in-degree normalized isotropic Fréchet 2-Laplacian.
  LaplaceParams params{2.0, 1, LaplacianVariant::IsotropicFrechet};
  double step_size = 0.1;
  std::size_t max_steps = 100000;
  /// Stop once max_u |Laplacian f(u)| drops below this.
  double residual_tol = 1e-8;
  std::size_t record_every = 100;
};

/// Throws DomainError for a non-positive step size or tolerance, zero
/// max_steps or record_every, or invalid Laplacian parameters.
void validate(const DiffusionConfig& config);

struct DiffusionSnapshot {
  std::size_t step;
  VertexFunction state;
  /// Largest Laplacian norm over the vertices of `state`.
  double residual;
  /// Dirichlet energy of `state` in the configured framework.
  double energy;
  double spread;
};

struct DiffusionTrace {
  std::vector<DiffusionSnapshot> snapshots;
  bool converged = false;
  /// Number of updates applied.
  std::size_t steps_taken = 0;

  const DiffusionSnapshot& final_snapshot() const { return snapshots.back(); }
};

/// One Jacobi step: f+(u) = exp_{f(u)}(-step_size * Laplacian f(u)) for all u
/// against the unchanged input.
VertexFunction diffusion_step(const VertexFunction& f, const DiffusionConfig& config);

/// Iterates diffusion_step until the residual falls below the tolerance or
/// max_steps updates were applied. Records every `record_every` steps plus the
/// final state. Non-convergence is reported through `converged`, not thrown.
DiffusionTrace diffuse(const VertexFunction& initial, const DiffusionConfig& config);

/// Largest pairwise distance between vertex values.
double vertex_spread(const VertexFunction& f);

/// Largest Laplacian norm over all vertices.
double max_residual(const std::vector<TangentVector>& laplacian);

/// Per vertex, theta uniform on [0, pi/2) and phi uniform on [0, pi/2],
/// mapped to (sin t cos p, sin t sin p, cos t) on S^2. Deterministic in seed.
VertexFunction embed_random_octant(std::shared_ptr<const OrientedHypergraph> graph,
                                   std::uint64_t seed);

/// Point of S^2 for the spherical angles (theta, phi).
Point sphere_point(double theta, double phi);

inline constexpr double kConstantSpreadThreshold = 1e-3;

enum class Equilibrium { Constant, NonConstant, NotConverged };

std::string_view to_string(Equilibrium e);

/// Constant when converged with final spread below kConstantSpreadThreshold.
Equilibrium classify(const DiffusionTrace& trace);

}  // namespace hyperlap
