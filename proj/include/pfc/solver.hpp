#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "pfc/convex.hpp"
#include "pfc/grid.hpp"
#include "pfc/potential.hpp"
#include "pfc/spectral.hpp"

namespace pfc {

/// Constants of one Reaction-Diffusion-Projection run.
///
/// Convergence of the inner iteration requires 0 < gamma < tau < epsilon*omega:
/// gamma below the inverse Lipschitz constant of the smooth part and tau small
/// enough for the per-cell objective to be strongly convex.
struct SolverParams {
  double gamma = 0.0;   // inner step
  double tau = 0.0;     // time step
  double epsilon = 0.0; // interface scale
  double omega = 0.5;   // potential curvature scale
  double tol = 1e-6;    // grid-scaled L2 stopping tolerance of the inner loop
  int max_inner = 2000;
  int steps = 0;

  /// gamma = h/20, tau = h/10, epsilon = 3h.
  static SolverParams grid_scaled(double h, double omega = 0.5);

  /// beta = (1/tau + 1/(epsilon*omega))^{-1}; gamma must stay below it for
  /// the textbook guarantee, the solver only enforces gamma < tau.
  double beta() const { return 1.0 / (1.0 / tau + 1.0 / (epsilon * omega)); }

  friend bool operator==(const SolverParams &, const SolverParams &) = default;
};

/// Throws std::invalid_argument naming the first violated condition.
void validate_params(const SolverParams &p);

/// SplitMix64 in counter form: the k-th draw of a stream depends only on
/// (seed, k), so fields are reproducible regardless of traversal order.
class CounterRng {
public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}
  std::uint64_t bits(std::uint64_t counter) const;
  /// Uniform on [-1, 1).
  double symmetric(std::uint64_t counter) const;

private:
  std::uint64_t seed_;
};

/// Independent U(-1,1)^m draws per cell, then projected onto the set.
PhaseField init_random(const GridSpec &grid, const ConstraintSet &set, std::uint64_t seed);

struct StepReport {
  int step = 0;
  double time = 0.0;
  int inner_iters = 0;
  double final_change = 0.0; // h * ||u(m) - u(m-1)|| of the last inner update
  double step_change = 0.0;  // h * ||u(k+1) - u(k)||
  double energy = 0.0;
  bool converged = false;
  bool energy_is_diagnostic = false; // set for non-gradient (rotated) forces
};

struct StepResult {
  PhaseField field;
  StepReport report;
};

/// Discrete energy with periodic forward differences:
///   sum_cells h^2 [ eps/2 sum_i |D+ u_i|^2 + W(u) / eps ].
/// With an anisotropic mode the x-term becomes |D+_x u - q R90 u|^2.
/// The input is assumed feasible.
double discrete_energy(const PhaseField &u, double epsilon, const PotentialSpec &potential,
                       const DiffusionMode &mode = DiffusionMode::isotropic());
inline double discrete_energy(const PhaseField &u, const SolverParams &p,
                              const PotentialSpec &potential,
                              const DiffusionMode &mode = DiffusionMode::isotropic()) {
  return discrete_energy(u, p.epsilon, potential, mode);
}

/// One minimizing-movement step computed by the Reaction-Diffusion-Projection
/// iteration, starting from u(0) = u_k:
///   x = (1 - g/t) u + (g/t) u_k + (g/e) force(u)
///   y = (id - e g Lap)^{-1} x
///   z = (1 - g/t) y + (g/t) u_k + (g/e) force(y)
///   u <- proj_C(u - x + z)
/// until h*||u(m+1) - u(m)|| < tol or max_inner iterations. Non-convergence
/// is reported, not thrown. The returned field is always feasible.
StepResult rdp_step(const PhaseField &u_k, const SolverParams &p, const ConstraintSet &set,
                    const PotentialSpec &potential, const SpectralOperator &op);

struct RunObserver {
  std::function<void(const StepReport &)> on_step;
  std::function<void(int step, const PhaseField &)> on_snapshot;
  int save_every = 0; // 0 disables snapshots
};

struct RunResult {
  PhaseField field;
  std::vector<StepReport> reports;
};

/// Cross-module consistency checks shared by Solver and config loading:
/// parameter chain, potential vs. set dimension, matching omega, anisotropy
/// on two-component sets only, and 1/tau - cos(theta)/(eps*omega) > 0 for
/// the rotated force. Throws std::invalid_argument.
void validate_solver_setup(const ConstraintSet &set, const PotentialSpec &potential,
                           const SolverParams &params, const DiffusionMode &diffusion);

/// Owns the validated configuration and the spectral operator of one run.
class Solver {
public:
  /// Validates every component; throws std::invalid_argument on any
  /// inconsistency (including a rotated force that would break strong
  /// monotonicity of the reaction map).
  Solver(const GridSpec &grid, ConstraintSet set, PotentialSpec potential, SolverParams params,
         DiffusionMode diffusion = DiffusionMode::isotropic(),
         DifferenceScheme scheme = DifferenceScheme::ForwardDifference);

  const GridSpec &grid() const { return op_.grid(); }
  const ConstraintSet &set() const { return set_; }
  const PotentialSpec &potential() const { return potential_; }
  const SolverParams &params() const { return params_; }
  const SpectralOperator &op() const { return op_; }
  int components() const { return set_.dimension(); }

  StepResult step(const PhaseField &u_k) const;
  double energy(const PhaseField &u) const;

  /// Applies `steps` time steps (params().steps when negative). Snapshots are
  /// taken at step 0 and every save_every steps; observer exceptions
  /// propagate.
  RunResult run(PhaseField u0, int steps = -1, const RunObserver &observer = {}) const;

private:
  ConstraintSet set_;
  PotentialSpec potential_;
  SolverParams params_;
  SpectralOperator op_;
};

} // namespace pfc
