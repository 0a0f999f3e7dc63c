#include "pfc/solver.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace pfc {

SolverParams SolverParams::grid_scaled(double h, double omega) {
  SolverParams p;
  p.gamma = h / 20.0;
  p.tau = h / 10.0;
  p.epsilon = 3.0 * h;
  p.omega = omega;
  return p;
}

void validate_params(const SolverParams &p) {
  if (!(p.gamma > 0.0))
    throw std::invalid_argument("gamma must be > 0");
  if (!(p.epsilon > 0.0))
    throw std::invalid_argument("epsilon must be > 0");
  if (!(p.omega > 0.0))
    throw std::invalid_argument("omega must be > 0");
  if (!(p.gamma < p.tau))
    throw std::invalid_argument("gamma must be < tau");
  if (!(p.tau < p.epsilon * p.omega))
    throw std::invalid_argument("tau must be < epsilon*omega");
  if (!(p.tol > 0.0))
    throw std::invalid_argument("tol must be > 0");
  if (p.max_inner < 1)
    throw std::invalid_argument("max_inner must be >= 1");
  if (p.steps < 0)
    throw std::invalid_argument("steps must be >= 0");
}

std::uint64_t CounterRng::bits(std::uint64_t counter) const {
  std::uint64_t z = seed_ + (counter + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double CounterRng::symmetric(std::uint64_t counter) const {
  return 2.0 * static_cast<double>(bits(counter) >> 11) * 0x1.0p-53 - 1.0;
}

PhaseField init_random(const GridSpec &grid, const ConstraintSet &set, std::uint64_t seed) {
  const int m = set.dimension();
  PhaseField u(grid, m);
  const CounterRng rng(seed);
  for (std::size_t k = 0; k < grid.cells(); ++k) {
    Vec2 v{rng.symmetric(m * k), 0.0};
    if (m > 1)
      v.y = rng.symmetric(m * k + 1);
    u.set(k, set.project(v));
  }
  return u;
}

double discrete_energy(const PhaseField &u, double epsilon, const PotentialSpec &potential,
                       const DiffusionMode &mode) {
  const GridSpec &g = u.grid();
  const double h = g.h();
  const double q = mode.anisotropic ? mode.q : 0.0;
  double gradient = 0.0, bulk = 0.0;
  for (int j = 0; j < g.ny; ++j) {
    const int jp = (j + 1) % g.ny;
    for (int i = 0; i < g.nx; ++i) {
      const int ip = (i + 1) % g.nx;
      const Vec2 c = u.at(i, j);
      Vec2 dx = (1.0 / h) * (u.at(ip, j) - c);
      const Vec2 dy = (1.0 / h) * (u.at(i, jp) - c);
      if (mode.anisotropic)
        dx -= q * perp(c);
      gradient += norm2(dx) + norm2(dy);
      bulk += eval_W(potential, c);
    }
  }
  return h * h * (0.5 * epsilon * gradient + bulk / epsilon);
}

StepResult rdp_step(const PhaseField &u_k, const SolverParams &p, const ConstraintSet &set,
                    const PotentialSpec &potential, const SpectralOperator &op) {
  if (u_k.grid() != op.grid())
    throw std::invalid_argument("rdp_step: field grid does not match the operator");
  if (u_k.components() != set.dimension())
    throw std::invalid_argument("rdp_step: field components do not match the constraint set");

  const std::size_t n = u_k.grid().cells();
  const int m = u_k.components();
  const double h = u_k.grid().h();
  const double relax = p.gamma / p.tau;
  const double react = p.gamma / p.epsilon;

  PhaseField u = u_k;
  PhaseField x(u_k.grid(), m);
  PhaseField next(u_k.grid(), m);

  StepReport report;
  for (int iter = 1; iter <= p.max_inner; ++iter) {
    for (std::size_t k = 0; k < n; ++k) {
      const Vec2 uc = u.at(k);
      x.set(k, (1.0 - relax) * uc + relax * u_k.at(k) + react * force(potential, uc));
    }
    const PhaseField y = op.solve(x);
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const Vec2 yc = y.at(k);
      const Vec2 z = (1.0 - relax) * yc + relax * u_k.at(k) + react * force(potential, yc);
      const Vec2 uc = u.at(k);
      const Vec2 un = set.project(uc - x.at(k) + z);
      sum += norm2(un - uc);
      next.set(k, un);
    }
    std::swap(u, next);
    report.inner_iters = iter;
    report.final_change = h * std::sqrt(sum);
    if (report.final_change < p.tol) {
      report.converged = true;
      break;
    }
  }

  report.step_change = l2_distance(u, u_k);
  report.energy = discrete_energy(u, p.epsilon, potential, op.mode());
  report.energy_is_diagnostic = potential.variant != ForceVariant::Gradient;
  return {std::move(u), report};
}

void validate_solver_setup(const ConstraintSet &set, const PotentialSpec &potential,
                           const SolverParams &params, const DiffusionMode &diffusion) {
  validate_params(params);
  potential.validate_for_dimension(set.dimension());
  if (potential.omega != params.omega)
    throw std::invalid_argument("potential omega and solver omega differ");
  if (diffusion.anisotropic && set.dimension() != 2)
    throw std::invalid_argument("anisotropic diffusion requires a two-dimensional constraint set");
  if (potential.variant == ForceVariant::Rotated) {
    // Symmetric part of u -> (u - u_k)/tau - R_theta u / (eps omega).
    const double c = std::cos(potential.theta_degrees * std::numbers::pi / 180.0);
    if (!(1.0 / params.tau - c / (params.epsilon * params.omega) > 0.0))
      throw std::invalid_argument("rotated force: reaction map is not strongly monotone");
  }
}

Solver::Solver(const GridSpec &grid, ConstraintSet set, PotentialSpec potential,
               SolverParams params, DiffusionMode diffusion, DifferenceScheme scheme)
    : set_(std::move(set)), potential_(potential), params_(params),
      op_((validate_solver_setup(set_, potential_, params_, diffusion),
           SpectralOperator::build(grid, params.epsilon * params.gamma, diffusion, scheme))) {}

StepResult Solver::step(const PhaseField &u_k) const {
  return rdp_step(u_k, params_, set_, potential_, op_);
}

double Solver::energy(const PhaseField &u) const {
  return discrete_energy(u, params_.epsilon, potential_, op_.mode());
}

RunResult Solver::run(PhaseField u0, int steps, const RunObserver &observer) const {
  if (steps < 0)
    steps = params_.steps;
  if (u0.grid() != grid() || u0.components() != components())
    throw std::invalid_argument("run: initial field does not match the solver grid or set");

  RunResult result;
  result.reports.reserve(steps);
  result.field = std::move(u0);
  const bool snapshots = observer.save_every > 0 && observer.on_snapshot;
  if (snapshots)
    observer.on_snapshot(0, result.field);
  for (int k = 1; k <= steps; ++k) {
    StepResult s = step(result.field);
    s.report.step = k;
    s.report.time = k * params_.tau;
    result.field = std::move(s.field);
    result.reports.push_back(s.report);
    if (observer.on_step)
      observer.on_step(s.report);
    if (snapshots && k % observer.save_every == 0)
      observer.on_snapshot(k, result.field);
  }
  return result;
}

} // namespace pfc
