#pragma once

#include <cstddef>

#include "afd/grid.hpp"
#include "afd/models.hpp"
#include "afd/trajectory.hpp"

namespace afd {

struct SolverConfig {
  double cfl = 0.25;
  double t_end = 1.0;
  double record_every = 1e-2;
  std::size_t max_steps = 100'000'000;
  double positivity_floor = kDefaultPositivityFloor;

  // Throws InvalidArgument.
  void validate() const;
};

struct SolverState {
  double t = 0.0;
  GridFunction u;
  std::size_t step_count = 0;
  double last_dt = 0.0;
};

/**
 * Parabolic step restriction dt = cfl * dx^2 / (2 max a) with the effective
 * diffusivity a of the model:
 *
 *   ArctanLocal     u / (u^2 + u_x^2)
 *   LogDiffusion    1 / u
 *   ArctanNonlocal  u / (u^2 + (Hu)^2)
 *   Regularized     as ArctanLocal on v = J_kappa u lifted by eps, plus eps
 *
 * With spectral differentiation RK4 stays stable for cfl up to about 0.56.
 */
double stable_dt(const GridFunction& u, const Model& model, double cfl);

// Classical RK4. Every stage and the result must stay above the model's
// positivity floor; otherwise PositivityViolation.
SolverState step_rk4(const SolverState& state, const Model& model, double dt);

// Steps with dt = min(stable_dt, distance to the next recording time) and
// records at t = 0, every multiple of record_every, and t_end. Breakdown is
// reported through Trajectory::termination, never thrown. An empty hook
// records against <u0>. config.positivity_floor overrides the model's.
Trajectory integrate(const GridFunction& u0, const Model& model, const SolverConfig& config,
                     DiagnosticsHook hook = {});

}  // namespace afd
