#include "afd/timestep.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "afd/diagnostics.hpp"
#include "afd/errors.hpp"

namespace afd {

namespace {

// Grid function y + h * k, built without intermediate copies.
GridFunction axpy(const GridFunction& y, double h, const GridFunction& k) {
  std::vector<double> out(y.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = y[j] + h * k[j];
  return GridFunction(y.grid(), std::move(out));
}

double max_diffusivity(const GridFunction& u, const Model& model) {
  double amax = 0.0;
  switch (model.kind) {
    case ModelKind::ArctanLocal: {
      const auto ux = derivative(u, 1);
      for (std::size_t j = 0; j < u.size(); ++j) {
        amax = std::max(amax, u[j] / (u[j] * u[j] + ux[j] * ux[j]));
      }
      break;
    }
    case ModelKind::LogDiffusion:
      amax = 1.0 / min_value(u);
      break;
    case ModelKind::ArctanNonlocal: {
      const auto hu = hilbert(u);
      for (std::size_t j = 0; j < u.size(); ++j) {
        amax = std::max(amax, u[j] / (u[j] * u[j] + hu[j] * hu[j]));
      }
      break;
    }
    case ModelKind::Regularized: {
      const double eps = model.params.epsilon;
      const auto v = heat_mollify(u, model.params.kappa);
      const auto vx = derivative(v, 1);
      for (std::size_t j = 0; j < v.size(); ++j) {
        const double lifted = v[j] + eps;
        amax = std::max(amax, lifted / (lifted * lifted + vx[j] * vx[j]));
      }
      amax += eps;
      break;
    }
  }
  return amax;
}

void check_positive(const GridFunction& u, const Model& model, const char* what) {
  require_positive(u, model.params.positivity_floor, what);
}

}  // namespace

void SolverConfig::validate() const {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw InvalidArgument("cfl must be in (0, 1]");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw InvalidArgument("t_end must be > 0");
  if (!(record_every > 0.0) || !std::isfinite(record_every)) {
    throw InvalidArgument("record_every must be > 0");
  }
  if (max_steps == 0) throw InvalidArgument("max_steps must be positive");
  if (!(positivity_floor > 0.0) || !std::isfinite(positivity_floor)) {
    throw InvalidArgument("positivity_floor must be > 0");
  }
}

double stable_dt(const GridFunction& u, const Model& model, double cfl) {
  if (!(cfl > 0.0)) throw InvalidArgument("cfl must be positive");
  if (model.kind == ModelKind::Regularized) {
    const auto v = heat_mollify(u, model.params.kappa);
    if (!(min_value(v) + model.params.epsilon > 0.0)) {
      throw PositivityViolation("stable_dt: mollified state is not positive");
    }
  } else {
    require_positive(u, 0.0, "stable_dt");
  }
  const double dx = u.grid().dx();
  return cfl * dx * dx / (2.0 * max_diffusivity(u, model));
}

SolverState step_rk4(const SolverState& state, const Model& model, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("step size must be positive");
  const auto& u = state.u;
  check_positive(u, model, "rk4 stage 1");
  const auto k1 = evaluate_rhs(u, model);
  const auto u2 = axpy(u, 0.5 * dt, k1);
  check_positive(u2, model, "rk4 stage 2");
  const auto k2 = evaluate_rhs(u2, model);
  const auto u3 = axpy(u, 0.5 * dt, k2);
  check_positive(u3, model, "rk4 stage 3");
  const auto k3 = evaluate_rhs(u3, model);
  const auto u4 = axpy(u, dt, k3);
  check_positive(u4, model, "rk4 stage 4");
  const auto k4 = evaluate_rhs(u4, model);

  std::vector<double> next(u.size());
  const double w = dt / 6.0;
  for (std::size_t j = 0; j < next.size(); ++j) {
    next[j] = u[j] + w * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
  }
  GridFunction result(u.grid(), std::move(next));
  check_positive(result, model, "rk4 result");
  return SolverState{state.t + dt, std::move(result), state.step_count + 1, dt};
}

Trajectory integrate(const GridFunction& u0, const Model& model_in, const SolverConfig& config,
                     DiagnosticsHook hook) {
  config.validate();
  Model model = model_in;
  model.params.positivity_floor = config.positivity_floor;
  model.params.validate(model.kind);

  Trajectory traj;
  if (!(min_value(u0) > config.positivity_floor)) {
    traj.termination = Termination::PositivityViolation;
    traj.message = "initial data is not above the positivity floor";
    return traj;
  }
  if (!hook) hook = make_recorder(mean(u0));

  SolverState state{0.0, u0, 0, 0.0};
  try {
    traj.entries.push_back({0.0, u0, hook(0.0, u0, 0.0)});
  } catch (const PositivityViolation& e) {
    traj.termination = Termination::PositivityViolation;
    traj.message = e.what();
    return traj;
  }

  // Recording times k * record_every; the last one snaps to t_end.
  const double snap = 1e-12 * config.t_end;
  std::size_t next_index = 1;
  auto next_record_time = [&] {
    const double t = static_cast<double>(next_index) * config.record_every;
    return t >= config.t_end - snap ? config.t_end : t;
  };

  while (state.t < config.t_end) {
    if (state.step_count >= config.max_steps) {
      traj.termination = Termination::StepLimit;
      traj.message = "step limit " + std::to_string(config.max_steps) + " reached at t = " +
                     std::to_string(state.t);
      return traj;
    }
    const double target = next_record_time();
    try {
      const double dt_stable = stable_dt(state.u, model, config.cfl);
      const double remaining = target - state.t;
      const bool lands = remaining <= dt_stable;
      state = step_rk4(state, model, lands ? remaining : dt_stable);
      if (lands) {
        state.t = target;
        traj.entries.push_back({state.t, state.u, hook(state.t, state.u, state.last_dt)});
        ++next_index;
      }
    } catch (const PositivityViolation& e) {
      traj.termination = Termination::PositivityViolation;
      traj.message = e.what();
      return traj;
    } catch (const SlopeBlowup& e) {
      traj.termination = Termination::SlopeBlowup;
      traj.message = e.what();
      return traj;
    }
  }
  traj.termination = Termination::ReachedTEnd;
  return traj;
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::ReachedTEnd: return "ReachedTEnd";
    case Termination::PositivityViolation: return "PositivityViolation";
    case Termination::SlopeBlowup: return "SlopeBlowup";
    case Termination::StepLimit: return "StepLimit";
  }
  return "Unknown";
}

}  // namespace afd
