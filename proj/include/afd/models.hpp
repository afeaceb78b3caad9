#pragma once

#include <string>
#include <string_view>

#include "afd/grid.hpp"

namespace afd {

enum class ModelKind {
  ArctanLocal,     // u_t = d/dx arctan(u_x / u)
  LogDiffusion,    // u_t = d/dx (u_x / u)
  ArctanNonlocal,  // u_t = d/dx arctan(-H u / u)
  Regularized,     // mollified, viscous approximation of ArctanLocal
};

inline constexpr double kDefaultPositivityFloor = 1e-8;

struct ModelParams {
  double epsilon = 0.0;  // artificial viscosity and denominator lift
  double kappa = 0.0;    // heat-kernel mollification time
  int hilbert_sign = 1;  // +1 uses the -i sign(k) multiplier as is
  double positivity_floor = kDefaultPositivityFloor;

  // Throws InvalidArgument. epsilon and kappa must be zero unless kind is
  // Regularized.
  void validate(ModelKind kind) const;
};

struct Model {
  ModelKind kind = ModelKind::ArctanLocal;
  ModelParams params;
};

std::string_view to_string(ModelKind kind);
// Accepts arctan_local, log_diffusion, arctan_nonlocal, regularized.
ModelKind parse_model_kind(std::string_view name);

// (u u_xx - u_x^2) / (u^2 + u_x^2), evaluated as d/dx arctan(u_x / u) so that
// the discrete mean of the result vanishes exactly.
GridFunction rhs_arctan(const GridFunction& u, double positivity_floor = kDefaultPositivityFloor);

// (u u_xx - u_x^2) / u^2, evaluated as d/dx (u_x / u).
GridFunction rhs_log(const GridFunction& u, double positivity_floor = kDefaultPositivityFloor);

// d/dx arctan(hilbert_sign * (-H u) / u)
GridFunction rhs_nonlocal(const GridFunction& u, const ModelParams& params);

/**
 * Regularized right-hand side with v = J_kappa * u:
 *
 *   d/dx J_kappa * arctan(v_x / (v + eps)) + eps J_kappa * v_xx
 *
 * Evaluated as a literal composition (mollify, arctan quotient, derivative,
 * mollify) plus the viscous term. With eps = kappa = 0 this is rhs_arctan.
 */
GridFunction rhs_regularized(const GridFunction& u, const ModelParams& params);

GridFunction evaluate_rhs(const GridFunction& u, const Model& model);

// theta = arctan(u_x / u), the argument of u + i u_x.
GridFunction theta_from_u(const GridFunction& u, double positivity_floor = kDefaultPositivityFloor);

/**
 * Time derivative of theta along a solution of the arctan equation:
 *
 *   u (1 + tan^2 theta) theta_t = theta_xx - tan(theta) theta_x
 *
 * tan(theta) is taken as u_x / u. Throws SlopeBlowup once |theta| reaches
 * pi/2 - 1e-6.
 */
GridFunction rhs_theta(const GridFunction& theta, const GridFunction& u,
                       double positivity_floor = kDefaultPositivityFloor);

// Throws PositivityViolation unless min(u) > floor.
void require_positive(const GridFunction& u, double floor, std::string_view what);

}  // namespace afd
