#pragma once

#include <numbers>

#include "afd/grid.hpp"
#include "afd/trajectory.hpp"

namespace afd {

// Poincare constant on the 2*pi circle, from ||f - <f>||_Linf <= ||f'||_L1
// and ||g||_L2 <= sqrt(2 pi) ||g||_Linf.
inline constexpr double kPoincareConstant = 0.39894228040143267794;  // (2 pi)^(-1/2)

// integral u log u - u + 1
double entropy(const GridFunction& u);
// integral arctan(u_x/u) u_x/u
double entropy_dissipation(const GridFunction& u);
// integral arctan(u_x/u) u_x
double energy_dissipation(const GridFunction& u);
// integral u (1 + tan^2 theta)(theta^2/2 + theta^4/4), theta = arctan(u_x/u)
double lyapunov(const GridFunction& u);
// max |arctan(u_x/u)|
double theta_linf(const GridFunction& u);

DiagnosticsRecord compute_record(double t, const GridFunction& u, double mean_u0, double dt_used);

// Hook for integrate() that records every functional relative to <u0>.
DiagnosticsHook make_recorder(double mean_u0);

enum class InequalityStatus { Ok, DegenerateInput };

struct InequalityReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // lhs - rhs, kept even when negative
  // Input already had unit mass (to 1e-12); otherwise it was rescaled.
  bool normalized_input = false;
  InequalityStatus status = InequalityStatus::Ok;
  // First inequality only: the integrand without absolute values. Equal to
  // lhs up to rounding since arctan is odd.
  double signed_lhs = 0.0;
};

/**
 * First Sobolev-type inequality on the unit-mass rescaling of u:
 *
 *   integral arctan(|u_x|/u) |u_x|  >=  arctan(W) W,   W = ||u_x||_L1.
 */
InequalityReport check_inequality_1(const GridFunction& u);

/**
 * Second inequality on the unit-mass rescaling of u:
 *
 *   integral arctan(|u_x|/u) |u_x|/u  >=  (1/4pi) arctan(X) X,
 *   X = W^2 / || |u_x| u ||_L1.
 *
 * A numerically constant u (W <= 1e-13) is reported as DegenerateInput with
 * the limiting margin 0.
 */
InequalityReport check_inequality_2(const GridFunction& u);

// E0 exp(-(1/2) arctan(C E0)/E0 * t) with E0 = ||u0 - <u0>||_L2 and C the
// Poincare constant. Returns 0 for constant u0.
double decay_bound(const GridFunction& u0, double t);

struct BalanceResiduals {
  double entropy = 0.0;
  double energy = 0.0;
};

// Max over records of |H(t) + int_0^t D - H(0)| and
// |1/2 E(t)^2 + int_0^t Dcal - 1/2 E(0)^2|, time integrals by trapezoid.
// Throws InsufficientRecords below three records.
BalanceResiduals balance_residuals(const Trajectory& traj);

struct WienerReport {
  bool precondition_ok = false;  // ||w0||_A1 < 1/10
  double a1_initial = 0.0;
  double a1_sup = 0.0;
  double c = 0.0;                // 6a / (1 - 4a), a = a1_sup
  bool a1_monotone = false;
  double max_a1_increase = 0.0;  // largest A1(t_{i+1}) - A1(t_i)
  double max_residual = 0.0;     // max of <u0> dA1/dt + (1 - c) A3 at interior records
  bool inequality_ok = false;
};

inline constexpr double kWienerThreshold = 0.1;
inline constexpr double kWienerMonotoneSlack = 1e-8;
inline constexpr double kWienerResidualSlack = 1e-4;

// Checks the A1 decay and the differential inequality along the trajectory,
// with w = (u - <u0>)/<u0>. When the smallness hypothesis fails only the
// precondition fields are filled in.
WienerReport wiener_check(const Trajectory& traj, double mean_u0);

}  // namespace afd
