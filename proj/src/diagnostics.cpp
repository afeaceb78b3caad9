#include "afd/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "afd/errors.hpp"
#include "afd/models.hpp"

namespace afd {

namespace {

constexpr double kUnitMassTolerance = 1e-12;
constexpr double kDegenerateSeminorm = 1e-13;

// dx * sum_j f(u_j, u_x,j)
template <class Integrand>
double integrate_pointwise(const GridFunction& u, const GridFunction& ux, Integrand&& f) {
  double s = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) s += f(u[j], ux[j]);
  return u.grid().dx() * s;
}

double entropy_density(double v, double) { return v * std::log(v) - v + 1.0; }

double entropy_dissipation_density(double v, double vx) {
  const double q = vx / v;
  return std::atan(q) * q;
}

double energy_dissipation_density(double v, double vx) { return std::atan(vx / v) * vx; }

double lyapunov_density(double v, double vx) {
  const double q = vx / v;
  const double th = std::atan(q);
  const double th2 = th * th;
  return v * (1.0 + q * q) * (0.5 * th2 + 0.25 * th2 * th2);
}

double theta_linf_from(const GridFunction& u, const GridFunction& ux) {
  double m = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) m = std::max(m, std::abs(std::atan(ux[j] / u[j])));
  return m;
}

struct Normalized {
  GridFunction u;
  bool was_unit_mass;
};

Normalized normalize_mass(const GridFunction& u) {
  const double mass = quadrature(u);
  const bool unit = std::abs(mass - 1.0) <= kUnitMassTolerance;
  std::vector<double> v(u.values().begin(), u.values().end());
  for (double& x : v) x /= mass;
  return {GridFunction(u.grid(), std::move(v)), unit};
}

double mean_of(const GridFunction& u) { return quadrature(u) / kTwoPi; }

GridFunction relative_deviation(const GridFunction& u, double mean_u0) {
  std::vector<double> w(u.size());
  for (std::size_t j = 0; j < w.size(); ++j) w[j] = (u[j] - mean_u0) / mean_u0;
  return GridFunction(u.grid(), std::move(w));
}

double l2_distance_to(const GridFunction& u, double c) {
  double s = 0.0;
  for (double v : u.values()) s += (v - c) * (v - c);
  return std::sqrt(u.grid().dx() * s);
}

}  // namespace

double entropy(const GridFunction& u) {
  require_positive(u, 0.0, "entropy");
  return integrate_pointwise(u, u, entropy_density);
}

double entropy_dissipation(const GridFunction& u) {
  require_positive(u, 0.0, "entropy_dissipation");
  return integrate_pointwise(u, derivative(u, 1), entropy_dissipation_density);
}

double energy_dissipation(const GridFunction& u) {
  require_positive(u, 0.0, "energy_dissipation");
  return integrate_pointwise(u, derivative(u, 1), energy_dissipation_density);
}

double lyapunov(const GridFunction& u) {
  require_positive(u, 0.0, "lyapunov");
  return integrate_pointwise(u, derivative(u, 1), lyapunov_density);
}

double theta_linf(const GridFunction& u) {
  require_positive(u, 0.0, "theta_linf");
  return theta_linf_from(u, derivative(u, 1));
}

DiagnosticsRecord compute_record(double t, const GridFunction& u, double mean_u0, double dt_used) {
  require_positive(u, 0.0, "diagnostics");
  const auto ux = derivative(u, 1);
  DiagnosticsRecord r;
  r.t = t;
  r.mass = quadrature(u);
  r.min_u = min_value(u);
  r.max_u = max_value(u);
  r.l2_dist = l2_distance_to(u, mean_u0);
  r.entropy = integrate_pointwise(u, u, entropy_density);
  r.entropy_dissipation = integrate_pointwise(u, ux, entropy_dissipation_density);
  r.energy_dissipation = integrate_pointwise(u, ux, energy_dissipation_density);
  r.lyapunov = integrate_pointwise(u, ux, lyapunov_density);
  r.theta_linf = theta_linf_from(u, ux);
  const auto w = relative_deviation(u, mean_u0);
  r.a1_norm = wiener_norm(w, 1.0);
  r.a3_norm = wiener_norm(w, 3.0);
  r.dt_used = dt_used;
  return r;
}

DiagnosticsHook make_recorder(double mean_u0) {
  return [mean_u0](double t, const GridFunction& u, double dt_used) {
    return compute_record(t, u, mean_u0, dt_used);
  };
}

InequalityReport check_inequality_1(const GridFunction& u) {
  require_positive(u, 0.0, "check_inequality_1");
  const auto [v, unit] = normalize_mass(u);
  const auto vx = derivative(v, 1);
  InequalityReport r;
  r.normalized_input = unit;
  r.lhs = integrate_pointwise(v, vx, [](double a, double ax) {
    return std::atan(std::abs(ax) / a) * std::abs(ax);
  });
  r.signed_lhs = integrate_pointwise(v, vx, energy_dissipation_density);
  const double seminorm = norm_l1(vx);
  r.rhs = std::atan(seminorm) * seminorm;
  r.margin = r.lhs - r.rhs;
  return r;
}

InequalityReport check_inequality_2(const GridFunction& u) {
  require_positive(u, 0.0, "check_inequality_2");
  const auto [v, unit] = normalize_mass(u);
  const auto vx = derivative(v, 1);
  InequalityReport r;
  r.normalized_input = unit;
  const double seminorm = norm_l1(vx);
  if (seminorm <= kDegenerateSeminorm) {
    r.status = InequalityStatus::DegenerateInput;
    return r;
  }
  r.lhs = integrate_pointwise(v, vx, [](double a, double ax) {
    const double q = std::abs(ax) / a;
    return std::atan(q) * q;
  });
  const double weighted =
      integrate_pointwise(v, vx, [](double a, double ax) { return std::abs(ax) * a; });
  const double x = seminorm * seminorm / weighted;
  r.rhs = std::atan(x) * x / (4.0 * std::numbers::pi);
  r.margin = r.lhs - r.rhs;
  return r;
}

double decay_bound(const GridFunction& u0, double t) {
  const double e0 = l2_distance_to(u0, mean_of(u0));
  if (e0 == 0.0) return 0.0;
  return e0 * std::exp(-0.5 * std::atan(kPoincareConstant * e0) / e0 * t);
}

BalanceResiduals balance_residuals(const Trajectory& traj) {
  const auto& e = traj.entries;
  if (e.size() < 3) {
    throw InsufficientRecords("balance_residuals needs at least 3 records, got " +
                              std::to_string(e.size()));
  }
  const auto& r0 = e.front().record;
  const double h0 = r0.entropy;
  const double half_e0 = 0.5 * r0.l2_dist * r0.l2_dist;
  double int_d = 0.0;
  double int_dcal = 0.0;
  BalanceResiduals out;
  for (std::size_t i = 1; i < e.size(); ++i) {
    const auto& a = e[i - 1].record;
    const auto& b = e[i].record;
    const double dt = b.t - a.t;
    int_d += 0.5 * dt * (a.entropy_dissipation + b.entropy_dissipation);
    int_dcal += 0.5 * dt * (a.energy_dissipation + b.energy_dissipation);
    out.entropy = std::max(out.entropy, std::abs(b.entropy + int_d - h0));
    out.energy = std::max(out.energy, std::abs(0.5 * b.l2_dist * b.l2_dist + int_dcal - half_e0));
  }
  return out;
}

WienerReport wiener_check(const Trajectory& traj, double mean_u0) {
  if (!(mean_u0 > 0.0)) throw InvalidArgument("wiener_check: mean of u0 must be positive");
  WienerReport rep;
  const auto& e = traj.entries;
  if (e.empty()) return rep;

  std::vector<double> a1(e.size());
  std::vector<double> a3(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    const auto w = relative_deviation(e[i].u, mean_u0);
    a1[i] = wiener_norm(w, 1.0);
    a3[i] = wiener_norm(w, 3.0);
  }
  rep.a1_initial = a1.front();
  rep.precondition_ok = rep.a1_initial < kWienerThreshold;
  if (!rep.precondition_ok) return rep;

  rep.a1_sup = *std::ranges::max_element(a1);
  rep.c = 6.0 * rep.a1_sup / (1.0 - 4.0 * rep.a1_sup);

  rep.max_a1_increase = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < e.size(); ++i) {
    rep.max_a1_increase = std::max(rep.max_a1_increase, a1[i] - a1[i - 1]);
  }
  if (e.size() < 2) rep.max_a1_increase = 0.0;
  rep.a1_monotone = rep.max_a1_increase <= kWienerMonotoneSlack;

  rep.max_residual = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i + 1 < e.size(); ++i) {
    const double rate = (a1[i + 1] - a1[i - 1]) / (e[i + 1].t - e[i - 1].t);
    rep.max_residual = std::max(rep.max_residual, mean_u0 * rate + (1.0 - rep.c) * a3[i]);
  }
  if (e.size() < 3) rep.max_residual = 0.0;
  rep.inequality_ok = rep.c < 1.0 && rep.max_residual <= kWienerResidualSlack;
  return rep;
}

}  // namespace afd
