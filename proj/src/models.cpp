#include "afd/models.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "afd/errors.hpp"

namespace afd {

namespace {

constexpr double kSlopeMargin = 1e-6;

// Shared body of rhs_arctan and rhs_log: d/dx flux(u_x / u). Taking the
// spectral derivative of the flux keeps the mean of the result at zero for
// any input; the expanded quotient only does so up to its aliasing error.
template <class Flux>
GridFunction divergence_rhs(const GridFunction& u, double floor, std::string_view what,
                            Flux&& flux) {
  require_positive(u, floor, what);
  const auto ux = derivative(u, 1);
  std::vector<double> f(u.size());
  for (std::size_t j = 0; j < f.size(); ++j) f[j] = flux(ux[j] / u[j]);
  return derivative(GridFunction(u.grid(), std::move(f)), 1);
}

}  // namespace

void require_positive(const GridFunction& u, double floor, std::string_view what) {
  const double m = min_value(u);
  if (!(m > floor)) {
    std::ostringstream os;
    os.precision(17);
    os << what << ": min value " << m << " is not above the positivity floor " << floor;
    throw PositivityViolation(os.str());
  }
}

void ModelParams::validate(ModelKind kind) const {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw InvalidArgument("epsilon must be finite and >= 0");
  }
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
    throw InvalidArgument("kappa must be finite and >= 0");
  }
  if (!(positivity_floor > 0.0) || !std::isfinite(positivity_floor)) {
    throw InvalidArgument("positivity_floor must be finite and > 0");
  }
  if (hilbert_sign != 1 && hilbert_sign != -1) {
    throw InvalidArgument("hilbert_sign must be +1 or -1");
  }
  if (kind != ModelKind::Regularized && (epsilon != 0.0 || kappa != 0.0)) {
    throw InvalidArgument("epsilon and kappa must be zero unless the model is regularized");
  }
}

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::ArctanLocal: return "arctan_local";
    case ModelKind::LogDiffusion: return "log_diffusion";
    case ModelKind::ArctanNonlocal: return "arctan_nonlocal";
    case ModelKind::Regularized: return "regularized";
  }
  return "unknown";
}

ModelKind parse_model_kind(std::string_view name) {
  for (auto kind : {ModelKind::ArctanLocal, ModelKind::LogDiffusion, ModelKind::ArctanNonlocal,
                    ModelKind::Regularized}) {
    if (name == to_string(kind)) return kind;
  }
  throw InvalidArgument("unknown model '" + std::string(name) +
                        "' (expected arctan_local, log_diffusion, arctan_nonlocal or regularized)");
}

GridFunction rhs_arctan(const GridFunction& u, double positivity_floor) {
  return divergence_rhs(u, positivity_floor, "rhs_arctan",
                        [](double q) { return std::atan(q); });
}

GridFunction rhs_log(const GridFunction& u, double positivity_floor) {
  return divergence_rhs(u, positivity_floor, "rhs_log", [](double q) { return q; });
}

GridFunction rhs_nonlocal(const GridFunction& u, const ModelParams& params) {
  require_positive(u, params.positivity_floor, "rhs_nonlocal");
  const auto hu = hilbert(u);
  const double sign = static_cast<double>(params.hilbert_sign);
  std::vector<double> v(u.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = std::atan(sign * (-hu[j]) / u[j]);
  return derivative(GridFunction(u.grid(), std::move(v)), 1);
}

GridFunction rhs_regularized(const GridFunction& u, const ModelParams& params) {
  const double eps = params.epsilon;
  const auto v = heat_mollify(u, params.kappa);
  if (!(min_value(v) + eps > params.positivity_floor)) {
    std::ostringstream os;
    os.precision(17);
    os << "rhs_regularized: mollified min " << min_value(v) << " + epsilon " << eps
       << " is not above the positivity floor " << params.positivity_floor;
    throw PositivityViolation(os.str());
  }
  const auto [vx, vxx] = first_and_second_derivative(v);
  std::vector<double> flux(u.size());
  for (std::size_t j = 0; j < flux.size(); ++j) flux[j] = std::atan(vx[j] / (v[j] + eps));
  const auto transport =
      derivative(heat_mollify(GridFunction(u.grid(), std::move(flux)), params.kappa), 1);
  if (eps == 0.0) return transport;
  const auto viscous = heat_mollify(vxx, params.kappa);
  std::vector<double> out(u.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = transport[j] + eps * viscous[j];
  return GridFunction(u.grid(), std::move(out));
}

GridFunction evaluate_rhs(const GridFunction& u, const Model& model) {
  model.params.validate(model.kind);
  switch (model.kind) {
    case ModelKind::ArctanLocal: return rhs_arctan(u, model.params.positivity_floor);
    case ModelKind::LogDiffusion: return rhs_log(u, model.params.positivity_floor);
    case ModelKind::ArctanNonlocal: return rhs_nonlocal(u, model.params);
    case ModelKind::Regularized: return rhs_regularized(u, model.params);
  }
  throw InvalidArgument("unknown model kind");
}

GridFunction theta_from_u(const GridFunction& u, double positivity_floor) {
  require_positive(u, positivity_floor, "theta_from_u");
  const auto ux = derivative(u, 1);
  std::vector<double> theta(u.size());
  for (std::size_t j = 0; j < theta.size(); ++j) theta[j] = std::atan(ux[j] / u[j]);
  return GridFunction(u.grid(), std::move(theta));
}

GridFunction rhs_theta(const GridFunction& theta, const GridFunction& u, double positivity_floor) {
  if (!(theta.grid() == u.grid())) throw InvalidArgument("rhs_theta: theta and u grids differ");
  require_positive(u, positivity_floor, "rhs_theta");
  const double limit = std::numbers::pi / 2 - kSlopeMargin;
  if (!(norm_linf(theta) < limit)) {
    std::ostringstream os;
    os.precision(17);
    os << "rhs_theta: |theta| reached " << norm_linf(theta) << " (limit " << limit << ")";
    throw SlopeBlowup(os.str());
  }
  const auto ux = derivative(u, 1);
  const auto [tx, txx] = first_and_second_derivative(theta);
  std::vector<double> out(u.size());
  for (std::size_t j = 0; j < out.size(); ++j) {
    const double slope = ux[j] / u[j];
    out[j] = (txx[j] - slope * tx[j]) / (u[j] * (1.0 + slope * slope));
  }
  return GridFunction(u.grid(), std::move(out));
}

}  // namespace afd
