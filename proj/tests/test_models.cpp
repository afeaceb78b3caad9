#include <doctest.h>

#include <cmath>
#include <numbers>

#include "afd/errors.hpp"
#include "afd/grid.hpp"
#include "afd/models.hpp"
#include "test_support.hpp"

using namespace afd;
using afd::test::random_trig;
using afd::test::sup_diff;
using std::numbers::pi;

namespace {

GridFunction bump(const Grid& g, double a) {
  return GridFunction::sample(g, [a](double x) { return 1.0 + a * std::cos(x); });
}

GridFunction exp_sin(const Grid& g) {
  return GridFunction::sample(g, [](double x) { return std::exp(std::sin(x)); });
}

// 1 + amplitude * f / max|f| for a random trigonometric polynomial f.
GridFunction random_positive(const Grid& g, int degree, std::uint64_t seed,
                             double amplitude = 0.6) {
  const auto f = random_trig(g, degree, seed);
  const double scale = amplitude / norm_linf(f);
  std::vector<double> v(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) v[j] = 1.0 + scale * f[j];
  return GridFunction(g, v);
}

GridFunction scaled(const GridFunction& f, double s) {
  std::vector<double> v(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) v[j] = s * f[j];
  return GridFunction(f.grid(), v);
}

}  // namespace

TEST_SUITE("models") {
  TEST_CASE("model names round trip") {
    for (auto k : {ModelKind::ArctanLocal, ModelKind::LogDiffusion, ModelKind::ArctanNonlocal,
                   ModelKind::Regularized}) {
      CHECK(parse_model_kind(to_string(k)) == k);
    }
    CHECK_THROWS_AS(parse_model_kind("porous_medium"), InvalidArgument);
  }

  TEST_CASE("params validation") {
    ModelParams p;
    CHECK_NOTHROW(p.validate(ModelKind::ArctanLocal));
    p.epsilon = 1e-3;
    CHECK_THROWS_AS(p.validate(ModelKind::ArctanLocal), InvalidArgument);
    CHECK_NOTHROW(p.validate(ModelKind::Regularized));
    p.epsilon = -1.0;
    CHECK_THROWS_AS(p.validate(ModelKind::Regularized), InvalidArgument);
    p = {};
    p.kappa = 1e-3;
    CHECK_THROWS_AS(p.validate(ModelKind::LogDiffusion), InvalidArgument);
    p = {};
    p.hilbert_sign = 0;
    CHECK_THROWS_AS(p.validate(ModelKind::ArctanNonlocal), InvalidArgument);
    p = {};
    p.positivity_floor = 0.0;
    CHECK_THROWS_AS(p.validate(ModelKind::ArctanLocal), InvalidArgument);
  }

  TEST_CASE("constants are steady states") {
    const Grid g(64);
    ModelParams reg;
    reg.epsilon = 0.1;
    reg.kappa = 0.05;
    for (double c : {0.01, 1.0, 7.5}) {
      const auto u = GridFunction::constant(g, c);
      CHECK(norm_linf(rhs_arctan(u)) < 1e-12);
      CHECK(norm_linf(rhs_log(u)) < 1e-12);
      CHECK(norm_linf(rhs_nonlocal(u, {})) < 1e-12);
      CHECK(norm_linf(rhs_regularized(u, reg)) < 1e-12);
      CHECK(norm_linf(theta_from_u(u)) < 1e-12);
    }
  }

  TEST_CASE("rhs_arctan pointwise values") {
    const Grid g(128);
    const auto r = rhs_arctan(bump(g, 0.5));
    CHECK(r[0] == doctest::Approx(-1.0 / 3.0).epsilon(1e-13));
    CHECK(r[32] == doctest::Approx(-0.2).epsilon(1e-13));  // x = pi/2
    const auto l = rhs_log(bump(g, 0.5));
    CHECK(l[32] == doctest::Approx(-0.25).epsilon(1e-13));
    CHECK(l[0] == doctest::Approx(-0.5 / 1.5).epsilon(1e-13));
  }

  TEST_CASE("rhs_arctan matches the closed form everywhere") {
    const Grid g(256);
    const double a = 0.7;
    const auto expected = GridFunction::sample(g, [a](double x) {
      const double u = 1 + a * std::cos(x), ux = -a * std::sin(x), uxx = -a * std::cos(x);
      return (u * uxx - ux * ux) / (u * u + ux * ux);
    });
    CHECK(sup_diff(rhs_arctan(bump(g, a)), expected) < 1e-10);
  }

  TEST_CASE("positivity guard") {
    const Grid g(32);
    const auto neg = bump(g, 1.5);
    CHECK_THROWS_AS(rhs_arctan(neg), PositivityViolation);
    CHECK_THROWS_AS(rhs_log(neg), PositivityViolation);
    CHECK_THROWS_AS(rhs_nonlocal(neg, {}), PositivityViolation);
    CHECK_THROWS_AS(theta_from_u(neg), PositivityViolation);
    CHECK_THROWS_AS(rhs_regularized(neg, {}), PositivityViolation);
    const auto tiny = GridFunction::constant(g, 1e-9);
    CHECK_THROWS_AS(rhs_arctan(tiny), PositivityViolation);
    CHECK_NOTHROW(rhs_arctan(tiny, 1e-10));
    CHECK_THROWS_AS(require_positive(tiny, 1e-8, "u"), PositivityViolation);
  }

  TEST_CASE("mass conservation of the semi-discrete operators") {
    // Includes inputs far from resolved on the grid.
    const Grid g(128);
    ModelParams reg;
    reg.epsilon = 1e-2;
    reg.kappa = 1e-2;
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
      const auto u = random_positive(g, 1 + static_cast<int>(seed % 20), seed, 0.95);
      CHECK(std::abs(quadrature(rhs_arctan(u))) < 1e-10);
      CHECK(std::abs(quadrature(rhs_log(u))) < 1e-10);
      CHECK(std::abs(quadrature(rhs_nonlocal(u, {}))) < 1e-10);
      CHECK(std::abs(quadrature(rhs_regularized(u, reg))) < 1e-10);
    }
  }

  TEST_CASE("scale invariance") {
    const Grid g(64);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const auto u = random_positive(g, 8, seed);
      const auto base = rhs_arctan(u);
      for (double lambda : {0.1, 1.0, 10.0}) {
        CHECK(sup_diff(rhs_arctan(scaled(u, lambda)), base) < 1e-10 * (1 + norm_linf(base)));
      }
    }
  }

  TEST_CASE("spectral accuracy across resolutions") {
    const auto coarse = rhs_arctan(exp_sin(Grid(64)));
    const auto fine = rhs_arctan(exp_sin(Grid(128)));
    CHECK(afd::test::sup_diff_subsampled(coarse, fine) < 1e-8);
  }

  TEST_CASE("small-slope agreement of arctan and log diffusion") {
    const Grid g(64);
    // slope |u_x/u| <= a/(1-a) for 1 + a cos x
    for (double a : {0.09, 0.05, 0.02, 0.01}) {
      const auto u = bump(g, a);
      const auto q = derivative(u, 1);
      double slope = 0.0;
      for (std::size_t j = 0; j < g.size(); ++j) slope = std::max(slope, std::abs(q[j] / u[j]));
      REQUIRE(slope <= 0.1);
      const auto rl = rhs_log(u);
      CHECK(sup_diff(rhs_arctan(u), rl) <= slope * slope * norm_linf(rl) * (1 + 1e-10));
    }
  }

  TEST_CASE("nonlocal rhs against a principal-value kernel quadrature") {
    // H u(x) = (1/2pi) p.v. int u(y) cot((x - y)/2) dy, evaluated with the
    // singularity subtracted so the integrand is smooth and periodic.
    constexpr std::size_t n = 4096;
    const Grid g(n);
    const double a = 0.1;
    auto u_of = [a](double x) { return 1 + a * std::cos(x); };
    auto ux_of = [a](double x) { return -a * std::sin(x); };
    const double dy = kTwoPi / n;
    std::vector<double> hu(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = g.point(i);
      double s = -2.0 * ux_of(x);  // limit of the subtracted integrand at y = x
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const double y = g.point(j);
        s += (u_of(y) - u_of(x)) / std::tan((x - y) / 2);
      }
      hu[i] = s * dy / kTwoPi;
    }
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = std::atan(-hu[i] / u_of(g.point(i)));
    const auto oracle = fd_derivative(GridFunction(g, v));
    CHECK(sup_diff(rhs_nonlocal(bump(g, a), {}), oracle) < 1e-6);

    // Flipping the sign flips the rhs for an even profile.
    ModelParams flipped;
    flipped.hilbert_sign = -1;
    const auto r = rhs_nonlocal(bump(g, a), {});
    const auto rf = rhs_nonlocal(bump(g, a), flipped);
    double m = 0.0;
    for (std::size_t j = 0; j < n; ++j) m = std::max(m, std::abs(r[j] + rf[j]));
    CHECK(m < 1e-12);
  }

  TEST_CASE("regularized rhs reduces to the arctan rhs") {
    const Grid g(128);
    const auto u = bump(g, 0.5);
    CHECK(sup_diff(rhs_regularized(u, {}), rhs_arctan(u)) < 1e-10);

    double previous = INFINITY;
    for (double eps : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5}) {
      ModelParams p;
      p.epsilon = eps;
      p.kappa = eps;
      const double d = sup_diff(rhs_regularized(u, p), rhs_arctan(u));
      CHECK(d < previous);
      previous = d;
    }
    CHECK(previous < 1e-3);
  }

  TEST_CASE("regularized rhs is mollified and mean free") {
    const Grid g(64);
    ModelParams p;
    p.epsilon = 0.05;
    p.kappa = 0.1;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const auto u = random_positive(g, 12, seed);
      const auto r = rhs_regularized(u, p);
      CHECK(std::abs(mean(r)) < 1e-12);
      // high modes carry at least the outer mollifier factor
      const auto s = to_spectrum(r);
      const int k = 20;
      CHECK(std::abs(s.coefficient(k)) <= std::exp(-p.kappa * k * k) * 1e3);
    }
  }

  TEST_CASE("theta from u") {
    const Grid g(64);
    const auto th = theta_from_u(exp_sin(g));
    CHECK(sup_diff(th, GridFunction::sample(g, [](double x) { return std::atan(std::cos(x)); })) <
          1e-13);
    CHECK(std::abs(norm_linf(th) - pi / 4) < 1e-13);
    constexpr double kThetaAtHalfPi = -0.463647609000806116214;  // arctan(-1/2)
    CHECK(std::abs(theta_from_u(bump(g, 0.5))[16] - kThetaAtHalfPi) < 1e-14);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      CHECK(norm_linf(theta_from_u(random_positive(g, 15, seed))) < pi / 2);
    }
  }

  TEST_CASE("rhs_theta vanishes for theta = 0") {
    const Grid g(32);
    const auto zero = GridFunction::constant(g, 0.0);
    CHECK(norm_linf(rhs_theta(zero, bump(g, 0.3))) == 0.0);
    CHECK(norm_linf(rhs_theta(zero, GridFunction::constant(g, 2.0))) == 0.0);
  }

  TEST_CASE("rhs_theta matches the chain rule along the arctan flow") {
    // theta_t = (u u_xt - u_x u_t) / (u^2 + u_x^2) with u_t = rhs_arctan(u).
    const Grid g(256);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const auto u = random_positive(g, 1 + static_cast<int>(seed % 3), seed, 0.3);
      const auto ut = rhs_arctan(u);
      const auto ux = derivative(u, 1);
      const auto uxt = derivative(ut, 1);
      std::vector<double> expected(g.size());
      for (std::size_t j = 0; j < g.size(); ++j) {
        expected[j] = (u[j] * uxt[j] - ux[j] * ut[j]) / (u[j] * u[j] + ux[j] * ux[j]);
      }
      const auto got = rhs_theta(theta_from_u(u), u);
      CHECK(sup_diff(got, GridFunction(g, expected)) < 1e-8 * (1 + norm_linf(got)));
    }
  }

  TEST_CASE("rhs_theta sign at the maximum of theta") {
    const Grid g(128);
    const auto u = exp_sin(g);
    const auto th = theta_from_u(u);
    std::size_t arg = 0;
    for (std::size_t j = 1; j < g.size(); ++j) {
      if (th[j] > th[arg]) arg = j;
    }
    CHECK(arg == 0);
    const auto r = rhs_theta(th, u);
    const auto thxx = derivative(th, 2);
    // theta_x = 0 there, u = 1, tan theta = 1, theta_xx = -1/2
    CHECK(thxx[arg] == doctest::Approx(-0.5).epsilon(1e-10));
    CHECK(r[arg] <= 0.0);
    CHECK(r[arg] == doctest::Approx(-0.25).epsilon(1e-10));
  }

  TEST_CASE("rhs_theta slope blowup") {
    const Grid g(32);
    const auto u = GridFunction::constant(g, 1.0);
    const auto steep = GridFunction::constant(g, pi / 2 - 1e-7);
    CHECK_THROWS_AS(rhs_theta(steep, u), SlopeBlowup);
    const auto fine = GridFunction::constant(g, pi / 2 - 1e-5);
    CHECK_NOTHROW(rhs_theta(fine, u));
  }

  TEST_CASE("evaluate_rhs dispatch") {
    const Grid g(64);
    const auto u = bump(g, 0.4);
    CHECK(sup_diff(evaluate_rhs(u, {ModelKind::ArctanLocal, {}}), rhs_arctan(u)) == 0.0);
    CHECK(sup_diff(evaluate_rhs(u, {ModelKind::LogDiffusion, {}}), rhs_log(u)) == 0.0);
    CHECK(sup_diff(evaluate_rhs(u, {ModelKind::ArctanNonlocal, {}}), rhs_nonlocal(u, {})) == 0.0);
    ModelParams p;
    p.epsilon = 1e-2;
    CHECK(sup_diff(evaluate_rhs(u, {ModelKind::Regularized, p}), rhs_regularized(u, p)) == 0.0);
    CHECK_THROWS_AS(evaluate_rhs(u, {ModelKind::ArctanLocal, p}), InvalidArgument);
  }
}
