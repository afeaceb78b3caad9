#include <doctest.h>

#include <cmath>
#include <numbers>

#include "afd/errors.hpp"
#include "afd/models.hpp"
#include "afd/trialgen.hpp"
#include "test_support.hpp"

using namespace afd;

TEST_SUITE("trialgen") {
  TEST_CASE("counter rng reproduces splitmix64") {
    // Reference SplitMix64 outputs for seed 0.
    CounterRng rng(0);
    CHECK(rng.next() == 0xE220A8397B1DCDAFULL);
    CHECK(rng.next() == 0x6E789E6AA1B965F4ULL);
    CHECK(rng.next() == 0x06C45D188009454FULL);
    CHECK(CounterRng(0).at(2) == 0x06C45D188009454FULL);

    CounterRng a(12345);
    for (int i = 0; i < 1000; ++i) {
      const double u = a.uniform();
      CHECK(u >= 0.0);
      CHECK(u < 1.0);
    }
  }

  TEST_CASE("uniform draws are roughly uniform") {
    CounterRng rng(7);
    double sum = 0.0, sum_sq = 0.0;
    constexpr int n = 100000;
    for (int i = 0; i < n; ++i) {
      const double v = rng.uniform_signed();
      sum += v;
      sum_sq += v * v;
    }
    CHECK(std::abs(sum / n) < 0.01);
    CHECK(std::abs(sum_sq / n - 1.0 / 3.0) < 0.01);
  }

  TEST_CASE("config validation") {
    const Grid g(64);
    TrialConfig c;
    CHECK_NOTHROW(c.validate(g));
    c.max_mode = 17;
    CHECK_THROWS_AS(c.validate(g), InvalidArgument);
    c.max_mode = 16;
    CHECK_NOTHROW(c.validate(g));
    c.max_mode = -1;
    CHECK_THROWS_AS(c.validate(g), InvalidArgument);
    c = {};
    c.min_floor = 1.0;
    CHECK_THROWS_AS(c.validate(g), InvalidArgument);
    c.min_floor = 0.0;
    CHECK_THROWS_AS(c.validate(g), InvalidArgument);
    c = {};
    c.amplitude_decay = 0.0;
    CHECK_THROWS_AS(c.validate(g), InvalidArgument);
  }

  TEST_CASE("degenerate request gives the uniform density") {
    const Grid g(32);
    TrialConfig c;
    c.max_mode = 0;
    const auto u = random_positive_density(c, g);
    for (double v : u.values()) CHECK(v == 1.0 / kTwoPi);
  }

  TEST_CASE("random densities are positive with unit mass") {
    const Grid g(512);
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
      TrialConfig c;
      c.seed = seed;
      c.max_mode = 1 + static_cast<int>(seed % 128);
      c.min_floor = seed % 2 == 0 ? 0.05 : 0.5;
      c.amplitude_decay = seed % 5 == 0 ? 0.5 : 1.0;
      const auto u = random_positive_density(c, g);
      CHECK(std::abs(quadrature(u) - 1.0) < 1e-12);
      CHECK(min_value(u) >= c.min_floor / kTwoPi * (1 - 1e-12));
      CHECK(std::isfinite(w11_seminorm(u)));
    }
  }

  TEST_CASE("random densities are band limited") {
    const Grid g(128);
    TrialConfig c;
    c.seed = 99;
    c.max_mode = 5;
    const auto s = to_spectrum(random_positive_density(c, g));
    CHECK(std::abs(s.coefficient(5)) > 1e-6);
    for (int k = 6; k <= g.max_wavenumber(); ++k) CHECK(std::abs(s.coefficient(k)) < 1e-15);
  }

  TEST_CASE("first mode follows the draw order") {
    // With K = 1 and no shrinking, 2 pi u = 1 + a1 cos x + b1 sin x.
    const Grid g(64);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      CounterRng rng(seed);
      const double a1 = rng.uniform_signed();
      const double b1 = rng.uniform_signed();
      if (std::hypot(a1, b1) >= 0.98) continue;
      TrialConfig c;
      c.seed = seed;
      c.max_mode = 1;
      c.min_floor = 0.01;
      const auto u = random_positive_density(c, g);
      const auto expected = GridFunction::sample(g, [&](double x) {
        return (1 + a1 * std::cos(x) + b1 * std::sin(x)) / kTwoPi;
      });
      CHECK(afd::test::sup_diff(u, expected) < 1e-14);
    }
  }

  TEST_CASE("generation is deterministic") {
    const Grid g(256);
    TrialConfig c;
    c.seed = 424242;
    c.max_mode = 32;
    const auto a = random_positive_density(c, g);
    const auto b = random_positive_density(c, g);
    for (std::size_t j = 0; j < g.size(); ++j) CHECK(a[j] == b[j]);
    c.seed += 1;
    const auto other = random_positive_density(c, g);
    CHECK(afd::test::sup_diff(a, other) > 1e-3);
  }

  TEST_CASE("presets") {
    const Grid g(256);
    const auto cb = preset(parse_preset("cosine_bump(0.5)"), g);
    CHECK(min_value(cb) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(quadrature(cb) == doctest::Approx(kTwoPi).epsilon(1e-14));

    const auto ws = preset(parse_preset("wiener_small(0.05)"), g);
    std::vector<double> w(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) w[j] = ws[j] - 1.0;
    CHECK(wiener_norm(GridFunction(g, w), 1.0) == doctest::Approx(0.05).epsilon(1e-12));

    const auto es = preset(parse_preset("exp_sin(1)"), g);
    CHECK(std::abs(norm_linf(theta_from_u(es)) - std::numbers::pi / 4) < 1e-13);

    const auto c = preset(parse_preset("constant"), g);
    for (double v : c.values()) CHECK(v == 1.0);

    const auto tm = preset(parse_preset("two_mode(0.3, 0.2)"), g);
    CHECK(tm[0] == doctest::Approx(1.3));
    CHECK(min_value(tm) > 0.0);
  }

  TEST_CASE("invalid presets") {
    CHECK_THROWS_AS(parse_preset("cosine_bump(1)"), InvalidPreset);
    CHECK_THROWS_AS(parse_preset("cosine_bump(-1.2)"), InvalidPreset);
    CHECK_THROWS_AS(parse_preset("wiener_small(0.1)"), InvalidPreset);
    CHECK_THROWS_AS(parse_preset("two_mode(0.7,0.7)"), InvalidPreset);
    CHECK_THROWS_AS(parse_preset("gaussian(1)"), InvalidPreset);
    CHECK_THROWS_AS(parse_preset("cosine_bump"), InvalidPreset);
    CHECK_THROWS_AS(parse_preset("cosine_bump(0.5"), InvalidPreset);
    CHECK_THROWS_AS(parse_preset("cosine_bump(abc)"), InvalidPreset);
    CHECK_THROWS_AS(parse_preset("constant(1)"), InvalidPreset);
    CHECK_THROWS_AS(parse_preset("two_mode(0.1)"), InvalidPreset);
    CHECK_THROWS_AS(preset({PresetKind::CosineBump, 2.0, 0.0}, Grid(8)), InvalidPreset);
    CHECK_THROWS_AS(validate(Preset{PresetKind::ExpSin, NAN, 0.0}), InvalidPreset);
  }

  TEST_CASE("two_mode positivity certificate") {
    // A fine scan of 1 + a cos x + b sin 2x is the oracle for its minimum.
    for (double a = -0.9; a <= 0.9; a += 0.15) {
      for (double b = -0.9; b <= 0.9; b += 0.15) {
        double m = INFINITY;
        for (int j = 0; j < 200000; ++j) {
          const double x = kTwoPi * j / 200000;
          m = std::min(m, 1 + a * std::cos(x) + b * std::sin(2 * x));
        }
        if (m > 1e-3) CHECK_NOTHROW(validate(Preset{PresetKind::TwoMode, a, b}));
        if (m <= 0.0) CHECK_THROWS_AS(validate(Preset{PresetKind::TwoMode, a, b}), InvalidPreset);
      }
    }
  }

  TEST_CASE("preset names round trip") {
    for (const char* text : {"constant", "cosine_bump(0.5)", "exp_sin(1)", "two_mode(0.3,0.2)",
                             "wiener_small(0.05)", "cosine_bump(-0.25)"}) {
      const auto p = parse_preset(text);
      CHECK(to_string(p) == text);
      const auto q = parse_preset(to_string(p));
      CHECK(q.kind == p.kind);
      CHECK(q.a == p.a);
      CHECK(q.b == p.b);
    }
    CHECK(preset_catalog().size() == 5);
  }
}
