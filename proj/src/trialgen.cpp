#include "afd/trialgen.hpp"

#include <charconv>
#include <cmath>
#include <complex>
#include <sstream>

#include "afd/errors.hpp"

namespace afd {

void TrialConfig::validate(const Grid& grid) const {
  if (max_mode < 0) throw InvalidArgument("max_mode must be >= 0");
  if (static_cast<std::size_t>(max_mode) > grid.size() / 4) {
    throw InvalidArgument("max_mode " + std::to_string(max_mode) + " exceeds n/4 = " +
                          std::to_string(grid.size() / 4));
  }
  if (!(min_floor > 0.0 && min_floor < 1.0)) throw InvalidArgument("min_floor must be in (0, 1)");
  if (!(amplitude_decay > 0.0) || !std::isfinite(amplitude_decay)) {
    throw InvalidArgument("amplitude_decay must be > 0");
  }
}

GridFunction random_positive_density(const TrialConfig& cfg, const Grid& grid) {
  cfg.validate(grid);
  if (cfg.max_mode == 0) return GridFunction::constant(grid, 1.0 / kTwoPi);

  const std::size_t n = grid.size();
  CounterRng rng(cfg.seed);
  std::vector<std::complex<double>> coeffs(n);
  for (int k = 1; k <= cfg.max_mode; ++k) {
    const double scale = std::pow(static_cast<double>(k), -cfg.amplitude_decay);
    const double a = rng.uniform_signed() * scale;
    const double b = rng.uniform_signed() * scale;
    // a cos kx + b sin kx = c e^{ikx} + conj(c) e^{-ikx} with c = (a - ib)/2
    const std::complex<double> c(0.5 * a, -0.5 * b);
    coeffs[static_cast<std::size_t>(k)] = c;
    coeffs[n - static_cast<std::size_t>(k)] = std::conj(c);
  }
  const auto g = from_spectrum(SpectrumField(grid, std::move(coeffs)));

  const double gmin = min_value(g);
  const double room = 1.0 - cfg.min_floor;
  const double shrink = gmin < -room ? room / -gmin : 1.0;

  std::vector<double> u(n);
  for (std::size_t j = 0; j < n; ++j) u[j] = 1.0 + shrink * g[j];
  const double mass = grid.dx() * [&] {
    double s = 0.0;
    for (double v : u) s += v;
    return s;
  }();
  for (double& v : u) v /= mass;
  return GridFunction(grid, std::move(u));
}

namespace {

double two_mode_lower_bound(double a, double b) {
  // Sampled minimum less the trapezoid-style interpolation error bound
  // dx^2/8 * max|f''|, so a positive result certifies positivity.
  constexpr int kSamples = 4096;
  const double dx = kTwoPi / kSamples;
  double m = 1.0;
  for (int j = 0; j < kSamples; ++j) {
    const double x = dx * j;
    m = std::min(m, 1.0 + a * std::cos(x) + b * std::sin(2.0 * x));
  }
  return m - dx * dx / 8.0 * (std::abs(a) + 4.0 * std::abs(b));
}

std::string format_number(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

void validate(const Preset& p) {
  const auto finite = std::isfinite(p.a) && std::isfinite(p.b);
  if (!finite) throw InvalidPreset(to_string(p) + ": parameters must be finite");
  switch (p.kind) {
    case PresetKind::Constant:
    case PresetKind::ExpSin:
      return;
    case PresetKind::CosineBump:
      if (!(std::abs(p.a) < 1.0)) throw InvalidPreset(to_string(p) + ": requires |a| < 1");
      return;
    case PresetKind::TwoMode:
      if (!(two_mode_lower_bound(p.a, p.b) > 0.0)) {
        throw InvalidPreset(to_string(p) + ": 1 + a cos x + b sin 2x is not positive");
      }
      return;
    case PresetKind::WienerSmall:
      if (!(std::abs(p.a) < 0.1)) throw InvalidPreset(to_string(p) + ": requires |a| < 0.1");
      return;
  }
}

GridFunction preset(const Preset& p, const Grid& grid) {
  validate(p);
  switch (p.kind) {
    case PresetKind::Constant:
      return GridFunction::constant(grid, 1.0);
    case PresetKind::CosineBump:
    case PresetKind::WienerSmall:
      return GridFunction::sample(grid, [&](double x) { return 1.0 + p.a * std::cos(x); });
    case PresetKind::ExpSin:
      return GridFunction::sample(grid, [&](double x) { return std::exp(p.a * std::sin(x)); });
    case PresetKind::TwoMode:
      return GridFunction::sample(
          grid, [&](double x) { return 1.0 + p.a * std::cos(x) + p.b * std::sin(2.0 * x); });
  }
  throw InvalidPreset("unknown preset");
}

namespace {

struct PresetName {
  PresetKind kind;
  std::string_view name;
  int arity;
};

constexpr PresetName kPresetNames[] = {
    {PresetKind::Constant, "constant", 0},   {PresetKind::CosineBump, "cosine_bump", 1},
    {PresetKind::ExpSin, "exp_sin", 1},      {PresetKind::TwoMode, "two_mode", 2},
    {PresetKind::WienerSmall, "wiener_small", 1},
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view s, std::string_view context) {
  s = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw InvalidPreset("cannot parse number '" + std::string(s) + "' in " + std::string(context));
  }
  return v;
}

}  // namespace

Preset parse_preset(std::string_view text) {
  const auto s = trim(text);
  const auto open = s.find('(');
  const auto name = trim(s.substr(0, open));
  std::vector<double> args;
  if (open != std::string_view::npos) {
    if (s.back() != ')') throw InvalidPreset("missing ')' in preset '" + std::string(s) + "'");
    auto inner = s.substr(open + 1, s.size() - open - 2);
    while (true) {
      const auto comma = inner.find(',');
      args.push_back(parse_number(inner.substr(0, comma), s));
      if (comma == std::string_view::npos) break;
      inner.remove_prefix(comma + 1);
    }
  }
  for (const auto& entry : kPresetNames) {
    if (entry.name != name) continue;
    if (static_cast<int>(args.size()) != entry.arity) {
      throw InvalidPreset("preset " + std::string(name) + " takes " +
                          std::to_string(entry.arity) + " parameter(s)");
    }
    Preset p{entry.kind, args.size() > 0 ? args[0] : 0.0, args.size() > 1 ? args[1] : 0.0};
    validate(p);
    return p;
  }
  throw InvalidPreset("unknown preset '" + std::string(name) + "'");
}

std::string to_string(const Preset& p) {
  for (const auto& entry : kPresetNames) {
    if (entry.kind != p.kind) continue;
    std::string out(entry.name);
    if (entry.arity == 1) out += "(" + format_number(p.a) + ")";
    if (entry.arity == 2) out += "(" + format_number(p.a) + "," + format_number(p.b) + ")";
    return out;
  }
  return "unknown";
}

std::vector<PresetInfo> preset_catalog() {
  return {
      {"constant", "u0 = 1", "none"},
      {"cosine_bump(a)", "u0 = 1 + a cos x", "|a| < 1"},
      {"exp_sin(a)", "u0 = exp(a sin x)", "a finite"},
      {"two_mode(a,b)", "u0 = 1 + a cos x + b sin 2x", "min_x u0 > 0"},
      {"wiener_small(a)", "u0 = 1 + a cos x", "|a| < 0.1 (||w0||_A1 < 1/10)"},
  };
}

}  // namespace afd
