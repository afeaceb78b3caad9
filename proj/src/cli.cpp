#include "afd/cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "afd/diagnostics.hpp"
#include "afd/errors.hpp"
#include "afd/timestep.hpp"

namespace afd {

namespace {

constexpr std::string_view kRunKeys[] = {
    "model",  "n",          "cfl",   "t_end", "record_every", "max_steps",    "positivity_floor",
    "preset", "initial_data", "epsilon", "kappa", "delta",    "hilbert_sign", "output",
    "format"};

constexpr std::string_view kFuzzKeys[] = {"trials",          "seed0",     "max_mode", "min_floor",
                                          "amplitude_decay", "tolerance", "n",        "report",
                                          "threads"};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double to_double(const std::string& key, std::string_view text) {
  text = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw ConfigError(key, "expected a finite number, got '" + std::string(text) + "'");
  }
  return v;
}

template <class Int>
Int to_integer(const std::string& key, std::string_view text) {
  text = trim(text);
  Int v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError(key, "expected an integer, got '" + std::string(text) + "'");
  }
  return v;
}

void reject_unknown_keys(const KeyValues& kv, std::span<const std::string_view> known) {
  for (const auto& [key, value] : kv) {
    if (std::ranges::find(known, key) == known.end()) throw ConfigError(key, "unknown key");
  }
}

// Calls `apply(value)` when `key` is present.
template <class F>
void with(const KeyValues& kv, std::string_view key, F&& apply) {
  if (auto it = kv.find(key); it != kv.end()) apply(it->second);
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::vector<double> read_values_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("initial_data", "cannot open '" + path + "'");
  std::vector<double> values;
  std::string line;
  while (std::getline(in, line)) {
    std::string_view s = line;
    if (auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    values.push_back(to_double("initial_data", s));
  }
  return values;
}

// Writes through a sibling temporary file renamed into place, so the target
// is either complete or absent.
void write_atomically(const std::string& path, const std::function<void(std::ostream&)>& body) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path tmp = target.string() + ".tmp";
  try {
    {
      std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
      if (!os) throw Error("cannot open '" + tmp.string() + "' for writing");
      body(os);
      os.flush();
      if (!os) throw Error("write to '" + tmp.string() + "' failed");
    }
    fs::rename(tmp, target);
  } catch (...) {
    std::error_code ec;
    fs::remove(tmp, ec);
    throw;
  }
}

std::vector<double> record_row(const DiagnosticsRecord& r) {
  return {r.t,
          r.mass,
          r.min_u,
          r.max_u,
          r.l2_dist,
          r.entropy,
          r.entropy_dissipation,
          r.energy_dissipation,
          r.lyapunov,
          r.theta_linf,
          r.a1_norm,
          r.a3_norm,
          r.dt_used};
}

}  // namespace

KeyValues parse_config_text(std::string_view text) {
  KeyValues kv;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config", "line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("config", "line " + std::to_string(line_no) + ": empty key");
    kv[std::string(key)] = std::string(value);
  }
  return kv;
}

KeyValues read_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config", "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

RunConfig run_config_from(const KeyValues& kv) {
  reject_unknown_keys(kv, kRunKeys);
  RunConfig c;
  with(kv, "model", [&](const std::string& v) {
    try {
      c.model = parse_model_kind(trim(v));
    } catch (const InvalidArgument& e) {
      throw ConfigError("model", e.what());
    }
  });
  with(kv, "n", [&](const std::string& v) { c.n = to_integer<std::size_t>("n", v); });
  with(kv, "cfl", [&](const std::string& v) { c.cfl = to_double("cfl", v); });
  with(kv, "t_end", [&](const std::string& v) { c.t_end = to_double("t_end", v); });
  with(kv, "record_every",
       [&](const std::string& v) { c.record_every = to_double("record_every", v); });
  with(kv, "max_steps",
       [&](const std::string& v) { c.max_steps = to_integer<std::size_t>("max_steps", v); });
  with(kv, "positivity_floor",
       [&](const std::string& v) { c.positivity_floor = to_double("positivity_floor", v); });
  with(kv, "preset", [&](const std::string& v) {
    try {
      c.preset = parse_preset(v);
    } catch (const InvalidPreset& e) {
      throw ConfigError("preset", e.what());
    }
  });
  with(kv, "initial_data", [&](const std::string& v) { c.initial_data = std::string(trim(v)); });
  with(kv, "epsilon", [&](const std::string& v) { c.epsilon = to_double("epsilon", v); });
  with(kv, "kappa", [&](const std::string& v) { c.kappa = to_double("kappa", v); });
  with(kv, "delta", [&](const std::string& v) { c.delta = to_double("delta", v); });
  with(kv, "hilbert_sign",
       [&](const std::string& v) { c.hilbert_sign = to_integer<int>("hilbert_sign", v); });
  with(kv, "output", [&](const std::string& v) { c.output = std::string(trim(v)); });
  with(kv, "format", [&](const std::string& v) {
    const auto f = trim(v);
    if (f == "csv") {
      c.format = OutputFormat::Csv;
    } else if (f == "json") {
      c.format = OutputFormat::Json;
    } else {
      throw ConfigError("format", "expected csv or json, got '" + std::string(f) + "'");
    }
  });

  if (c.n < 8 || !is_power_of_two(c.n)) {
    throw ConfigError("n", "must be a power of two >= 8, got " + std::to_string(c.n));
  }
  if (!(c.cfl > 0.0 && c.cfl <= 1.0)) throw ConfigError("cfl", "must be in (0, 1]");
  if (!(c.t_end > 0.0)) throw ConfigError("t_end", "must be > 0");
  if (!(c.record_every > 0.0)) throw ConfigError("record_every", "must be > 0");
  if (c.max_steps == 0) throw ConfigError("max_steps", "must be positive");
  if (!(c.positivity_floor > 0.0)) throw ConfigError("positivity_floor", "must be > 0");
  if (c.epsilon < 0.0) throw ConfigError("epsilon", "must be >= 0");
  if (c.kappa < 0.0) throw ConfigError("kappa", "must be >= 0");
  if (c.delta < 0.0) throw ConfigError("delta", "must be >= 0");
  if (c.hilbert_sign != 1 && c.hilbert_sign != -1) {
    throw ConfigError("hilbert_sign", "must be 1 or -1");
  }
  if (c.model != ModelKind::Regularized) {
    if (c.epsilon != 0.0) throw ConfigError("epsilon", "only valid with model = regularized");
    if (c.kappa != 0.0) throw ConfigError("kappa", "only valid with model = regularized");
    if (c.delta != 0.0) throw ConfigError("delta", "only valid with model = regularized");
  }
  if (c.preset && !c.initial_data.empty()) {
    throw ConfigError("initial_data", "give either preset or initial_data, not both");
  }
  if (!c.preset && c.initial_data.empty()) c.preset = Preset{PresetKind::CosineBump, 0.5, 0.0};
  return c;
}

FuzzConfig fuzz_config_from(const KeyValues& kv) {
  reject_unknown_keys(kv, kFuzzKeys);
  FuzzConfig c;
  with(kv, "trials", [&](const std::string& v) { c.trials = to_integer<std::size_t>("trials", v); });
  with(kv, "seed0", [&](const std::string& v) { c.seed0 = to_integer<std::uint64_t>("seed0", v); });
  with(kv, "max_mode", [&](const std::string& v) { c.max_mode = to_integer<int>("max_mode", v); });
  with(kv, "min_floor", [&](const std::string& v) { c.min_floor = to_double("min_floor", v); });
  with(kv, "amplitude_decay",
       [&](const std::string& v) { c.amplitude_decay = to_double("amplitude_decay", v); });
  with(kv, "tolerance", [&](const std::string& v) { c.tolerance = to_double("tolerance", v); });
  with(kv, "n", [&](const std::string& v) { c.n = to_integer<std::size_t>("n", v); });
  with(kv, "report", [&](const std::string& v) { c.report = std::string(trim(v)); });
  with(kv, "threads", [&](const std::string& v) { c.threads = to_integer<unsigned>("threads", v); });

  if (c.trials < 1) throw ConfigError("trials", "must be >= 1");
  if (c.n < 8 || !is_power_of_two(c.n)) {
    throw ConfigError("n", "must be a power of two >= 8, got " + std::to_string(c.n));
  }
  if (c.max_mode < 0 || static_cast<std::size_t>(c.max_mode) > c.n / 4) {
    throw ConfigError("max_mode", "must be in [0, n/4]");
  }
  if (!(c.min_floor > 0.0 && c.min_floor < 1.0)) throw ConfigError("min_floor", "must be in (0, 1)");
  if (!(c.amplitude_decay > 0.0)) throw ConfigError("amplitude_decay", "must be > 0");
  if (c.threads < 1) throw ConfigError("threads", "must be >= 1");
  return c;
}

GridFunction prepare_initial_data(const RunConfig& cfg) {
  const Grid grid(cfg.n);
  GridFunction u0 = [&] {
    if (cfg.preset) return preset(*cfg.preset, grid);
    auto values = read_values_file(cfg.initial_data);
    if (values.size() != cfg.n) {
      throw ConfigError("initial_data", "expected " + std::to_string(cfg.n) + " values, found " +
                                            std::to_string(values.size()));
    }
    return GridFunction(grid, std::move(values));
  }();
  if (cfg.model != ModelKind::Regularized) return u0;
  const auto mollified = heat_mollify(u0, cfg.kappa);
  std::vector<double> lifted(mollified.values().begin(), mollified.values().end());
  for (double& v : lifted) v += cfg.delta;
  return GridFunction(grid, std::move(lifted));
}

void write_csv(std::ostream& os, const Trajectory& traj) {
  os << kCsvHeader << '\n';
  for (const auto& entry : traj.entries) {
    const auto row = record_row(entry.record);
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      os << fmt17(row[i]);
    }
    os << '\n';
  }
}

void write_json(std::ostream& os, const Trajectory& traj, const RunConfig& cfg) {
  nlohmann::ordered_json doc;
  doc["model"] = std::string(to_string(cfg.model));
  doc["n"] = cfg.n;
  doc["initial_data"] = cfg.preset ? to_string(*cfg.preset) : cfg.initial_data;
  doc["termination"] = std::string(to_string(traj.termination));
  doc["message"] = traj.message;
  auto columns = nlohmann::ordered_json::array();
  std::string_view header = kCsvHeader;
  while (!header.empty()) {
    const auto comma = header.find(',');
    columns.push_back(std::string(header.substr(0, comma)));
    header = comma == std::string_view::npos ? std::string_view{} : header.substr(comma + 1);
  }
  doc["columns"] = columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& entry : traj.entries) rows.push_back(record_row(entry.record));
  doc["records"] = rows;
  os << doc.dump(1) << '\n';
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::optional<GridFunction> u0;
  Model model{cfg.model, {cfg.epsilon, cfg.kappa, cfg.hilbert_sign, cfg.positivity_floor}};
  SolverConfig solver{cfg.cfl, cfg.t_end, cfg.record_every, cfg.max_steps, cfg.positivity_floor};
  try {
    u0 = prepare_initial_data(cfg);
    model.params.validate(model.kind);
    solver.validate();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  const auto traj = integrate(*u0, model, solver);

  if (!cfg.output.empty()) {
    try {
      write_atomically(cfg.output, [&](std::ostream& os) {
        if (cfg.format == OutputFormat::Json) {
          write_json(os, traj, cfg);
        } else {
          write_csv(os, traj);
        }
      });
    } catch (const std::exception& e) {
      err << "output error: " << e.what() << '\n';
      return kExitConfig;
    }
  }

  out.precision(10);
  out << "termination: " << to_string(traj.termination) << '\n';
  if (!traj.message.empty()) out << "message: " << traj.message << '\n';
  out << "records: " << traj.entries.size() << '\n';
  if (!traj.entries.empty()) {
    const auto& first = traj.entries.front().record;
    const auto& last = traj.entries.back().record;
    out << "t_final: " << last.t << '\n';
    out << "mass_drift: " << std::abs(last.mass - first.mass) / first.mass << '\n';
    out << "final_min_u: " << last.min_u << '\n';
    out << "final_max_u: " << last.max_u << '\n';
    out << "final_l2_dist: " << last.l2_dist << '\n';
    out << "final_entropy: " << last.entropy << '\n';
    out << "final_lyapunov: " << last.lyapunov << '\n';
    out << "final_theta_linf: " << last.theta_linf << '\n';
  }
  if (cfg.model == ModelKind::ArctanLocal && traj.entries.size() >= 3) {
    const auto res = balance_residuals(traj);
    out << "entropy_balance_residual: " << res.entropy << '\n';
    out << "energy_balance_residual: " << res.energy << '\n';
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& e : traj.entries) {
      worst = std::max(worst, e.record.l2_dist - decay_bound(*u0, e.t));
    }
    out << "decay_bound: " << (worst <= 0.0 ? "satisfied" : "VIOLATED")
        << " (max excess " << worst << ")\n";
  } else {
    out << "balance_residuals: n/a for model " << to_string(cfg.model) << '\n';
  }

  if (traj.termination == Termination::ReachedTEnd) return kExitOk;
  if (traj.termination == Termination::StepLimit) {
    err << "run stopped: " << traj.message << '\n';
    return kExitBreakdown;
  }
  err << "run breakdown: " << traj.message << '\n';
  return kExitBreakdown;
}

int cmd_fuzz(const FuzzConfig& cfg, std::ostream& out, std::ostream& err) {
  struct Row {
    std::uint64_t seed;
    InequalityReport first;
    InequalityReport second;
  };
  const Grid grid(cfg.n);
  std::vector<Row> rows(cfg.trials);
  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    for (std::size_t i = cursor++; i < rows.size(); i = cursor++) {
      TrialConfig trial{cfg.seed0 + i, cfg.max_mode, cfg.min_floor, cfg.amplitude_decay};
      const auto u = random_positive_density(trial, grid);
      rows[i] = Row{trial.seed, check_inequality_1(u), check_inequality_2(u)};
    }
  };
  const unsigned extra = std::min<unsigned>(cfg.threads, static_cast<unsigned>(cfg.trials)) - 1;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < extra; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  if (!cfg.report.empty()) {
    try {
      write_atomically(cfg.report, [&](std::ostream& os) {
        os << "trial,seed,lhs1,rhs1,margin1,lhs2,rhs2,margin2,degenerate2\n";
        for (std::size_t i = 0; i < rows.size(); ++i) {
          const auto& r = rows[i];
          os << i << ',' << r.seed << ',' << fmt17(r.first.lhs) << ',' << fmt17(r.first.rhs) << ','
             << fmt17(r.first.margin) << ',' << fmt17(r.second.lhs) << ','
             << fmt17(r.second.rhs) << ',' << fmt17(r.second.margin) << ','
             << (r.second.status == InequalityStatus::DegenerateInput ? 1 : 0) << '\n';
        }
      });
    } catch (const std::exception& e) {
      err << "output error: " << e.what() << '\n';
      return kExitConfig;
    }
  }

  double min1 = std::numeric_limits<double>::infinity();
  double min2 = std::numeric_limits<double>::infinity();
  std::size_t violations = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    min1 = std::min(min1, r.first.margin);
    min2 = std::min(min2, r.second.margin);
    const std::pair<int, double> margins[] = {{1, r.first.margin}, {2, r.second.margin}};
    for (const auto& [which, margin] : margins) {
      if (margin >= -cfg.tolerance) continue;
      ++violations;
      err << "violation: trial " << i << " seed " << r.seed << " inequality " << which
          << " margin " << fmt17(margin) << '\n';
    }
  }
  out << "trials: " << rows.size() << '\n';
  out << "min_margin_1: " << fmt17(min1) << '\n';
  out << "min_margin_2: " << fmt17(min2) << '\n';
  out << "violations: " << violations << '\n';
  return violations == 0 ? kExitOk : kExitViolation;
}

int cmd_presets(std::ostream& out) {
  const auto catalog = preset_catalog();
  std::size_t w0 = 4;
  std::size_t w1 = 7;
  for (const auto& p : catalog) {
    w0 = std::max(w0, p.name.size());
    w1 = std::max(w1, p.formula.size());
  }
  auto row = [&](const std::string& a, const std::string& b, const std::string& c) {
    out << a << std::string(w0 - a.size() + 2, ' ') << b << std::string(w1 - b.size() + 2, ' ')
        << c << '\n';
  };
  row("name", "formula", "constraint");
  for (const auto& p : catalog) row(p.name, p.formula, p.constraint);
  return kExitOk;
}

namespace {

// One string option per config key; values given on the command line
// override the config file.
struct KeyedOptions {
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  std::string config_path;

  void attach(CLI::App& sub, std::span<const std::string_view> keys) {
    sub.add_option("--config", config_path, "key = value configuration file");
    for (auto key : keys) {
      const std::string k(key);
      options[k] = sub.add_option("--" + k, values[k], "overrides config key '" + k + "'");
    }
  }

  KeyValues merged() const {
    KeyValues kv = config_path.empty() ? KeyValues{} : read_config_file(config_path);
    for (const auto& [key, opt] : options) {
      if (opt->count() > 0) kv[key] = values.at(key);
    }
    return kv;
  }
};

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Arctan fast diffusion solver and verifier", "afd"};
  app.require_subcommand(1);
  auto* simulate = app.add_subcommand("simulate", "integrate a model and record diagnostics");
  auto* fuzz = app.add_subcommand("fuzz", "randomized check of both Sobolev-type inequalities");
  auto* presets = app.add_subcommand("presets", "list initial-data presets");
  KeyedOptions run_opts;
  KeyedOptions fuzz_opts;
  run_opts.attach(*simulate, kRunKeys);
  fuzz_opts.attach(*fuzz, kFuzzKeys);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kExitConfig;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(run_config_from(run_opts.merged()), out, err);
    if (fuzz->parsed()) return cmd_fuzz(fuzz_config_from(fuzz_opts.merged()), out, err);
    if (presets->parsed()) return cmd_presets(out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  err << app.help();
  return kExitConfig;
}

}  // namespace afd
