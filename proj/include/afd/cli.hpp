#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "afd/grid.hpp"
#include "afd/models.hpp"
#include "afd/trajectory.hpp"
#include "afd/trialgen.hpp"

namespace afd {

// Exit codes of the afd tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitBreakdown = 2;
inline constexpr int kExitViolation = 3;

enum class OutputFormat { Csv, Json };

struct RunConfig {
  ModelKind model = ModelKind::ArctanLocal;
  std::size_t n = 256;
  double cfl = 0.25;
  double t_end = 1.0;
  double record_every = 1e-2;
  std::size_t max_steps = 100'000'000;
  double positivity_floor = kDefaultPositivityFloor;
  std::optional<Preset> preset;  // defaults to cosine_bump(0.5) when no initial_data
  std::string initial_data;      // file with one value per line
  double epsilon = 0.0;
  double kappa = 0.0;
  double delta = 0.0;  // regularized mode lifts the mollified data by delta
  int hilbert_sign = 1;
  std::string output;  // empty: no data file, summary only
  OutputFormat format = OutputFormat::Csv;
};

struct FuzzConfig {
  std::size_t trials = 10'000;
  std::uint64_t seed0 = 0;  // trial i uses seed0 + i
  int max_mode = 32;
  double min_floor = 0.05;
  double amplitude_decay = 1.0;
  double tolerance = 1e-10;
  std::size_t n = 512;
  std::string report;  // per-trial CSV; empty disables
  unsigned threads = 1;
};

// `key = value` lines; '#' starts a comment. Throws ConfigError.
using KeyValues = std::map<std::string, std::string, std::less<>>;
KeyValues parse_config_text(std::string_view text);
KeyValues read_config_file(const std::string& path);

// Both throw ConfigError naming the offending key.
RunConfig run_config_from(const KeyValues& kv);
FuzzConfig fuzz_config_from(const KeyValues& kv);

// Preset or file data; in regularized mode J_kappa * u0 + delta.
GridFunction prepare_initial_data(const RunConfig& cfg);

inline constexpr std::string_view kCsvHeader =
    "t,mass,min_u,max_u,l2_dist,entropy,entropy_dissipation,energy_dissipation,lyapunov,"
    "theta_linf,a1_norm,a3_norm,dt_used";

void write_csv(std::ostream& os, const Trajectory& traj);
void write_json(std::ostream& os, const Trajectory& traj, const RunConfig& cfg);

int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_fuzz(const FuzzConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_presets(std::ostream& out);

// Entry point of the afd tool: subcommands simulate, fuzz, presets.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace afd
