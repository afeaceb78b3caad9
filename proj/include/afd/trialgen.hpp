#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "afd/grid.hpp"

namespace afd {

/**
 * Counter-based stream: the i-th output is splitmix64(seed + (i+1) * gamma)
 * with gamma = 0x9E3779B97F4A7C15, i.e. the reference SplitMix64 sequence.
 * Any element can be computed directly from (seed, i), so streams are
 * identical across platforms and languages.
 */
class CounterRng {
 public:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  explicit CounterRng(std::uint64_t seed) noexcept : seed_(seed) {}

  static std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t at(std::uint64_t index) const noexcept { return mix(seed_ + (index + 1) * kGamma); }
  std::uint64_t next() noexcept { return at(counter_++); }
  // Top 53 bits scaled into [0, 1).
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform_signed() noexcept { return 2.0 * uniform() - 1.0; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

struct TrialConfig {
  std::uint64_t seed = 0;
  int max_mode = 8;            // K; 0 gives the constant density
  double min_floor = 0.05;     // min(1 + g) after rescaling, in (0, 1)
  double amplitude_decay = 1.0;

  // Throws InvalidArgument; K must not exceed n/4.
  void validate(const Grid& grid) const;
};

/**
 * Positive unit-mass density 1 + g rescaled by its mass, where
 *   g = sum_{k=1..K} a_k cos kx + b_k sin kx,  a_k, b_k ~ U[-1,1] k^-decay
 * drawn in the order a_1, b_1, a_2, b_2, ... . g is shrunk (never grown) so
 * that min(1 + g) >= min_floor.
 */
GridFunction random_positive_density(const TrialConfig& cfg, const Grid& grid);

enum class PresetKind { Constant, CosineBump, ExpSin, TwoMode, WienerSmall };

struct Preset {
  PresetKind kind = PresetKind::Constant;
  double a = 0.0;
  double b = 0.0;
};

// Throws InvalidPreset when the parameters cannot give positive data.
void validate(const Preset& p);

//   constant           1
//   cosine_bump(a)     1 + a cos x,            |a| < 1
//   exp_sin(a)         exp(a sin x)
//   two_mode(a, b)     1 + a cos x + b sin 2x, positive
//   wiener_small(a)    1 + a cos x,            |a| < 0.1
GridFunction preset(const Preset& p, const Grid& grid);

// Parses "constant", "cosine_bump(0.5)", "two_mode(0.3,0.2)", ...
Preset parse_preset(std::string_view text);
std::string to_string(const Preset& p);

struct PresetInfo {
  std::string name;
  std::string formula;
  std::string constraint;
};
std::vector<PresetInfo> preset_catalog();

}  // namespace afd
