#ifndef EWAGG_SCENARIOS_HPP
#define EWAGG_SCENARIOS_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "ewagg/errors.hpp"
#include "ewagg/stream.hpp"

// Seeded generators of synthetic expert/outcome streams. Generation is a
// pure function of the spec: same spec, bit-identical stream, on any
// platform. The random source is a splitmix64 written out below rather
// than a platform generator, so fixtures reproduce across languages.

namespace ewagg {

struct SplitMix64 {
  std::uint64_t state = 0;

  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1), 53 bits
  double next_double() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  // Box-Muller; consumes exactly two uniform draws, never caches the
  // second variate.
  double next_gaussian() {
    const double u1 = static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
    const double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }
};

enum class ScenarioFamily {
  NoisyRegression,
  DriftingLeader,
  ScaleBurst,
  DensityGrid,
};

struct ScenarioSpec {
  ScenarioFamily family = ScenarioFamily::NoisyRegression;
  int num_experts = 0;
  int horizon = 0;
  int dimension = 0;
  std::uint64_t seed = 0;
  double sigma = 1.0;            // noise scale
  double burst_magnitude = 100.0;  // M, SCALE_BURST
  double burst_prob = 0.01;        // p, SCALE_BURST
  int drift_period = 10;           // k, DRIFTING_LEADER
  int grid = 0;                    // DENSITY_GRID cells; 0 means dimension

  void validate() const {
    if (num_experts < 1) throw ConfigError("scenario: N must be >= 1");
    if (horizon < 0) throw ConfigError("scenario: T must be >= 0");
    if (dimension < 1) throw ConfigError("scenario: D must be >= 1");
    if (!(sigma > 0.0)) throw ConfigError("scenario: sigma must be > 0");
    if (!(burst_magnitude > 0.0)) throw ConfigError("scenario: M must be > 0");
    if (burst_prob < 0.0 || burst_prob > 1.0)
      throw ConfigError("scenario: p must be in [0,1]");
    if (drift_period < 1) throw ConfigError("scenario: k must be >= 1");
    if (grid != 0 && grid != dimension)
      throw ConfigError("scenario: grid must equal D");
  }
};

namespace detail {

// Smooth fixed target the regression families track.
inline double regression_target(long long t, int d, int dimension) {
  return std::sin(0.05 * static_cast<double>(t) +
                  2.0 * std::numbers::pi * static_cast<double>(d) /
                      static_cast<double>(dimension));
}

// Expert noise schedule: expert 0 is noise-free, the rest ramp up to sigma.
inline double expert_sigma(const ScenarioSpec& spec, int n) {
  if (spec.num_experts == 1) return 0.0;
  return spec.sigma * static_cast<double>(n) /
         static_cast<double>(spec.num_experts - 1);
}

// Per round, draw order: experts in index order, coordinates in order,
// one gaussian each (two uniforms). The outcome itself is noise-free.
inline Round regression_round(const ScenarioSpec& spec, long long t,
                              SplitMix64& rng, double outcome_scale,
                              int leader) {
  Round round;
  round.predictions.resize(static_cast<std::size_t>(spec.num_experts));
  for (int n = 0; n < spec.num_experts; ++n) {
    // leader >= 0 switches to the rotating-leader schedule: the leader is
    // near-noiseless, everyone else sits at full sigma.
    const double noise = leader < 0 ? expert_sigma(spec, n)
                         : (n == leader ? 0.1 * spec.sigma : spec.sigma);
    PredictionVector& pred = round.predictions[static_cast<std::size_t>(n)];
    pred.resize(static_cast<std::size_t>(spec.dimension));
    for (int d = 0; d < spec.dimension; ++d)
      pred[static_cast<std::size_t>(d)] =
          regression_target(t, d, spec.dimension) + noise * rng.next_gaussian();
  }
  round.outcome.resize(static_cast<std::size_t>(spec.dimension));
  for (int d = 0; d < spec.dimension; ++d)
    round.outcome[static_cast<std::size_t>(d)] =
        outcome_scale * regression_target(t, d, spec.dimension);
  return round;
}

inline PredictionVector density_bump(const ScenarioSpec& spec, double center,
                                     SplitMix64& rng) {
  const int cells = spec.dimension;
  PredictionVector v(static_cast<std::size_t>(cells));
  const double width = 0.08 * static_cast<double>(cells) + 0.5;
  double norm = 0.0;
  for (int d = 0; d < cells; ++d) {
    const double offset = static_cast<double>(d) - center;
    double x = std::exp(-offset * offset / (2.0 * width * width)) +
               0.05 * rng.next_double();
    v[static_cast<std::size_t>(d)] = x;
    norm += x * x;
  }
  norm = std::sqrt(norm);
  for (double& x : v) x /= norm;  // norm > 0: every cell carries mass
  return v;
}

}  // namespace detail

inline Stream generate(const ScenarioSpec& spec) {
  spec.validate();
  SplitMix64 rng{spec.seed};
  // Burst decisions come from a separate stream so SCALE_BURST with p = 0
  // reproduces NOISY_REGRESSION bit for bit on the same seed.
  SplitMix64 burst_rng{spec.seed ^ 0xB5AD4ECEDA1CE2A9ULL};

  Stream stream;
  stream.reserve(static_cast<std::size_t>(spec.horizon));
  for (long long t = 1; t <= spec.horizon; ++t) {
    switch (spec.family) {
      case ScenarioFamily::NoisyRegression:
        stream.push_back(detail::regression_round(spec, t, rng, 1.0, -1));
        break;
      case ScenarioFamily::DriftingLeader: {
        const int leader = static_cast<int>(
            ((t - 1) / spec.drift_period) % spec.num_experts);
        stream.push_back(detail::regression_round(spec, t, rng, 1.0, leader));
        break;
      }
      case ScenarioFamily::ScaleBurst: {
        // Burst decision first, then the noise draws.
        const bool burst = burst_rng.next_double() < spec.burst_prob;
        const double scale = burst ? spec.burst_magnitude : 1.0;
        stream.push_back(detail::regression_round(spec, t, rng, scale, -1));
        break;
      }
      case ScenarioFamily::DensityGrid: {
        Round round;
        round.predictions.resize(static_cast<std::size_t>(spec.num_experts));
        const double cells = static_cast<double>(spec.dimension);
        for (int n = 0; n < spec.num_experts; ++n) {
          const double center =
              std::fmod(0.13 * static_cast<double>(t) +
                            cells * static_cast<double>(n) /
                                static_cast<double>(spec.num_experts),
                        cells);
          round.predictions[static_cast<std::size_t>(n)] =
              detail::density_bump(spec, center, rng);
        }
        const double outcome_center =
            std::fmod(0.13 * static_cast<double>(t) + 0.31 * cells, cells);
        round.outcome = detail::density_bump(spec, outcome_center, rng);
        stream.push_back(std::move(round));
        break;
      }
    }
  }
  return stream;
}

inline const char* family_name(ScenarioFamily family) {
  switch (family) {
    case ScenarioFamily::NoisyRegression: return "noisy_regression";
    case ScenarioFamily::DriftingLeader: return "drifting_leader";
    case ScenarioFamily::ScaleBurst: return "scale_burst";
    case ScenarioFamily::DensityGrid: return "density_grid";
  }
  return "?";
}

// Compact key=value grammar, comma separated, e.g.
//   family=scale_burst,N=10,T=1000,D=4,seed=7,sigma=1.0,M=50,p=0.02
// Required: family, N, T, D, seed. Optional: sigma, M, p, k, grid.
inline ScenarioSpec parse_scenario(const std::string& text) {
  ScenarioSpec spec;
  bool have_family = false, have_n = false, have_t = false, have_d = false,
       have_seed = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    const std::string item = text.substr(pos, end - pos);
    pos = end + 1;
    if (item.empty()) continue;
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos)
      throw ConfigError("scenario: expected key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    try {
      if (key == "family") {
        if (value == "noisy_regression")
          spec.family = ScenarioFamily::NoisyRegression;
        else if (value == "drifting_leader")
          spec.family = ScenarioFamily::DriftingLeader;
        else if (value == "scale_burst")
          spec.family = ScenarioFamily::ScaleBurst;
        else if (value == "density_grid")
          spec.family = ScenarioFamily::DensityGrid;
        else
          throw ConfigError("scenario: unknown family '" + value + "'");
        have_family = true;
      } else if (key == "N") {
        spec.num_experts = std::stoi(value);
        have_n = true;
      } else if (key == "T") {
        spec.horizon = std::stoi(value);
        have_t = true;
      } else if (key == "D") {
        spec.dimension = std::stoi(value);
        have_d = true;
      } else if (key == "seed") {
        spec.seed = std::stoull(value);
        have_seed = true;
      } else if (key == "sigma") {
        spec.sigma = std::stod(value);
      } else if (key == "M") {
        spec.burst_magnitude = std::stod(value);
      } else if (key == "p") {
        spec.burst_prob = std::stod(value);
      } else if (key == "k") {
        spec.drift_period = std::stoi(value);
      } else if (key == "grid") {
        spec.grid = std::stoi(value);
      } else {
        throw ConfigError("scenario: unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument&) {
      throw ConfigError("scenario: bad value for '" + key + "'");
    } catch (const std::out_of_range&) {
      throw ConfigError("scenario: value out of range for '" + key + "'");
    }
  }
  if (!have_family || !have_n || !have_t || !have_d || !have_seed)
    throw ConfigError("scenario: family, N, T, D and seed are required");
  spec.validate();
  return spec;
}

}  // namespace ewagg

#endif
