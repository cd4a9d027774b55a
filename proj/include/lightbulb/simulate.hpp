#pragma once

// Monte Carlo light-bulb population. Each bulb starts OFF and, at every
// 5-year step, turns RED with probability B_i if still OFF. RED is absorbing.
//
// Random numbers: every bulb owns a SplitMix64 stream whose starting state is
// a function of (seed, bulb index) only, so results do not depend on the
// order bulbs are visited or on the number of threads.

#include <cstdint>
#include <string>
#include <vector>

#include "lightbulb/risk.hpp"

namespace lightbulb {

struct SimulationConfig {
  std::uint64_t n_bulbs = 1;
  std::uint64_t seed = 0;
  Cohort cohort;
};

struct SimulationStep {
  std::size_t t = 0;
  std::string age_label;
  std::uint64_t off_count = 0;
  std::uint64_t red_count = 0;
};

struct SimulationResult {
  std::uint64_t seed = 0;
  std::uint64_t n_bulbs = 0;
  std::vector<SimulationStep> steps;
};

struct EmpiricalStep {
  std::size_t t = 0;
  std::string age_label;
  double p_red = 0.0;
  double p_off = 1.0;
};

/// SplitMix64 output stream. Public so tests can pin the generator.
class BulbStream {
 public:
  BulbStream(std::uint64_t seed, std::uint64_t bulb) noexcept;

  std::uint64_t next() noexcept;
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  static std::uint64_t mix(std::uint64_t z) noexcept;

 private:
  std::uint64_t state_;
};

/// OpenMP-parallel across bulbs. threads <= 0 uses the OpenMP default.
/// Throws Error{InvalidConfig} when n_bulbs < 1.
SimulationResult simulate(const SimulationConfig& config, int threads = 0);

/// Single-threaded reference; must agree with simulate() exactly.
SimulationResult simulate_serial(const SimulationConfig& config);

std::vector<EmpiricalStep> empirical_series(const SimulationResult& result);

}  // namespace lightbulb
