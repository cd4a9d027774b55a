#include "lightbulb/simulate.hpp"

#include <omp.h>


namespace lightbulb {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

void require_valid(const SimulationConfig& config) {
  if (config.n_bulbs < 1) throw Error(ErrorCode::InvalidConfig, "n_bulbs must be >= 1");
}

std::vector<double> turn_red_probabilities(const Cohort& cohort) {
  std::vector<double> b;
  b.reserve(cohort.steps());
  for (const auto& m : transitions(cohort)) b.push_back(m.p01);
  return b;
}

// Step (0-based) at which the bulb turns RED, or b.size() if it stays OFF.
std::size_t first_red_step(std::uint64_t seed, std::uint64_t bulb, const std::vector<double>& b) {
  BulbStream stream(seed, bulb);
  for (std::size_t i = 0; i < b.size(); ++i)
    if (stream.uniform() < b[i]) return i;
  return b.size();
}

SimulationResult tally(const SimulationConfig& config, const std::vector<std::uint64_t>& first_red) {
  SimulationResult result{config.seed, config.n_bulbs, {}};
  const auto& records = config.cohort.records();
  result.steps.reserve(records.size());
  std::uint64_t red = 0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    red += first_red[i];
    result.steps.push_back({i + 1, records[i].age_label(), config.n_bulbs - red, red});
  }
  return result;
}

}  // namespace

BulbStream::BulbStream(std::uint64_t seed, std::uint64_t bulb) noexcept
    : state_(mix(seed ^ mix(bulb + kGolden))) {}

std::uint64_t BulbStream::mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t BulbStream::next() noexcept {
  state_ += kGolden;
  return mix(state_);
}

SimulationResult simulate_serial(const SimulationConfig& config) {
  require_valid(config);
  const auto b = turn_red_probabilities(config.cohort);
  std::vector<std::uint64_t> first_red(b.size() + 1, 0);
  for (std::uint64_t k = 0; k < config.n_bulbs; ++k) ++first_red[first_red_step(config.seed, k, b)];
  return tally(config, first_red);
}

SimulationResult simulate(const SimulationConfig& config, int threads) {
  require_valid(config);
  const auto b = turn_red_probabilities(config.cohort);
  const auto n = static_cast<std::int64_t>(config.n_bulbs);
  const int team = threads > 0 ? threads : omp_get_max_threads();
  std::vector<std::uint64_t> first_red(b.size() + 1, 0);

  // Integer histogram merge is order-independent, so any team size gives the
  // same counts as the serial loop.
#pragma omp parallel num_threads(team)
  {
    std::vector<std::uint64_t> local(b.size() + 1, 0);
#pragma omp for schedule(static)
    for (std::int64_t k = 0; k < n; ++k) ++local[first_red_step(config.seed, static_cast<std::uint64_t>(k), b)];
#pragma omp critical
    for (std::size_t i = 0; i < local.size(); ++i) first_red[i] += local[i];
  }
  return tally(config, first_red);
}

std::vector<EmpiricalStep> empirical_series(const SimulationResult& result) {
  std::vector<EmpiricalStep> out;
  out.reserve(result.steps.size());
  const auto n = static_cast<double>(result.n_bulbs);
  for (const auto& s : result.steps)
    out.push_back({s.t, s.age_label, static_cast<double>(s.red_count) / n, static_cast<double>(s.off_count) / n});
  return out;
}

}  // namespace lightbulb
