#pragma once

// Two-state absorbing chain (OFF = cancer-free, RED = diagnosed) over 5-year
// age steps. Counts in AgeGroupRecord are annual; every formula multiplies by
// kStepYears to cover a whole step.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lightbulb/error.hpp"

namespace lightbulb {

inline constexpr int kStepYears = 5;
inline constexpr double kIdentityTolerance = 1e-12;

struct AgeGroupRecord {
  std::size_t index = 0;  // 1-based
  int age_low = 0;
  std::optional<int> age_high;  // exclusive upper bound; nullopt for the open final group
  double population = 0.0;
  double incidence = 0.0;
  double cancer_deaths = 0.0;
  std::optional<double> other_deaths;  // stored, never used in estimation

  bool is_open() const noexcept { return !age_high.has_value(); }
  /// "70-74" for closed groups, "85+" for the open one.
  std::string age_label() const;
};

/// Returns a description of the first broken record invariant, or nullopt.
/// Contiguity with neighbouring groups is checked by Cohort, not here.
std::optional<std::string> record_problem(const AgeGroupRecord& record);

struct CohortMeta {
  std::string region;
  std::string year;
  std::string sex;
};

/// Validated, contiguous sequence of age groups starting at age 0. An empty
/// cohort is representable; the file parser refuses to produce one.
class Cohort {
 public:
  Cohort() = default;
  /// Throws Error{InvalidRecord} or Error{InvalidCohort}.
  explicit Cohort(std::vector<AgeGroupRecord> records, CohortMeta meta = {});

  const std::vector<AgeGroupRecord>& records() const noexcept { return records_; }
  const CohortMeta& meta() const noexcept { return meta_; }
  std::size_t steps() const noexcept { return records_.size(); }
  bool empty() const noexcept { return records_.empty(); }
  /// 1-based.
  const AgeGroupRecord& group(std::size_t step) const;

 private:
  std::vector<AgeGroupRecord> records_;
  CohortMeta meta_;
};

struct TransitionMatrix {
  double p00 = 1.0;  // OFF remains OFF
  double p01 = 0.0;  // OFF turns RED
  double p10 = 0.0;  // RED turns OFF; always 0
  double p11 = 1.0;  // RED remains RED; always 1

  bool is_valid() const noexcept;
};

struct StateVector {
  double p_off = 1.0;
  double p_red = 0.0;

  static constexpr StateVector newborn() noexcept { return {1.0, 0.0}; }
  /// Row vector times matrix.
  StateVector advance(const TransitionMatrix& m) const noexcept;
  bool is_valid() const noexcept;
};

struct RiskStep {
  std::size_t t = 0;
  std::string age_label;
  double b = 0.0;
  double cum_rate = 0.0;
  double cum_risk = 0.0;
  double p_red = 0.0;
  double p_off = 1.0;
};

struct RiskSeries {
  CohortMeta meta;
  std::vector<RiskStep> steps;
};

struct ComparisonStep {
  std::size_t t = 0;
  std::string age_label;
  double delta_b = 0.0;
  double delta_cum_rate = 0.0;
  double delta_cum_risk = 0.0;
  double delta_p_red = 0.0;
  double delta_p_off = 0.0;
};

struct ComparisonReport {
  std::size_t steps_a = 0;
  std::size_t steps_b = 0;
  std::vector<ComparisonStep> steps;  // shared prefix only

  bool truncated() const noexcept { return steps_a != steps_b; }
};

/// B_i = 5x / (n + 5dc). Other-cause deaths are ignored.
TransitionMatrix estimate_transition(const AgeGroupRecord& record);
std::vector<TransitionMatrix> transitions(const Cohort& cohort);

/// a(5t) = 5 * sum_{i<=t} x_i / n_i.
double cumulative_rate(const Cohort& cohort, std::size_t t);
/// r = 1 - exp(-rate).
double cumulative_risk_from_rate(double rate);

StateVector propagate(StateVector s0, std::span<const TransitionMatrix> matrices);

/// Closed form 1 - prod_{i<=t} (1 - B_i).
double red_probability(const Cohort& cohort, std::size_t t);

RiskSeries risk_series(const Cohort& cohort);

/// Probability of turning RED during steps j+1..j+k given OFF at the end of
/// step j.
double conditional_risk(const Cohort& cohort, std::size_t current_step, std::size_t horizon_steps);

/// Per-step a minus b over the shared prefix of steps.
ComparisonReport compare(const Cohort& a, const Cohort& b);

}  // namespace lightbulb
