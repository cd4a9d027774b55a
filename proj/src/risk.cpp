#include "lightbulb/risk.hpp"

#include <cmath>
#include <utility>

namespace lightbulb {

std::string AgeGroupRecord::age_label() const {
  if (is_open()) return std::to_string(age_low) + "+";
  return std::to_string(age_low) + "-" + std::to_string(*age_high - 1);
}

std::optional<std::string> record_problem(const AgeGroupRecord& r) {
  if (!std::isfinite(r.population) || r.population <= 0.0) return "population must be > 0";
  if (!std::isfinite(r.incidence) || r.incidence < 0.0) return "incidence must be >= 0";
  if (!std::isfinite(r.cancer_deaths) || r.cancer_deaths < 0.0) return "cancer_deaths must be >= 0";
  if (r.other_deaths && (!std::isfinite(*r.other_deaths) || *r.other_deaths < 0.0))
    return "other_deaths must be >= 0";
  if (kStepYears * r.incidence > r.population + kStepYears * r.cancer_deaths) return "5x > n + 5dc";
  if (r.age_low < 0 || r.age_low % kStepYears != 0) return "age_low must be a non-negative multiple of 5";
  if (r.age_high && *r.age_high - r.age_low != kStepYears) return "closed group must span 5 years";
  return std::nullopt;
}

Cohort::Cohort(std::vector<AgeGroupRecord> records, CohortMeta meta)
    : records_(std::move(records)), meta_(std::move(meta)) {
  for (std::size_t pos = 0; pos < records_.size(); ++pos) {
    const auto& r = records_[pos];
    const std::string where = "group " + std::to_string(pos + 1);
    if (auto problem = record_problem(r)) throw Error(ErrorCode::InvalidRecord, where + ": " + *problem);
    if (r.index != pos + 1)
      throw Error(ErrorCode::InvalidCohort, where + ": index " + std::to_string(r.index) + " out of sequence");
    if (r.age_low != kStepYears * static_cast<int>(pos))
      throw Error(ErrorCode::InvalidCohort, where + ": expected age_low " + std::to_string(kStepYears * pos));
    if (r.is_open() && pos + 1 != records_.size())
      throw Error(ErrorCode::InvalidCohort, where + ": only the final group may be open");
  }
}

const AgeGroupRecord& Cohort::group(std::size_t step) const {
  if (step < 1 || step > records_.size())
    throw Error(ErrorCode::OutOfRange,
                "step " + std::to_string(step) + " outside 1.." + std::to_string(records_.size()));
  return records_[step - 1];
}

bool TransitionMatrix::is_valid() const noexcept {
  auto unit = [](double p) { return p >= 0.0 && p <= 1.0; };
  return unit(p00) && unit(p01) && p10 == 0.0 && p11 == 1.0 &&
         std::abs(p00 + p01 - 1.0) <= kIdentityTolerance;
}

StateVector StateVector::advance(const TransitionMatrix& m) const noexcept {
  return {p_off * m.p00 + p_red * m.p10, p_off * m.p01 + p_red * m.p11};
}

bool StateVector::is_valid() const noexcept {
  auto unit = [](double p) { return p >= 0.0 && p <= 1.0; };
  return unit(p_off) && unit(p_red) && std::abs(p_off + p_red - 1.0) <= kIdentityTolerance;
}

TransitionMatrix estimate_transition(const AgeGroupRecord& r) {
  if (auto problem = record_problem(r)) throw Error(ErrorCode::InvalidRecord, *problem);
  const double off_start = r.population + kStepYears * r.cancer_deaths;
  const double off_end = r.population + kStepYears * (r.cancer_deaths - r.incidence);
  const double turned_red = kStepYears * r.incidence;
  return {off_end / off_start, turned_red / off_start, 0.0, 1.0};
}

std::vector<TransitionMatrix> transitions(const Cohort& cohort) {
  std::vector<TransitionMatrix> out;
  out.reserve(cohort.steps());
  for (const auto& r : cohort.records()) out.push_back(estimate_transition(r));
  return out;
}

namespace {

void require_step(const Cohort& cohort, std::size_t t) {
  if (t < 1 || t > cohort.steps())
    throw Error(ErrorCode::OutOfRange,
                "step " + std::to_string(t) + " outside 1.." + std::to_string(cohort.steps()));
}

double annual_rate(const AgeGroupRecord& r) { return r.incidence / r.population; }

}  // namespace

double cumulative_rate(const Cohort& cohort, std::size_t t) {
  require_step(cohort, t);
  double sum = 0.0;
  for (std::size_t i = 0; i < t; ++i) sum += annual_rate(cohort.records()[i]);
  return kStepYears * sum;
}

double cumulative_risk_from_rate(double rate) {
  if (std::isnan(rate) || rate < 0.0)
    throw Error(ErrorCode::NegativeRate, "rate " + std::to_string(rate) + " is negative");
  return 1.0 - std::exp(-rate);
}

StateVector propagate(StateVector s0, std::span<const TransitionMatrix> matrices) {
  for (const auto& m : matrices) s0 = s0.advance(m);
  return s0;
}

double red_probability(const Cohort& cohort, std::size_t t) {
  require_step(cohort, t);
  return conditional_risk(cohort, 0, t);
}

RiskSeries risk_series(const Cohort& cohort) {
  RiskSeries series{cohort.meta(), {}};
  series.steps.reserve(cohort.steps());
  double rate_sum = 0.0;
  double survive = 1.0;
  for (std::size_t i = 0; i < cohort.steps(); ++i) {
    const auto& r = cohort.records()[i];
    const double b = estimate_transition(r).p01;
    rate_sum += annual_rate(r);
    survive *= 1.0 - b;
    const double rate = kStepYears * rate_sum;
    series.steps.push_back({i + 1, r.age_label(), b, rate, cumulative_risk_from_rate(rate), 1.0 - survive, survive});
  }
  return series;
}

double conditional_risk(const Cohort& cohort, std::size_t current_step, std::size_t horizon_steps) {
  if (horizon_steps < 1) throw Error(ErrorCode::OutOfRange, "horizon must cover at least one step");
  if (current_step + horizon_steps > cohort.steps())
    throw Error(ErrorCode::OutOfRange, "steps " + std::to_string(current_step + 1) + ".." +
                                           std::to_string(current_step + horizon_steps) + " exceed the " +
                                           std::to_string(cohort.steps()) + " available");
  double survive = 1.0;
  for (std::size_t i = current_step; i < current_step + horizon_steps; ++i)
    survive *= 1.0 - estimate_transition(cohort.records()[i]).p01;
  return 1.0 - survive;
}

ComparisonReport compare(const Cohort& a, const Cohort& b) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::EmptyOverlap, "cannot compare a cohort with no groups");
  const auto sa = risk_series(a);
  const auto sb = risk_series(b);
  ComparisonReport report{a.steps(), b.steps(), {}};
  const std::size_t shared = std::min(a.steps(), b.steps());
  report.steps.reserve(shared);
  for (std::size_t i = 0; i < shared; ++i) {
    const auto& x = sa.steps[i];
    const auto& y = sb.steps[i];
    report.steps.push_back({x.t, x.age_label, x.b - y.b, x.cum_rate - y.cum_rate, x.cum_risk - y.cum_risk,
                            x.p_red - y.p_red, x.p_off - y.p_off});
  }
  return report;
}

}  // namespace lightbulb
