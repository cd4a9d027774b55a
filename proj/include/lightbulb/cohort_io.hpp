#pragma once

// Cohort CSV ingestion and report emission.
//
// Input columns (header required, case-insensitive, any order):
//   age_low, age_high, population, incidence, cancer_deaths [, other_deaths]
// age_high is exclusive (0,5 is the 0-4 group) or the token "open" on the
// final row. Counts are annual.

#include <string>
#include <string_view>
#include <vector>

#include "lightbulb/risk.hpp"
#include "lightbulb/simulate.hpp"

namespace lightbulb {

enum class Format { Csv, Json };

/// Throws Error{InvalidConfig} for anything other than "csv" or "json".
Format parse_format(std::string_view name);

/// Shortest decimal string that parses back to the same double.
std::string format_number(double value);

Cohort parse_cohort(std::string_view text, CohortMeta meta = {});
std::string emit_cohort(const Cohort& cohort);

std::string emit_series(const RiskSeries& series, Format format);
std::string emit_comparison(const ComparisonReport& report, Format format);

/// Empirical columns next to the analytic p_red and the difference.
std::string emit_simulation(const SimulationResult& result, const RiskSeries& analytic, Format format);

/// Column subsets behind the three result figures.
std::string emit_transition_figure(const RiskSeries& series);
std::string emit_red_figure(const RiskSeries& series);

inline constexpr std::string_view kSeriesHeader = "t,age_label,b,cum_rate,cum_risk,p_red,p_off";

}  // namespace lightbulb
