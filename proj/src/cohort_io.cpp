#include "lightbulb/cohort_io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <utility>

#include "json.hpp"

namespace lightbulb {

namespace {

using nlohmann::json;

constexpr std::array kRequired = {"age_low", "age_high", "population", "incidence", "cancer_deaths"};
constexpr std::string_view kOptional = "other_deaths";

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

struct Line {
  std::size_t number;
  std::string_view text;
};

std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    auto raw = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    ++number;
    if (!trim(raw).empty()) lines.push_back({number, raw});
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return lines;
}

class RowReader {
 public:
  RowReader(const std::map<std::string, std::size_t>& columns, std::vector<std::string_view> fields,
            std::size_t line)
      : columns_(columns), fields_(std::move(fields)), line_(line) {}

  bool has(const std::string& column) const { return columns_.count(column) != 0; }

  std::string_view raw(const std::string& column) const { return fields_[columns_.at(column)]; }

  int integer(const std::string& column) const {
    const auto s = raw(column);
    int value = 0;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc{} || end != s.data() + s.size())
      throw Error(ErrorCode::MalformedNumber, "'" + std::string(s) + "' is not an integer", line_, column);
    return value;
  }

  double count(const std::string& column) const {
    const auto s = raw(column);
    double value = 0.0;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc{} || end != s.data() + s.size() || !std::isfinite(value))
      throw Error(ErrorCode::MalformedNumber, "'" + std::string(s) + "' is not a number", line_, column);
    if (value < 0.0) throw Error(ErrorCode::NegativeCount, "count must be >= 0", line_, column);
    return value;
  }

 private:
  const std::map<std::string, std::size_t>& columns_;
  std::vector<std::string_view> fields_;
  std::size_t line_;
};

std::string csv_join(std::initializer_list<std::string> cells) {
  std::string out;
  for (const auto& c : cells) {
    if (!out.empty()) out += ',';
    out += c;
  }
  out += '\n';
  return out;
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

json meta_json(const CohortMeta& meta) {
  return {{"region", meta.region}, {"year", meta.year}, {"sex", meta.sex}};
}

}  // namespace

Format parse_format(std::string_view name) {
  const auto n = lower(name);
  if (n == "csv") return Format::Csv;
  if (n == "json") return Format::Json;
  throw Error(ErrorCode::InvalidConfig, "unknown format '" + std::string(name) + "' (expected csv or json)");
}

std::string format_number(double value) {
  // Both notations are shortest round-trip; fixed keeps counts like 700000 readable.
  const double mag = std::abs(value);
  const auto notation =
      (mag == 0.0 || (mag >= 1e-5 && mag < 1e15)) ? std::chars_format::fixed : std::chars_format::general;
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, notation);
  return std::string(buf.data(), end);
}

Cohort parse_cohort(std::string_view text, CohortMeta meta) {
  const auto lines = content_lines(text);
  if (lines.empty()) throw Error(ErrorCode::EmptyCohort, "no header and no records", 1);

  std::map<std::string, std::size_t> columns;
  const auto& header = lines.front();
  const auto names = split(header.text);
  for (std::size_t i = 0; i < names.size(); ++i) {
    auto name = lower(names[i]);
    const bool known = name == kOptional || std::find(kRequired.begin(), kRequired.end(), name) != kRequired.end();
    if (!known) throw Error(ErrorCode::UnknownColumn, "unexpected header field", header.number, std::string(names[i]));
    if (!columns.emplace(name, i).second)
      throw Error(ErrorCode::UnknownColumn, "duplicate header field", header.number, name);
  }
  for (const char* required : kRequired)
    if (!columns.count(required)) throw Error(ErrorCode::MissingColumn, "required column absent", header.number, required);

  if (lines.size() == 1) throw Error(ErrorCode::EmptyCohort, "header present but no records", header.number + 1);

  std::vector<AgeGroupRecord> records;
  records.reserve(lines.size() - 1);
  for (std::size_t row = 1; row < lines.size(); ++row) {
    const auto [number, text_line] = lines[row];
    auto fields = split(text_line);
    if (fields.size() != names.size())
      throw Error(ErrorCode::MalformedRow,
                  "expected " + std::to_string(names.size()) + " fields, found " + std::to_string(fields.size()),
                  number);
    const RowReader r(columns, std::move(fields), number);

    if (!records.empty() && records.back().is_open())
      throw Error(ErrorCode::NonContiguousAges, "record follows the open-ended group", number, "age_low");

    AgeGroupRecord rec;
    rec.index = records.size() + 1;
    rec.age_low = r.integer("age_low");
    const int expected_low = kStepYears * static_cast<int>(records.size());
    if (rec.age_low != expected_low)
      throw Error(ErrorCode::NonContiguousAges, "expected age_low " + std::to_string(expected_low), number, "age_low");
    if (lower(r.raw("age_high")) != "open") {
      rec.age_high = r.integer("age_high");
      if (*rec.age_high != rec.age_low + kStepYears)
        throw Error(ErrorCode::NonContiguousAges, "expected age_high " + std::to_string(rec.age_low + kStepYears),
                    number, "age_high");
    }
    rec.population = r.count("population");
    rec.incidence = r.count("incidence");
    rec.cancer_deaths = r.count("cancer_deaths");
    if (r.has(std::string(kOptional)) && !r.raw(std::string(kOptional)).empty())
      rec.other_deaths = r.count(std::string(kOptional));

    if (rec.population <= 0.0)
      throw Error(ErrorCode::InconsistentRecord, "population must be > 0", number, "population");
    if (kStepYears * rec.incidence > rec.population + kStepYears * rec.cancer_deaths)
      throw Error(ErrorCode::InconsistentRecord, "5x > n + 5dc", number, "incidence");
    records.push_back(rec);
  }
  return Cohort(std::move(records), std::move(meta));
}

std::string emit_cohort(const Cohort& cohort) {
  const bool with_other = std::any_of(cohort.records().begin(), cohort.records().end(),
                                      [](const AgeGroupRecord& r) { return r.other_deaths.has_value(); });
  std::string out = "age_low,age_high,population,incidence,cancer_deaths";
  out += with_other ? ",other_deaths\n" : "\n";
  for (const auto& r : cohort.records()) {
    out += std::to_string(r.age_low) + ',' + (r.is_open() ? std::string("open") : std::to_string(*r.age_high)) + ',' +
           format_number(r.population) + ',' + format_number(r.incidence) + ',' + format_number(r.cancer_deaths);
    if (with_other) out += ',' + (r.other_deaths ? format_number(*r.other_deaths) : std::string());
    out += '\n';
  }
  return out;
}

std::string emit_series(const RiskSeries& series, Format format) {
  if (format == Format::Json) {
    json steps = json::array();
    for (const auto& s : series.steps)
      steps.push_back({{"t", s.t},
                       {"age_label", s.age_label},
                       {"b", s.b},
                       {"cum_rate", s.cum_rate},
                       {"cum_risk", s.cum_risk},
                       {"p_red", s.p_red},
                       {"p_off", s.p_off}});
    return dump({{"cohort", meta_json(series.meta)}, {"steps", steps}});
  }
  std::string out(kSeriesHeader);
  out += '\n';
  for (const auto& s : series.steps)
    out += csv_join({std::to_string(s.t), s.age_label, format_number(s.b), format_number(s.cum_rate),
                     format_number(s.cum_risk), format_number(s.p_red), format_number(s.p_off)});
  return out;
}

std::string emit_comparison(const ComparisonReport& report, Format format) {
  if (format == Format::Json) {
    json steps = json::array();
    for (const auto& s : report.steps)
      steps.push_back({{"t", s.t},
                       {"age_label", s.age_label},
                       {"delta_b", s.delta_b},
                       {"delta_cum_rate", s.delta_cum_rate},
                       {"delta_cum_risk", s.delta_cum_risk},
                       {"delta_p_red", s.delta_p_red},
                       {"delta_p_off", s.delta_p_off}});
    return dump({{"steps_a", report.steps_a},
                 {"steps_b", report.steps_b},
                 {"shared_steps", report.steps.size()},
                 {"truncated", report.truncated()},
                 {"steps", steps}});
  }
  std::string out;
  if (report.truncated())
    out += "# truncated to shared prefix of " + std::to_string(report.steps.size()) + " steps (a has " +
           std::to_string(report.steps_a) + ", b has " + std::to_string(report.steps_b) + ")\n";
  out += "t,age_label,delta_b,delta_cum_rate,delta_cum_risk,delta_p_red,delta_p_off\n";
  for (const auto& s : report.steps)
    out += csv_join({std::to_string(s.t), s.age_label, format_number(s.delta_b), format_number(s.delta_cum_rate),
                     format_number(s.delta_cum_risk), format_number(s.delta_p_red), format_number(s.delta_p_off)});
  return out;
}

std::string emit_simulation(const SimulationResult& result, const RiskSeries& analytic, Format format) {
  const auto empirical = empirical_series(result);
  if (empirical.size() != analytic.steps.size())
    throw Error(ErrorCode::InvalidConfig, "simulation and analytic series differ in length");
  if (format == Format::Json) {
    json steps = json::array();
    for (std::size_t i = 0; i < empirical.size(); ++i) {
      const double p = analytic.steps[i].p_red;
      steps.push_back({{"t", empirical[i].t},
                       {"age_label", empirical[i].age_label},
                       {"off_count", result.steps[i].off_count},
                       {"red_count", result.steps[i].red_count},
                       {"empirical_p_red", empirical[i].p_red},
                       {"analytic_p_red", p},
                       {"difference", empirical[i].p_red - p}});
    }
    return dump({{"seed", result.seed}, {"n_bulbs", result.n_bulbs}, {"steps", steps}});
  }
  std::string out = "# seed=" + std::to_string(result.seed) + " bulbs=" + std::to_string(result.n_bulbs) + "\n";
  out += "t,age_label,off_count,red_count,empirical_p_red,analytic_p_red,difference\n";
  for (std::size_t i = 0; i < empirical.size(); ++i) {
    const double p = analytic.steps[i].p_red;
    out += csv_join({std::to_string(empirical[i].t), empirical[i].age_label, std::to_string(result.steps[i].off_count),
                     std::to_string(result.steps[i].red_count), format_number(empirical[i].p_red), format_number(p),
                     format_number(empirical[i].p_red - p)});
  }
  return out;
}

std::string emit_transition_figure(const RiskSeries& series) {
  std::string out = "t,age_label,b\n";
  for (const auto& s : series.steps) out += csv_join({std::to_string(s.t), s.age_label, format_number(s.b)});
  return out;
}

std::string emit_red_figure(const RiskSeries& series) {
  std::string out = "t,age_label,p_red\n";
  for (const auto& s : series.steps) out += csv_join({std::to_string(s.t), s.age_label, format_number(s.p_red)});
  return out;
}

}  // namespace lightbulb
