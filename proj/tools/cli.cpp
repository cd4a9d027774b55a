#include "cli.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "lightbulb/cohort_io.hpp"
#include "lightbulb/risk.hpp"
#include "lightbulb/simulate.hpp"

namespace lightbulb::cli {

namespace {

namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open dataset '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Cohort load(const std::string& path, const CohortMeta& meta) {
  const auto text = read_file(path);
  try {
    return parse_cohort(text, meta);
  } catch (const Error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

void write_file(const fs::path& path, const std::string& doc) {
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << doc) || !f.flush()) throw UsageError("cannot write '" + path.string() + "'");
}

void emit(const std::string& doc, const std::string& out_path, std::ostream& out) {
  if (out_path.empty() || out_path == "-") out << doc;
  else write_file(out_path, doc);
}

std::size_t steps_for_age(int years, const char* flag) {
  if (years < 0) throw UsageError(std::string("OutOfRange: ") + flag + " must be >= 0");
  if (years % kStepYears != 0)
    throw UsageError(std::string("NotMultipleOfFive: ") + flag + " " + std::to_string(years) +
                     " is not a multiple of 5");
  return static_cast<std::size_t>(years / kStepYears);
}

std::string max_age_note(const Cohort& cohort) {
  return "dataset covers ages 0-" + std::to_string(kStepYears * cohort.steps()) + " (maximum age " +
         std::to_string(kStepYears * cohort.steps()) + ")";
}

struct Options {
  std::string dataset;
  std::string dataset_b;
  std::string format = "csv";
  std::string out;
  CohortMeta meta;
  int upto = -1;
  int age = 0;
  int horizon = 0;
  std::uint64_t bulbs = 0;
  std::uint64_t seed = 1;
  int threads = 0;
};

void add_meta(CLI::App* cmd, Options& o) {
  cmd->add_option("--region", o.meta.region, "Region label");
  cmd->add_option("--year", o.meta.year, "Calendar year label");
  cmd->add_option("--sex", o.meta.sex, "Sex label");
}

void add_output(CLI::App* cmd, Options& o) {
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", o.out, "Output path (default: standard output)");
}

int compute(const Options& o, std::ostream& out) {
  const auto cohort = load(o.dataset, o.meta);
  auto series = risk_series(cohort);
  if (o.upto >= 0) {
    const auto t = steps_for_age(o.upto, "--upto");
    if (t < 1 || t > cohort.steps())
      throw UsageError("OutOfRange: --upto " + std::to_string(o.upto) + "; " + max_age_note(cohort));
    series.steps.resize(t);
  }
  emit(emit_series(series, parse_format(o.format)), o.out, out);
  return 0;
}

int conditional(const Options& o, std::ostream& out) {
  const auto cohort = load(o.dataset, o.meta);
  const auto j = steps_for_age(o.age, "--age");
  const auto k = steps_for_age(o.horizon, "--horizon");
  if (k < 1) throw UsageError("OutOfRange: --horizon must be at least 5 years");
  if (j + k > cohort.steps())
    throw UsageError("OutOfRange: age " + std::to_string(o.age) + " plus horizon " + std::to_string(o.horizon) +
                     " exceeds the data; " + max_age_note(cohort));
  std::ostringstream line;
  line << std::fixed << std::setprecision(6) << conditional_risk(cohort, j, k) << '\n';
  emit(line.str(), o.out, out);
  return 0;
}

int compare_cmd(const Options& o, std::ostream& out) {
  const auto a = load(o.dataset, o.meta);
  const auto b = load(o.dataset_b, o.meta);
  emit(emit_comparison(compare(a, b), parse_format(o.format)), o.out, out);
  return 0;
}

int simulate_cmd(const Options& o, std::ostream& out) {
  if (o.bulbs < 1) throw UsageError("InvalidConfig: --bulbs must be >= 1");
  SimulationConfig config{o.bulbs, o.seed, load(o.dataset, o.meta)};
  const auto result = simulate(config, o.threads);
  emit(emit_simulation(result, risk_series(config.cohort), parse_format(o.format)), o.out, out);
  return 0;
}

int figures(const Options& o) {
  if (o.out.empty()) throw UsageError("--out must name a directory");
  const auto series = risk_series(load(o.dataset, o.meta));
  const fs::path dir(o.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw UsageError("cannot create output directory '" + o.out + "'");
  write_file(dir / "fig4_transitions.csv", emit_transition_figure(series));
  write_file(dir / "fig5_red.csv", emit_red_figure(series));
  write_file(dir / "fig6_summary.csv", emit_series(series, Format::Csv));
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cumulative cancer risk from age-grouped incidence tables"};
  app.require_subcommand(1);
  Options o;

  auto* c = app.add_subcommand("compute", "Emit the per-step risk series");
  c->add_option("dataset", o.dataset, "Cohort CSV")->required();
  c->add_option("--upto", o.upto, "Truncate after this age (multiple of 5)");
  add_output(c, o);
  add_meta(c, o);

  auto* q = app.add_subcommand("conditional", "Risk over the next HORIZON years for someone cancer-free at AGE");
  q->add_option("dataset", o.dataset, "Cohort CSV")->required();
  q->add_option("--age", o.age, "Current age in years (multiple of 5)")->required();
  q->add_option("--horizon", o.horizon, "Horizon in years (multiple of 5)")->required();
  q->add_option("--out", o.out, "Output path (default: standard output)");

  auto* m = app.add_subcommand("compare", "Per-step differences between two cohorts (a minus b)");
  m->add_option("dataset_a", o.dataset, "First cohort CSV")->required();
  m->add_option("dataset_b", o.dataset_b, "Second cohort CSV")->required();
  add_output(m, o);

  auto* s = app.add_subcommand("simulate", "Monte Carlo light-bulb population next to the analytic series");
  s->add_option("dataset", o.dataset, "Cohort CSV")->required();
  s->add_option("--bulbs", o.bulbs, "Population size")->required();
  s->add_option("--seed", o.seed, "64-bit generator seed");
  s->add_option("--threads", o.threads, "OpenMP threads (0 = default)");
  add_output(s, o);

  auto* f = app.add_subcommand("figures", "Write the transition, RED and summary series as CSV files");
  f->add_option("dataset", o.dataset, "Cohort CSV")->required();
  f->add_option("--out", o.out, "Output directory")->required();
  add_meta(f, o);

  std::vector<std::string> argv_store{"lightbulb"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (c->parsed()) return compute(o, out);
    if (q->parsed()) return conditional(o, out);
    if (m->parsed()) return compare_cmd(o, out);
    if (s->parsed()) return simulate_cmd(o, out);
    return figures(o);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace lightbulb::cli
