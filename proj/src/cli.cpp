#include "rowcover/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>

#include "rowcover/bounds.hpp"
#include "rowcover/coverage_math.hpp"
#include "rowcover/montecarlo.hpp"
#include "rowcover/omf_harness.hpp"
#include "rowcover/output_record.hpp"

namespace rowcover::cli {

namespace {

struct Options {
  std::uint64_t n = 0;
  double theta = 0.0;
  std::optional<std::uint64_t> p;
  std::uint64_t p_min = 0;
  std::uint64_t p_max = 0;
  double delta = kDefaultDelta;
  std::uint64_t trials = kDefaultTrials;
  std::uint64_t seed = kDefaultSeed;
  double tol = kDefaultTol;
  std::string format = "json";
  std::string method = "geometric";
  std::string out_path;
  unsigned workers = 1;
  std::vector<double> thetas;
  std::vector<std::uint64_t> ns;
};

Value optional_value(const std::optional<double>& x) {
  return x ? Value{*x} : Value{std::monostate{}};
}

void add_estimate(std::map<std::string, Value>& results, const MonteCarloEstimate& est,
                  const std::string& prefix = "") {
  results[prefix + "mean"] = est.mean;
  results[prefix + "std_error"] = est.std_error;
  results[prefix + "ci_low"] = est.ci_low;
  results[prefix + "ci_high"] = est.ci_high;
  results[prefix + "trials"] = est.trials;
}

std::vector<OutputRecord> expect_command(const Options& opt) {
  const SparsityModel model(opt.n, opt.theta);
  const CoverTimeSummary summary = exact_expected_cover_time(model, opt.tol);
  OutputRecord record{"expect", {{"n", opt.n}, {"theta", opt.theta}, {"tol", opt.tol}}, {}};
  record.results["exact"] = summary.exact_expectation;
  record.results["phase_sum"] = summary.phase_sum;
  record.results["phase_sum_raw"] = phase_sum_raw(model);
  record.results["phase_sum_gap"] = summary.phase_sum - summary.exact_expectation;
  record.results["classic_reference"] = summary.classic_reference;
  record.results["truncation_error_bound"] = summary.truncation_error_bound;
  record.results["inclusion_exclusion"] =
      opt.n <= kInclusionExclusionMaxN ? Value{inclusion_exclusion_expectation(model)}
                                       : Value{std::monostate{}};
  return {record};
}

std::vector<OutputRecord> bounds_command(const Options& opt) {
  const BoundReport report = bound_report(SparsityModel(opt.n, opt.theta));
  OutputRecord record{"bounds", {{"n", opt.n}, {"theta", opt.theta}}, {}};
  record.results["theorem_bound"] = report.theorem_bound;
  record.results["simple_lower_bound"] = report.simple_lower_bound;
  record.results["digamma_bound"] = optional_value(report.digamma_bound);
  record.results["digamma_approx_bound"] = optional_value(report.digamma_approx_bound);
  record.results["small_theta_bound"] = optional_value(report.small_theta_bound);
  record.results["small_theta_outside_regime"] =
      static_cast<std::int64_t>(report.small_theta_outside_regime);
  record.results["phase_sum"] = report.phase_sum;
  record.results["exact_expectation"] = report.exact_expectation;
  record.results["digamma_phase_gap"] =
      report.digamma_bound ? Value{*report.digamma_bound - report.phase_sum}
                           : Value{std::monostate{}};
  return {record};
}

std::vector<OutputRecord> threshold_command(const Options& opt) {
  const SparsityModel model(opt.n, opt.theta);
  const std::uint64_t p_star = coverage_threshold(model, opt.delta);
  OutputRecord record{"threshold", {{"n", opt.n}, {"theta", opt.theta}, {"delta", opt.delta}}, {}};
  record.results["p_star"] = p_star;
  record.results["coverage_at_p_star"] = coverage_probability(model, p_star);
  record.results["coverage_below_p_star"] = coverage_probability(model, p_star - 1);
  record.results["theorem_bound"] = theorem_bound(model);
  return {record};
}

RunOptions run_options(const Options& opt) {
  RunOptions options;
  options.workers = opt.workers;
  options.method = opt.method == "columns" ? CoverTimeMethod::kColumnScan
                                           : CoverTimeMethod::kMaxOfGeometrics;
  return options;
}

std::vector<OutputRecord> simulate_command(const Options& opt) {
  const SparsityModel model(opt.n, opt.theta);
  OutputRecord record{"simulate",
                      {{"n", opt.n}, {"theta", opt.theta}, {"trials", opt.trials}, {"seed", opt.seed}},
                      {}};
  if (opt.p) {
    record.parameters["p"] = *opt.p;
    record.parameters["quantity"] = std::string("coverage_probability");
    add_estimate(record.results,
                 estimate_coverage_probability(model, *opt.p, opt.trials, opt.seed, run_options(opt)));
    record.results["analytic"] = coverage_probability(model, *opt.p);
  } else {
    record.parameters["quantity"] = std::string("cover_time");
    record.parameters["method"] = opt.method;
    add_estimate(record.results,
                 estimate_expected_cover_time(model, opt.trials, opt.seed, run_options(opt)));
    record.results["analytic"] = exact_expected_cover_time(model, opt.tol).exact_expectation;
  }
  return {record};
}

std::vector<OutputRecord> sweep_command(const Options& opt) {
  const std::vector<double> thetas = opt.thetas.empty() ? std::vector<double>{opt.theta} : opt.thetas;
  const std::vector<std::uint64_t> ns = opt.ns.empty() ? std::vector<std::uint64_t>{opt.n} : opt.ns;
  std::vector<OutputRecord> records;
  for (std::uint64_t n : ns) {
    for (double theta : thetas) {
      const PhaseCurve curve =
          phase_sweep(SparsityModel(n, theta), opt.p_min, opt.p_max, opt.trials, opt.seed,
                      run_options(opt));
      for (const PhasePoint& point : curve.points) {
        OutputRecord record{"sweep",
                            {{"n", n},
                             {"theta", theta},
                             {"p_min", opt.p_min},
                             {"p_max", opt.p_max},
                             {"trials", opt.trials},
                             {"seed", opt.seed}},
                            {}};
        record.results["p"] = point.p;
        add_estimate(record.results, point.empirical);
        record.results["analytic"] = point.analytic;
        record.results["analytic_in_ci"] =
            static_cast<std::int64_t>(point.empirical.contains(point.analytic));
        records.push_back(std::move(record));
      }
    }
  }
  return records;
}

std::vector<OutputRecord> omf_command(const Options& opt) {
  if (!opt.p) throw DomainError("omf requires --p");
  if (*opt.p == 0) throw DomainError("omf requires p >= 1");
  const OmfInstance<double> instance = assemble_instance<double>(opt.n, *opt.p, opt.theta, opt.seed);
  const CoverageReport coverage = row_coverage_check(instance.x);
  const double scale = std::max(1.0, instance.x.norm());

  OutputRecord record{"omf",
                      {{"n", opt.n},
                       {"p", *opt.p},
                       {"theta", opt.theta},
                       {"trials", opt.trials},
                       {"seed", opt.seed}},
                      {}};
  record.results["orthogonality_error"] = orthogonality_error(instance.v);
  record.results["product_residual"] = product_residual(instance) / scale;
  record.results["recovery_residual"] = recovery_residual(instance) / scale;
  record.results["norm_gap"] = norm_gap(instance) / scale;
  record.results["instance_covered"] = static_cast<std::int64_t>(coverage.covered);
  record.results["uncovered_rows"] = static_cast<std::uint64_t>(coverage.uncovered_rows.size());
  record.results["min_nonzeros_per_row"] = static_cast<std::int64_t>(
      *std::min_element(coverage.nonzeros_per_row.begin(), coverage.nonzeros_per_row.end()));
  add_estimate(record.results,
               coverage_experiment(opt.n, opt.theta, *opt.p, opt.trials, opt.seed, run_options(opt)),
               "coverage_");
  record.results["analytic_coverage"] = coverage_probability(SparsityModel(opt.n, opt.theta), *opt.p);

  if (!opt.out_path.empty()) {
    std::ofstream dump(opt.out_path);
    if (!dump) throw DomainError("cannot open " + opt.out_path + " for writing");
    write_instance(dump, instance);
    record.parameters["out"] = opt.out_path;
  }
  return {record};
}

void add_model_options(CLI::App& cmd, Options& opt, bool theta_required = true) {
  cmd.add_option("--n", opt.n, "Number of rows of X")->required();
  auto* theta = cmd.add_option("--theta", opt.theta, "Bernoulli nonzero probability");
  if (theta_required) theta->required();
}

void add_format_option(CLI::App& cmd, Options& opt) {
  cmd.add_option("--format", opt.format, "Output encoding")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
}

void add_random_options(CLI::App& cmd, Options& opt) {
  cmd.add_option("--trials", opt.trials, "Monte Carlo trials")->capture_default_str();
  cmd.add_option("--seed", opt.seed, "Random seed")->capture_default_str();
  cmd.add_option("--workers", opt.workers, "Worker threads (0 = all cores)")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Row-coverage sample complexity for sparse orthogonal matrix factorization",
               "rowcover"};
  app.require_subcommand(1);
  Options opt;
  std::function<std::vector<OutputRecord>(const Options&)> handler;

  auto* expect = app.add_subcommand("expect", "Exact and phase-sum expected cover times");
  add_model_options(*expect, opt);
  expect->add_option("--tol", opt.tol, "Tail-sum truncation tolerance")->capture_default_str();
  add_format_option(*expect, opt);
  expect->callback([&] { handler = expect_command; });

  auto* bounds = app.add_subcommand("bounds", "Closed-form bounds on the column count");
  add_model_options(*bounds, opt);
  add_format_option(*bounds, opt);
  bounds->callback([&] { handler = bounds_command; });

  auto* threshold = app.add_subcommand("threshold", "Smallest p covering all rows w.p. >= 1 - delta");
  add_model_options(*threshold, opt);
  threshold->add_option("--delta", opt.delta, "Allowed failure probability")->capture_default_str();
  add_format_option(*threshold, opt);
  threshold->callback([&] { handler = threshold_command; });

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo cover time, or coverage at --p");
  add_model_options(*simulate, opt);
  simulate->add_option("--p", opt.p, "Column count; estimates coverage probability when given");
  simulate->add_option("--method", opt.method, "Cover-time sampler")
      ->check(CLI::IsMember({"geometric", "columns"}))
      ->capture_default_str();
  simulate->add_option("--tol", opt.tol, "Tolerance of the analytic reference")->capture_default_str();
  add_random_options(*simulate, opt);
  add_format_option(*simulate, opt);
  simulate->callback([&] { handler = simulate_command; });

  auto* sweep = app.add_subcommand("sweep", "Empirical vs analytic coverage over a range of p");
  auto* sweep_n = sweep->add_option("--n", opt.n, "Number of rows of X");
  auto* sweep_theta = sweep->add_option("--theta", opt.theta, "Bernoulli nonzero probability");
  auto* sweep_ns = sweep->add_option("--n-values", opt.ns, "Sweep over these n as well")->delimiter(',');
  auto* sweep_thetas =
      sweep->add_option("--theta-values", opt.thetas, "Sweep over these theta as well")->delimiter(',');
  sweep_n->excludes(sweep_ns);
  sweep_theta->excludes(sweep_thetas);
  sweep->add_option("--p-min", opt.p_min, "First column count")->required();
  sweep->add_option("--p-max", opt.p_max, "Last column count")->required();
  add_random_options(*sweep, opt);
  add_format_option(*sweep, opt);
  sweep->callback([&] {
    if (sweep_n->count() + sweep_ns->count() == 0) {
      throw CLI::RequiredError("--n or --n-values");
    }
    if (sweep_theta->count() + sweep_thetas->count() == 0) {
      throw CLI::RequiredError("--theta or --theta-values");
    }
    handler = sweep_command;
  });

  auto* omf = app.add_subcommand("omf", "Assemble Y = V X and check row coverage of X");
  add_model_options(*omf, opt);
  omf->add_option("--p", opt.p, "Number of columns")->required();
  omf->add_option("--out", opt.out_path, "Write the instance as plain text");
  add_random_options(*omf, opt);
  add_format_option(*omf, opt);
  omf->callback([&] { handler = omf_command; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "rowcover: " << e.what() << "\n";
    return kExitUsageError;
  }

  try {
    const std::vector<OutputRecord> records = handler(opt);
    if (opt.format == "csv") {
      out << to_csv(records);
    } else {
      for (const OutputRecord& record : records) out << to_json(record);
    }
  } catch (const DomainError& e) {
    err << "rowcover: " << e.what() << "\n";
    return kExitDomainError;
  }
  return kExitOk;
}

}  // namespace rowcover::cli
