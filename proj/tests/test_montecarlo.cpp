#include <doctest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <map>
#include <vector>

#include "rowcover/coverage_math.hpp"
#include "rowcover/montecarlo.hpp"

using namespace rowcover;

namespace {

bool same_bits(const MonteCarloEstimate& a, const MonteCarloEstimate& b) {
  return a.mean == b.mean && a.std_error == b.std_error && a.ci_low == b.ci_low &&
         a.ci_high == b.ci_high && a.trials == b.trials && a.seed == b.seed;
}

// Chi-squared statistic of cover-time samples against cover_time_pmf, with
// the upper tail pooled so each expected count is >= 5.
double cover_time_chi_squared(const SparsityModel& model, const std::vector<std::uint64_t>& samples,
                              int& degrees_of_freedom) {
  std::map<std::uint64_t, double> observed;
  for (auto t : samples) observed[t] += 1.0;
  const auto total = static_cast<double>(samples.size());
  double statistic = 0.0;
  int bins = 0;
  double tail_expected = total;
  double tail_observed = total;
  for (std::uint64_t t = 1;; ++t) {
    const double expected = total * cover_time_pmf(model, t);
    if (tail_expected - expected < 5.0) break;
    const double seen = observed.count(t) ? observed[t] : 0.0;
    statistic += (seen - expected) * (seen - expected) / expected;
    tail_expected -= expected;
    tail_observed -= seen;
    ++bins;
  }
  statistic += (tail_observed - tail_expected) * (tail_observed - tail_expected) / tail_expected;
  ++bins;
  degrees_of_freedom = bins - 1;
  return statistic;
}

}  // namespace

TEST_SUITE("montecarlo") {

TEST_CASE("counter streams are pure functions of the key") {
  CounterStream a(derive_seed(42, 7));
  CounterStream b(derive_seed(42, 7));
  for (int i = 0; i < 100; ++i) CHECK(a() == b());
  CHECK(derive_seed(42, 7) != derive_seed(42, 8));
  CHECK(derive_seed(42, 7) != derive_seed(43, 7));
  CounterStream c(1);
  for (int i = 0; i < 1000; ++i) {
    const double u = c.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("geometric draws have the right law") {
  CounterStream stream(derive_seed(5, 0));
  constexpr int kDraws = 200000;
  double sum = 0.0;
  int ones = 0;
  for (int i = 0; i < kDraws; ++i) {
    const auto g = stream.geometric(0.25);
    CHECK(g >= 1);
    sum += static_cast<double>(g);
    ones += g == 1;
  }
  // mean 4, variance 12; P(G = 1) = 0.25.
  CHECK(std::abs(sum / kDraws - 4.0) < 4.0 * std::sqrt(12.0 / kDraws));
  CHECK(std::abs(ones / static_cast<double>(kDraws) - 0.25) < 4.0 * std::sqrt(0.25 * 0.75 / kDraws));
  CHECK(stream.geometric(1.0) == 1);
}

TEST_CASE("sample cover time, deterministic cases") {
  for (auto method : {CoverTimeMethod::kMaxOfGeometrics, CoverTimeMethod::kColumnScan}) {
    CounterStream stream(9);
    CHECK(sample_cover_time(SparsityModel(1, 1.0), stream, method) == 1);
    CHECK(sample_cover_time(SparsityModel(3, 1.0), stream, method) == 1);
  }
}

TEST_CASE("sample cover time mean matches 22/7") {
  const auto est = estimate_expected_cover_time(SparsityModel(3, 0.5), 100000, 42);
  CHECK(std::abs(est.mean - 22.0 / 7.0) <= 3.0 * est.std_error);
}

TEST_CASE("expected cover time estimates") {
  const auto trivial = estimate_expected_cover_time(SparsityModel(1, 1.0), 100, 7);
  CHECK(trivial.mean == 1.0);
  CHECK(trivial.std_error == 0.0);
  CHECK(trivial.trials == 100);
  CHECK(trivial.seed == 7);

  const auto three = estimate_expected_cover_time(SparsityModel(3, 0.5), 100000, 42);
  CHECK(three.contains(22.0 / 7.0));

  const SparsityModel ten(10, 0.3);
  const auto est = estimate_expected_cover_time(ten, 100000, 1);
  CHECK(est.contains(exact_expected_cover_time(ten).exact_expectation));
  CHECK(est.ci_low <= est.mean);
  CHECK(est.mean <= est.ci_high);

  CHECK_THROWS_AS(estimate_expected_cover_time(ten, 1, 1), DomainError);
}

TEST_CASE("column scan and geometric shortcut agree") {
  const SparsityModel model(6, 0.35);
  RunOptions columns;
  columns.method = CoverTimeMethod::kColumnScan;
  const auto a = estimate_expected_cover_time(model, 40000, 3);
  const auto b = estimate_expected_cover_time(model, 40000, 4, columns);
  const double exact = exact_expected_cover_time(model).exact_expectation;
  CHECK(std::abs(a.mean - exact) <= 3.0 * a.std_error);
  CHECK(std::abs(b.mean - exact) <= 3.0 * b.std_error);
  CHECK(std::abs(a.mean - b.mean) <= 3.0 * std::hypot(a.std_error, b.std_error));
}

TEST_CASE("cover time histogram fits the pmf") {
  const SparsityModel model(3, 0.5);
  for (auto method : {CoverTimeMethod::kMaxOfGeometrics, CoverTimeMethod::kColumnScan}) {
    std::vector<std::uint64_t> samples;
    samples.reserve(100000);
    for (std::uint64_t i = 0; i < 100000; ++i) {
      CounterStream stream(derive_seed(2024, i));
      samples.push_back(sample_cover_time(model, stream, method));
    }
    int dof = 0;
    const double statistic = cover_time_chi_squared(model, samples, dof);
    const double critical = boost::math::quantile(boost::math::chi_squared(dof), 0.99);
    CAPTURE(statistic);
    CAPTURE(dof);
    CHECK(statistic < critical);
  }
}

TEST_CASE("coverage probability estimates") {
  const auto full = estimate_coverage_probability(SparsityModel(2, 1.0), 1, 50, 3);
  CHECK(full.mean == 1.0);
  CHECK(full.ci_high == 1.0);
  CHECK(full.ci_low < 1.0);

  const auto est = estimate_coverage_probability(SparsityModel(3, 0.5), 3, 100000, 9);
  CHECK(est.contains(0.669921875));

  const auto empty = estimate_coverage_probability(SparsityModel(5, 0.2), 0, 10, 0);
  CHECK(empty.mean == 0.0);
  CHECK(empty.ci_low == 0.0);

  CHECK_THROWS_AS(estimate_coverage_probability(SparsityModel(5, 0.2), 3, 0, 0), DomainError);
}

TEST_CASE("Wilson interval") {
  // 0 of 10 gives [0, z^2 / (n + z^2)].
  const auto none = wilson_estimate(0, 10, 0);
  CHECK(none.ci_low == 0.0);
  CHECK(none.ci_high == doctest::Approx(kZ95 * kZ95 / (10.0 + kZ95 * kZ95)).epsilon(1e-12));
  const auto half = wilson_estimate(50, 100, 0);
  CHECK(half.mean == 0.5);
  CHECK(half.ci_low == doctest::Approx(0.403831).epsilon(1e-5));
  CHECK(half.ci_high == doctest::Approx(0.596169).epsilon(1e-5));
  CHECK_THROWS_AS(wilson_estimate(11, 10, 0), DomainError);
}

TEST_CASE("pattern sampler matches the coverage sampler") {
  const SparsityModel model(4, 0.3);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Pattern pattern = sample_pattern(model, 5, seed);
    const bool covered = (pattern.rowwise().count().array() > 0).all();
    CHECK(covered == sample_pattern_covers(model, 5, seed));
  }
}

TEST_CASE("estimates are bit-identical across worker counts") {
  const SparsityModel model(12, 0.2);
  for (unsigned workers : {2u, 3u, 8u}) {
    RunOptions parallel;
    parallel.workers = workers;
    CHECK(same_bits(estimate_expected_cover_time(model, 5001, 77),
                    estimate_expected_cover_time(model, 5001, 77, parallel)));
    CHECK(same_bits(estimate_coverage_probability(model, 15, 5001, 77),
                    estimate_coverage_probability(model, 15, 5001, 77, parallel)));
  }
  CHECK(same_bits(estimate_expected_cover_time(model, 1000, 5), estimate_expected_cover_time(model, 1000, 5)));
  CHECK_FALSE(same_bits(estimate_expected_cover_time(model, 1000, 5), estimate_expected_cover_time(model, 1000, 6)));
}

TEST_CASE("phase sweep") {
  const auto trivial = phase_sweep(SparsityModel(1, 1.0), 1, 3, 10, 5);
  REQUIRE(trivial.points.size() == 3);
  for (const auto& point : trivial.points) CHECK(point.empirical.mean == 1.0);

  const SparsityModel model(3, 0.5);
  const auto curve = phase_sweep(model, 1, 10, 10000, 11);
  REQUIRE(curve.points.size() == 10);
  int inside = 0;
  double previous_analytic = -1.0;
  for (std::size_t k = 0; k < curve.points.size(); ++k) {
    const auto& point = curve.points[k];
    CHECK(point.p == k + 1);
    CHECK(point.analytic == doctest::Approx(std::pow(1.0 - std::pow(0.5, point.p), 3)).epsilon(1e-15));
    CHECK(point.analytic >= previous_analytic);
    CHECK(point.empirical.seed == derive_seed(11, point.p));
    previous_analytic = point.analytic;
    inside += point.empirical.contains(point.analytic);
  }
  CHECK(inside >= 9);

  CHECK_THROWS_AS(phase_sweep(model, 5, 4, 10, 0), DomainError);
}

TEST_CASE("Wilson calibration over a 30-point grid") {
  int inside = 0;
  int points = 0;
  for (std::uint64_t n : {2u, 5u, 10u, 20u, 50u}) {
    for (double theta : {0.1, 0.3, 0.6}) {
      const SparsityModel model(n, theta);
      // Two column counts straddling the median cover time.
      const std::uint64_t mid = coverage_threshold(model, 0.5);
      for (std::uint64_t p : {mid, mid + 1}) {
        const auto est = estimate_coverage_probability(model, p, 10000, derive_seed(1, points));
        inside += est.contains(coverage_probability(model, p));
        ++points;
      }
    }
  }
  CHECK(points == 30);
  CHECK(inside >= 28);  // >= 93% of 30
}

TEST_CASE("Wilson interval coverage rate") {
  // The 30-point check above misses its 93% floor for roughly one seed in
  // five even with exact 95% intervals; this replicated version does not.
  const SparsityModel model(10, 0.3);
  const double analytic = coverage_probability(model, 8);
  int inside = 0;
  constexpr int kReplicates = 2000;
  for (int r = 0; r < kReplicates; ++r) {
    inside += estimate_coverage_probability(model, 8, 2000, derive_seed(99, r)).contains(analytic);
  }
  CHECK(inside >= 0.93 * kReplicates);
  CHECK(inside <= 0.97 * kReplicates);
}

}  // TEST_SUITE
