#include "rowcover/montecarlo.hpp"

#include <cmath>
#include <numeric>

#include "rowcover/coverage_math.hpp"

namespace rowcover {

Pattern draw_pattern(const SparsityModel& model, std::uint64_t p, CounterStream& stream) {
  const auto rows = static_cast<Eigen::Index>(model.n());
  const auto cols = static_cast<Eigen::Index>(p);
  Pattern pattern(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) pattern(i, j) = stream.bernoulli(model.theta());
  }
  return pattern;
}

Pattern sample_pattern(const SparsityModel& model, std::uint64_t p, std::uint64_t seed) {
  CounterStream stream(seed, StreamTag::kPattern);
  return draw_pattern(model, p, stream);
}

bool sample_pattern_covers(const SparsityModel& model, std::uint64_t p, std::uint64_t seed) {
  CounterStream stream(seed, StreamTag::kPattern);
  const std::uint64_t n = model.n();
  std::vector<bool> covered(n, false);
  std::uint64_t remaining = n;
  for (std::uint64_t j = 0; j < p; ++j) {
    for (std::uint64_t i = 0; i < n; ++i) {
      if (stream.bernoulli(model.theta()) && !covered[i]) {
        covered[i] = true;
        --remaining;
      }
    }
    // Later columns cannot uncover a row.
    if (remaining == 0) return true;
  }
  return false;
}

std::uint64_t sample_cover_time(const SparsityModel& model, CounterStream& stream,
                                CoverTimeMethod method) {
  const std::uint64_t n = model.n();
  if (method == CoverTimeMethod::kMaxOfGeometrics) {
    std::uint64_t longest = 0;
    for (std::uint64_t i = 0; i < n; ++i) longest = std::max(longest, stream.geometric(model.theta()));
    return longest;
  }
  std::vector<bool> covered(n, false);
  std::uint64_t remaining = n;
  std::uint64_t column = 0;
  while (remaining > 0) {
    ++column;
    for (std::uint64_t i = 0; i < n; ++i) {
      if (stream.bernoulli(model.theta()) && !covered[i]) {
        covered[i] = true;
        --remaining;
      }
    }
  }
  return column;
}

MonteCarloEstimate mean_estimate(std::span<const double> samples, std::uint64_t seed) {
  if (samples.size() < 2) throw DomainError("mean estimate requires at least 2 samples");
  const auto count = static_cast<double>(samples.size());
  const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / count;
  double squares = 0.0;
  for (double x : samples) squares += (x - mean) * (x - mean);
  const double std_error = std::sqrt(squares / (count - 1.0) / count);
  return {mean, std_error, mean - kZ95 * std_error, mean + kZ95 * std_error, samples.size(), seed};
}

MonteCarloEstimate wilson_estimate(std::uint64_t successes, std::uint64_t trials,
                                   std::uint64_t seed) {
  if (trials == 0) throw DomainError("proportion estimate requires trials >= 1");
  if (successes > trials) throw DomainError("successes exceed trials");
  const auto n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = kZ95 * kZ95;
  const double scale = 1.0 + z2 / n;
  const double center = (phat + z2 / (2.0 * n)) / scale;
  const double half = kZ95 / scale * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
  // The Wilson interval always contains phat; clamp away rounding at 0 and 1.
  const double low = std::min(phat, std::max(0.0, center - half));
  const double high = std::max(phat, std::min(1.0, center + half));
  return {phat, std::sqrt(phat * (1.0 - phat) / n), low, high, trials, seed};
}

MonteCarloEstimate estimate_expected_cover_time(const SparsityModel& model, std::uint64_t trials,
                                                std::uint64_t seed, const RunOptions& options) {
  if (trials < 2) throw DomainError("estimate_expected_cover_time requires trials >= 2");
  const auto samples = detail::run_trials<double>(trials, options.workers, [&](std::uint64_t i) {
    CounterStream stream(derive_seed(seed, i), StreamTag::kCoverTime);
    return static_cast<double>(sample_cover_time(model, stream, options.method));
  });
  return mean_estimate(samples, seed);
}

MonteCarloEstimate estimate_coverage_probability(const SparsityModel& model, std::uint64_t p,
                                                 std::uint64_t trials, std::uint64_t seed,
                                                 const RunOptions& options) {
  if (trials == 0) throw DomainError("estimate_coverage_probability requires trials >= 1");
  const auto hits = detail::run_trials<unsigned char>(trials, options.workers, [&](std::uint64_t i) {
    return static_cast<unsigned char>(sample_pattern_covers(model, p, derive_seed(seed, i)));
  });
  const std::uint64_t successes = std::accumulate(hits.begin(), hits.end(), std::uint64_t{0});
  return wilson_estimate(successes, trials, seed);
}

PhaseCurve phase_sweep(const SparsityModel& model, std::uint64_t p_min, std::uint64_t p_max,
                       std::uint64_t trials, std::uint64_t seed, const RunOptions& options) {
  if (p_min > p_max) throw DomainError("phase_sweep requires p_min <= p_max");
  if (trials == 0) throw DomainError("phase_sweep requires trials >= 1");
  PhaseCurve curve{model, {}};
  curve.points.reserve(p_max - p_min + 1);
  for (std::uint64_t p = p_min; p <= p_max; ++p) {
    curve.points.push_back({p,
                            estimate_coverage_probability(model, p, trials, derive_seed(seed, p), options),
                            coverage_probability(model, p)});
  }
  return curve;
}

}  // namespace rowcover
