#include "rowcover/coverage_math.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "rowcover/numerics.hpp"

namespace rowcover {

using detail::one_minus_pow_one_minus;
using detail::pow_one_minus;

double classic_harmonic_sum(std::uint64_t n) {
  if (n == 0) throw DomainError("classic_harmonic_sum requires n >= 1");
  const auto nd = static_cast<double>(n);
  double total = 0.0;
  // Largest terms last.
  for (std::uint64_t k = 0; k < n; ++k) {
    total += 1.0 / (1.0 - static_cast<double>(k) / nd);
  }
  return total;
}

namespace {

// Sum_{r=0}^{k} C(k,r) theta^r (1-theta)^(n-r), term by term.
double inner_binomial_sum(std::uint64_t n, std::uint64_t k, double theta) {
  if (theta == 1.0) {
    // Only r = n survives, and r <= k < n here.
    return 0.0;
  }
  const double log_q = std::log1p(-theta);
  const double first = pow_one_minus(theta, static_cast<double>(n));
  if (first > std::numeric_limits<double>::min() * 1e20) {
    const double ratio = theta / (1.0 - theta);
    double term = first;
    double sum = term;
    for (std::uint64_t r = 0; r < k; ++r) {
      term *= static_cast<double>(k - r) / static_cast<double>(r + 1) * ratio;
      sum += term;
    }
    return sum;
  }
  // (1-theta)^n underflows: carry the terms in log space.
  const double log_ratio = std::log(theta) - log_q;
  double log_term = static_cast<double>(n) * log_q;
  double sum = std::exp(log_term);
  for (std::uint64_t r = 0; r < k; ++r) {
    log_term += std::log(static_cast<double>(k - r) / static_cast<double>(r + 1)) + log_ratio;
    sum += std::exp(log_term);
  }
  return sum;
}

}  // namespace

double phase_sum_raw(const SparsityModel& model) {
  const std::uint64_t n = model.n();
  double total = 0.0;
  for (std::uint64_t k = 0; k < n; ++k) {
    total += 1.0 / (1.0 - inner_binomial_sum(n, k, model.theta()));
  }
  return total;
}

double phase_sum_expectation(const SparsityModel& model) {
  double total = 0.0;
  for (std::uint64_t k = model.n(); k >= 1; --k) {
    total += 1.0 / one_minus_pow_one_minus(model.theta(), static_cast<double>(k));
  }
  return total;
}

CoverTimeSummary exact_expected_cover_time(const SparsityModel& model, double tol) {
  if (!(tol > 0.0)) throw DomainError("exact_expected_cover_time requires tol > 0");
  CoverTimeSummary summary{};
  summary.phase_sum = phase_sum_expectation(model);
  summary.classic_reference = classic_harmonic_sum(model.n());
  if (model.degenerate()) {
    summary.exact_expectation = 1.0;
    summary.truncation_error_bound = 0.0;
    return summary;
  }

  const double theta = model.theta();
  const auto nd = static_cast<double>(model.n());
  const double log_q = std::log1p(-theta);
  auto tail_bound = [&](double last) {
    return nd * std::exp((last + 1.0) * log_q) / theta;
  };

  // Smallest T with n q^(T+1) / theta <= tol, then nudged for rounding.
  double last = std::ceil(std::log(tol * theta / nd) / log_q) - 1.0;
  if (last < 0.0) last = 0.0;
  while (last > 0.0 && tail_bound(last - 1.0) <= tol) last -= 1.0;
  while (tail_bound(last) > tol) last += 1.0;

  // Terms decrease in t; sum from the tail for accuracy.
  double total = 0.0;
  for (double t = last; t >= 1.0; t -= 1.0) {
    // log(1 - q^t), choosing the form without cancellation.
    const double uncovered_row = pow_one_minus(theta, t);
    const double log_covered_row = uncovered_row < 0.5
                                       ? std::log1p(-uncovered_row)
                                       : std::log(one_minus_pow_one_minus(theta, t));
    total += -std::expm1(nd * log_covered_row);
  }
  total += 1.0;  // t = 0: nothing is covered yet.
  summary.exact_expectation = total;
  summary.truncation_error_bound = tail_bound(last);
  return summary;
}

double inclusion_exclusion_expectation(const SparsityModel& model) {
  const std::uint64_t n = model.n();
  if (n > kInclusionExclusionMaxN) {
    throw DomainError("inclusion_exclusion_expectation: n = " + std::to_string(n) +
                      " exceeds " + std::to_string(kInclusionExclusionMaxN) +
                      " (alternating sum cancels); use tail-sum method");
  }
  // Extended precision keeps the cancellation error well below 1e-9 at n = 30.
  const long double theta = model.theta();
  const long double log_q = model.degenerate() ? 0.0L : std::log1p(-theta);
  long double binom = 1.0L;
  long double total = 0.0L;
  for (std::uint64_t k = 1; k <= n; ++k) {
    binom = binom * static_cast<long double>(n - k + 1) / static_cast<long double>(k);
    const long double denom =
        model.degenerate() ? 1.0L : -std::expm1(static_cast<long double>(k) * log_q);
    const long double term = binom / denom;
    total += (k % 2 == 1) ? term : -term;
  }
  return static_cast<double>(total);
}

double coverage_probability(const SparsityModel& model, std::uint64_t p) {
  if (p == 0) return 0.0;
  const double uncovered_row = pow_one_minus(model.theta(), static_cast<double>(p));
  const auto nd = static_cast<double>(model.n());
  if (uncovered_row == 0.0) return 1.0;
  if (detail::exact_complement(uncovered_row)) return std::pow(1.0 - uncovered_row, nd);
  return std::exp(nd * std::log1p(-uncovered_row));
}

double cover_time_pmf(const SparsityModel& model, std::uint64_t t) {
  if (t == 0) throw DomainError("cover_time_pmf requires t >= 1");
  const double mass = coverage_probability(model, t) - coverage_probability(model, t - 1);
  return mass < 0.0 ? 0.0 : mass;
}

std::uint64_t coverage_threshold(const SparsityModel& model, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw DomainError("coverage_threshold requires delta in (0, 1)");
  }
  const double target = 1.0 - delta;
  if (model.degenerate()) return 1;

  // (1 - q^p)^n >= 1 - delta  <=>  q^p <= 1 - (1 - delta)^(1/n).
  const double allowed_uncovered =
      -std::expm1(std::log1p(-delta) / static_cast<double>(model.n()));
  double guess = std::ceil(std::log(allowed_uncovered) / std::log1p(-model.theta()));
  if (!(guess >= 1.0)) guess = 1.0;
  auto p = static_cast<std::uint64_t>(guess);

  while (p > 1 && coverage_probability(model, p - 1) >= target) --p;
  while (coverage_probability(model, p) < target) ++p;
  return p;
}

}  // namespace rowcover
