#pragma once

// Exact quantities of the row-coverage process. Columns are drawn one at a
// time; each entry is nonzero with probability theta, so the cover time of
// an n-row pattern is the maximum of n i.i.d. geometric(theta) variables.

#include <cstdint>

#include "rowcover/sparsity_model.hpp"

namespace rowcover {

struct CoverTimeSummary {
  double exact_expectation;       // E[cover time], tail-sum evaluation
  double phase_sum;               // one discovery phase per newly found row
  double classic_reference;       // n * H_n, uniform single-coupon draws
  double truncation_error_bound;  // absolute bound on exact_expectation error
};

/// Sum_{k=0}^{n-1} 1 / (1 - k/n) = n * H_n. Throws DomainError for n = 0.
double classic_harmonic_sum(std::uint64_t n);

/// Phase sum with the inner binomial sum evaluated term by term:
///   Sum_{k=0}^{n-1} 1 / (1 - Sum_{r=0}^{k} C(k,r) theta^r (1-theta)^(n-r)).
double phase_sum_raw(const SparsityModel& model);

/// Collapsed phase sum, Sum_{k=1}^{n} 1 / (1 - (1-theta)^k).
double phase_sum_expectation(const SparsityModel& model);

/// Tail sum Sum_t P(T > t), truncated once n (1-theta)^(T+1) / theta <= tol.
CoverTimeSummary exact_expected_cover_time(const SparsityModel& model, double tol = 1e-10);

/// Largest n accepted by inclusion_exclusion_expectation.
inline constexpr std::uint64_t kInclusionExclusionMaxN = 30;

/// Alternating sum Sum_k (-1)^(k+1) C(n,k) / (1 - (1-theta)^k). Cross-check
/// only; throws DomainError for n > kInclusionExclusionMaxN.
double inclusion_exclusion_expectation(const SparsityModel& model);

/// P(no all-zero row in an n x p pattern) = (1 - (1-theta)^p)^n.
double coverage_probability(const SparsityModel& model, std::uint64_t p);

/// P(cover time = t) for t >= 1.
double cover_time_pmf(const SparsityModel& model, std::uint64_t t);

/// Smallest p with coverage_probability(model, p) >= 1 - delta.
std::uint64_t coverage_threshold(const SparsityModel& model, double delta);

}  // namespace rowcover
