#pragma once

// Closed-form bounds on the number of columns needed for row coverage, and
// the harmonic / digamma / log-series helpers used to derive them.
//
// The scalar helpers are templates so they can be evaluated in extended
// precision; any type with ADL-visible log/log1p works.

#include <cmath>
#include <cstdint>
#include <optional>
#include <type_traits>
#include <vector>

#include "rowcover/sparsity_model.hpp"

namespace rowcover {

template <typename Scalar = double>
Scalar euler_gamma() {
  if constexpr (std::is_floating_point_v<Scalar>) {
    return static_cast<Scalar>(0.577215664901532860606512090082402431L);
  } else {
    return Scalar("0.5772156649015328606065120900824024310421593359399235988057672348848677");
  }
}

/// H_n = Sum_{k=1}^{n} 1/k, summed smallest term first.
template <typename Scalar = double>
Scalar harmonic(std::uint64_t n) {
  if (n == 0) throw DomainError("harmonic requires n >= 1");
  Scalar total(0);
  for (std::uint64_t k = n; k >= 1; --k) total += Scalar(1) / Scalar(k);
  return total;
}

/// H_1 .. H_{n_max} by running sum; entry i holds H_{i+1}.
template <typename Scalar = double>
std::vector<Scalar> harmonic_sequence(std::uint64_t n_max) {
  std::vector<Scalar> out;
  out.reserve(n_max);
  Scalar total(0);
  for (std::uint64_t k = 1; k <= n_max; ++k) {
    total += Scalar(1) / Scalar(k);
    out.push_back(total);
  }
  return out;
}

/// psi(n + 1) through the integer identity psi(n + 1) = H_n - gamma.
template <typename Scalar = double>
Scalar digamma_psi0(std::uint64_t n) {
  if (n == 0) throw DomainError("digamma_psi0 requires n >= 1");
  return harmonic<Scalar>(n) - euler_gamma<Scalar>();
}

/// psi(2) .. psi(n_max + 1); entry i holds digamma_psi0(i + 1).
template <typename Scalar = double>
std::vector<Scalar> digamma_psi0_sequence(std::uint64_t n_max) {
  std::vector<Scalar> out = harmonic_sequence<Scalar>(n_max);
  const Scalar gamma = euler_gamma<Scalar>();
  for (auto& value : out) value -= gamma;
  return out;
}

/// Asymptotic lower estimate of psi(n + 1):
///   log(n+1) - 1/(2(n+1)) - 1/(12(n+1)^2).
template <typename Scalar = double>
Scalar digamma_lower_estimate(std::uint64_t n) {
  using std::log;
  const Scalar x = Scalar(n) + Scalar(1);
  return log(x) - Scalar(1) / (Scalar(2) * x) - Scalar(1) / (Scalar(12) * x * x);
}

/// theta + theta^2/2 + ... + theta^T/T, a partial sum of -log(1 - theta).
template <typename Scalar = double>
Scalar log1m_taylor(Scalar theta, std::uint64_t terms) {
  if (!(theta > Scalar(0) && theta < Scalar(1))) {
    throw DomainError("log1m_taylor requires theta in (0, 1)");
  }
  if (terms == 0) throw DomainError("log1m_taylor requires terms >= 1");
  std::vector<Scalar> parts;
  parts.reserve(terms);
  Scalar power = theta;
  for (std::uint64_t k = 1; k <= terms; ++k) {
    parts.push_back(power / Scalar(k));
    power *= theta;
  }
  Scalar total(0);
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) total += *it;
  return total;
}

/// Remainder bound for log1m_taylor: theta^(T+1) / ((T+1)(1 - theta)).
template <typename Scalar = double>
Scalar log1m_taylor_remainder_bound(Scalar theta, std::uint64_t terms) {
  using std::pow;
  const Scalar next = Scalar(terms) + Scalar(1);
  return pow(theta, next) / (next * (Scalar(1) - theta));
}

/// n / (1 - (1-theta)^n).
double simple_lower_bound(const SparsityModel& model);

/// max{ n / (1 - (1-theta)^n), ln(n) / theta }, hidden constant set to 1.
double theorem_bound(const SparsityModel& model);

/// n - (gamma + psi(n+1)) / ln(1 - theta). Throws DomainError at theta = 1.
double digamma_bound(const SparsityModel& model);

/// digamma_bound with psi(n+1) replaced by digamma_lower_estimate(n).
double digamma_approx_bound(const SparsityModel& model);

/// Above this theta the dropped factor 1 + theta/2 + ... is no longer ~1.
inline constexpr double kSmallThetaRegimeLimit = 0.1;

struct SmallThetaBound {
  double value;
  bool outside_regime;  // theta > kSmallThetaRegimeLimit
};

/// n + (gamma + ln(n+1)) / theta. A reference curve for small theta only;
/// throws DomainError at theta = 1.
SmallThetaBound small_theta_bound(const SparsityModel& model);

/// Every bound for one model. Fields that need ln(1 - theta) are empty at
/// theta = 1.
struct BoundReport {
  SparsityModel model;
  double theorem_bound;
  double simple_lower_bound;
  std::optional<double> digamma_bound;
  std::optional<double> digamma_approx_bound;
  std::optional<double> small_theta_bound;
  bool small_theta_outside_regime;
  double phase_sum;
  double exact_expectation;
};

BoundReport bound_report(const SparsityModel& model);

}  // namespace rowcover
