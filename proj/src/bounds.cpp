#include "rowcover/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "rowcover/coverage_math.hpp"
#include "rowcover/numerics.hpp"

namespace rowcover {

namespace {

void require_log_defined(const SparsityModel& model, const char* op) {
  if (model.degenerate()) {
    throw DomainError(std::string(op) + " is undefined at theta = 1");
  }
}

}  // namespace

double simple_lower_bound(const SparsityModel& model) {
  const auto nd = static_cast<double>(model.n());
  return nd / detail::one_minus_pow_one_minus(model.theta(), nd);
}

double theorem_bound(const SparsityModel& model) {
  const double log_branch = std::log(static_cast<double>(model.n())) / model.theta();
  return std::max(simple_lower_bound(model), log_branch);
}

double digamma_bound(const SparsityModel& model) {
  require_log_defined(model, "digamma_bound");
  const double numerator = euler_gamma() + digamma_psi0(model.n());
  return static_cast<double>(model.n()) - numerator / std::log1p(-model.theta());
}

double digamma_approx_bound(const SparsityModel& model) {
  require_log_defined(model, "digamma_approx_bound");
  const double numerator = euler_gamma() + digamma_lower_estimate(model.n());
  return static_cast<double>(model.n()) - numerator / std::log1p(-model.theta());
}

SmallThetaBound small_theta_bound(const SparsityModel& model) {
  require_log_defined(model, "small_theta_bound");
  const auto nd = static_cast<double>(model.n());
  const double value = nd + (euler_gamma() + std::log(nd + 1.0)) / model.theta();
  return {value, model.theta() > kSmallThetaRegimeLimit};
}

BoundReport bound_report(const SparsityModel& model) {
  const CoverTimeSummary summary = exact_expected_cover_time(model);
  BoundReport report{
      .model = model,
      .theorem_bound = theorem_bound(model),
      .simple_lower_bound = simple_lower_bound(model),
      .digamma_bound = std::nullopt,
      .digamma_approx_bound = std::nullopt,
      .small_theta_bound = std::nullopt,
      .small_theta_outside_regime = model.theta() > kSmallThetaRegimeLimit,
      .phase_sum = summary.phase_sum,
      .exact_expectation = summary.exact_expectation,
  };
  if (!model.degenerate()) {
    report.digamma_bound = digamma_bound(model);
    report.digamma_approx_bound = digamma_approx_bound(model);
    report.small_theta_bound = small_theta_bound(model).value;
  }
  return report;
}

}  // namespace rowcover
