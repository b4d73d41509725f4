#include "rowcover/omf_harness.hpp"

#include <iomanip>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>

namespace rowcover {

MonteCarloEstimate coverage_experiment(std::uint64_t n, double theta, std::uint64_t p,
                                       std::uint64_t trials, std::uint64_t seed,
                                       const RunOptions& options) {
  if (trials == 0) throw DomainError("coverage_experiment requires trials >= 1");
  const SparsityModel model(n, theta);
  if (p == 0) return wilson_estimate(0, trials, seed);
  const auto hits = detail::run_trials<unsigned char>(trials, options.workers, [&](std::uint64_t i) {
    const OmfInstance<double> instance = assemble_instance<double>(n, p, theta, derive_seed(seed, i));
    return static_cast<unsigned char>(row_coverage_check(instance.x).covered);
  });
  const std::uint64_t successes = std::accumulate(hits.begin(), hits.end(), std::uint64_t{0});
  return wilson_estimate(successes, trials, seed);
}

namespace {

void write_matrix(std::ostream& out, const MatrixX<double>& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ' ';
      out << m(i, j);
    }
    out << '\n';
  }
}

MatrixX<double> read_matrix(std::istream& in, std::uint64_t rows, std::uint64_t cols) {
  MatrixX<double> m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (!(in >> m(i, j))) throw DomainError("instance dump truncated");
    }
  }
  return m;
}

}  // namespace

void write_instance(std::ostream& out, const OmfInstance<double>& instance) {
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  out << instance.n << ' ' << instance.p << ' ' << instance.theta << ' ' << instance.seed << '\n';
  write_matrix(out, instance.v);
  write_matrix(out, instance.x);
  write_matrix(out, instance.y);
  out.flags(flags);
  out.precision(precision);
}

OmfInstance<double> read_instance(std::istream& in) {
  OmfInstance<double> instance{};
  if (!(in >> instance.n >> instance.p >> instance.theta >> instance.seed)) {
    throw DomainError("instance dump: malformed header");
  }
  instance.v = read_matrix(in, instance.n, instance.n);
  instance.x = read_matrix(in, instance.n, instance.p);
  instance.y = read_matrix(in, instance.n, instance.p);
  return instance;
}

}  // namespace rowcover
