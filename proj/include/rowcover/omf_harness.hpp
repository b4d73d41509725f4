#pragma once

// Concrete instances Y = V X with V orthogonal and X Bernoulli-sparse, and
// the row-coverage check on X.

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <vector>

#include "rowcover/montecarlo.hpp"
#include "rowcover/random_stream.hpp"
#include "rowcover/sparsity_model.hpp"

namespace rowcover {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar = double>
struct OmfInstance {
  std::uint64_t n;
  std::uint64_t p;
  double theta;
  MatrixX<Scalar> v;  // n x n, orthogonal
  MatrixX<Scalar> x;  // n x p, sparse
  MatrixX<Scalar> y;  // n x p, V X
  std::uint64_t seed;
};

struct CoverageReport {
  bool covered;
  std::vector<Eigen::Index> uncovered_rows;
  std::vector<Eigen::Index> nonzeros_per_row;
};

/// Haar-distributed orthogonal matrix: QR of a standard Gaussian matrix with
/// the sign of each column fixed so that R has a positive diagonal.
template <typename Scalar = double>
MatrixX<Scalar> random_orthogonal(std::uint64_t n, std::uint64_t seed) {
  if (n == 0) throw DomainError("random_orthogonal requires n >= 1");
  const auto size = static_cast<Eigen::Index>(n);
  CounterStream stream(seed, StreamTag::kOrthogonal);
  std::normal_distribution<double> normal;
  MatrixX<Scalar> gaussian(size, size);
  for (Eigen::Index j = 0; j < size; ++j) {
    for (Eigen::Index i = 0; i < size; ++i) gaussian(i, j) = static_cast<Scalar>(normal(stream));
  }
  Eigen::HouseholderQR<MatrixX<Scalar>> qr(gaussian);
  MatrixX<Scalar> q = qr.householderQ();
  const MatrixX<Scalar>& packed = qr.matrixQR();
  for (Eigen::Index j = 0; j < size; ++j) {
    if (packed(j, j) < Scalar(0)) q.col(j) = -q.col(j);
  }
  return q;
}

/// n x p matrix with the pattern of sample_pattern(model, p, seed) and
/// standard normal values on the nonzeros.
template <typename Scalar = double>
MatrixX<Scalar> sample_sparse_matrix(const SparsityModel& model, std::uint64_t p,
                                     std::uint64_t seed) {
  if (p == 0) throw DomainError("sample_sparse_matrix requires p >= 1");
  const Pattern pattern = sample_pattern(model, p, seed);
  CounterStream values(seed, StreamTag::kValues);
  std::normal_distribution<double> normal;
  MatrixX<Scalar> x = MatrixX<Scalar>::Zero(pattern.rows(), pattern.cols());
  for (Eigen::Index j = 0; j < pattern.cols(); ++j) {
    for (Eigen::Index i = 0; i < pattern.rows(); ++i) {
      if (!pattern(i, j)) continue;
      double value = 0.0;
      while (value == 0.0) value = normal(values);
      x(i, j) = static_cast<Scalar>(value);
    }
  }
  return x;
}

template <typename Scalar = double>
OmfInstance<Scalar> assemble_instance(std::uint64_t n, std::uint64_t p, double theta,
                                      std::uint64_t seed) {
  const SparsityModel model(n, theta);
  OmfInstance<Scalar> instance{n, p, theta, random_orthogonal<Scalar>(n, seed),
                               sample_sparse_matrix<Scalar>(model, p, seed), {}, seed};
  instance.y.noalias() = instance.v * instance.x;
  return instance;
}

/// Exact zero test on every entry.
template <typename Derived>
CoverageReport row_coverage_check(const Eigen::MatrixBase<Derived>& x) {
  if (x.size() == 0) throw DomainError("row_coverage_check requires a nonempty matrix");
  CoverageReport report{true, {}, {}};
  report.nonzeros_per_row.reserve(static_cast<std::size_t>(x.rows()));
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const Eigen::Index count = (x.row(i).array() != 0).count();
    report.nonzeros_per_row.push_back(count);
    if (count == 0) report.uncovered_rows.push_back(i);
  }
  report.covered = report.uncovered_rows.empty();
  return report;
}

/// max |V^T V - I|.
template <typename Derived>
typename Derived::Scalar orthogonality_error(const Eigen::MatrixBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  const MatrixX<Scalar> gram = v.transpose() * v;
  return (gram - MatrixX<Scalar>::Identity(v.cols(), v.cols())).cwiseAbs().maxCoeff();
}

/// ||V^T Y - X||_F.
template <typename Scalar>
Scalar recovery_residual(const OmfInstance<Scalar>& instance) {
  return (instance.v.transpose() * instance.y - instance.x).norm();
}

/// ||Y - V X||_F.
template <typename Scalar>
Scalar product_residual(const OmfInstance<Scalar>& instance) {
  return (instance.y - instance.v * instance.x).norm();
}

/// | ||Y||_F - ||X||_F |.
template <typename Scalar>
Scalar norm_gap(const OmfInstance<Scalar>& instance) {
  using std::abs;
  return abs(instance.y.norm() - instance.x.norm());
}

/// Fraction of assembled instances whose X covers every row. Instance i uses
/// seed derive_seed(seed, i), so its pattern is the one estimate_coverage_probability
/// draws for trial i.
MonteCarloEstimate coverage_experiment(std::uint64_t n, double theta, std::uint64_t p,
                                       std::uint64_t trials, std::uint64_t seed,
                                       const RunOptions& options = {});

/// Plain-text dump: a header line "n p theta seed", then V, X and Y row by
/// row, one matrix row per line.
void write_instance(std::ostream& out, const OmfInstance<double>& instance);

/// Inverse of write_instance; recomputes nothing.
OmfInstance<double> read_instance(std::istream& in);

}  // namespace rowcover
