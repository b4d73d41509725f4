#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rowcover {

/// Raised when an argument lies outside the domain of an operation.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Bernoulli sparsity model for an n x p matrix: every entry is nonzero
/// independently with probability theta.
class SparsityModel {
 public:
  SparsityModel(std::uint64_t n, double theta);

  std::uint64_t n() const { return n_; }
  double theta() const { return theta_; }
  bool degenerate() const { return theta_ == 1.0; }

  friend bool operator==(const SparsityModel&, const SparsityModel&) = default;

 private:
  std::uint64_t n_;
  double theta_;
};

std::string to_string(const SparsityModel& model);

}  // namespace rowcover
