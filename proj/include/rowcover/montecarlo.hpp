#pragma once

// Seeded Monte Carlo estimates of the analytic coverage quantities.
//
// Trial i always draws from the stream derived from (seed, i) and results are
// reduced in trial order, so estimates are bit-identical for any worker count.

#include <Eigen/Core>
#include <algorithm>
#include <cstdint>
#include <span>
#include <thread>
#include <vector>

#include "rowcover/random_stream.hpp"
#include "rowcover/sparsity_model.hpp"

namespace rowcover {

/// Two-sided 95% normal quantile.
inline constexpr double kZ95 = 1.959963984540054;

struct MonteCarloEstimate {
  double mean;
  double std_error;
  double ci_low;   // 95%
  double ci_high;  // 95%
  std::uint64_t trials;
  std::uint64_t seed;

  bool contains(double value) const { return ci_low <= value && value <= ci_high; }
};

struct PhasePoint {
  std::uint64_t p;
  MonteCarloEstimate empirical;
  double analytic;
};

struct PhaseCurve {
  SparsityModel model;
  std::vector<PhasePoint> points;  // strictly increasing p
};

enum class CoverTimeMethod {
  kMaxOfGeometrics,  // one geometric draw per row
  kColumnScan,       // column-by-column simulation of the pattern
};

struct RunOptions {
  unsigned workers = 1;  // 0 selects std::thread::hardware_concurrency()
  CoverTimeMethod method = CoverTimeMethod::kMaxOfGeometrics;
};

/// Column-major indicator pattern; true marks a nonzero entry.
using Pattern = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

/// Fills an n x p pattern column by column from `stream`.
Pattern draw_pattern(const SparsityModel& model, std::uint64_t p, CounterStream& stream);

/// Pattern of the instance identified by `seed`.
Pattern sample_pattern(const SparsityModel& model, std::uint64_t p, std::uint64_t seed);

/// True when the pattern drawn for `seed` has no all-zero row. Consumes the
/// same draws as sample_pattern but stops once every row is covered.
bool sample_pattern_covers(const SparsityModel& model, std::uint64_t p, std::uint64_t seed);

/// Index of the first column at which every row has been nonzero.
std::uint64_t sample_cover_time(const SparsityModel& model, CounterStream& stream,
                                CoverTimeMethod method = CoverTimeMethod::kMaxOfGeometrics);

/// Sample mean with a normal-approximation 95% interval. Needs >= 2 samples.
MonteCarloEstimate mean_estimate(std::span<const double> samples, std::uint64_t seed);

/// Proportion with a 95% Wilson score interval.
MonteCarloEstimate wilson_estimate(std::uint64_t successes, std::uint64_t trials,
                                   std::uint64_t seed);

MonteCarloEstimate estimate_expected_cover_time(const SparsityModel& model, std::uint64_t trials,
                                                std::uint64_t seed, const RunOptions& options = {});

MonteCarloEstimate estimate_coverage_probability(const SparsityModel& model, std::uint64_t p,
                                                 std::uint64_t trials, std::uint64_t seed,
                                                 const RunOptions& options = {});

/// One coverage estimate per p in [p_min, p_max]; point p uses the seed
/// derive_seed(seed, p).
PhaseCurve phase_sweep(const SparsityModel& model, std::uint64_t p_min, std::uint64_t p_max,
                       std::uint64_t trials, std::uint64_t seed, const RunOptions& options = {});

namespace detail {

inline unsigned resolve_workers(unsigned requested, std::uint64_t trials) {
  unsigned workers = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
  if (trials < workers) workers = static_cast<unsigned>(std::max<std::uint64_t>(trials, 1));
  return workers;
}

/// Evaluates trial(i) for every i in [0, trials) over contiguous chunks.
template <typename Result, typename TrialFn>
std::vector<Result> run_trials(std::uint64_t trials, unsigned requested_workers, TrialFn trial) {
  std::vector<Result> results(trials);
  const unsigned workers = resolve_workers(requested_workers, trials);
  auto run_range = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i) results[i] = trial(i);
  };
  if (workers <= 1) {
    run_range(0, trials);
    return results;
  }
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::uint64_t chunk = (trials + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t begin = std::min<std::uint64_t>(trials, w * chunk);
      const std::uint64_t end = std::min<std::uint64_t>(trials, begin + chunk);
      pool.emplace_back(run_range, begin, end);
    }
  }  // joins
  return results;
}

}  // namespace detail

}  // namespace rowcover
