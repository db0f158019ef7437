#pragma once

#include <cstdint>

#include "matsamp/ensemble.hpp"
#include "matsamp/samplers.hpp"

namespace matsamp {

/// One-sided 99.99% standard-normal quantile, used by the Wilson upper
/// confidence limit that keeps Monte Carlo bound checks non-flaky.
inline constexpr double kWilsonZ = 3.7190164854557088;

/// Parameters of the operator-Bernstein tail bound. V = m * sigma0sq is
/// stored at construction so the invariant holds exactly.
struct BernsteinParams {
  Eigen::Index n = 0;
  std::size_t m = 0;
  double c = 0.0;
  double sigma0sq = 0.0;
  double V = 0.0;

  BernsteinParams(Eigen::Index n, std::size_t m, double c, double sigma0sq);
};

/// Constants of the ensemble packaged for an m-fold sum.
BernsteinParams bernstein_params(const MatrixEnsemble& e, std::size_t m);

/// The two-branch tail bound on Pr[||S|| > t]:
///   2n exp(-t^2 / (4V))  for t <= 2V/c,
///   2n exp(-t / (2c))    for larger t.
/// The raw value is returned even when it exceeds 1. With c = 0 the sum is
/// deterministic; t > 0 is then a domain error and t = 0 returns 2n.
double bernstein_bound(const BernsteinParams& p, double t);

/// Wilson score upper confidence limit at one-sided 99.99% for a binomial
/// proportion of `successes` out of `trials`.
double wilson_upper_bound(std::size_t successes, std::size_t trials);

/// Empirical estimate of Pr[||S|| > t] with the matching theoretical bound.
struct TailReport {
  double t = 0.0;
  double empirical_tail = 0.0;
  std::size_t trials = 0;
  double theoretical_bound = 0.0;
  SampleMode mode = SampleMode::WithReplacement;
  std::uint64_t seed = 0;
  double wilson_upper = 0.0;
};

/// Monte Carlo tail estimate over independent draws of the m-fold sum.
/// Requires a centered ensemble and mode iid or noreplace; per-trial seeds
/// are derived from `seed`, so the result is independent of `workers`.
TailReport empirical_tail(const MatrixEnsemble& e, std::size_t m, SampleMode mode, double t,
                          std::size_t trials, std::uint64_t seed, int workers = 1);

struct MgfEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

/// Monte Carlo mean of tr exp(scale * S) with its standard error.
MgfEstimate empirical_mgf(const MatrixEnsemble& e, std::size_t m, SampleMode mode, double scale,
                          std::size_t trials, std::uint64_t seed, int workers = 1);

/// Enumeration guard for exact_mgf: number of equiprobable sample vectors.
inline constexpr std::uint64_t kExactMgfMaxOutcomes = 1000000;

/// Whether exact_mgf will accept the instance.
bool exact_mgf_within_guard(std::size_t size, std::size_t m, SampleMode mode);

/// Exact E[tr exp(scale * S)] by enumerating all equiprobable sample
/// vectors of the given mode.
double exact_mgf(const MatrixEnsemble& e, std::size_t m, SampleMode mode, double scale);

}  // namespace matsamp
