#include "matsamp/bounds.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "matsamp/detail/enumeration.hpp"
#include "matsamp/detail/parallel.hpp"
#include "matsamp/rng.hpp"

namespace matsamp {

namespace {

void check_tail_preconditions(const MatrixEnsemble& e, std::size_t m, SampleMode mode,
                              std::size_t trials) {
  if (!e.centered()) {
    throw std::invalid_argument(
        "the bound assumes a centered ensemble (E[X] = 0); apply center_ensemble first");
  }
  if (mode == SampleMode::Bernoulli) {
    throw std::invalid_argument(
        "mode must be iid or noreplace; no bound is claimed for the Bernoulli model");
  }
  if (m < 1) {
    throw std::invalid_argument("m must be >= 1");
  }
  if (mode == SampleMode::WithoutReplacement && m > e.size()) {
    throw std::invalid_argument("m = " + std::to_string(m) +
                                " exceeds the ensemble size " + std::to_string(e.size()) +
                                " for sampling without replacement");
  }
  if (trials < 1) {
    throw std::invalid_argument("trials must be >= 1");
  }
}

SampleVector draw(SampleMode mode, std::size_t size, std::size_t m, std::uint64_t seed) {
  return mode == SampleMode::WithReplacement ? sample_with_replacement(size, m, seed)
                                             : sample_without_replacement(size, m, seed);
}

Eigen::MatrixXcd sum_of_draw(const MatrixEnsemble& e, const SampleVector& v) {
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(e.dim(), e.dim());
  for (const std::size_t idx : v.indices) s += e.members()[idx].entries();
  return s;
}

}  // namespace

BernsteinParams::BernsteinParams(Eigen::Index n_, std::size_t m_, double c_, double sigma0sq_)
    : n(n_), m(m_), c(c_), sigma0sq(sigma0sq_), V(static_cast<double>(m_) * sigma0sq_) {
  if (n < 1) throw std::invalid_argument("BernsteinParams: n must be >= 1");
  if (m < 1) throw std::invalid_argument("BernsteinParams: m must be >= 1");
  if (!(c >= 0.0)) throw std::invalid_argument("BernsteinParams: c must be >= 0");
  if (!(sigma0sq >= 0.0)) throw std::invalid_argument("BernsteinParams: sigma0^2 must be >= 0");
}

BernsteinParams bernstein_params(const MatrixEnsemble& e, std::size_t m) {
  return BernsteinParams(e.dim(), m, e.norm_bound_c(), e.variance_bound_sigma0sq());
}

double bernstein_bound(const BernsteinParams& p, double t) {
  if (!(t >= 0.0)) {
    throw std::invalid_argument("bernstein_bound: t must be >= 0");
  }
  const double two_n = 2.0 * static_cast<double>(p.n);
  if (t == 0.0) return two_n;
  if (p.c == 0.0 && p.V == 0.0) {
    throw std::domain_error(
        "bernstein_bound: degenerate ensemble (c = 0) makes the sum deterministic; no bound "
        "is defined for t > 0");
  }
  // c == 0 with V > 0 puts the crossover at infinity.
  if (p.c == 0.0 || t <= 2.0 * p.V / p.c) {
    return two_n * std::exp(-t * t / (4.0 * p.V));
  }
  return two_n * std::exp(-t / (2.0 * p.c));
}

double wilson_upper_bound(std::size_t successes, std::size_t trials) {
  if (trials < 1) {
    throw std::invalid_argument("wilson_upper_bound: trials must be >= 1");
  }
  if (successes > trials) {
    throw std::invalid_argument("wilson_upper_bound: successes exceed trials");
  }
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = kWilsonZ * kWilsonZ;
  const double center = p + z2 / (2.0 * n);
  const double spread = kWilsonZ * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  const double upper = (center + spread) / (1.0 + z2 / n);
  // roundoff must not push the limit below the point estimate or above 1
  return std::min(1.0, std::max(upper, p));
}

TailReport empirical_tail(const MatrixEnsemble& e, std::size_t m, SampleMode mode, double t,
                          std::size_t trials, std::uint64_t seed, int workers) {
  check_tail_preconditions(e, m, mode, trials);
  std::vector<std::uint8_t> exceeded(trials, 0);
  detail::parallel_for(trials, workers, [&](std::size_t i) {
    const SampleVector v = draw(mode, e.size(), m, derive_seed(seed, "tail-trial", i));
    exceeded[i] = detail::operator_norm_of(sum_of_draw(e, v)) > t ? 1 : 0;
  });
  std::size_t count = 0;
  for (const std::uint8_t x : exceeded) count += x;

  TailReport report;
  report.t = t;
  report.empirical_tail = static_cast<double>(count) / static_cast<double>(trials);
  report.trials = trials;
  // Negative thresholds are vacuous (every norm exceeds them); the bound
  // column reports the t = 0 value 2n. A degenerate ensemble (c = 0) has a
  // deterministic sum and no claimed bound for t > 0: report infinity.
  const BernsteinParams params = bernstein_params(e, m);
  report.theoretical_bound = (params.c == 0.0 && params.V == 0.0 && t > 0.0)
                                 ? std::numeric_limits<double>::infinity()
                                 : bernstein_bound(params, std::max(t, 0.0));
  report.mode = mode;
  report.seed = seed;
  report.wilson_upper = wilson_upper_bound(count, trials);
  return report;
}

MgfEstimate empirical_mgf(const MatrixEnsemble& e, std::size_t m, SampleMode mode, double scale,
                          std::size_t trials, std::uint64_t seed, int workers) {
  check_tail_preconditions(e, m, mode, trials);
  std::vector<double> values(trials, 0.0);
  detail::parallel_for(trials, workers, [&](std::size_t i) {
    const SampleVector v = draw(mode, e.size(), m, derive_seed(seed, "mgf-trial", i));
    values[i] = detail::trace_exp_of(sum_of_draw(e, v), scale);
  });

  detail::KahanSum sum;
  for (const double x : values) sum.add(x);
  const double mean = sum.value() / static_cast<double>(trials);

  MgfEstimate out;
  out.estimate = mean;
  if (trials > 1) {
    detail::KahanSum sq;
    for (const double x : values) sq.add((x - mean) * (x - mean));
    const double variance = sq.value() / static_cast<double>(trials - 1);
    out.std_error = std::sqrt(variance / static_cast<double>(trials));
  }
  return out;
}

bool exact_mgf_within_guard(std::size_t size, std::size_t m, SampleMode mode) {
  if (mode == SampleMode::WithReplacement) {
    return detail::clamped_power(size, m, kExactMgfMaxOutcomes) <= kExactMgfMaxOutcomes;
  }
  if (mode == SampleMode::WithoutReplacement) {
    return m <= size &&
           detail::clamped_falling_factorial(size, m, kExactMgfMaxOutcomes) <= kExactMgfMaxOutcomes;
  }
  return false;
}

double exact_mgf(const MatrixEnsemble& e, std::size_t m, SampleMode mode, double scale) {
  if (mode == SampleMode::Bernoulli) {
    throw std::invalid_argument(
        "exact_mgf: mode must be iid or noreplace; the Bernoulli model has no fixed sample "
        "count");
  }
  if (m < 1) {
    throw std::invalid_argument("exact_mgf: m must be >= 1");
  }
  if (mode == SampleMode::WithoutReplacement && m > e.size()) {
    throw std::invalid_argument("exact_mgf: m = " + std::to_string(m) +
                                " exceeds the ensemble size " + std::to_string(e.size()) +
                                " for sampling without replacement");
  }
  if (!exact_mgf_within_guard(e.size(), m, mode)) {
    std::ostringstream msg;
    msg << "exact_mgf: |C| = " << e.size() << ", m = " << m << " yields more than "
        << kExactMgfMaxOutcomes << " sample vectors; use empirical_mgf instead";
    throw std::domain_error(msg.str());
  }

  const Eigen::Index n = e.dim();
  detail::KahanSum sum;
  std::uint64_t count = 0;
  const auto accumulate = [&](const std::vector<std::size_t>& indices) {
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(n, n);
    for (const std::size_t idx : indices) s += e.members()[idx].entries();
    sum.add(detail::trace_exp_of(s, scale));
    ++count;
  };
  if (mode == SampleMode::WithReplacement) {
    detail::for_each_tuple(e.size(), m, accumulate);
  } else {
    detail::for_each_ordered_subset(e.size(), m, accumulate);
  }
  return sum.value() / static_cast<double>(count);
}

}  // namespace matsamp
