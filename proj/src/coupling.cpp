#include "matsamp/coupling.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "matsamp/detail/enumeration.hpp"
#include "matsamp/rng.hpp"

namespace matsamp {

namespace {

void check_coupling_domain(const SampleVector& y, std::size_t c_size) {
  const std::size_t m = y.indices.size();
  if (m < 1) {
    throw std::invalid_argument("coupling: the draw y must be nonempty");
  }
  if (y.ensemble_size != c_size) {
    throw std::invalid_argument("coupling: y was drawn from a set of size " +
                                std::to_string(y.ensemble_size) + ", |C| given as " +
                                std::to_string(c_size));
  }
  if (m > c_size) {
    throw std::invalid_argument("coupling: draw length " + std::to_string(m) +
                                " exceeds |C| = " + std::to_string(c_size));
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (y.indices[i] >= c_size) {
      throw std::invalid_argument("coupling: component " + std::to_string(y.indices[i]) +
                                  " out of range [0, " + std::to_string(c_size) + ")");
    }
    for (std::size_t j = i + 1; j < m; ++j) {
      if (y.indices[i] == y.indices[j]) {
        throw std::domain_error(
            "coupling: y has duplicate components (positions " + std::to_string(i) + " and " +
            std::to_string(j) + "); Z is defined only on vectors with pairwise distinct entries");
      }
    }
  }
}

void check_enumeration_guard(std::size_t c_size, std::size_t m, std::size_t max_set,
                             std::size_t max_draw, const char* what) {
  if (c_size > max_set || m > max_draw) {
    std::ostringstream msg;
    msg << what << ": instance |C| = " << c_size << ", m = " << m
        << " exceeds the exhaustive-enumeration guard (|C| <= " << max_set << ", m <= " << max_draw
        << ")";
    throw std::domain_error(msg.str());
  }
}

// Walks every branch of Z on the fixed draw y. visit(outcome, probability)
// receives each leaf with its exact conditional probability given y.
void for_each_branch(const std::vector<std::size_t>& y, std::size_t c_size,
                     std::vector<std::size_t>& drawn, std::vector<std::size_t>& outcome,
                     const Rational& prob,
                     const std::function<void(const std::vector<std::size_t>&, const Rational&)>&
                         visit) {
  const std::size_t m = y.size();
  if (outcome.size() == m) {
    visit(outcome, prob);
    return;
  }
  const long long c = static_cast<long long>(c_size);
  const long long d = static_cast<long long>(drawn.size());
  // Rule 1: probability |D_k|/|C| in total, uniform over D_k. Index-based
  // loop: deeper recursion grows and shrinks `drawn`, which may reallocate.
  for (std::size_t di = 0; di < static_cast<std::size_t>(d); ++di) {
    outcome.push_back(drawn[di]);
    for_each_branch(y, c_size, drawn, outcome, prob * Rational(d, c) * Rational(1, d), visit);
    outcome.pop_back();
  }
  // Rule 2: probability 1 - |D_k|/|C| in total, uniform over the fresh
  // y-values.
  const long long fresh_count = static_cast<long long>(m) - d;
  for (const std::size_t v : y) {
    if (std::find(drawn.begin(), drawn.end(), v) != drawn.end()) continue;
    drawn.push_back(v);
    outcome.push_back(v);
    for_each_branch(y, c_size, drawn, outcome,
                    prob * Rational(c - d, c) * Rational(1, fresh_count), visit);
    outcome.pop_back();
    drawn.pop_back();
  }
}

}  // namespace

std::string to_string(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational ExactDistribution::total_mass() const {
  Rational mass(0);
  for (const auto& [outcome, p] : support) mass += p;
  return mass;
}

Rational ExactDistribution::uniform_probability() const {
  Rational p(1);
  for (std::size_t i = 0; i < m; ++i) p /= static_cast<long long>(c_size);
  return p;
}

CouplingTrace run_coupling(const SampleVector& y, std::size_t c_size, std::uint64_t seed) {
  check_coupling_domain(y, c_size);
  const std::size_t m = y.indices.size();
  Rng rng(derive_seed(seed, "coupling"));
  CouplingTrace trace{y, {}, {}};
  trace.steps.reserve(m);
  trace.output_z.reserve(m);
  std::vector<std::size_t> drawn;
  for (std::size_t k = 0; k < m; ++k) {
    CouplingStep step;
    step.already_drawn = drawn;
    const std::size_t rule_draw = rng.next_below(c_size);
    if (rule_draw < drawn.size()) {
      step.rule_taken = CouplingRule::FromDrawn;
      step.chosen = drawn[rng.next_below(drawn.size())];
    } else {
      step.rule_taken = CouplingRule::FromFresh;
      std::vector<std::size_t> fresh;
      fresh.reserve(m - drawn.size());
      for (const std::size_t v : y.indices) {
        if (std::find(drawn.begin(), drawn.end(), v) == drawn.end()) fresh.push_back(v);
      }
      step.chosen = fresh[rng.next_below(fresh.size())];
      drawn.push_back(step.chosen);
    }
    trace.output_z.push_back(step.chosen);
    trace.steps.push_back(std::move(step));
  }
  return trace;
}

ExactDistribution exact_coupling_distribution(std::size_t c_size, std::size_t m) {
  if (m < 1 || c_size < 1 || m > c_size) {
    throw std::invalid_argument("exact_coupling_distribution: need 1 <= m <= |C|, got m = " +
                                std::to_string(m) + ", |C| = " + std::to_string(c_size));
  }
  check_enumeration_guard(c_size, m, kCouplingMaxSetSize, kCouplingMaxDraw,
                          "exact_coupling_distribution");
  const std::uint64_t draws =
      detail::clamped_falling_factorial(c_size, m, std::uint64_t{1} << 32);
  const Rational y_weight(1, static_cast<long long>(draws));

  ExactDistribution dist{c_size, m, {}};
  detail::for_each_ordered_subset(c_size, m, [&](const std::vector<std::size_t>& y) {
    std::vector<std::size_t> drawn;
    std::vector<std::size_t> outcome;
    for_each_branch(y, c_size, drawn, outcome, y_weight,
                    [&](const std::vector<std::size_t>& z, const Rational& p) {
                      dist.support[z] += p;
                    });
  });
  return dist;
}

CouplingRule classify_candidate(const CouplingTrace& prefix, std::size_t candidate) {
  for (const std::size_t v : prefix.output_z) {
    if (v == candidate) return CouplingRule::FromDrawn;
  }
  return CouplingRule::FromFresh;
}

Rational conditional_step_probability(const CouplingTrace& prefix, std::size_t candidate) {
  const SampleVector& y = prefix.input_y;
  check_coupling_domain(y, y.ensemble_size);
  const std::size_t m = y.indices.size();
  if (prefix.output_z.size() != prefix.steps.size()) {
    throw std::invalid_argument("conditional_step_probability: inconsistent trace prefix");
  }
  if (prefix.steps.size() >= m) {
    throw std::invalid_argument(
        "conditional_step_probability: prefix already covers all " + std::to_string(m) +
        " steps; no next step exists");
  }
  for (const std::size_t v : prefix.output_z) {
    if (std::find(y.indices.begin(), y.indices.end(), v) == y.indices.end()) {
      throw std::invalid_argument("conditional_step_probability: prefix value " +
                                  std::to_string(v) + " is not a component of y");
    }
  }
  if (std::find(y.indices.begin(), y.indices.end(), candidate) == y.indices.end()) {
    throw std::invalid_argument("conditional_step_probability: candidate " +
                                std::to_string(candidate) +
                                " is not a component of y");
  }

  // D_k = distinct values seen in the prefix.
  std::vector<std::size_t> d_k;
  for (const std::size_t v : prefix.output_z) {
    if (std::find(d_k.begin(), d_k.end(), v) == d_k.end()) d_k.push_back(v);
  }
  const long long c = static_cast<long long>(y.ensemble_size);
  const long long d = static_cast<long long>(d_k.size());
  if (classify_candidate(prefix, candidate) == CouplingRule::FromDrawn) {
    return Rational(d, c) * Rational(1, d);
  }
  // Fresh candidate: rule 2 fires with probability 1 - d/|C|, the chosen
  // fresh y-value is uniform over m - d alternatives, and the candidate is
  // one of those alternatives with probability (m - d)/(|C| - d), since the
  // prefix leaves the fresh y-values uniformly distributed over the |C| - d
  // unseen elements.
  const long long fresh = static_cast<long long>(m) - d;
  return Rational(c - d, c) * Rational(1, fresh) * Rational(fresh, c - d);
}

std::map<std::size_t, Rational> coupling_expectation_coefficients(const SampleVector& y,
                                                                  std::size_t c_size) {
  check_coupling_domain(y, c_size);
  check_enumeration_guard(c_size, y.indices.size(), kCouplingMaxSetSize, kCouplingMaxDraw,
                          "coupling_expectation_coefficients");
  std::map<std::size_t, Rational> coeff;
  for (const std::size_t v : y.indices) coeff[v] = Rational(0);
  std::vector<std::size_t> drawn;
  std::vector<std::size_t> outcome;
  for_each_branch(y.indices, c_size, drawn, outcome, Rational(1),
                  [&](const std::vector<std::size_t>& z, const Rational& p) {
                    for (const std::size_t v : z) coeff[v] += p;
                  });
  return coeff;
}

HermitianMatrix coupling_sum_expectation(const SampleVector& y, const MatrixEnsemble& e) {
  if (y.ensemble_size != e.size()) {
    throw std::invalid_argument("coupling_sum_expectation: y was drawn from a set of size " +
                                std::to_string(y.ensemble_size) + ", ensemble has " +
                                std::to_string(e.size()) + " members");
  }
  const auto coeff = coupling_expectation_coefficients(y, e.size());
  const Eigen::Index n = e.dim();
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& [value, weight] : coeff) {
    acc += boost::rational_cast<double>(weight) * e.members()[value].entries();
  }
  return HermitianMatrix(std::move(acc));
}

MgfComparison jensen_domination_check(const MatrixEnsemble& e, std::size_t m, double scale) {
  if (m < 1 || m > e.size()) {
    throw std::invalid_argument("jensen_domination_check: need 1 <= m <= |C|, got m = " +
                                std::to_string(m) + ", |C| = " + std::to_string(e.size()));
  }
  check_enumeration_guard(e.size(), m, kJensenMaxSetSize, kJensenMaxDraw,
                          "jensen_domination_check");
  const Eigen::Index n = e.dim();
  const auto trace_exp_of_sum = [&](const std::vector<std::size_t>& indices) {
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(n, n);
    for (const std::size_t idx : indices) s += e.members()[idx].entries();
    return detail::trace_exp_of(s, scale);
  };

  MgfComparison out;
  std::uint64_t tuple_count = 0;
  double acc = 0.0;
  detail::for_each_tuple(e.size(), m, [&](const std::vector<std::size_t>& x) {
    acc += trace_exp_of_sum(x);
    ++tuple_count;
  });
  out.with_replacement = acc / static_cast<double>(tuple_count);

  std::uint64_t subset_count = 0;
  acc = 0.0;
  detail::for_each_ordered_subset(e.size(), m, [&](const std::vector<std::size_t>& y) {
    acc += trace_exp_of_sum(y);
    ++subset_count;
  });
  out.without_replacement = acc / static_cast<double>(subset_count);
  return out;
}

}  // namespace matsamp
