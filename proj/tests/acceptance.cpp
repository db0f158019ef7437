// Acceptance suite: one pass/fail line per criterion, each at its stated
// tolerance. Exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "matsamp/bounds.hpp"
#include "matsamp/coupling.hpp"
#include "matsamp/detail/enumeration.hpp"
#include "matsamp/ensemble.hpp"
#include "matsamp/hermitian.hpp"
#include "matsamp/rng.hpp"
#include "matsamp/samplers.hpp"
#include "matsamp/sampling_operator.hpp"

namespace fs = std::filesystem;
using namespace matsamp;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// --- 1: exact uniformity of the coupled law ---------------------------------

Outcome coupled_law_exactness() {
  Outcome out;
  std::size_t outcomes_checked = 0;
  for (std::size_t c = 2; c <= 5; ++c) {
    for (std::size_t m = 1; m <= std::min<std::size_t>(c, 3); ++m) {
      const ExactDistribution dist = exact_coupling_distribution(c, m);
      const Rational uniform = dist.uniform_probability();
      std::uint64_t expected_support = 1;
      for (std::size_t i = 0; i < m; ++i) expected_support *= c;
      if (dist.support.size() != expected_support || dist.total_mass() != Rational(1)) {
        out.pass = false;
      }
      for (const auto& [outcome, p] : dist.support) {
        if (p != uniform) out.pass = false;
        ++outcomes_checked;
      }
    }
  }
  out.detail = std::to_string(outcomes_checked) + " outcomes, all exactly 1/|C|^m";
  return out;
}

// --- 2: symmetrization identity ---------------------------------------------

Outcome symmetric_exactness() {
  Outcome out;
  std::size_t draws_checked = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 201; seed <= 205; ++seed) {
    const std::size_t c = 4 + static_cast<std::size_t>(seed % 3);  // sizes 4..6
    const MatrixEnsemble e = random_ensemble(2, c, seed);
    for (std::size_t m = 1; m <= std::min<std::size_t>(c, 4); ++m) {
      detail::for_each_ordered_subset(c, m, [&](const std::vector<std::size_t>& indices) {
        const SampleVector y{indices, SampleMode::WithoutReplacement, c, 0};
        const double err = max_entry_distance(coupling_sum_expectation(y, e),
                                              matrix_sum(realize(y, e)));
        worst = std::max(worst, err);
        if (err > 1e-12) out.pass = false;
        ++draws_checked;
      });
    }
  }
  std::ostringstream detail;
  detail << draws_checked << " draws over 5 ensembles, max entrywise error " << worst;
  out.detail = detail.str();
  return out;
}

// --- 3: conditional probability identity ------------------------------------

Outcome conditional_identity() {
  Outcome out;
  std::size_t pairs_checked = 0;
  for (std::size_t c = 2; c <= 6; ++c) {
    const std::size_t max_m = std::min<std::size_t>(c, 4);
    for (std::size_t m = 1; m <= max_m; ++m) {
      const Rational expected(1, static_cast<long long>(c));
      detail::for_each_ordered_subset(c, m, [&](const std::vector<std::size_t>& indices) {
        const SampleVector y{indices, SampleMode::WithoutReplacement, c, 0};
        // grow all z-prefixes of length 0 .. m-1 over the values of y
        std::vector<std::vector<std::size_t>> frontier{{}};
        for (std::size_t len = 0; len < m; ++len) {
          for (const auto& prefix : frontier) {
            CouplingTrace trace{y, {}, {}};
            std::vector<std::size_t> drawn;
            for (const std::size_t v : prefix) {
              CouplingStep step;
              step.already_drawn = drawn;
              const bool seen = std::find(drawn.begin(), drawn.end(), v) != drawn.end();
              step.rule_taken = seen ? CouplingRule::FromDrawn : CouplingRule::FromFresh;
              step.chosen = v;
              if (!seen) drawn.push_back(v);
              trace.steps.push_back(step);
              trace.output_z.push_back(v);
            }
            for (const std::size_t candidate : indices) {
              if (conditional_step_probability(trace, candidate) != expected) out.pass = false;
              ++pairs_checked;
            }
          }
          if (len + 1 < m) {
            std::vector<std::vector<std::size_t>> next;
            for (const auto& prefix : frontier) {
              for (const std::size_t v : indices) {
                auto grown = prefix;
                grown.push_back(v);
                next.push_back(std::move(grown));
              }
            }
            frontier = std::move(next);
          }
        }
      });
    }
  }
  out.detail = std::to_string(pairs_checked) + " (prefix, candidate) pairs, all exactly 1/|C|";
  return out;
}

// --- 4: exact MGF domination -------------------------------------------------

Outcome mgf_domination() {
  Outcome out;
  double worst_gap = -1e300;
  std::size_t checked = 0;
  for (std::uint64_t seed = 301; seed <= 305; ++seed) {
    const MatrixEnsemble e = random_ensemble(2, 4, seed);
    for (const std::size_t m : {2, 3}) {
      for (const double scale : {-2.0, -1.0, -0.5, -0.1, 0.1, 0.5, 1.0, 2.0}) {
        const double iid = exact_mgf(e, m, SampleMode::WithReplacement, scale);
        const double nor = exact_mgf(e, m, SampleMode::WithoutReplacement, scale);
        worst_gap = std::max(worst_gap, nor - iid);
        if (!(nor <= iid + 1e-10)) out.pass = false;
        ++checked;
      }
    }
  }
  std::ostringstream detail;
  detail << checked << " instances, max (noreplace - iid) = " << worst_gap;
  out.detail = detail.str();
  return out;
}

// --- 5: Monte Carlo tails against the bound ----------------------------------

Outcome theorem_monte_carlo() {
  Outcome out;
  const std::vector<MatrixEnsemble> ensembles = {
      random_ensemble(2, 6, 101), random_ensemble(2, 6, 102), random_ensemble(3, 6, 103)};
  std::size_t nontrivial = 0;
  std::size_t total = 0;
  double worst_margin = -1e300;
  for (std::size_t ei = 0; ei < ensembles.size(); ++ei) {
    const MatrixEnsemble& e = ensembles[ei];
    for (const std::size_t m : {3, 5}) {
      const double ceiling = static_cast<double>(m) * e.norm_bound_c();
      for (const SampleMode mode :
           {SampleMode::WithReplacement, SampleMode::WithoutReplacement}) {
        for (int j = 1; j <= 8; ++j) {
          const double t = ceiling * static_cast<double>(j) / 8.0;
          const TailReport r = empirical_tail(
              e, m, mode, t, 10000, derive_seed(900 + ei, to_string(mode), 10 * m + j), 4);
          ++total;
          if (r.theoretical_bound <= 1.0) {
            ++nontrivial;
            worst_margin = std::max(worst_margin, r.wilson_upper - r.theoretical_bound);
            if (r.wilson_upper > r.theoretical_bound) out.pass = false;
          }
        }
      }
    }
  }
  std::ostringstream detail;
  detail << nontrivial << " of " << total
         << " grid points have bound <= 1; max wilson - bound = " << worst_margin;
  out.detail = detail.str();
  return out;
}

// --- 6: branch continuity ------------------------------------------------------

Outcome branch_continuity() {
  Outcome out;
  Rng rng(606);
  double worst = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng.next_below(16));
    const std::size_t m = 1 + rng.next_below(50);
    const double c = 0.1 + 9.9 * rng.next_double();
    const double sigma0sq = 0.01 + 9.99 * rng.next_double();
    const BernsteinParams p(n, m, c, sigma0sq);
    const double crossover = 2.0 * p.V / p.c;
    const double eq2 = 2.0 * n * std::exp(-crossover * crossover / (4.0 * p.V));
    const double eq3 = 2.0 * n * std::exp(-crossover / (2.0 * p.c));
    worst = std::max(worst, std::abs(eq2 - eq3));
    if (std::abs(eq2 - eq3) > 1e-12) out.pass = false;
  }
  std::ostringstream detail;
  detail << "100 parameter tuples, max |Eq2 - Eq3| at the crossover = " << worst;
  out.detail = detail.str();
  return out;
}

// --- 7: projection property ---------------------------------------------------

Outcome projection_property() {
  Outcome out;
  std::size_t checked = 0;
  double worst = 0.0;
  for (const Eigen::Index n : {2, 3, 4}) {
    const HermitianBasis basis = build_basis(n);
    const std::size_t full = basis.size();
    for (const std::size_t m :
         {std::size_t{1}, static_cast<std::size_t>(n), full}) {
      for (std::uint64_t rep = 0; rep < 100; ++rep) {
        const SampleVector v =
            sample_without_replacement(full, m, derive_seed(700, "proj", 1000 * n + rep + m));
        const Eigen::MatrixXd p = superoperator_matrix(v, basis);
        const double idempotency = (p * p - p).cwiseAbs().maxCoeff();
        worst = std::max(worst, idempotency);
        if (idempotency > 1e-10) out.pass = false;
        if (diagnose_sampling_operator(v, n).norm != 1.0) out.pass = false;
        ++checked;
      }
    }
  }
  std::ostringstream detail;
  detail << checked << " draws, max ||P^2 - P|| = " << worst << ", every norm exactly 1";
  out.detail = detail.str();
  return out;
}

// --- 8: worst-case norm ---------------------------------------------------------

Outcome worst_case_norm() {
  Outcome out;
  std::size_t checked = 0;
  for (const Eigen::Index n : {2, 3, 4}) {
    const std::size_t full = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    for (const std::size_t m : {std::size_t{1}, std::size_t{3}, full}) {
      for (std::size_t a = 0; a < full; a += 2) {
        const SampleVector forced{std::vector<std::size_t>(m, a), SampleMode::WithReplacement,
                                  full, 0};
        const double norm = diagnose_sampling_operator(forced, n).norm;
        if (std::abs(norm - static_cast<double>(m)) > 1e-9) out.pass = false;
        ++checked;
      }
    }
    for (std::uint64_t rep = 0; rep < 200; ++rep) {
      const std::size_t m = full;
      const SampleVector v =
          sample_with_replacement(full, m, derive_seed(800, "worst", 100 * n + rep));
      if (diagnose_sampling_operator(v, n).norm > static_cast<double>(m) + 1e-9) {
        out.pass = false;
      }
      ++checked;
    }
  }
  out.detail = std::to_string(checked) +
               " draws: forced repeats reach ||(m/n^2)R|| = m, none exceed it";
  return out;
}

// --- 9: completeness ------------------------------------------------------------

Outcome basis_completeness() {
  Outcome out;
  Rng rng(909);
  double worst = 0.0;
  for (const Eigen::Index n : {2, 3, 4}) {
    const HermitianBasis basis = build_basis(n);
    const std::size_t full = basis.size();
    const SampleVector v = sample_without_replacement(full, full, derive_seed(901, "cover", n));
    for (int rep = 0; rep < 20; ++rep) {
      Eigen::MatrixXcd g(n, n);
      for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
          g(i, j) = std::complex<double>(rng.next_gaussian(), rng.next_gaussian());
        }
      }
      const HermitianMatrix rho(0.5 * (g + g.adjoint()));
      const double err = operator_norm(apply_sampling_operator(rho, v, basis) - rho);
      worst = std::max(worst, err);
      if (err > 1e-10) out.pass = false;
    }
  }
  std::ostringstream detail;
  detail << "60 reconstructions, max ||R(rho) - rho|| = " << worst;
  out.detail = detail.str();
  return out;
}

// --- 10: CLI reproducibility ------------------------------------------------------

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Outcome cli_reproducibility() {
  Outcome out;
  const std::string dir = "acceptance_tmp";
  fs::create_directories(dir);
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"tail_iid", "tail-bound --random-ensemble 2,5,9 --mode iid --m 3 --t-grid 0:6:5 "
                   "--trials 2000 --seed 11"},
      {"tail_nor", "tail-bound --random-ensemble 3,6,12 --mode noreplace --m 4 --t-grid "
                   "0.5:8:6 --trials 2000 --seed 12"},
      {"mgf", "mgf-compare --random-ensemble 2,4,3 --m 2 --scale-grid -1:1:5 --trials 2000 "
              "--seed 13"},
      {"cv_exact", "coupling-verify --c-size 4 --m 3 --exact"},
      {"cv_mc", "coupling-verify --c-size 4 --m 2 --trials 20000 --seed 14"},
      {"so", "sampling-operator --n 3 --m 5 --mode bernoulli --trials 300 --seed 15"},
  };
  std::size_t compared = 0;
  for (const auto& [tag, args] : commands) {
    std::vector<std::string> csv_bytes;
    std::vector<std::string> summary_bytes;
    for (const auto& [run, workers] :
         std::vector<std::pair<std::string, std::string>>{{"a", "1"}, {"b", "1"}, {"c", "4"}}) {
      const std::string csv = dir + "/" + tag + "_" + run + ".csv";
      const std::string log = dir + "/" + tag + "_" + run + ".out";
      const std::string cmd = std::string("\"") + MATSAMP_CLI_PATH + "\" " + args +
                              " --workers " + workers + " --output " + csv + " > " + log +
                              " 2>/dev/null";
      if (std::system(cmd.c_str()) != 0) {
        out.pass = false;
        out.detail = "command failed: " + args;
        return out;
      }
      csv_bytes.push_back(slurp(csv));
      summary_bytes.push_back(slurp(log));
    }
    if (csv_bytes[0].empty() || csv_bytes[0] != csv_bytes[1] || csv_bytes[0] != csv_bytes[2]) {
      out.pass = false;
    }
    if (summary_bytes[0] != summary_bytes[1] || summary_bytes[0] != summary_bytes[2]) {
      out.pass = false;
    }
    ++compared;
  }
  out.detail = std::to_string(compared) +
               " invocations byte-identical across reruns and --workers {1, 4}";
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"Coupled law is exactly uniform 1/|C|^m", coupled_law_exactness},
      {"Symmetrization identity: E_Z[sum Z_i] = sum y_i", symmetric_exactness},
      {"Conditional step probability equals 1/|C|", conditional_identity},
      {"Exact MGF domination: M_Y <= M_X", mgf_domination},
      {"Monte Carlo tails respect the two-branch bound", theorem_monte_carlo},
      {"Bound branches agree at the crossover t = 2V/c", branch_continuity},
      {"Distinct draws give a projection of norm 1", projection_property},
      {"Repeated draws reach, never exceed, norm m", worst_case_norm},
      {"Full distinct draw reconstructs every matrix", basis_completeness},
      {"CLI output is byte-identical across runs and workers", cli_reproducibility},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& ex) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + ex.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!outcome.pass) ++failures;
    std::printf("[%s] %2zu. %s (%s; %.2fs)\n", outcome.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), outcome.detail.c_str(), seconds);
    std::fflush(stdout);
  }
  if (failures > 0) {
    std::printf("%d of %zu acceptance criteria FAILED\n", failures, criteria.size());
    return 1;
  }
  std::printf("all %zu acceptance criteria passed\n", criteria.size());
  return 0;
}
