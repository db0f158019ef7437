// Command-line front end: four experiment subcommands emitting plot-ready
// CSV. All runs are reproducible given the flags; numbers are printed with
// 17 significant digits so round trips are lossless.

#include <CLI11.hpp>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "matsamp/bounds.hpp"
#include "matsamp/coupling.hpp"
#include "matsamp/detail/enumeration.hpp"
#include "matsamp/detail/parallel.hpp"
#include "matsamp/ensemble.hpp"
#include "matsamp/rng.hpp"
#include "matsamp/samplers.hpp"
#include "matsamp/sampling_operator.hpp"

namespace {

using namespace matsamp;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// CSV goes to --output (or stdout when unset); the one-line summary goes to
/// stdout, or stderr when the CSV itself occupies stdout.
class OutputTarget {
 public:
  explicit OutputTarget(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw CliError("--output: cannot open '" + path + "' for writing");
      path_ = path;
    }
  }

  std::ostream& csv() { return file_.is_open() ? file_ : std::cout; }
  std::ostream& summary() { return file_.is_open() ? std::cout : std::cerr; }

  void finish() {
    if (file_.is_open()) {
      file_.flush();
      if (!file_) throw CliError("--output: failed while writing '" + path_ + "'");
    }
  }

 private:
  std::ofstream file_;
  std::string path_;
};

std::vector<double> parse_grid(const std::string& spec, const char* flag) {
  double a = 0.0;
  double b = 0.0;
  long long steps = 0;
  char extra = 0;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%lld%c", &a, &b, &steps, &extra) != 3 || steps < 1) {
    throw CliError(std::string(flag) + ": expected 'a:b:steps' with steps >= 1, got '" + spec +
                   "'");
  }
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(steps));
  if (steps == 1) {
    grid.push_back(a);
    return grid;
  }
  for (long long i = 0; i < steps; ++i) {
    grid.push_back(a + static_cast<double>(i) * (b - a) / static_cast<double>(steps - 1));
  }
  return grid;
}

struct EnsembleOptions {
  std::string path;
  std::string random_spec;
  bool center = false;

  void attach(CLI::App* cmd) {
    auto* from_file = cmd->add_option("--ensemble", path, "Ensemble file (header 'count n')");
    auto* from_rng = cmd->add_option("--random-ensemble", random_spec,
                                     "Generate a centered Gaussian ensemble: 'n,count,seed'");
    from_file->excludes(from_rng);
    from_rng->excludes(from_file);
    cmd->add_flag("--center", center, "Center the ensemble before use");
  }

  MatrixEnsemble load() const {
    if (path.empty() == random_spec.empty()) {
      throw CliError("exactly one of --ensemble and --random-ensemble is required");
    }
    std::optional<MatrixEnsemble> e;
    if (!path.empty()) {
      try {
        e = read_ensemble_file(path);
      } catch (const std::exception& ex) {
        throw CliError("--ensemble: " + std::string(ex.what()));
      }
    } else {
      long long n = 0;
      long long count = 0;
      unsigned long long seed = 0;
      char extra = 0;
      if (std::sscanf(random_spec.c_str(), "%lld,%lld,%llu%c", &n, &count, &seed, &extra) != 3 ||
          n < 1 || count < 1) {
        throw CliError("--random-ensemble: expected 'n,count,seed' with n, count >= 1, got '" +
                       random_spec + "'");
      }
      e = random_ensemble(n, static_cast<std::size_t>(count), seed);
    }
    if (center) return center_ensemble(*e);
    return *e;
  }
};

SampleMode parse_mode_flag(const std::string& mode_name) {
  const auto mode = parse_sample_mode(mode_name);
  if (!mode) {
    throw CliError("--mode: expected one of iid|noreplace|bernoulli, got '" + mode_name + "'");
  }
  return *mode;
}

// --- tail-bound ------------------------------------------------------------

int run_tail_bound(const EnsembleOptions& eopts, const std::string& mode_name,
                   std::size_t m, const std::string& t_grid_spec, std::size_t trials,
                   std::uint64_t seed, int workers, const std::string& output) {
  const MatrixEnsemble e = eopts.load();
  const SampleMode mode = parse_mode_flag(mode_name);
  if (mode == SampleMode::Bernoulli) {
    throw CliError("--mode: tail-bound supports iid and noreplace only; the bound makes no "
                   "claim for the Bernoulli model");
  }
  if (!e.centered()) {
    throw CliError("--ensemble: the bound assumes a centered ensemble; pass --center");
  }
  if (m < 1) throw CliError("--m: must be >= 1");
  if (mode == SampleMode::WithoutReplacement && m > e.size()) {
    throw CliError("--m: " + std::to_string(m) + " exceeds the ensemble size " +
                   std::to_string(e.size()) + " for --mode noreplace");
  }
  if (trials < 1) throw CliError("--trials: must be >= 1");
  const std::vector<double> grid = parse_grid(t_grid_spec, "--t-grid");
  for (const double t : grid) {
    if (t < 0.0) throw CliError("--t-grid: thresholds must be >= 0, grid contains " + fmt(t));
  }

  OutputTarget out(output);
  out.csv() << "t,empirical_tail,wilson_upper,theoretical_bound,mode\n";
  double worst_margin = -std::numeric_limits<double>::infinity();
  double worst_t = grid.empty() ? 0.0 : grid.front();
  double worst_bound = 0.0;
  std::size_t checked = 0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const TailReport r =
        empirical_tail(e, m, mode, grid[j], trials, derive_seed(seed, "t-grid", j), workers);
    out.csv() << fmt(r.t) << ',' << fmt(r.empirical_tail) << ',' << fmt(r.wilson_upper) << ','
              << fmt(r.theoretical_bound) << ',' << to_string(r.mode) << '\n';
    if (r.theoretical_bound <= 1.0) {
      ++checked;
      const double margin = r.wilson_upper - r.theoretical_bound;
      if (margin > worst_margin) {
        worst_margin = margin;
        worst_t = r.t;
        worst_bound = r.theoretical_bound;
      }
    }
  }
  out.finish();
  if (checked == 0) {
    out.summary() << "tail-bound: bound > 1 (vacuous) at every grid point; capped bound "
                     "min(bound,1) = 1 throughout\n";
  } else {
    out.summary() << "tail-bound: worst margin wilson_upper - bound = " << fmt(worst_margin)
                  << " at t = " << fmt(worst_t) << " (capped bound min(bound,1) = "
                  << fmt(std::min(worst_bound, 1.0)) << ", " << checked
                  << " of " << grid.size() << " grid points have bound <= 1)\n";
  }
  return 0;
}

// --- mgf-compare -----------------------------------------------------------

int run_mgf_compare(const EnsembleOptions& eopts, std::size_t m,
                    const std::string& scale_grid_spec, std::size_t trials, std::uint64_t seed,
                    int workers, const std::string& output) {
  const MatrixEnsemble e = eopts.load();
  if (!e.centered()) {
    throw CliError("--ensemble: mgf-compare assumes a centered ensemble; pass --center");
  }
  if (m < 1) throw CliError("--m: must be >= 1");
  if (m > e.size()) {
    throw CliError("--m: " + std::to_string(m) + " exceeds the ensemble size " +
                   std::to_string(e.size()) + " (the without-replacement draw needs m <= |C|)");
  }
  if (trials < 1) throw CliError("--trials: must be >= 1");
  const std::vector<double> grid = parse_grid(scale_grid_spec, "--scale-grid");

  const bool exact_iid_ok = exact_mgf_within_guard(e.size(), m, SampleMode::WithReplacement);
  const bool exact_nor_ok = exact_mgf_within_guard(e.size(), m, SampleMode::WithoutReplacement);

  OutputTarget out(output);
  out.csv() << "scale,mgf_iid,mgf_noreplace,se_iid,se_noreplace,exact_iid,exact_noreplace\n";
  double max_gap = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double scale = grid[j];
    const MgfEstimate iid = empirical_mgf(e, m, SampleMode::WithReplacement, scale, trials,
                                          derive_seed(seed, "scale-iid", j), workers);
    const MgfEstimate nor = empirical_mgf(e, m, SampleMode::WithoutReplacement, scale, trials,
                                          derive_seed(seed, "scale-noreplace", j), workers);
    out.csv() << fmt(scale) << ',' << fmt(iid.estimate) << ',' << fmt(nor.estimate) << ','
              << fmt(iid.std_error) << ',' << fmt(nor.std_error) << ',';
    if (exact_iid_ok) out.csv() << fmt(exact_mgf(e, m, SampleMode::WithReplacement, scale));
    out.csv() << ',';
    if (exact_nor_ok) out.csv() << fmt(exact_mgf(e, m, SampleMode::WithoutReplacement, scale));
    out.csv() << '\n';
    max_gap = std::max(max_gap, nor.estimate - iid.estimate);
  }
  out.finish();
  out.summary() << "mgf-compare: max (mgf_noreplace - mgf_iid) estimate gap = " << fmt(max_gap)
                << " over " << grid.size() << " scales (negative means domination held in "
                   "sample)\n";
  return 0;
}

// --- coupling-verify -------------------------------------------------------

std::string outcome_label(const std::vector<std::size_t>& outcome) {
  std::string label;
  for (std::size_t i = 0; i < outcome.size(); ++i) {
    if (i > 0) label += '-';
    label += std::to_string(outcome[i]);
  }
  return label;
}

int run_coupling_verify(std::size_t c_size, std::size_t m, bool exact, std::size_t trials,
                        bool trials_given, std::uint64_t seed, int workers,
                        const std::string& output) {
  if (c_size < 1) throw CliError("--c-size: must be >= 1");
  if (m < 1 || m > c_size) {
    throw CliError("--m: need 1 <= m <= c-size, got m = " + std::to_string(m) +
                   ", c-size = " + std::to_string(c_size));
  }
  if (exact == trials_given) {
    throw CliError("exactly one of --exact and --trials is required");
  }

  OutputTarget out(output);
  out.csv() << "outcome,probability,expected_probability,abs_error\n";

  if (exact) {
    ExactDistribution dist;
    try {
      dist = exact_coupling_distribution(c_size, m);
    } catch (const std::domain_error& ex) {
      throw CliError("--exact: " + std::string(ex.what()));
    }
    const Rational uniform = dist.uniform_probability();
    Rational max_err(0);
    for (const auto& [outcome, p] : dist.support) {
      const Rational err = boost::abs(p - uniform);
      max_err = std::max(max_err, err);
      out.csv() << outcome_label(outcome) << ',' << fmt(boost::rational_cast<double>(p)) << ','
                << fmt(boost::rational_cast<double>(uniform)) << ','
                << fmt(boost::rational_cast<double>(err)) << '\n';
    }
    out.finish();
    out.summary() << "coupling-verify: exact max |p - 1/|C|^m| = " << to_string(max_err)
                  << " over " << dist.support.size() << " outcomes\n";
    return 0;
  }

  const std::uint64_t outcome_count = detail::clamped_power(c_size, m, 1000000);
  if (outcome_count > 1000000) {
    throw CliError("--c-size/--m: |C|^m exceeds 1e6 outcomes; the CSV enumerates all of them");
  }
  if (trials < 1) throw CliError("--trials: must be >= 1");

  // Per-chunk outcome counts; integer merge is order-independent, so the CSV
  // is identical for every --workers value.
  const std::size_t chunks = std::max(1, workers);
  std::vector<std::map<std::vector<std::size_t>, std::size_t>> counts(chunks);
  const std::size_t chunk_len = (trials + chunks - 1) / chunks;
  detail::parallel_for(chunks, workers, [&](std::size_t w) {
    const std::size_t lo = w * chunk_len;
    const std::size_t hi = std::min(lo + chunk_len, trials);
    for (std::size_t i = lo; i < hi; ++i) {
      const SampleVector y =
          sample_without_replacement(c_size, m, derive_seed(seed, "verify-y", i));
      const CouplingTrace trace = run_coupling(y, c_size, derive_seed(seed, "verify-z", i));
      ++counts[w][trace.output_z];
    }
  });
  std::map<std::vector<std::size_t>, std::size_t> merged;
  for (const auto& chunk : counts) {
    for (const auto& [outcome, count] : chunk) merged[outcome] += count;
  }

  const double expected = 1.0 / static_cast<double>(outcome_count);
  double max_err = 0.0;
  std::vector<std::size_t> outcome(m, 0);
  // Lexicographic sweep over all |C|^m outcomes, including unobserved ones.
  detail::for_each_tuple(c_size, m, [&](const std::vector<std::size_t>& o) {
    const auto it = merged.find(o);
    const double p =
        it == merged.end() ? 0.0
                           : static_cast<double>(it->second) / static_cast<double>(trials);
    const double err = std::abs(p - expected);
    max_err = std::max(max_err, err);
    out.csv() << outcome_label(o) << ',' << fmt(p) << ',' << fmt(expected) << ',' << fmt(err)
              << '\n';
  });
  out.finish();
  out.summary() << "coupling-verify: Monte Carlo max |freq - 1/|C|^m| = " << fmt(max_err)
                << " over " << outcome_count << " outcomes, " << trials << " trials\n";
  return 0;
}

// --- sampling-operator -----------------------------------------------------

int run_sampling_operator(long long n, std::size_t m, const std::string& mode_name,
                          std::size_t trials, std::uint64_t seed, int workers,
                          const std::string& output) {
  if (n < 1) throw CliError("--n: must be >= 1");
  const SampleMode mode = parse_mode_flag(mode_name);
  const std::size_t basis_size = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  if (mode != SampleMode::Bernoulli && m < 1) throw CliError("--m: must be >= 1");
  if (mode != SampleMode::WithReplacement && m > basis_size) {
    throw CliError("--m: " + std::to_string(m) + " exceeds n^2 = " + std::to_string(basis_size));
  }
  if (trials < 1) throw CliError("--trials: must be >= 1");

  const OperatorNormStudy study = operator_norm_study(n, m, mode, trials, seed, workers);
  OutputTarget out(output);
  out.csv() << "trial,norm,max_multiplicity,is_projection\n";
  for (const OperatorNormRecord& r : study.records) {
    out.csv() << r.trial << ',' << fmt(r.norm) << ',' << r.max_multiplicity << ','
              << (r.is_projection ? 1 : 0) << '\n';
  }
  out.finish();
  out.summary() << "sampling-operator: norm of (m/n^2) R over " << trials
                << " trials: min = " << fmt(study.min) << ", median = " << fmt(study.median)
                << ", max = " << fmt(study.max) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Matrix-sampling tail bounds: coupling, bounds and sampling-operator experiments"};
  app.require_subcommand(1);

  std::string output;
  int workers = 1;
  std::uint64_t seed = 0;
  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--output", output, "CSV destination (default: standard output)");
    cmd->add_option("--workers", workers, "Parallel trial workers; outputs do not depend on it")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", seed, "Root seed (default 0); all runs are reproducible");
  };

  // tail-bound
  EnsembleOptions tb_ensemble;
  std::string tb_mode;
  std::size_t tb_m = 0;
  std::string tb_grid;
  std::size_t tb_trials = 10000;
  CLI::App* tail_bound =
      app.add_subcommand("tail-bound", "Empirical Pr[||S|| > t] against the two-branch bound");
  tb_ensemble.attach(tail_bound);
  tail_bound->add_option("--mode", tb_mode, "iid or noreplace")->required();
  tail_bound->add_option("--m", tb_m, "Number of draws per trial")->required();
  tail_bound->add_option("--t-grid", tb_grid, "Thresholds 'a:b:steps'")->required();
  tail_bound->add_option("--trials", tb_trials, "Monte Carlo trials per grid point");
  add_common(tail_bound);

  // mgf-compare
  EnsembleOptions mc_ensemble;
  std::size_t mc_m = 0;
  std::string mc_grid;
  std::size_t mc_trials = 10000;
  CLI::App* mgf_compare = app.add_subcommand(
      "mgf-compare", "Operator MGF estimates for both sampling models, with exact values "
                     "when enumerable");
  mc_ensemble.attach(mgf_compare);
  mgf_compare->add_option("--m", mc_m, "Number of draws per trial")->required();
  mgf_compare->add_option("--scale-grid", mc_grid, "Scales 'a:b:steps'")->required();
  mgf_compare->add_option("--trials", mc_trials, "Monte Carlo trials per scale");
  add_common(mgf_compare);

  // coupling-verify
  std::size_t cv_c_size = 0;
  std::size_t cv_m = 0;
  bool cv_exact = false;
  std::size_t cv_trials = 0;
  CLI::App* coupling_verify = app.add_subcommand(
      "coupling-verify", "Check that the coupled process reproduces the uniform law 1/|C|^m");
  coupling_verify->add_option("--c-size", cv_c_size, "Size of the sampled set C")->required();
  coupling_verify->add_option("--m", cv_m, "Draw length")->required();
  coupling_verify->add_flag("--exact", cv_exact, "Exact rational enumeration");
  CLI::Option* cv_trials_opt =
      coupling_verify->add_option("--trials", cv_trials, "Monte Carlo trials");
  add_common(coupling_verify);

  // sampling-operator
  long long so_n = 0;
  std::size_t so_m = 0;
  std::string so_mode;
  std::size_t so_trials = 1000;
  CLI::App* sampling_operator = app.add_subcommand(
      "sampling-operator", "Norm distribution of (m/n^2) R over the n^2 basis coefficients");
  sampling_operator->add_option("--n", so_n, "Matrix dimension")->required();
  sampling_operator->add_option("--m", so_m, "Draw length (expected size for bernoulli)")
      ->required();
  sampling_operator->add_option("--mode", so_mode, "iid, noreplace or bernoulli")->required();
  sampling_operator->add_option("--trials", so_trials, "Number of draws");
  add_common(sampling_operator);

  CLI11_PARSE(app, argc, argv);

  try {
    if (tail_bound->parsed()) {
      return run_tail_bound(tb_ensemble, tb_mode, tb_m, tb_grid, tb_trials, seed, workers,
                            output);
    }
    if (mgf_compare->parsed()) {
      return run_mgf_compare(mc_ensemble, mc_m, mc_grid, mc_trials, seed, workers, output);
    }
    if (coupling_verify->parsed()) {
      return run_coupling_verify(cv_c_size, cv_m, cv_exact, cv_trials,
                                 cv_trials_opt->count() > 0, seed, workers, output);
    }
    if (sampling_operator->parsed()) {
      return run_sampling_operator(so_n, so_m, so_mode, so_trials, seed, workers, output);
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
  return 0;
}
