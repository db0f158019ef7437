#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <map>
#include <vector>

#include "matsamp/ensemble.hpp"
#include "matsamp/samplers.hpp"

namespace matsamp {

/// Exact probability arithmetic for the enumeration oracles. Denominators
/// stay below ~1e8 under the enumeration guards, far inside 64-bit range.
using Rational = boost::rational<long long>;

std::string to_string(const Rational& r);

/// Guards for exhaustive enumeration: the branch tree grows roughly like
/// (falling factorial) * m^m, which these caps keep under ~1e5 nodes.
inline constexpr std::size_t kCouplingMaxSetSize = 6;
inline constexpr std::size_t kCouplingMaxDraw = 4;
/// Tighter caps for enumerations that evaluate matrix functionals per node.
inline constexpr std::size_t kJensenMaxSetSize = 5;
inline constexpr std::size_t kJensenMaxDraw = 3;

enum class CouplingRule { FromDrawn, FromFresh };

/// One step of the Z-process: the set of values already drawn before the
/// step, which rule fired, and the value chosen.
struct CouplingStep {
  std::vector<std::size_t> already_drawn;  // D_k in draw order
  CouplingRule rule_taken = CouplingRule::FromFresh;
  std::size_t chosen = 0;
};

/// One realization of the random partial function Z applied to a
/// without-replacement draw y: per-step records plus the output sequence
/// (values from {y_1, ..., y_m}, possibly with repeats).
struct CouplingTrace {
  SampleVector input_y;
  std::vector<CouplingStep> steps;
  std::vector<std::size_t> output_z;
};

/// Exact law of Z(Y) as a map from outcome vectors to rational probabilities.
struct ExactDistribution {
  std::size_t c_size = 0;
  std::size_t m = 0;
  std::map<std::vector<std::size_t>, Rational> support;

  Rational total_mass() const;
  /// 1 / |C|^m, the uniform probability each outcome must carry.
  Rational uniform_probability() const;
};

/// Runs the Z-process on a fixed draw y with pairwise distinct components.
/// At step k, with probability |D_k|/|C| a uniform element of D_k is taken,
/// otherwise a uniform element of the y-values not yet drawn. Deterministic
/// given seed.
CouplingTrace run_coupling(const SampleVector& y, std::size_t c_size, std::uint64_t seed);

/// Enumerates every without-replacement draw and every branch of the
/// Z-process with exact rational probabilities; returns the law of Z(Y).
/// The law is uniform: each of the |C|^m outcomes has probability 1/|C|^m.
ExactDistribution exact_coupling_distribution(std::size_t c_size, std::size_t m);

/// Pr[Z_k = candidate | Z_1 .. Z_{k-1}] over the joint randomness of the
/// draw Y and the process Z. The prefix pins down D_k; the unrevealed
/// fresh y-values are a uniform subset of the unseen elements, which is
/// what makes both branches come out to exactly 1/|C|:
///   candidate already drawn:  (|D_k|/|C|) * (1/|D_k|)
///   candidate fresh:          ((|C|-|D_k|)/|C|) * (1/(m-|D_k|)) * ((m-|D_k|)/(|C|-|D_k|))
CouplingRule classify_candidate(const CouplingTrace& prefix, std::size_t candidate);
Rational conditional_step_probability(const CouplingTrace& prefix, std::size_t candidate);

/// Exact per-value weights in E_Z[sum_i Z_i(y)]: enumerates all branches of
/// Z on the fixed draw y and accumulates each value's rational coefficient.
/// All coefficients equal 1 exactly, which is the symmetrization identity.
std::map<std::size_t, Rational> coupling_expectation_coefficients(const SampleVector& y,
                                                                  std::size_t c_size);

/// E_Z[sum_i Z_i(y)] realized against an ensemble; equals sum_i y_i.
HermitianMatrix coupling_sum_expectation(const SampleVector& y, const MatrixEnsemble& e);

struct MgfComparison {
  double with_replacement = 0.0;     // E_X[tr exp(scale * S_X)]
  double without_replacement = 0.0;  // E_Y[tr exp(scale * S_Y)]
};

/// Exact enumeration of both operator moment-generating functions. The
/// without-replacement value never exceeds the with-replacement one; this is
/// the Jensen step that transfers the tail bound between sampling models.
MgfComparison jensen_domination_check(const MatrixEnsemble& e, std::size_t m, double scale);

}  // namespace matsamp
