#pragma once

#include <cstdint>
#include <vector>

#include "matsamp/hermitian.hpp"
#include "matsamp/samplers.hpp"

namespace matsamp {

/// Orthonormal Hermitian basis {w_a} of the n x n matrices under the trace
/// inner product tr(w_a w_b) = delta_ab. Standard construction: the n
/// diagonal units E_kk, then for k < l the pairs (E_kl + E_lk)/sqrt(2) and
/// i(E_kl - E_lk)/sqrt(2).
struct HermitianBasis {
  Eigen::Index dim = 0;
  std::vector<HermitianMatrix> elements;  // n^2 of them

  std::size_t size() const { return elements.size(); }
};

HermitianBasis build_basis(Eigen::Index n);

/// Expansion coefficients tr(rho * w_a) for every basis element.
Eigen::VectorXd basis_coefficients(const HermitianMatrix& rho, const HermitianBasis& basis);

/// The sampling operator R: rho -> (n^2/m) sum_i tr(rho w_{A_i}) w_{A_i}.
HermitianMatrix apply_sampling_operator(const HermitianMatrix& rho, const SampleVector& v,
                                        const HermitianBasis& basis);

/// Multiplicity of each basis index in the draw.
std::vector<std::size_t> index_multiplicities(const SampleVector& v, std::size_t size);

/// The matrix of (m/n^2) R in the {w_a} coordinates: diagonal, with entry
/// (a, a) equal to the multiplicity of a in the draw. Real symmetric
/// positive semidefinite; a 0/1 projection when the indices are distinct.
Eigen::MatrixXd superoperator_matrix(const SampleVector& v, const HermitianBasis& basis);

/// Spectral summary of (m/n^2) R for one draw. The superoperator is
/// diagonal in the w_a coordinates, so its eigenvalues are the index
/// multiplicities and its norm is the largest one.
struct SamplingOperatorDiag {
  Eigen::Index n = 0;
  std::size_t m = 0;
  SampleVector indices;
  std::vector<double> eigenvalues;  // n^2 values, basis order
  double norm = 0.0;
};

SamplingOperatorDiag diagnose_sampling_operator(const SampleVector& v, Eigen::Index n);

struct OperatorNormRecord {
  std::size_t trial = 0;
  double norm = 0.0;
  std::size_t max_multiplicity = 0;
  bool is_projection = false;
};

/// Distribution of ||(m/n^2) R|| over independent draws.
struct OperatorNormStudy {
  double min = 0.0;
  double median = 0.0;
  double max = 0.0;
  std::vector<OperatorNormRecord> records;  // one per trial, trial order
};

/// Samples `trials` draws of the given mode over the n^2 basis indices and
/// summarizes the superoperator norms. Without replacement the norm is
/// identically 1; with replacement it is the largest index multiplicity;
/// Bernoulli draws use m as the expected subset size.
OperatorNormStudy operator_norm_study(Eigen::Index n, std::size_t m, SampleMode mode,
                                      std::size_t trials, std::uint64_t seed, int workers = 1);

}  // namespace matsamp
