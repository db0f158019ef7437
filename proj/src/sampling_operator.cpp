#include "matsamp/sampling_operator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "matsamp/detail/parallel.hpp"
#include "matsamp/rng.hpp"

namespace matsamp {

namespace {

void check_draw_against_basis(const SampleVector& v, const HermitianBasis& basis) {
  if (v.indices.empty()) {
    throw std::invalid_argument(
        "sampling operator: empty sample vector (the n^2/m prefactor is undefined for m = 0)");
  }
  if (v.ensemble_size != basis.size()) {
    throw std::invalid_argument("sampling operator: draw is over " +
                                std::to_string(v.ensemble_size) + " indices, basis has " +
                                std::to_string(basis.size()) + " elements");
  }
  for (const std::size_t a : v.indices) {
    if (a >= basis.size()) {
      throw std::invalid_argument("sampling operator: index " + std::to_string(a) +
                                  " out of range [0, " + std::to_string(basis.size()) + ")");
    }
  }
}

}  // namespace

HermitianBasis build_basis(Eigen::Index n) {
  if (n < 1) {
    throw std::invalid_argument("build_basis: n must be >= 1, got " + std::to_string(n));
  }
  HermitianBasis basis;
  basis.dim = n;
  basis.elements.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(n, n);
    e(k, k) = 1.0;
    basis.elements.push_back(HermitianMatrix(std::move(e)));
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index l = k + 1; l < n; ++l) {
      Eigen::MatrixXcd sym = Eigen::MatrixXcd::Zero(n, n);
      sym(k, l) = inv_sqrt2;
      sym(l, k) = inv_sqrt2;
      basis.elements.push_back(HermitianMatrix(std::move(sym)));
      Eigen::MatrixXcd anti = Eigen::MatrixXcd::Zero(n, n);
      anti(k, l) = std::complex<double>(0.0, inv_sqrt2);
      anti(l, k) = std::complex<double>(0.0, -inv_sqrt2);
      basis.elements.push_back(HermitianMatrix(std::move(anti)));
    }
  }
  return basis;
}

Eigen::VectorXd basis_coefficients(const HermitianMatrix& rho, const HermitianBasis& basis) {
  if (rho.dim() != basis.dim) {
    throw std::invalid_argument("basis_coefficients: rho is " + std::to_string(rho.dim()) +
                                "-dimensional, basis is for dimension " +
                                std::to_string(basis.dim));
  }
  Eigen::VectorXd coeff(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t a = 0; a < basis.size(); ++a) {
    // tr(rho w_a) is real for Hermitian rho and w_a.
    coeff[static_cast<Eigen::Index>(a)] =
        (rho.entries() * basis.elements[a].entries()).trace().real();
  }
  return coeff;
}

HermitianMatrix apply_sampling_operator(const HermitianMatrix& rho, const SampleVector& v,
                                        const HermitianBasis& basis) {
  if (rho.dim() != basis.dim) {
    throw std::invalid_argument("apply_sampling_operator: rho is " + std::to_string(rho.dim()) +
                                "-dimensional, basis is for dimension " +
                                std::to_string(basis.dim));
  }
  check_draw_against_basis(v, basis);
  const Eigen::Index n = basis.dim;
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n, n);
  for (const std::size_t a : v.indices) {
    const double coeff = (rho.entries() * basis.elements[a].entries()).trace().real();
    acc += coeff * basis.elements[a].entries();
  }
  const double prefactor =
      static_cast<double>(basis.size()) / static_cast<double>(v.indices.size());
  return HermitianMatrix(prefactor * acc);
}

std::vector<std::size_t> index_multiplicities(const SampleVector& v, std::size_t size) {
  std::vector<std::size_t> mult(size, 0);
  for (const std::size_t a : v.indices) {
    if (a >= size) {
      throw std::invalid_argument("index_multiplicities: index " + std::to_string(a) +
                                  " out of range [0, " + std::to_string(size) + ")");
    }
    ++mult[a];
  }
  return mult;
}

Eigen::MatrixXd superoperator_matrix(const SampleVector& v, const HermitianBasis& basis) {
  check_draw_against_basis(v, basis);
  const auto mult = index_multiplicities(v, basis.size());
  const Eigen::Index dim = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index a = 0; a < dim; ++a) {
    p(a, a) = static_cast<double>(mult[static_cast<std::size_t>(a)]);
  }
  return p;
}

SamplingOperatorDiag diagnose_sampling_operator(const SampleVector& v, Eigen::Index n) {
  const std::size_t basis_size = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  if (v.ensemble_size != basis_size) {
    throw std::invalid_argument("diagnose_sampling_operator: draw is over " +
                                std::to_string(v.ensemble_size) + " indices, expected n^2 = " +
                                std::to_string(basis_size));
  }
  const auto mult = index_multiplicities(v, basis_size);
  SamplingOperatorDiag diag;
  diag.n = n;
  diag.m = v.indices.size();
  diag.indices = v;
  diag.eigenvalues.reserve(basis_size);
  for (const std::size_t m : mult) diag.eigenvalues.push_back(static_cast<double>(m));
  diag.norm = mult.empty() ? 0.0
                           : static_cast<double>(*std::max_element(mult.begin(), mult.end()));
  return diag;
}

OperatorNormStudy operator_norm_study(Eigen::Index n, std::size_t m, SampleMode mode,
                                      std::size_t trials, std::uint64_t seed, int workers) {
  if (n < 1) {
    throw std::invalid_argument("operator_norm_study: n must be >= 1");
  }
  const std::size_t size = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  if (mode != SampleMode::Bernoulli && m < 1) {
    throw std::invalid_argument("operator_norm_study: m must be >= 1");
  }
  if (mode != SampleMode::WithReplacement && m > size) {
    throw std::invalid_argument("operator_norm_study: m = " + std::to_string(m) +
                                " exceeds n^2 = " + std::to_string(size));
  }
  if (trials < 1) {
    throw std::invalid_argument("operator_norm_study: trials must be >= 1");
  }

  OperatorNormStudy study;
  study.records.resize(trials);
  detail::parallel_for(trials, workers, [&](std::size_t i) {
    const std::uint64_t child = derive_seed(seed, "op-norm-trial", i);
    SampleVector v;
    switch (mode) {
      case SampleMode::WithReplacement: v = sample_with_replacement(size, m, child); break;
      case SampleMode::WithoutReplacement: v = sample_without_replacement(size, m, child); break;
      case SampleMode::Bernoulli:
        v = sample_bernoulli(size, static_cast<double>(m), child);
        break;
    }
    const auto mult = index_multiplicities(v, size);
    const std::size_t max_mult =
        mult.empty() ? 0 : *std::max_element(mult.begin(), mult.end());
    study.records[i] = OperatorNormRecord{i, static_cast<double>(max_mult), max_mult,
                                          max_mult <= 1};
  });

  std::vector<double> norms;
  norms.reserve(trials);
  for (const OperatorNormRecord& r : study.records) norms.push_back(r.norm);
  std::sort(norms.begin(), norms.end());
  study.min = norms.front();
  study.max = norms.back();
  study.median = norms.size() % 2 == 1
                     ? norms[norms.size() / 2]
                     : 0.5 * (norms[norms.size() / 2 - 1] + norms[norms.size() / 2]);
  return study;
}

}  // namespace matsamp
