#pragma once

#include <Eigen/Dense>
#include <complex>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace matsamp {

/// Entrywise tolerance for accepting a matrix as Hermitian on construction.
inline constexpr double kHermitianTolerance = 1e-12;

/// Thrown when the eigensolver does not converge.
class EigensolverError : public std::runtime_error {
 public:
  EigensolverError(Eigen::Index dim, int max_iterations);
  Eigen::Index dim() const { return dim_; }
  int max_iterations() const { return max_iterations_; }

 private:
  Eigen::Index dim_;
  int max_iterations_;
};

/// Dense n-by-n complex Hermitian matrix.
///
/// Construction rejects inputs whose deviation from Hermiticity exceeds
/// kHermitianTolerance and symmetrizes (M + M^dagger)/2 otherwise, so the
/// stored entries satisfy entries(i,j) == conj(entries(j,i)) exactly.
/// Values are immutable after construction and safe to share across threads.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(Eigen::MatrixXcd entries);

  static HermitianMatrix zero(Eigen::Index n);
  static HermitianMatrix diagonal(const Eigen::VectorXd& diag);

  Eigen::Index dim() const { return entries_.rows(); }
  const Eigen::MatrixXcd& entries() const { return entries_; }

  /// Eigenvalues in ascending order. All real by Hermiticity.
  Eigen::VectorXd eigenvalues() const;

 private:
  Eigen::MatrixXcd entries_;
};

/// Largest absolute eigenvalue (the operator norm of a Hermitian matrix).
double operator_norm(const HermitianMatrix& m);

/// tr exp(scale * M) = sum_i exp(scale * lambda_i). Throws std::overflow_error
/// when scale * lambda exceeds the double exponent range for some eigenvalue.
double trace_exp(const HermitianMatrix& m, double scale);

/// Entrywise sum; all terms must share one dimension.
HermitianMatrix matrix_sum(std::span<const HermitianMatrix> terms);

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b);
HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b);
HermitianMatrix operator*(double scalar, const HermitianMatrix& m);

/// Largest entrywise absolute difference, for comparisons in diagnostics.
double max_entry_distance(const HermitianMatrix& a, const HermitianMatrix& b);

// Spectral primitives on raw Eigen matrices, shared by the Monte Carlo loops
// so per-trial sums need not round-trip through HermitianMatrix.
namespace detail {
Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& m);
double operator_norm_of(const Eigen::MatrixXcd& m);
double trace_exp_of(const Eigen::MatrixXcd& m, double scale);
}  // namespace detail

/// Text form "re+imj" with 17 significant digits (lossless round trip).
std::string format_complex(std::complex<double> z);
std::complex<double> parse_complex(std::string_view token);

/// Text format: first line "n", then n lines of n whitespace-separated
/// "re+imj" entries.
void write_matrix(std::ostream& out, const HermitianMatrix& m);
HermitianMatrix read_matrix(std::istream& in);

}  // namespace matsamp
