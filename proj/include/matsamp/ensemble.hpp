#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "matsamp/hermitian.hpp"

namespace matsamp {

/// Norm below which the uniform mean of an ensemble counts as zero.
inline constexpr double kCenteredTolerance = 1e-10;

/// The finite set C of Hermitian matrices together with the constants the
/// tail bounds need: c bounding each member's operator norm and sigma0^2
/// bounding the norm of the uniform mean of the squared members.
///
/// Construction computes the tightest constants; with_bounds() installs a
/// looser user-supplied pair. Immutable after construction.
class MatrixEnsemble {
 public:
  /// Analyzes the members: c = max operator norm, sigma0^2 = norm of the
  /// uniform mean of X^2, centered = (norm of the uniform mean <= 1e-10).
  explicit MatrixEnsemble(std::vector<HermitianMatrix> members);

  const std::vector<HermitianMatrix>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  Eigen::Index dim() const { return members_[0].dim(); }

  double norm_bound_c() const { return norm_bound_c_; }
  double variance_bound_sigma0sq() const { return variance_bound_sigma0sq_; }
  bool centered() const { return centered_; }

  /// Uniform average (1/|C|) sum of the members.
  HermitianMatrix mean() const;

  /// Returns a copy carrying user-supplied constants. They must dominate the
  /// computed ones; looser bounds are legal inputs to the tail bounds, tighter
  /// ones would be unsound.
  MatrixEnsemble with_bounds(double c, double sigma0sq) const;

 private:
  std::vector<HermitianMatrix> members_;
  double norm_bound_c_ = 0.0;
  double variance_bound_sigma0sq_ = 0.0;
  bool centered_ = false;
};

/// Free-function form of the analyzing constructor.
MatrixEnsemble analyze_ensemble(std::vector<HermitianMatrix> members);

/// Subtracts the uniform mean from every member and recomputes constants.
/// Idempotent up to roundoff; the result reports centered() == true.
MatrixEnsemble center_ensemble(const MatrixEnsemble& e);

/// `count` Hermitized standard-Gaussian matrices of the given dimension,
/// centered. Bit-exact deterministic in (dim, count, seed).
MatrixEnsemble random_ensemble(Eigen::Index dim, std::size_t count, std::uint64_t seed);

/// File format: header line "count n", then count matrices in the
/// hermitian text format (each including its own dimension line).
void write_ensemble(std::ostream& out, const MatrixEnsemble& e);
MatrixEnsemble read_ensemble(std::istream& in);

void write_ensemble_file(const std::string& path, const MatrixEnsemble& e);
MatrixEnsemble read_ensemble_file(const std::string& path);

}  // namespace matsamp
