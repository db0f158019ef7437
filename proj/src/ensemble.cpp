#include "matsamp/ensemble.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <utility>

#include "matsamp/rng.hpp"

namespace matsamp {

MatrixEnsemble::MatrixEnsemble(std::vector<HermitianMatrix> members)
    : members_(std::move(members)) {
  if (members_.empty()) {
    throw std::invalid_argument("MatrixEnsemble: member list must be nonempty");
  }
  const Eigen::Index n = members_[0].dim();
  for (std::size_t i = 1; i < members_.size(); ++i) {
    if (members_[i].dim() != n) {
      throw std::invalid_argument("MatrixEnsemble: dimension mismatch: member 0 is " +
                                  std::to_string(n) + "x" + std::to_string(n) + ", member " +
                                  std::to_string(i) + " is " + std::to_string(members_[i].dim()) +
                                  "x" + std::to_string(members_[i].dim()));
    }
  }
  Eigen::MatrixXcd mean = Eigen::MatrixXcd::Zero(n, n);
  Eigen::MatrixXcd mean_sq = Eigen::MatrixXcd::Zero(n, n);
  for (const HermitianMatrix& x : members_) {
    norm_bound_c_ = std::max(norm_bound_c_, operator_norm(x));
    mean += x.entries();
    mean_sq += x.entries() * x.entries();
  }
  const double inv = 1.0 / static_cast<double>(members_.size());
  variance_bound_sigma0sq_ = detail::operator_norm_of(inv * mean_sq);
  centered_ = detail::operator_norm_of(inv * mean) <= kCenteredTolerance;
}

HermitianMatrix MatrixEnsemble::mean() const {
  const Eigen::Index n = dim();
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n, n);
  for (const HermitianMatrix& x : members_) acc += x.entries();
  return HermitianMatrix(acc / static_cast<double>(members_.size()));
}

MatrixEnsemble MatrixEnsemble::with_bounds(double c, double sigma0sq) const {
  if (c < norm_bound_c_ || sigma0sq < variance_bound_sigma0sq_) {
    std::ostringstream msg;
    msg << "with_bounds: supplied constants (c = " << c << ", sigma0^2 = " << sigma0sq
        << ") must dominate the computed pair (c = " << norm_bound_c_
        << ", sigma0^2 = " << variance_bound_sigma0sq_ << ")";
    throw std::invalid_argument(msg.str());
  }
  MatrixEnsemble out = *this;
  out.norm_bound_c_ = c;
  out.variance_bound_sigma0sq_ = sigma0sq;
  return out;
}

MatrixEnsemble analyze_ensemble(std::vector<HermitianMatrix> members) {
  return MatrixEnsemble(std::move(members));
}

MatrixEnsemble center_ensemble(const MatrixEnsemble& e) {
  const HermitianMatrix m = e.mean();
  std::vector<HermitianMatrix> shifted;
  shifted.reserve(e.size());
  for (const HermitianMatrix& x : e.members()) shifted.push_back(x - m);
  return MatrixEnsemble(std::move(shifted));
}

MatrixEnsemble random_ensemble(Eigen::Index dim, std::size_t count, std::uint64_t seed) {
  if (dim < 1) {
    throw std::invalid_argument("random_ensemble: dim must be >= 1, got " + std::to_string(dim));
  }
  if (count < 1) {
    throw std::invalid_argument("random_ensemble: count must be >= 1, got " +
                                std::to_string(count));
  }
  Rng rng(derive_seed(seed, "random-ensemble"));
  std::vector<HermitianMatrix> members;
  members.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    Eigen::MatrixXcd g(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      for (Eigen::Index j = 0; j < dim; ++j) {
        g(i, j) = std::complex<double>(rng.next_gaussian(), rng.next_gaussian());
      }
    }
    members.push_back(HermitianMatrix(0.5 * (g + g.adjoint())));
  }
  return center_ensemble(MatrixEnsemble(std::move(members)));
}

void write_ensemble(std::ostream& out, const MatrixEnsemble& e) {
  out << e.size() << ' ' << e.dim() << '\n';
  for (const HermitianMatrix& x : e.members()) write_matrix(out, x);
}

MatrixEnsemble read_ensemble(std::istream& in) {
  long long count = 0;
  long long n = 0;
  if (!(in >> count >> n)) {
    throw std::invalid_argument("read_ensemble: expected header line 'count n'");
  }
  if (count < 1) {
    throw std::invalid_argument("read_ensemble: count must be >= 1, got " + std::to_string(count));
  }
  std::vector<HermitianMatrix> members;
  members.reserve(static_cast<std::size_t>(count));
  for (long long k = 0; k < count; ++k) {
    HermitianMatrix m = read_matrix(in);
    if (m.dim() != n) {
      throw std::invalid_argument("read_ensemble: matrix " + std::to_string(k) + " has dimension " +
                                  std::to_string(m.dim()) + ", header says " + std::to_string(n));
    }
    members.push_back(std::move(m));
  }
  return MatrixEnsemble(std::move(members));
}

void write_ensemble_file(const std::string& path, const MatrixEnsemble& e) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  write_ensemble(out, e);
  if (!out) {
    throw std::runtime_error("failed while writing '" + path + "'");
  }
}

MatrixEnsemble read_ensemble_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open '" + path + "' for reading");
  }
  return read_ensemble(in);
}

}  // namespace matsamp
