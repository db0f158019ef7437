#include "matsamp/hermitian.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace matsamp {

namespace {

// log(DBL_MAX); exp() overflows beyond this.
constexpr double kLogMaxDouble = 709.782712893384;

double parse_double_strict(std::string_view text, std::string_view token) {
  std::size_t pos = 0;
  double value = 0;
  try {
    value = std::stod(std::string(text), &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("parse_complex: cannot parse '" + std::string(token) + "'");
  }
  if (pos != text.size()) {
    throw std::invalid_argument("parse_complex: trailing characters in '" + std::string(token) +
                                "'");
  }
  return value;
}

}  // namespace

EigensolverError::EigensolverError(Eigen::Index dim, int max_iterations)
    : std::runtime_error("eigensolver failed to converge for a " + std::to_string(dim) + "x" +
                         std::to_string(dim) + " matrix after " + std::to_string(max_iterations) +
                         " sweep iterations"),
      dim_(dim),
      max_iterations_(max_iterations) {}

HermitianMatrix::HermitianMatrix(Eigen::MatrixXcd entries) {
  if (entries.rows() != entries.cols() || entries.rows() < 1) {
    throw std::invalid_argument("HermitianMatrix: expected a square matrix with n >= 1, got " +
                                std::to_string(entries.rows()) + "x" +
                                std::to_string(entries.cols()));
  }
  if (!entries.allFinite()) {
    throw std::invalid_argument("HermitianMatrix: entries must be finite");
  }
  const double deviation = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  if (!(deviation <= kHermitianTolerance)) {
    std::ostringstream msg;
    msg << "HermitianMatrix: deviation from Hermiticity " << deviation
        << " exceeds tolerance " << kHermitianTolerance;
    throw std::invalid_argument(msg.str());
  }
  entries_ = 0.5 * (entries + entries.adjoint());
}

HermitianMatrix HermitianMatrix::zero(Eigen::Index n) {
  return HermitianMatrix(Eigen::MatrixXcd::Zero(n, n));
}

HermitianMatrix HermitianMatrix::diagonal(const Eigen::VectorXd& diag) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(diag.size(), diag.size());
  m.diagonal() = diag.cast<std::complex<double>>();
  return HermitianMatrix(std::move(m));
}

Eigen::VectorXd HermitianMatrix::eigenvalues() const {
  return detail::hermitian_eigenvalues(entries_);
}

namespace detail {

Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver;
  solver.compute(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw EigensolverError(m.rows(),
                           static_cast<int>(solver.m_maxIterations * m.rows() * m.rows()));
  }
  return solver.eigenvalues();
}

double operator_norm_of(const Eigen::MatrixXcd& m) {
  return hermitian_eigenvalues(m).cwiseAbs().maxCoeff();
}

double trace_exp_of(const Eigen::MatrixXcd& m, double scale) {
  if (!std::isfinite(scale)) {
    throw std::invalid_argument("trace_exp: scale must be finite");
  }
  const Eigen::VectorXd evals = hermitian_eigenvalues(m);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < evals.size(); ++i) {
    const double exponent = scale * evals[i];
    if (exponent > kLogMaxDouble) {
      std::ostringstream msg;
      msg << "trace_exp: scale * lambda = " << exponent << " for eigenvalue lambda = " << evals[i]
          << " exceeds the double exponent range; rescale the input";
      throw std::overflow_error(msg.str());
    }
    sum += std::exp(exponent);
  }
  if (!std::isfinite(sum)) {
    std::ostringstream msg;
    msg << "trace_exp: sum of " << evals.size() << " exponentials overflowed (largest eigenvalue "
        << evals[evals.size() - 1] << ")";
    throw std::overflow_error(msg.str());
  }
  return sum;
}

}  // namespace detail

double operator_norm(const HermitianMatrix& m) {
  return detail::operator_norm_of(m.entries());
}

double trace_exp(const HermitianMatrix& m, double scale) {
  return detail::trace_exp_of(m.entries(), scale);
}

HermitianMatrix matrix_sum(std::span<const HermitianMatrix> terms) {
  if (terms.empty()) {
    throw std::invalid_argument("matrix_sum: empty term list");
  }
  const Eigen::Index n = terms[0].dim();
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].dim() != n) {
      throw std::invalid_argument("matrix_sum: dimension mismatch: term 0 is " +
                                  std::to_string(n) + "x" + std::to_string(n) + ", term " +
                                  std::to_string(i) + " is " + std::to_string(terms[i].dim()) +
                                  "x" + std::to_string(terms[i].dim()));
    }
    acc += terms[i].entries();
  }
  return HermitianMatrix(std::move(acc));
}

namespace {
void check_same_dim(const HermitianMatrix& a, const HermitianMatrix& b, const char* op) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument(std::string(op) + ": dimension mismatch: " +
                                std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
  }
}
}  // namespace

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
  check_same_dim(a, b, "operator+");
  return HermitianMatrix(a.entries() + b.entries());
}

HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
  check_same_dim(a, b, "operator-");
  return HermitianMatrix(a.entries() - b.entries());
}

HermitianMatrix operator*(double scalar, const HermitianMatrix& m) {
  return HermitianMatrix(scalar * m.entries());
}

double max_entry_distance(const HermitianMatrix& a, const HermitianMatrix& b) {
  check_same_dim(a, b, "max_entry_distance");
  return (a.entries() - b.entries()).cwiseAbs().maxCoeff();
}

std::string format_complex(std::complex<double> z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", z.real());
  std::string out = buf;
  std::snprintf(buf, sizeof buf, "%+.17g", z.imag());
  out += buf;
  out += 'j';
  return out;
}

std::complex<double> parse_complex(std::string_view token) {
  if (token.empty()) {
    throw std::invalid_argument("parse_complex: empty token");
  }
  if (token.back() != 'j') {
    return {parse_double_strict(token, token), 0.0};
  }
  const std::string_view body = token.substr(0, token.size() - 1);
  // Split at the last '+'/'-' that is not an exponent sign.
  std::size_t split = std::string_view::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string_view::npos) {
    throw std::invalid_argument("parse_complex: expected 're+imj', got '" + std::string(token) +
                                "'");
  }
  const double re = parse_double_strict(body.substr(0, split), token);
  const double im = parse_double_strict(body.substr(split), token);
  return {re, im};
}

void write_matrix(std::ostream& out, const HermitianMatrix& m) {
  const Eigen::Index n = m.dim();
  out << n << '\n';
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j > 0) out << ' ';
      out << format_complex(m.entries()(i, j));
    }
    out << '\n';
  }
}

HermitianMatrix read_matrix(std::istream& in) {
  long long n = 0;
  if (!(in >> n)) {
    throw std::invalid_argument("read_matrix: expected a matrix dimension");
  }
  if (n < 1 || n > 10000) {
    throw std::invalid_argument("read_matrix: dimension " + std::to_string(n) +
                                " out of supported range [1, 10000]");
  }
  Eigen::MatrixXcd m(n, n);
  std::string token;
  for (long long i = 0; i < n; ++i) {
    for (long long j = 0; j < n; ++j) {
      if (!(in >> token)) {
        throw std::invalid_argument("read_matrix: unexpected end of input at entry (" +
                                    std::to_string(i) + ", " + std::to_string(j) + ")");
      }
      m(i, j) = parse_complex(token);
    }
  }
  return HermitianMatrix(std::move(m));
}

}  // namespace matsamp
