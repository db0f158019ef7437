#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "matsamp/hermitian.hpp"
#include "matsamp/rng.hpp"

using namespace matsamp;

namespace {

Eigen::MatrixXcd random_hermitian(Eigen::Index n, Rng& rng) {
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      g(i, j) = std::complex<double>(rng.next_gaussian(), rng.next_gaussian());
    }
  }
  return 0.5 * (g + g.adjoint());
}

// Independent check of the operator norm: power iteration on M. The norm
// ratio ||M v_{k+1}|| / ||M v_k|| converges to max |lambda| regardless of the
// eigenvalue signs.
double power_iteration_norm(const Eigen::MatrixXcd& m, Rng& rng) {
  const Eigen::Index n = m.rows();
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    v[i] = std::complex<double>(rng.next_gaussian(), rng.next_gaussian());
  }
  v.normalize();
  double ratio = 0.0;
  double prev = -1.0;
  int stable = 0;
  for (long it = 0; it < 1000000; ++it) {
    const Eigen::VectorXcd w = m * v;
    ratio = w.norm();
    if (ratio < 1e-300) return 0.0;
    v = w / ratio;
    if (std::abs(ratio - prev) <= 1e-13 * std::max(1.0, ratio)) {
      if (++stable >= 30) break;
    } else {
      stable = 0;
    }
    prev = ratio;
  }
  return ratio;
}

// Independent check of tr exp(sM): partial Taylor sum of the matrix
// exponential, valid to ~1e-9 for ||sM|| <= 2 with 40 terms.
double taylor_trace_exp(const Eigen::MatrixXcd& m, double scale) {
  const Eigen::Index n = m.rows();
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(n, n);
  std::complex<double> trace = static_cast<double>(n);
  const Eigen::MatrixXcd sm = scale * m;
  for (int k = 1; k <= 40; ++k) {
    term = (term * sm) / static_cast<double>(k);
    trace += term.trace();
  }
  return trace.real();
}

}  // namespace

TEST_CASE("construction validates and symmetrizes") {
  Rng rng(41);
  const Eigen::MatrixXcd m = random_hermitian(4, rng);

  // tiny non-Hermitian noise below tolerance is repaired exactly
  Eigen::MatrixXcd noisy = m;
  noisy(0, 1) += std::complex<double>(3e-13, -4e-13);
  const HermitianMatrix h(noisy);
  CHECK((h.entries() - h.entries().adjoint()).cwiseAbs().maxCoeff() == 0.0);

  // beyond tolerance: rejected, not repaired
  Eigen::MatrixXcd bad = m;
  bad(1, 2) += std::complex<double>(1e-9, 0.0);
  CHECK_THROWS_AS(HermitianMatrix{bad}, std::invalid_argument);

  CHECK_THROWS_AS(HermitianMatrix{Eigen::MatrixXcd::Zero(2, 3)}, std::invalid_argument);
  CHECK_THROWS_AS(HermitianMatrix{Eigen::MatrixXcd{}}, std::invalid_argument);

  Eigen::MatrixXcd nan = m;
  nan(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(HermitianMatrix{nan}, std::invalid_argument);
}

TEST_CASE("operator_norm on known spectra") {
  CHECK(operator_norm(HermitianMatrix::zero(3)) == 0.0);
  CHECK(operator_norm(HermitianMatrix::diagonal(Eigen::Vector2d(3.0, -5.0))) == 5.0);

  Eigen::MatrixXcd pauli_x(2, 2);
  pauli_x << 0.0, 1.0, 1.0, 0.0;  // eigenvalues +1 and -1
  CHECK(operator_norm(HermitianMatrix(pauli_x)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("operator_norm agrees with power iteration") {
  Rng rng(2024);
  for (Eigen::Index n = 2; n <= 8; ++n) {
    for (int rep = 0; rep < 3; ++rep) {
      const Eigen::MatrixXcd m = random_hermitian(n, rng);
      const double expected = power_iteration_norm(m, rng);
      CHECK(std::abs(operator_norm(HermitianMatrix(m)) - expected) <= 1e-8);
    }
  }
}

TEST_CASE("trace_exp on known spectra") {
  CHECK(trace_exp(HermitianMatrix::zero(3), 7.0) == 3.0);
  CHECK(trace_exp(HermitianMatrix::diagonal(Eigen::Vector2d(1.0, -1.0)), 1.0) ==
        doctest::Approx(3.0861612696304874).epsilon(1e-14));

  Rng rng(7);
  const HermitianMatrix m(random_hermitian(5, rng));
  CHECK(trace_exp(m, 0.0) == 5.0);

  // convexity floor: tr exp(sM) >= n exp(s tr(M)/n)
  const double tr = m.entries().trace().real();
  CHECK(trace_exp(m, 0.7) >= 5.0 * std::exp(0.7 * tr / 5.0) - 1e-12);
}

TEST_CASE("trace_exp agrees with a Taylor partial sum") {
  Rng rng(99);
  for (int rep = 0; rep < 10; ++rep) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng.next_below(4));
    Eigen::MatrixXcd m = random_hermitian(n, rng);
    // Frobenius norm dominates the operator norm, so this keeps ||sM|| <= 2
    // without using the code path under test.
    m *= 2.0 / m.norm();
    const double scale = rng.next_double() * 2.0 - 1.0;
    CHECK(trace_exp(HermitianMatrix(m), scale) ==
          doctest::Approx(taylor_trace_exp(m, scale)).epsilon(1e-9));
  }
}

TEST_CASE("trace_exp overflow reports the offending eigenvalue") {
  const HermitianMatrix m = HermitianMatrix::diagonal(Eigen::Vector2d(1000.0, 0.0));
  CHECK_THROWS_AS(trace_exp(m, 1.0), std::overflow_error);
  CHECK_THROWS_WITH_AS(trace_exp(m, 1.0),
                       doctest::Contains("eigenvalue lambda = 1000"), std::overflow_error);
  CHECK(trace_exp(m, -1.0) > 0.0);  // other sign is fine
}

TEST_CASE("matrix_sum") {
  Rng rng(5);
  const HermitianMatrix m(random_hermitian(3, rng));
  const HermitianMatrix neg = -1.0 * m;

  const std::vector<HermitianMatrix> cancel{m, neg};
  CHECK(operator_norm(matrix_sum(cancel)) == 0.0);

  const std::vector<HermitianMatrix> single{m};
  CHECK(max_entry_distance(matrix_sum(single), m) == 0.0);

  const std::vector<HermitianMatrix> diag{
      HermitianMatrix::diagonal(Eigen::Vector2d(1.0, 0.0)),
      HermitianMatrix::diagonal(Eigen::Vector2d(0.0, 1.0))};
  CHECK(max_entry_distance(matrix_sum(diag),
                           HermitianMatrix(Eigen::MatrixXcd::Identity(2, 2))) == 0.0);

  CHECK_THROWS_AS(matrix_sum(std::span<const HermitianMatrix>{}), std::invalid_argument);
  const std::vector<HermitianMatrix> mismatched{m, HermitianMatrix::zero(2)};
  CHECK_THROWS_WITH_AS(matrix_sum(mismatched), doctest::Contains("3x3"), std::invalid_argument);
}

TEST_CASE("operator_norm is a norm") {
  Rng rng(13);
  for (int rep = 0; rep < 20; ++rep) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng.next_below(5));
    const HermitianMatrix a(random_hermitian(n, rng));
    const HermitianMatrix b(random_hermitian(n, rng));
    CHECK(operator_norm(a + b) <= operator_norm(a) + operator_norm(b) + 1e-10);
    const double scalar = 4.0 * rng.next_double() - 2.0;
    CHECK(operator_norm(scalar * a) ==
          doctest::Approx(std::abs(scalar) * operator_norm(a)).epsilon(1e-10));
  }
}

TEST_CASE("complex token format round trips") {
  CHECK(format_complex({1.5, 2.0}) == "1.5+2j");
  CHECK(format_complex({1.5, -2.0}) == "1.5-2j");
  CHECK(parse_complex("1.5-2j") == std::complex<double>(1.5, -2.0));
  CHECK(parse_complex("3") == std::complex<double>(3.0, 0.0));
  CHECK(parse_complex("1e+5+2e-3j") == std::complex<double>(1e5, 2e-3));
  CHECK_THROWS_AS(parse_complex(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_complex("1.5~2j"), std::invalid_argument);
  CHECK_THROWS_AS(parse_complex("j"), std::invalid_argument);

  Rng rng(17);
  for (int rep = 0; rep < 50; ++rep) {
    const std::complex<double> z(rng.next_gaussian() * std::pow(10.0, rng.next_below(9)),
                                 rng.next_gaussian());
    CHECK(parse_complex(format_complex(z)) == z);  // %.17g is lossless
  }
}

TEST_CASE("matrix serialization round trips bit-exactly") {
  Rng rng(23);
  for (int rep = 0; rep < 5; ++rep) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng.next_below(5));
    const HermitianMatrix m(random_hermitian(n, rng));
    std::stringstream buffer;
    write_matrix(buffer, m);
    const HermitianMatrix back = read_matrix(buffer);
    CHECK(max_entry_distance(m, back) == 0.0);
  }

  std::stringstream garbage("2\n1+0j 0+1j\n");
  CHECK_THROWS_AS(read_matrix(garbage), std::invalid_argument);  // truncated
  std::stringstream not_hermitian("2\n1+0j 2+0j\n3+0j 4+0j\n");
  CHECK_THROWS_AS(read_matrix(not_hermitian), std::invalid_argument);
}
