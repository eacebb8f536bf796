#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "ctbands/eigen.hpp"
#include "oracle.hpp"

using ctbands::Complex;
using ctbands::ComplexMatrix;
using ctbands::EigenResult;
using ctbands::SvdResult;

namespace {

ComplexMatrix diag2(double a, double b) {
  ComplexMatrix m(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

double max_eigen_residual(const ComplexMatrix& m, const EigenResult& eig) {
  double worst = 0.0;
  for (std::size_t k = 0; k < eig.values.size(); ++k) {
    std::vector<Complex> v = eig.vectors.col(k);
    std::vector<Complex> mv = m.apply(v);
    ctbands::vaxpy(mv, -eig.values[k], v);
    worst = std::max(worst, ctbands::vnorm(mv));
  }
  return worst;
}

double unitarity_error(const ComplexMatrix& u) {
  const ComplexMatrix gram = u.adjoint() * u;
  return (gram - ComplexMatrix::identity(u.cols())).max_abs();
}

ComplexMatrix reconstruct(const SvdResult& dec) {
  const std::size_t n = dec.singular_values.size();
  ComplexMatrix s(n, n);
  for (std::size_t i = 0; i < n; ++i) s(i, i) = dec.singular_values[i];
  return dec.left_vectors * s * dec.right_vectors.adjoint();
}

ComplexMatrix rice_mele_q(std::size_t n, double delta) {
  ComplexMatrix q(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    q(j, j) = 1.0 - delta;
    q((j + 1) % n, j) = 1.0 + delta;
  }
  return q;
}

}  // namespace

TEST_CASE("hermitian_eigen leaves a diagonal matrix untouched") {
  const EigenResult eig = ctbands::hermitian_eigen(diag2(2.0, 3.0));
  REQUIRE(eig.values == std::vector<double>{2.0, 3.0});
  REQUIRE((eig.vectors - ComplexMatrix::identity(2)).max_abs() == 0.0);
}

TEST_CASE("hermitian_eigen solves the symmetric swap matrix") {
  ComplexMatrix m(2, 2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  const EigenResult eig = ctbands::hermitian_eigen(m);
  REQUIRE(eig.values[0] == Catch::Approx(-1.0).margin(1e-14));
  REQUIRE(eig.values[1] == Catch::Approx(1.0).margin(1e-14));
  REQUIRE(max_eigen_residual(m, eig) < 1e-14);
}

TEST_CASE("hermitian_eigen handles a single entry") {
  ComplexMatrix m(1, 1);
  m(0, 0) = -4.5;
  REQUIRE(ctbands::hermitian_eigen(m).values == std::vector<double>{-4.5});
}

TEST_CASE("hermitian_eigen matches the determinant-bisection oracle") {
  std::mt19937 gen(42);
  const ComplexMatrix m = oracle::random_hermitian(gen, 6);
  const EigenResult eig = ctbands::hermitian_eigen(m);
  const std::vector<double> expected = oracle::eigen_bisect(m);
  REQUIRE(expected.size() == 6);
  REQUIRE(oracle::multiset_distance(eig.values, expected) < 1e-8);
}

TEST_CASE("hermitian_eigen meets its residual and unitarity contract") {
  std::mt19937 gen(7);
  const ComplexMatrix m = oracle::random_hermitian(gen, 8);
  const EigenResult eig = ctbands::hermitian_eigen(m);

  REQUIRE(max_eigen_residual(m, eig) <= 1e-12 * m.fro_norm());
  REQUIRE(unitarity_error(eig.vectors) < 1e-12);

  double trace = 0.0, sum = 0.0;
  for (std::size_t i = 0; i < 8; ++i) trace += m(i, i).real();
  for (const double v : eig.values) sum += v;
  REQUIRE(std::abs(sum - trace) <= 1e-10 * m.fro_norm());

  for (std::size_t k = 1; k < eig.values.size(); ++k)
    REQUIRE(eig.values[k - 1] <= eig.values[k]);
}

TEST_CASE("hermitian_eigen rejects bad input") {
  ComplexMatrix skewed(2, 2);
  skewed(0, 1) = 1.0;
  skewed(1, 0) = 2.0;
  REQUIRE_THROWS_AS(ctbands::hermitian_eigen(skewed), ctbands::NotHermitian);
  REQUIRE_THROWS_AS(ctbands::hermitian_eigen(ComplexMatrix(2, 3)), ctbands::DimensionMismatch);
  REQUIRE_THROWS_AS(ctbands::hermitian_eigen(ComplexMatrix()), ctbands::DimensionMismatch);
}

TEST_CASE("svd of a single coupling") {
  ComplexMatrix q(1, 1);
  q(0, 0) = 1.0;
  const SvdResult dec = ctbands::svd(q);
  REQUIRE(dec.singular_values == std::vector<double>{1.0});
  REQUIRE(dec.left_vectors(0, 0) == Complex{1.0, 0.0});
  REQUIRE(dec.right_vectors(0, 0) == Complex{1.0, 0.0});
}

TEST_CASE("svd completes the left basis across a zero mode") {
  const SvdResult dec = ctbands::svd(diag2(3.0, 0.0));
  REQUIRE(dec.singular_values == std::vector<double>{3.0, 0.0});
  REQUIRE(unitarity_error(dec.left_vectors) < 1e-12);
  REQUIRE(unitarity_error(dec.right_vectors) < 1e-12);
  // the zero channel's right vector really annihilates Q
  REQUIRE(ctbands::vnorm(diag2(3.0, 0.0).apply(dec.right_vectors.col(1))) == 0.0);
}

TEST_CASE("svd of a rank-deficient column matrix") {
  ComplexMatrix q(2, 2);
  q(0, 0) = 1.0;
  q(1, 0) = 2.0;
  const SvdResult dec = ctbands::svd(q);
  REQUIRE(dec.singular_values[0] == Catch::Approx(std::sqrt(5.0)).margin(1e-12));
  REQUIRE(dec.singular_values[1] == 0.0);
  REQUIRE(unitarity_error(dec.left_vectors) < 1e-10);
  REQUIRE((q - reconstruct(dec)).fro_norm() <= 1e-9 * q.fro_norm());
}

TEST_CASE("svd reproduces the dimerized-ring dispersion") {
  const std::size_t n = 8;
  const double delta = 0.3;
  const ComplexMatrix q = rice_mele_q(n, delta);
  const SvdResult dec = ctbands::svd(q);

  std::vector<double> analytic;
  for (std::size_t m = 1; m <= n; ++m) {
    const double k = 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n);
    const double c = std::cos(0.5 * k);
    analytic.push_back(2.0 * std::sqrt(delta * delta + (1.0 - delta * delta) * c * c));
  }
  REQUIRE(oracle::multiset_distance(dec.singular_values, analytic) < 1e-10);

  // independent crosscheck: dense determinant scan on Q^dagger Q; the sign
  // scan only resolves odd-multiplicity roots, and the ring pairs k with -k,
  // so it is guaranteed to see just the two simple roots at k = pi and 2 pi
  const std::vector<double> lambdas = oracle::eigen_bisect(q.adjoint() * q);
  REQUIRE(lambdas.size() >= 2);
  for (const double l : lambdas) {
    const double s = std::sqrt(std::max(l, 0.0));
    double best = 1e300;
    for (const double a : analytic) best = std::min(best, std::abs(s - a));
    REQUIRE(best < 1e-8);
  }
  const auto saw = [&](double target) {
    for (const double l : lambdas)
      if (std::abs(std::sqrt(std::max(l, 0.0)) - target) < 1e-8) return true;
    return false;
  };
  REQUIRE(saw(2.0 * delta));  // k = pi
  REQUIRE(saw(2.0));          // k = 2 pi
}

TEST_CASE("svd invariants on a random complex block") {
  std::mt19937 gen(123);
  const ComplexMatrix q = oracle::random_complex(gen, 7);
  const SvdResult dec = ctbands::svd(q);

  for (std::size_t k = 1; k < 7; ++k)
    REQUIRE(dec.singular_values[k - 1] >= dec.singular_values[k]);

  double sum_sq = 0.0;
  for (const double s : dec.singular_values) sum_sq += s * s;
  const double fro2 = q.fro_norm() * q.fro_norm();
  REQUIRE(std::abs(sum_sq - fro2) <= 1e-10 * fro2);

  REQUIRE(unitarity_error(dec.left_vectors) < 1e-10);
  REQUIRE(unitarity_error(dec.right_vectors) < 1e-10);
  REQUIRE((q - reconstruct(dec)).fro_norm() <= 1e-9 * q.fro_norm());

  // Q * v_n = s_n * u_n, channel by channel
  for (std::size_t k = 0; k < 7; ++k) {
    std::vector<Complex> qv = q.apply(dec.right_vectors.col(k));
    ctbands::vaxpy(qv, -Complex{dec.singular_values[k], 0.0}, dec.left_vectors.col(k));
    REQUIRE(ctbands::vnorm(qv) <= 1e-10 * q.fro_norm());
  }

  // agreement with the eigensolver route on the squared problem
  const ctbands::EigenResult eig = ctbands::hermitian_eigen(q.adjoint() * q);
  std::vector<double> s_sq;
  for (const double s : dec.singular_values) s_sq.push_back(s * s);
  REQUIRE(oracle::multiset_distance(s_sq, eig.values) < 1e-9);
}

TEST_CASE("svd requires a square block") {
  REQUIRE_THROWS_AS(ctbands::svd(ComplexMatrix(2, 3)), ctbands::DimensionMismatch);
}
