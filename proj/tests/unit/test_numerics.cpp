#include <cmath>
#include <random>

#include "doctest.h"
#include "shorlab/numerics.hpp"

using namespace shorlab;

namespace {

CMatrix random_matrix(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

CMatrix random_hermitian(int n, std::mt19937_64& rng) {
  const CMatrix a = random_matrix(n, rng);
  return a + a.adjoint();
}

CMatrix random_density(int n, std::mt19937_64& rng) {
  const CMatrix a = random_matrix(n, rng);
  CMatrix rho = a * a.adjoint();
  return rho / rho.trace();
}

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kInvalidArgument;
}

}  // namespace

TEST_CASE("tensor product of identities") {
  const CMatrix i2 = CMatrix::Identity(2, 2);
  CHECK(frobenius_distance(tensor_product(i2, i2), CMatrix::Identity(4, 4)) == 0.0);
}

TEST_CASE("tensor product shape") {
  const CMatrix p = tensor_product(CMatrix::Ones(2, 2), CMatrix::Ones(3, 3));
  CHECK(p.rows() == 6);
  CHECK(p.cols() == 6);
}

TEST_CASE("F2 dagger tensor I2 against index formula") {
  const double s = 1.0 / std::sqrt(2.0);
  CMatrix f(2, 2);
  f << s, s, s, -s;
  const CMatrix op = tensor_product(f, CMatrix::Identity(2, 2));
  for (int col = 0; col < 4; ++col) {
    const CVector e = CVector::Unit(4, col);
    const CVector out = op * e;
    const int j = col / 2, bj = col % 2;
    for (int row = 0; row < 4; ++row) {
      const int k = row / 2, bk = row % 2;
      const double expected = bk == bj ? (j * k == 1 ? -s : s) : 0.0;
      CHECK(std::abs(out(row) - expected) < 1e-15);
    }
  }
}

TEST_CASE("tensor product associates") {
  std::mt19937_64 rng(1);
  const CMatrix a = random_matrix(2, rng), b = random_matrix(3, rng), c = random_matrix(2, rng);
  const CMatrix left = tensor_product(tensor_product(a, b), c);
  const CMatrix right = tensor_product(a, tensor_product(b, c));
  CHECK((left - right).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("tensor product dimension limit") {
  const CMatrix a = CMatrix::Identity(64, 64);
  CHECK(tensor_product(a, a, 4096).rows() == 4096);
  CHECK(code_of([&] { tensor_product(a, CMatrix::Identity(65, 65), 4096); }) ==
        ErrorCode::kDimensionLimit);
}

TEST_CASE("eigensystem of identity and diagonal") {
  const EigenSystem id = hermitian_eigensystem(CMatrix::Identity(3, 3));
  for (int i = 0; i < 3; ++i) CHECK(id.values(i) == doctest::Approx(1.0));

  CMatrix d = CMatrix::Zero(3, 3);
  d.diagonal() << 3.0, 1.0, 2.0;
  const EigenSystem es = hermitian_eigensystem(d);
  CHECK(es.values(0) == doctest::Approx(3.0));
  CHECK(es.values(1) == doctest::Approx(2.0));
  CHECK(es.values(2) == doctest::Approx(1.0));
  CHECK(std::abs(es.vectors(0, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(es.vectors(2, 1)) == doctest::Approx(1.0));
  CHECK(std::abs(es.vectors(1, 2)) == doctest::Approx(1.0));
}

TEST_CASE("eigensystem reconstruction") {
  std::mt19937_64 rng(7);
  for (int n : {8, 32, 256}) {
    const CMatrix h = random_hermitian(n, rng);
    const EigenSystem es = hermitian_eigensystem(h);
    const CMatrix back = es.vectors * es.values.cast<Complex>().asDiagonal() * es.vectors.adjoint();
    CHECK(frobenius_distance(back, h) <= 1e-10 * std::max(1.0, h.norm() / n));
    CHECK((es.vectors.adjoint() * es.vectors - CMatrix::Identity(n, n)).norm() <= 1e-10);
    for (int i = 1; i < n; ++i) CHECK(es.values(i - 1) >= es.values(i));
  }
}

TEST_CASE("eigensystem rejects non-hermitian input") {
  CMatrix m = CMatrix::Identity(2, 2);
  m(0, 1) = 1.0;
  CHECK(code_of([&] { hermitian_eigensystem(m); }) == ErrorCode::kNotHermitian);
}

TEST_CASE("psd sqrt examples") {
  const int d = 5;
  const CMatrix s = psd_sqrt(CMatrix::Identity(d, d) / double(d));
  CHECK(frobenius_distance(s, CMatrix::Identity(d, d) / std::sqrt(double(d))) <= 1e-12);

  std::mt19937_64 rng(3);
  CVector psi = random_matrix(d, rng).col(0);
  psi.normalize();
  const CMatrix p = projector(psi);
  CHECK(frobenius_distance(psd_sqrt(p), p) <= 1e-10);

  const double eps = 0.3;
  const CMatrix rho = (1.0 - eps) * p + (eps / d) * CMatrix::Identity(d, d);
  const CMatrix expected = std::sqrt(eps / d) * CMatrix::Identity(d, d) +
                           (std::sqrt(1.0 - (d - 1) * eps / d) - std::sqrt(eps / d)) * p;
  CHECK(frobenius_distance(psd_sqrt(rho), expected) <= 1e-10);
}

TEST_CASE("psd sqrt squares back") {
  std::mt19937_64 rng(11);
  for (int n : {4, 16, 64}) {
    const CMatrix rho = random_density(n, rng);
    const CMatrix s = psd_sqrt(rho);
    CHECK(frobenius_distance(s * s, rho) <= kReconTol);
    CHECK(is_hermitian(s));
  }
}

TEST_CASE("psd sqrt clamps tiny negatives and rejects real ones") {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -5e-11;
  const CMatrix s = psd_sqrt(m);
  CHECK(std::abs(s(1, 1)) == 0.0);
  m(1, 1) = -1e-8;
  CHECK(code_of([&] { psd_sqrt(m); }) == ErrorCode::kNotPsd);
}

TEST_CASE("trace product") {
  const int d = 6;
  CHECK(trace_product(CMatrix::Identity(d, d), CMatrix::Identity(d, d)).real() ==
        doctest::Approx(d));
  std::mt19937_64 rng(5);
  const CMatrix rho = random_density(d, rng);
  CHECK(std::abs(trace_product(rho, CMatrix::Identity(d, d)) - 1.0) <= 1e-12);
  for (int i = 0; i < 10; ++i) {
    const CMatrix a = random_matrix(d, rng), b = random_matrix(d, rng);
    CHECK(std::abs(trace_product(a, b) - trace_product(b, a)) <= 1e-12);
    CHECK(std::abs(trace_product(a, b) - (a * b).trace()) <= 1e-12);
  }
  CHECK(code_of([&] { trace_product(CMatrix::Zero(2, 3), CMatrix::Zero(2, 3)); }) ==
        ErrorCode::kShape);
}

TEST_CASE("density matrix validation") {
  CHECK_NOTHROW(require_density_matrix(CMatrix::Identity(3, 3) / 3.0));
  CHECK(code_of([] { require_density_matrix(CMatrix::Identity(3, 3)); }) == ErrorCode::kNotAState);
  CMatrix neg = CMatrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  CHECK(code_of([&] { require_density_matrix(neg); }) == ErrorCode::kNotAState);
}

TEST_CASE("error messages carry the tag") {
  try {
    hermitian_eigensystem(CMatrix::Zero(2, 3));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).rfind("not hermitian", 0) == 0);
  }
}
