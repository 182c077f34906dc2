#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "shorlab/coherence.hpp"

using namespace shorlab;

namespace {

constexpr double kPi = std::numbers::pi;

CMatrix random_matrix(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

CMatrix random_density(int n, std::mt19937_64& rng) {
  const CMatrix a = random_matrix(n, rng);
  CMatrix rho = a * a.adjoint();
  return rho / rho.trace();
}

CVector random_state(int n, std::mt19937_64& rng) { return random_matrix(n, rng).col(0).normalized(); }

CMatrix random_unitary(int n, std::mt19937_64& rng) {
  Eigen::HouseholderQR<CMatrix> qr(random_matrix(n, rng));
  return qr.householderQ() * CMatrix::Identity(n, n);
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

std::vector<CMatrix> basis_projectors(int d) {
  std::vector<CMatrix> ops;
  for (int i = 0; i < d; ++i) {
    CMatrix k = CMatrix::Zero(d, d);
    k(i, i) = 1.0;
    ops.push_back(k);
  }
  return ops;
}

const auto& wy = OperatorMonotoneFunction::wigner_yanase();
const auto& sld = OperatorMonotoneFunction::sld();

}  // namespace

TEST_CASE("Morozova-Chentsov values") {
  CHECK(morozova_chentsov(wy, 1, 1) == doctest::Approx(1.0));
  CHECK(morozova_chentsov(wy, 4, 1) == doctest::Approx(4.0 / 9.0));
  CHECK(morozova_chentsov(wy, 0.3, 0.0) == doctest::Approx(1.0 / (0.3 * 0.25)));
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const double x = u(rng), y = u(rng);
    CHECK(std::abs(morozova_chentsov(wy, x, y) - morozova_chentsov(wy, y, x)) <= 1e-12);
    CHECK(std::abs(morozova_chentsov(sld, x, y) - morozova_chentsov(sld, y, x)) <= 1e-12);
    CHECK(std::abs(morozova_chentsov(wy, x, y) - 4.0 / std::pow(std::sqrt(x) + std::sqrt(y), 2)) <=
          1e-12 * morozova_chentsov(wy, x, y));
  }
  CHECK(code_of([] { morozova_chentsov(wy, 0, 0); }) == ErrorCode::kUndefined);
}

TEST_CASE("operator monotone function validation") {
  CHECK(OperatorMonotoneFunction::by_name("wy").name() == "wy");
  CHECK(OperatorMonotoneFunction::by_name("sld").f0() == 0.5);
  CHECK(code_of([] { OperatorMonotoneFunction::by_name("kubo"); }) == ErrorCode::kInvalidArgument);
  // Not symmetric.
  CHECK(code_of([] {
          OperatorMonotoneFunction::create("bad", [](double x) { return 1.0 + x * x; }, 1.0);
        }) == ErrorCode::kInvalidArgument);
  // f0 does not match.
  CHECK(code_of([] {
          OperatorMonotoneFunction::create("bad", [](double x) { return 0.5 * (1.0 + x); }, 0.4);
        }) == ErrorCode::kInvalidArgument);
  // Symmetric but decreasing.
  CHECK(code_of([] {
          OperatorMonotoneFunction::create(
              "bad", [](double x) { return 0.5 * (1 + x) + 0.4 * (x - 1) * (x - 1) / (x + 1); }, 0.9);
        }) == ErrorCode::kInvalidArgument);
  // The symmetric mean sqrt(x) is rejected because f(0) = 0.
  CHECK(code_of([] {
          OperatorMonotoneFunction::create("sqrt", [](double x) { return std::sqrt(x); }, 0.0);
        }) == ErrorCode::kInvalidArgument);
  const auto mixed_mean = OperatorMonotoneFunction::create(
      "harmonic", [](double x) { return 2.0 * x / (1.0 + x) + 0.5 * (1.0 + x); }, 0.5);
  CHECK(mixed_mean(1.0) == doctest::Approx(2.0));
}

TEST_CASE("skew information examples") {
  const int d = 4;
  CMatrix rho = CMatrix::Zero(d, d);
  rho.diagonal() << 0.4, 0.3, 0.2, 0.1;
  CMatrix k = CMatrix::Zero(d, d);
  k.diagonal() << 1.0, -2.0, 0.5, 3.0;
  CHECK(std::abs(skew_information(rho, k, wy)) <= 1e-15);

  std::mt19937_64 rng(4);
  const CVector psi = random_state(d, rng);
  const CMatrix kk = random_matrix(d, rng);
  const double expected = 0.5 * (psi.dot(kk.adjoint() * kk * psi).real() +
                                 psi.dot(kk * kk.adjoint() * psi).real()) -
                          std::norm(psi.dot(kk * psi));
  CHECK(std::abs(skew_information(projector(psi), kk, wy) - expected) <= 1e-10);
  CHECK(std::abs(skew_information(projector(psi), kk, sld) - expected) <= 1e-10);
  CHECK(std::abs(skew_information(CMatrix::Identity(d, d) / double(d), kk, wy)) <= 1e-15);

  const CMatrix sigma = random_density(d, rng);
  CHECK(skew_information(sigma, kk, wy) >= 0.0);
  CHECK(skew_information(sigma, kk, sld) >= 0.0);
  CHECK(code_of([&] { skew_information(CMatrix::Identity(d, d), kk, wy); }) ==
        ErrorCode::kNotAState);
}

TEST_CASE("Wigner-Yanase skew information against the commutator form") {
  // F_WY(rho, K) = 1/2 tr([sqrt(rho), K]^dag [sqrt(rho), K]).
  std::mt19937_64 rng(6);
  const int d = 5;
  const CMatrix rho = random_density(d, rng);
  const CMatrix k = random_matrix(d, rng);
  const CMatrix s = psd_sqrt(rho);
  const CMatrix c = s * k - k * s;
  const double expected = 0.5 * (c.adjoint() * c).trace().real();
  CHECK(std::abs(skew_information(rho, k, wy) - expected) <= 1e-10);
}

TEST_CASE("measurement channel") {
  const auto pi2 = measurement_channel(2);
  CMatrix plus(2, 2);
  plus << 0.5, 0.5, 0.5, 0.5;
  CHECK((pi2.apply(plus) - CMatrix::Identity(2, 2) / 2.0).norm() <= 1e-15);
  CMatrix diag = CMatrix::Zero(2, 2);
  diag.diagonal() << 0.7, 0.3;
  CHECK((pi2.apply(diag) - diag).norm() == 0.0);
  CMatrix sum = CMatrix::Zero(5, 5);
  const auto ops = measurement_channel(5).kraus_operators();
  for (const auto& k : *ops) sum += k.adjoint() * k;
  CHECK((sum - CMatrix::Identity(5, 5)).norm() == 0.0);
}

TEST_CASE("channel validation") {
  CHECK(code_of([] { kraus_channel({CMatrix::Identity(2, 2) * 0.5}); }) ==
        ErrorCode::kInvalidArgument);
  CHECK(code_of([] { depolarizing_channel(4, -0.1, CMatrix::Identity(4, 4)); }) ==
        ErrorCode::kNotCompletelyPositive);
  CHECK(code_of([] { depolarizing_channel(4, 1.01, CMatrix::Identity(4, 4)); }) ==
        ErrorCode::kNotCompletelyPositive);
  CHECK_NOTHROW(depolarizing_channel(4, -1.0 / 15.0, CMatrix::Identity(4, 4)));
  CHECK(code_of([] { unitary_channel(CMatrix::Ones(2, 2)); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { compose({measurement_channel(2), measurement_channel(3)}); }) ==
        ErrorCode::kShape);
  CHECK(code_of([] { measurement_channel(2).apply(CMatrix::Identity(3, 3)); }) ==
        ErrorCode::kShape);
}

TEST_CASE("depolarizing channel") {
  std::mt19937_64 rng(8);
  const int d = 6;
  const CMatrix v = random_unitary(d, rng);
  const CMatrix rho = random_density(d, rng);
  CHECK((depolarizing_channel(d, 0.0, v).apply(rho) - CMatrix::Identity(d, d) / double(d)).norm() <=
        1e-15);
  CHECK((depolarizing_channel(d, 1.0, v).apply(rho) - v * rho * v.adjoint()).norm() <= 1e-14);
  for (double lambda : {-1.0 / 35.0, 0.2, 0.9}) {
    const auto phi = depolarizing_channel(d, lambda, v);
    CHECK(std::abs(phi.apply(random_density(d, rng)).trace() - 1.0) <= 1e-12);
    CHECK((phi.apply(CMatrix::Identity(d, d)) - CMatrix::Identity(d, d)).norm() <= 1e-12);
    CHECK_FALSE(phi.kraus_operators().has_value());
  }
}

TEST_CASE("adjoints satisfy the duality relation") {
  std::mt19937_64 rng(10);
  const int d = 4;
  const CMatrix v = random_unitary(d, rng);
  const CMatrix k0 = std::sqrt(0.3) * CMatrix::Identity(d, d);
  const CMatrix k1 = std::sqrt(0.7) * v;
  const std::vector<QuantumChannel> channels = {
      kraus_channel({k0, k1}), unitary_channel(v), measurement_channel(d),
      depolarizing_channel(d, 0.4, v),
      compose({depolarizing_channel(d, -0.05, v), measurement_channel(d), unitary_channel(v)})};
  for (const auto& phi : channels) {
    const CMatrix x = random_matrix(d, rng), y = random_matrix(d, rng);
    CHECK(std::abs(trace_product(y, phi.apply(x)) - trace_product(phi.apply_adjoint(y), x)) <= 1e-12);
    CHECK(std::abs(phi.apply(random_density(d, rng)).trace() - 1.0) <= 1e-10);
  }
}

TEST_CASE("composed Kraus operators") {
  std::mt19937_64 rng(12);
  const int d = 3;
  const CMatrix v = random_unitary(d, rng);
  const auto composed = compose({unitary_channel(v), measurement_channel(d)});
  const auto ops = composed.kraus_operators();
  REQUIRE(ops.has_value());
  CHECK(ops->size() == 3);
  const CMatrix rho = random_density(d, rng);
  CMatrix via_kraus = CMatrix::Zero(d, d);
  for (const auto& k : *ops) via_kraus += k * rho * k.adjoint();
  CHECK((via_kraus - composed.apply(rho)).norm() <= 1e-14);
}

TEST_CASE("channel coherence of the maximally mixed state vanishes") {
  const int d = 8;
  std::mt19937_64 rng(14);
  const CMatrix mixed = CMatrix::Identity(d, d) / double(d);
  const CMatrix v = random_unitary(d, rng);
  for (const auto& phi : {measurement_channel(d), unitary_channel(v), depolarizing_channel(d, 0.5, v)}) {
    CHECK(std::abs(channel_coherence(mixed, phi, wy)) <= 1e-15);
    CHECK(std::abs(wy_channel_coherence(mixed, phi)) <= 1e-12);
  }
}

TEST_CASE("pure channel coherence examples") {
  std::mt19937_64 rng(16);
  const int d = 8;
  const CVector psi = random_state(d, rng);
  const CMatrix u = random_unitary(d, rng);
  CHECK(std::abs(pure_channel_coherence(psi, unitary_channel(u)) - (1 - std::norm(psi.dot(u * psi)))) <=
        1e-12);
  const auto pi = measurement_channel(d);
  CHECK(pure_channel_coherence(CVector::Unit(d, 3), pi) == 0.0);
  CHECK(std::abs(pure_channel_coherence(CVector::Ones(d) / std::sqrt(double(d)), pi) - (1 - 1.0 / d)) <=
        1e-15);
  CHECK(std::abs(pure_channel_coherence(psi, pi) - (1 - psi.cwiseAbs2().cwiseAbs2().sum())) <= 1e-14);
  CHECK(std::abs(pure_channel_coherence(psi, kraus_channel(basis_projectors(d))) -
                 pure_channel_coherence(psi, pi)) <= 1e-14);
  CHECK(code_of([&] { pure_channel_coherence(psi, depolarizing_channel(d, 0.5, u)); }) ==
        ErrorCode::kNoKrausForm);
  CHECK(code_of([&] { pure_channel_coherence(2.0 * psi, pi); }) == ErrorCode::kNotNormalized);
}

TEST_CASE("pure state reduction holds on the spectral path for any f") {
  std::mt19937_64 rng(18);
  const int d = 6;
  const CMatrix v = random_unitary(d, rng);
  const std::vector<QuantumChannel> channels = {
      measurement_channel(d), unitary_channel(v), kraus_channel(basis_projectors(d)),
      compose({unitary_channel(v), measurement_channel(d)})};
  for (const auto& phi : channels) {
    const CVector psi = random_state(d, rng);
    const double expected = pure_channel_coherence(psi, phi);
    for (const auto* f : {&wy, &sld}) {
      CHECK(std::abs(channel_coherence_spectral(projector(psi), phi, *f) - expected) <= 1e-10);
      CHECK(std::abs(channel_coherence(projector(psi), phi, *f) - expected) <= 1e-10);
    }
    CHECK(std::abs(wy_channel_coherence(projector(psi), phi) - expected) <= 1e-10);
  }
}

TEST_CASE("WY channel coherence: spectral and trace forms agree") {
  std::mt19937_64 rng(20);
  const int d = 7;
  const CMatrix v = random_unitary(d, rng);
  const std::vector<QuantumChannel> channels = {
      measurement_channel(d), unitary_channel(v), depolarizing_channel(d, 0.3, v),
      kraus_channel(basis_projectors(d)),
      compose({depolarizing_channel(d, 0.6, v), measurement_channel(d)})};
  for (const auto& phi : channels) {
    const CMatrix rho = random_density(d, rng);
    const double spectral = channel_coherence(rho, phi, wy);
    CHECK(spectral >= 0.0);
    CHECK(std::abs(spectral - wy_channel_coherence(rho, phi)) <= 1e-9);
    CHECK(channel_coherence(rho, phi, sld) >= 0.0);
  }
}

TEST_CASE("generic weights match the measurement fast path on degenerate spectra") {
  std::mt19937_64 rng(22);
  const int d = 9;
  const CVector psi = random_state(d, rng);
  const CVector chi = random_state(d, rng);
  // Three eigenvalue clusters: one large, one of size 1, one of size 1.
  CMatrix rho = 0.5 * projector(psi) + 0.2 * projector(chi);
  rho += (0.3 / d) * CMatrix::Identity(d, d);
  rho /= rho.trace().real();
  const auto fast = measurement_channel(d);
  const auto generic = kraus_channel(basis_projectors(d));
  for (const auto* f : {&wy, &sld}) {
    CHECK(std::abs(channel_coherence(rho, fast, *f) - channel_coherence(rho, generic, *f)) <= 1e-12);
  }
}

TEST_CASE("shor unitary channel") {
  const auto inst = ShorInstance::circuit(15, 7, 4);
  const auto s = shor_unitary_channel(inst);
  const CVector alpha = register_amplitudes(Hadamard{}, inst);
  const CVector psi1 = initial_pure_state(inst, alpha);
  const CVector psi3 = run_pure_pipeline(inst, alpha);
  CHECK((s.apply(projector(psi1)) - projector(psi3)).norm() <= 1e-12);
  CHECK(unitarity_defect(std::get<UnitaryMap>(s.form()).u) <= 1e-10);
  CHECK(std::abs(channel_coherence(projector(psi1), s, wy) - (1 - 1.0 / 16)) <= 1e-12);
}

TEST_CASE("Full and compact modes give the same pure coherence") {
  const auto compact = ShorInstance::circuit(15, 7, 4, BMode::kCompact);
  const auto full = ShorInstance::circuit(15, 7, 4, BMode::kFull);
  const CVector alpha = local_unitary_amplitudes(0.4, 1.0, 0.6, 4);
  const double a = pure_channel_coherence(run_pure_pipeline(compact, alpha), measurement_channel(compact.d()));
  const double b = pure_channel_coherence(run_pure_pipeline(full, alpha), measurement_channel(full.d()));
  CHECK(std::abs(a - b) <= 1e-12);
}

TEST_CASE("pseudo-pure coherence under measurement") {
  const auto inst = ShorInstance::circuit(15, 7, 4);
  const double d = static_cast<double>(inst.d());
  const CVector psi3 = run_pure_pipeline(inst, register_amplitudes(Hadamard{}, inst));
  const double c = 1 - psi3.cwiseAbs2().cwiseAbs2().sum();
  const auto pi = measurement_channel(inst.d());
  for (double eps : {0.0, 0.1, 0.5, 0.9, 1.0}) {
    const CMatrix rho = (1 - eps) * projector(psi3) + (eps / d) * CMatrix::Identity(inst.d(), inst.d());
    const double l1 = 1 - (d - 1) * eps / d, mu = eps / d;
    const double expected = std::pow(std::sqrt(l1) - std::sqrt(mu), 2) * c;
    CHECK(std::abs(channel_coherence(rho, pi, wy) - expected) <= 1e-10);
    CHECK(std::abs(wy_channel_coherence(rho, pi) - expected) <= 1e-10);
  }
}

TEST_CASE("noisy Shor channel output") {
  const auto inst = ShorInstance::circuit(15, 7, 4);
  const auto d = static_cast<Eigen::Index>(inst.d());
  const CVector psi1 = initial_pure_state(inst, register_amplitudes(Hadamard{}, inst));
  const PhaseFunction phase = phase_pi_over_q(inst.q());
  const CMatrix w = phase_unitary(inst, phase);
  const CMatrix s = shor_unitary(inst);
  // |psi3'> = (F^dag (x) I) W U W |psi1>, with S = (F^dag (x) I) U.
  const CVector psi3p = s * (modexp_permutation(inst).to_matrix().adjoint() * w *
                             modexp_permutation(inst).to_matrix() * w * psi1);
  for (double lambda : {0.0, 0.3, 0.8, 1.0, -1.0 / (64.0 * 64.0 - 1.0)}) {
    const CMatrix out = noisy_shor_channel(inst, lambda, phase).apply(projector(psi1));
    const CMatrix expected = lambda * lambda * projector(psi3p) +
                             (1 - lambda * lambda) * CMatrix::Identity(d, d) / double(d);
    CHECK((out - expected).norm() <= 1e-10);
    CHECK(std::abs(out.trace() - 1.0) <= 1e-12);
    CHECK(is_hermitian(out, 1e-12));
  }
}

TEST_CASE("noisy outcome distribution") {
  const auto inst = ShorInstance::circuit(15, 7, 4);
  const auto standard = noisy_outcome_distribution(inst, 1.0, zero_phase());
  for (std::size_t k = 0; k < 16; ++k) CHECK(std::abs(standard[k] - (k % 4 == 0 ? 0.25 : 0.0)) <= 1e-12);
  for (double p : noisy_outcome_distribution(inst, 0.0, zero_phase())) CHECK(std::abs(p - 1.0 / 16) <= 1e-12);
  const double lambda = 0.8;
  const auto shifted = noisy_outcome_distribution(inst, lambda, phase_pi_over_q(16));
  for (std::size_t k = 0; k < 16; ++k) {
    const double expected = k % 4 == 1 ? lambda * lambda / 4 + (1 - lambda * lambda) / 16
                                       : (1 - lambda * lambda) / 16;
    CHECK(std::abs(shifted[k] - expected) <= 1e-12);
  }
}

TEST_CASE("WY coherence of the input under the noisy channel") {
  const auto inst = ShorInstance::circuit(15, 7, 4);
  const double d = static_cast<double>(inst.d()), q = static_cast<double>(inst.q());
  const CMatrix rho1 = projector(initial_pure_state(inst, register_amplitudes(Hadamard{}, inst)));
  for (double lambda : {0.0, 0.4, 0.9, 1.0}) {
    const auto e = noisy_shor_channel(inst, lambda, phase_pi_over_q(inst.q()));
    const double expected = lambda * lambda * (1 / d - 1 / q) + (d - 1) / d;
    CHECK(std::abs(wy_channel_coherence(rho1, e) - expected) <= 1e-10);
    CHECK(std::abs(channel_coherence(rho1, e, wy) - expected) <= 1e-10);
  }
}

TEST_CASE("phase presets") {
  CHECK(zero_phase()(5) == 0.0);
  CHECK(phase_pi_over_q(16)(4) == doctest::Approx(kPi / 4));
  CHECK(phase_pi_over_6q(16)(4) == doctest::Approx(kPi / 24));
}
