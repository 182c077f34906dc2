#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "shorlab/coherence.hpp"
#include "shorlab/oracle.hpp"

using namespace shorlab;

TEST_CASE("brute distribution of the canonical instance") {
  const auto inst = ShorInstance::circuit(15, 7, 4);
  const auto dist = oracle::brute_outcome_distribution(inst, CVector::Constant(16, 0.25));
  double total = 0.0;
  for (std::size_t k = 0; k < 16; ++k) {
    CHECK(std::abs(dist[k] - (k % 4 == 0 ? 0.25 : 0.0)) <= 1e-12);
    total += dist[k];
  }
  CHECK(std::abs(total - 1.0) <= 1e-12);
}

TEST_CASE("brute distribution matches the pipeline") {
  std::mt19937_64 rng(42);
  for (BMode mode : {BMode::kCompact, BMode::kFull}) {
    const auto inst = ShorInstance::circuit(15, 7, 4, mode);
    for (int i = 0; i < 100; ++i) {
      const CVector alpha = i % 2 ? oracle::random_complex_amplitudes(16, rng)
                                  : oracle::random_real_amplitudes(16, rng);
      const auto brute = oracle::brute_outcome_distribution(inst, alpha);
      const auto fast = outcome_distribution(run_pure_pipeline(inst, alpha), inst);
      double total = 0.0;
      for (std::size_t k = 0; k < 16; ++k) {
        CHECK(std::abs(brute[k] - fast[k]) <= 1e-12);
        total += brute[k];
      }
      CHECK(std::abs(total - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("brute final state matches the pipeline") {
  std::mt19937_64 rng(1);
  const auto inst = ShorInstance::circuit(21, 2, 5, BMode::kFull);
  const CVector alpha = oracle::random_complex_amplitudes(inst.dim_a(), rng);
  CHECK((oracle::brute_final_state(inst, alpha) - run_pure_pipeline(inst, alpha)).norm() <= 1e-12);
}

TEST_CASE("brute WY coherence") {
  std::mt19937_64 rng(3);
  const std::size_t d = 6;
  CMatrix diag = CMatrix::Zero(6, 6);
  diag.diagonal() << 0.3, 0.2, 0.2, 0.1, 0.1, 0.1;
  CHECK(std::abs(oracle::brute_wy_coherence(diag, oracle::measurement_kraus(d))) <= 1e-15);

  for (int i = 0; i < 10; ++i) {
    const CMatrix rho = oracle::random_density_matrix(d, rng);
    CHECK(std::abs(oracle::brute_wy_coherence(rho, oracle::measurement_kraus(d)) -
                   wy_channel_coherence(rho, measurement_channel(d))) <= 1e-9);
  }

  const auto inst = ShorInstance::circuit(15, 7, 4);
  const CVector psi3 = run_pure_pipeline(inst, CVector::Constant(16, 0.25));
  CHECK(std::abs(oracle::brute_wy_coherence(projector(psi3), oracle::measurement_kraus(inst.d())) -
                 oracle::brute_measurement_coherence(psi3)) <= 1e-10);
  CHECK(std::abs(oracle::brute_measurement_coherence(psi3) - 0.9375) <= 1e-12);
}

TEST_CASE("brute success probability") {
  const auto inst = ShorInstance::circuit(15, 7, 4);
  const auto standard = oracle::brute_outcome_distribution(inst, CVector::Constant(16, 0.25));
  const auto s = oracle::brute_success_probability(inst, standard);
  CHECK(s.general == doctest::Approx(0.5));
  CHECK(s.exact == doctest::Approx(0.5));

  const auto mixed = oracle::brute_mixed_outcome_distribution(inst, CMatrix(CMatrix::Identity(64, 64) / 64.0));
  CHECK(oracle::brute_success_probability(inst, mixed).exact == doctest::Approx(0.125));

  const auto noisy = noisy_outcome_distribution(inst, 1.0, zero_phase());
  CHECK(oracle::brute_success_probability(inst, noisy).exact == doctest::Approx(0.5));
  CHECK(oracle::brute_success_probability(inst, noisy).general == doctest::Approx(0.5));

  const auto inexact = ShorInstance::with_register_size(21, 2, 16);
  CHECK(std::isnan(oracle::brute_success_probability(inexact, std::vector<double>(16, 1.0 / 16)).exact));
}

TEST_CASE("brute kernel") {
  CHECK(oracle::brute_kernel_sq(16, 0.0) == doctest::Approx(256.0));
  CHECK(oracle::brute_kernel_sq(16, 1.0 / 16) <= 1e-25);
}

TEST_CASE("random generators are normalized and reproducible") {
  std::mt19937_64 a(42), b(42);
  const CVector x = oracle::random_real_amplitudes(16, a);
  const CVector y = oracle::random_real_amplitudes(16, b);
  CHECK(x == y);
  CHECK(std::abs(x.norm() - 1.0) <= 1e-15);
  CHECK(x.imag().norm() == 0.0);
  const CVector z = oracle::random_complex_amplitudes(16, a);
  CHECK(std::abs(z.norm() - 1.0) <= 1e-15);
  CHECK(z.imag().norm() > 0.0);
}
