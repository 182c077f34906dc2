#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "shorlab/numerics.hpp"
#include "shorlab/shor_core.hpp"

// Slow reference implementations. Nothing here goes through the grouped
// amplitudes, the spectral coherence formula or the permutation pipeline.
namespace shorlab::oracle {

/// |phi_3> by the explicit double sum over (j, k).
CVector brute_final_state(const ShorInstance& inst, const CVector& alpha);

/// P(k) = sum_v |Q^{-1/2} sum_{j : x^j = v} alpha_j e^{-2 pi i j k / Q}|^2.
std::vector<double> brute_outcome_distribution(const ShorInstance& inst, const CVector& alpha);

/// P(k) read off the diagonal of a joint density matrix.
std::vector<double> brute_mixed_outcome_distribution(const ShorInstance& inst, const CMatrix& rho);

/// 1/2 sum_l tr([sqrt(rho), K_l][sqrt(rho), K_l]^dagger).
double brute_wy_coherence(const CMatrix& rho, const std::vector<CMatrix>& kraus);

/// Computational-basis projectors of dimension d.
std::vector<CMatrix> measurement_kraus(std::size_t d);

/// 1 - sum_i |<i|psi>|^4.
double brute_measurement_coherence(const CVector& psi);

/// 1 - |<a|b>|^2.
double brute_overlap_defect(const CVector& a, const CVector& b);

struct SuccessPair {
  /// Sum of P(k) over every k whose continued fraction recovers r.
  double general = 0.0;
  /// Sum of P(s m) over s coprime to r; NaN when r does not divide Q.
  double exact = 0.0;
};

SuccessPair brute_success_probability(const ShorInstance& inst, const std::vector<double>& dist);

/// |sum_{j<Q} e^{2 pi i j delta}|^2 by direct summation.
double brute_kernel_sq(std::int64_t q, double delta);

/// Unit vectors with i.i.d. Gaussian entries (real, or complex with
/// independent real and imaginary parts).
CVector random_real_amplitudes(std::size_t q, std::mt19937_64& rng);
CVector random_complex_amplitudes(std::size_t q, std::mt19937_64& rng);

/// Haar-ish full-rank state: G G^dagger / tr for a complex Gaussian G.
CMatrix random_density_matrix(std::size_t d, std::mt19937_64& rng);

}  // namespace shorlab::oracle
