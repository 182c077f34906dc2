#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "shorlab/numerics.hpp"

namespace shorlab {

/// How register B is represented.
///  - kFull: 2^ceil(log2 N) basis states |v>, v the integer value.
///  - kCompact: only the r states of the orbit {x^a mod N}, indexed by a.
/// Dynamics starting from |1>_B never leave the orbit, so both give the same
/// outcome statistics; they differ only in the joint dimension d.
enum class BMode { kCompact, kFull };

/// Minimal r >= 1 with x^r = 1 (mod N), by repeated modular multiplication.
/// Throws NotCoprimeError (carrying gcd(x, N)) when x shares a factor with N.
std::int64_t find_order(std::int64_t x, std::int64_t n);

std::int64_t gcd(std::int64_t a, std::int64_t b);

/// An order-finding problem (N, x) together with the register layout.
///
/// Joint basis index for |k>_A |b>_B is k * dim_b() + b, where b is the
/// register-B index (the value itself in kFull mode, the orbit position in
/// kCompact mode).
class ShorInstance {
 public:
  /// Circuit mode: Q = 2^t.
  static ShorInstance circuit(std::int64_t n, std::int64_t x, int t,
                              BMode mode = BMode::kCompact,
                              std::size_t max_dim = kDefaultMaxDim);

  /// Math mode: any register-A size Q >= 1 (closed forms usually need r | Q).
  static ShorInstance with_register_size(std::int64_t n, std::int64_t x, std::int64_t q,
                                         BMode mode = BMode::kCompact,
                                         std::size_t max_dim = kDefaultMaxDim);

  std::int64_t n() const noexcept { return n_; }
  std::int64_t x() const noexcept { return x_; }
  /// Qubits in register A; for math mode with Q not a power of two this is ceil(log2 Q).
  int t() const noexcept { return t_; }
  std::int64_t q() const noexcept { return q_; }
  std::int64_t r() const noexcept { return r_; }
  /// Q / r when r divides Q.
  std::optional<std::int64_t> m() const noexcept { return m_; }
  BMode b_mode() const noexcept { return mode_; }
  bool circuit_mode() const noexcept { return circuit_; }
  /// True when r | Q, which every closed-form evaluator requires.
  bool exact_mode() const noexcept { return m_.has_value(); }

  std::size_t dim_a() const noexcept { return static_cast<std::size_t>(q_); }
  std::size_t dim_b() const noexcept { return dim_b_; }
  std::size_t d() const noexcept { return dim_a() * dim_b_; }

  /// orbit()[a] = x^a mod N for a in [0, r).
  std::span<const std::int64_t> orbit() const noexcept { return orbit_; }

  /// Register-B index of x^j mod N.
  std::size_t b_index_of_power(std::int64_t j) const noexcept;
  /// Register-B index of the value v, or nullopt when v has no basis state.
  std::optional<std::size_t> b_index_of_value(std::int64_t v) const;
  /// Orbit position a of the B index, or nullopt for non-orbit states (kFull only).
  std::optional<std::size_t> orbit_position(std::size_t b_index) const;

  std::size_t ab_index(std::size_t k, std::size_t b_index) const noexcept {
    return k * dim_b_ + b_index;
  }

  /// Throws kExactModeRequired unless r | Q.
  void require_exact_mode() const;

 private:
  ShorInstance() = default;
  static ShorInstance build(std::int64_t n, std::int64_t x, std::int64_t q, int t, bool circuit,
                            BMode mode, std::size_t max_dim);

  std::int64_t n_ = 0;
  std::int64_t x_ = 0;
  int t_ = 0;
  std::int64_t q_ = 0;
  std::int64_t r_ = 0;
  std::optional<std::int64_t> m_;
  BMode mode_ = BMode::kCompact;
  bool circuit_ = true;
  std::size_t dim_b_ = 0;
  std::vector<std::int64_t> orbit_;
  std::vector<std::int64_t> position_of_value_;  // kFull: value -> orbit position or -1
};

/// A basis permutation: basis state i maps to basis state image[i].
struct Permutation {
  std::vector<std::size_t> image;

  std::size_t size() const noexcept { return image.size(); }
  CVector apply(const CVector& v) const;
  /// P rho P^dagger.
  CMatrix conjugate(const CMatrix& rho) const;
  CMatrix to_matrix() const;
  Permutation compose_after(const Permutation& first) const;
};

/// U |j>_A |v>_B = |j>_A |x^j v mod N>_B on orbit states; identity on the
/// remaining register-B states in kFull mode.
Permutation modexp_permutation(const ShorInstance& inst);

/// u_s = r^{-1/2} sum_a exp(-2 pi i a s / r) |x^a mod N>, over register B.
CVector order_eigenvector(const ShorInstance& inst, std::int64_t s);

/// Entry (k, j) = exp(-2 pi i j k / Q) / sqrt(Q).
CMatrix inverse_qft(std::int64_t q);

// Initial-state descriptors -------------------------------------------------

struct Hadamard {};

/// (U'(alpha, beta, theta))^{(x) t} applied to |0...0>; angles in [0, pi/2].
struct LocalUnitary {
  double alpha_phase = 0.0;
  double beta_phase = 0.0;
  double theta = 0.0;
};

struct Amplitudes {
  std::vector<Complex> values;
};

using PureStateSpec = std::variant<Hadamard, LocalUnitary, Amplitudes>;

/// (1 - epsilon) |phi_1><phi_1| + (epsilon / d) I_AB.
struct PseudoPure {
  double epsilon = 0.0;
  PureStateSpec inner;
};

using InitialStateSpec = std::variant<Hadamard, LocalUnitary, Amplitudes, PseudoPure>;

/// A pure joint state or a density matrix over AB.
using QuantumState = std::variant<CVector, CMatrix>;

/// alpha_j = (e^{i alpha} cos theta)^{z_j} (e^{i beta} sin theta)^{t - z_j},
/// z_j = number of zero bits in the t-bit representation of j.
CVector local_unitary_amplitudes(double alpha_phase, double beta_phase, double theta, int t);

/// Register-A amplitudes alpha_j described by a pure spec. Throws
/// kNotNormalized for explicit amplitudes off the unit sphere.
CVector register_amplitudes(const PureStateSpec& spec, const ShorInstance& inst);

/// |phi_1> = sum_j alpha_j |j>_A |1>_B.
CVector initial_pure_state(const ShorInstance& inst, const CVector& amplitudes);

/// Pure specs give |phi_1>; PseudoPure gives its density matrix.
QuantumState prepare_initial(const InitialStateSpec& spec, const ShorInstance& inst);

/// (F^dagger (x) I) applied to a joint pure state, acting on register A only.
CVector apply_inverse_qft_a(const ShorInstance& inst, const CVector& state);

/// |phi_3> = (F^dagger (x) I) U |phi_1> for register-A amplitudes alpha.
CVector run_pure_pipeline(const ShorInstance& inst, const CVector& amplitudes);

/// S rho S^dagger with S = (F^dagger (x) I) U.
CMatrix run_mixed_pipeline(const ShorInstance& inst, const CMatrix& rho);

/// Dense S = (F^dagger (x) I_B) U.
CMatrix shor_unitary(const ShorInstance& inst);

/// P(k) = sum over register-B basis of the probability of |k>|v>.
std::vector<double> outcome_distribution(const QuantumState& state, const ShorInstance& inst);

/// Continued-fraction recovery of the order from a measured k. Returns the
/// largest convergent denominator r' < N with |k/Q - s'/r'| < 1/(2Q), or
/// nullopt when k == 0 or no convergent qualifies.
std::optional<std::int64_t> continued_fraction_order(std::int64_t k, std::int64_t q,
                                                     std::int64_t n);

enum class SuccessMode {
  kAuto,     // kExact when r | Q, otherwise kGeneral
  kExact,    // sum of P(s m) over s coprime to r
  kGeneral,  // sum of P(k) over k whose continued fraction recovers exactly r
};

double success_probability(const ShorInstance& inst, std::span<const double> dist,
                           SuccessMode mode = SuccessMode::kAuto);

}  // namespace shorlab
