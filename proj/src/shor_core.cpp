#include "shorlab/shor_core.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace shorlab {

namespace {

// exp(2 pi i num / den) with num reduced modulo den first, which keeps the
// argument small and the phases exact at multiples of pi/2.
Complex unit_phase(std::int64_t num, std::int64_t den) {
  std::int64_t reduced = num % den;
  if (reduced < 0) reduced += den;
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(reduced) /
                       static_cast<double>(den);
  return std::polar(1.0, angle);
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) return false;
  }
  return true;
}

std::size_t next_power_of_two(std::int64_t n) {
  std::size_t p = 1;
  while (static_cast<std::int64_t>(p) < n) p <<= 1U;
  return p;
}

// Left-multiplies every column of X (viewed as a joint AB vector) by op (x) I_B.
CMatrix apply_a_operator_left(const ShorInstance& inst, const CMatrix& op, const CMatrix& x) {
  const auto q = static_cast<Eigen::Index>(inst.dim_a());
  const auto db = static_cast<Eigen::Index>(inst.dim_b());
  CMatrix out(x.rows(), x.cols());
  const CMatrix op_t = op.transpose();
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    Eigen::Map<const CMatrix> in(x.col(c).data(), db, q);
    Eigen::Map<CMatrix> dst(out.col(c).data(), db, q);
    dst.noalias() = in * op_t;
  }
  return out;
}

}  // namespace

std::int64_t gcd(std::int64_t a, std::int64_t b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    const std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t find_order(std::int64_t x, std::int64_t n) {
  if (n < 2 || x <= 1 || x >= n) {
    throw Error(ErrorCode::kInvalidArgument,
                "need 1 < x < N, got x=" + std::to_string(x) + " N=" + std::to_string(n));
  }
  const std::int64_t g = gcd(x, n);
  if (g != 1) throw NotCoprimeError(x, n, g);
  std::int64_t value = x % n;
  std::int64_t r = 1;
  while (value != 1) {
    value = (value * x) % n;
    ++r;
  }
  return r;
}

ShorInstance ShorInstance::circuit(std::int64_t n, std::int64_t x, int t, BMode mode,
                                   std::size_t max_dim) {
  if (t < 1 || t > 30) {
    throw Error(ErrorCode::kInvalidArgument, "t must be in [1, 30], got " + std::to_string(t));
  }
  return build(n, x, std::int64_t{1} << t, t, true, mode, max_dim);
}

ShorInstance ShorInstance::with_register_size(std::int64_t n, std::int64_t x, std::int64_t q,
                                              BMode mode, std::size_t max_dim) {
  if (q < 1) {
    throw Error(ErrorCode::kInvalidArgument, "Q must be positive, got " + std::to_string(q));
  }
  int t = 0;
  while ((std::int64_t{1} << t) < q) ++t;
  const bool power_of_two = (std::int64_t{1} << t) == q;
  return build(n, x, q, t, power_of_two, mode, max_dim);
}

ShorInstance ShorInstance::build(std::int64_t n, std::int64_t x, std::int64_t q, int t,
                                 bool circuit, BMode mode, std::size_t max_dim) {
  if (n < 9 || n % 2 == 0 || is_prime(n)) {
    throw Error(ErrorCode::kInvalidArgument,
                "N must be an odd composite, got " + std::to_string(n));
  }
  ShorInstance inst;
  inst.n_ = n;
  inst.x_ = x;
  inst.q_ = q;
  inst.t_ = t;
  inst.circuit_ = circuit;
  inst.mode_ = mode;
  inst.r_ = find_order(x, n);
  if (q % inst.r_ == 0) inst.m_ = q / inst.r_;

  inst.orbit_.reserve(static_cast<std::size_t>(inst.r_));
  std::int64_t value = 1;
  for (std::int64_t a = 0; a < inst.r_; ++a) {
    inst.orbit_.push_back(value);
    value = (value * x) % n;
  }

  inst.dim_b_ = mode == BMode::kFull ? next_power_of_two(n) : static_cast<std::size_t>(inst.r_);
  const std::size_t d = static_cast<std::size_t>(q) * inst.dim_b_;
  if (static_cast<std::size_t>(q) > max_dim || d > max_dim) {
    throw Error(ErrorCode::kDimensionLimit, "joint dimension " + std::to_string(d) +
                                                " exceeds " + std::to_string(max_dim));
  }
  if (mode == BMode::kFull) {
    inst.position_of_value_.assign(inst.dim_b_, -1);
    for (std::size_t a = 0; a < inst.orbit_.size(); ++a) {
      inst.position_of_value_[static_cast<std::size_t>(inst.orbit_[a])] =
          static_cast<std::int64_t>(a);
    }
  }
  return inst;
}

std::size_t ShorInstance::b_index_of_power(std::int64_t j) const noexcept {
  const auto a = static_cast<std::size_t>(((j % r_) + r_) % r_);
  return mode_ == BMode::kFull ? static_cast<std::size_t>(orbit_[a]) : a;
}

std::optional<std::size_t> ShorInstance::b_index_of_value(std::int64_t v) const {
  if (mode_ == BMode::kFull) {
    if (v < 0 || static_cast<std::size_t>(v) >= dim_b_) return std::nullopt;
    return static_cast<std::size_t>(v);
  }
  for (std::size_t a = 0; a < orbit_.size(); ++a) {
    if (orbit_[a] == v) return a;
  }
  return std::nullopt;
}

std::optional<std::size_t> ShorInstance::orbit_position(std::size_t b_index) const {
  if (mode_ == BMode::kCompact) {
    if (b_index >= orbit_.size()) return std::nullopt;
    return b_index;
  }
  if (b_index >= position_of_value_.size() || position_of_value_[b_index] < 0) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(position_of_value_[b_index]);
}

void ShorInstance::require_exact_mode() const {
  if (!exact_mode()) {
    throw Error(ErrorCode::kExactModeRequired,
                "r = " + std::to_string(r_) + " does not divide Q = " + std::to_string(q_));
  }
}

// Permutation -----------------------------------------------------------------

CVector Permutation::apply(const CVector& v) const {
  if (static_cast<std::size_t>(v.size()) != image.size()) {
    throw Error(ErrorCode::kShape, "permutation size mismatch");
  }
  CVector out = CVector::Zero(v.size());
  for (std::size_t i = 0; i < image.size(); ++i) {
    out(static_cast<Eigen::Index>(image[i])) = v(static_cast<Eigen::Index>(i));
  }
  return out;
}

CMatrix Permutation::conjugate(const CMatrix& rho) const {
  if (static_cast<std::size_t>(rho.rows()) != image.size() || rho.rows() != rho.cols()) {
    throw Error(ErrorCode::kShape, "permutation size mismatch");
  }
  CMatrix out(rho.rows(), rho.cols());
  for (std::size_t j = 0; j < image.size(); ++j) {
    for (std::size_t i = 0; i < image.size(); ++i) {
      out(static_cast<Eigen::Index>(image[i]), static_cast<Eigen::Index>(image[j])) =
          rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return out;
}

CMatrix Permutation::to_matrix() const {
  const auto n = static_cast<Eigen::Index>(image.size());
  CMatrix out = CMatrix::Zero(n, n);
  for (std::size_t i = 0; i < image.size(); ++i) {
    out(static_cast<Eigen::Index>(image[i]), static_cast<Eigen::Index>(i)) = 1.0;
  }
  return out;
}

Permutation Permutation::compose_after(const Permutation& first) const {
  if (first.size() != size()) {
    throw Error(ErrorCode::kShape, "permutation size mismatch");
  }
  Permutation out;
  out.image.resize(size());
  for (std::size_t i = 0; i < size(); ++i) out.image[i] = image[first.image[i]];
  return out;
}

Permutation modexp_permutation(const ShorInstance& inst) {
  const std::size_t q = inst.dim_a();
  const std::size_t db = inst.dim_b();
  const auto r = static_cast<std::size_t>(inst.r());
  Permutation perm;
  perm.image.resize(inst.d());
  for (std::size_t j = 0; j < q; ++j) {
    for (std::size_t b = 0; b < db; ++b) {
      std::size_t target = b;
      if (const auto a = inst.orbit_position(b)) {
        target = inst.b_index_of_power(static_cast<std::int64_t>((*a + j) % r));
      }
      perm.image[inst.ab_index(j, b)] = inst.ab_index(j, target);
    }
  }
  return perm;
}

CVector order_eigenvector(const ShorInstance& inst, std::int64_t s) {
  const std::int64_t r = inst.r();
  if (s < 0 || s >= r) {
    throw Error(ErrorCode::kIndex, "s = " + std::to_string(s) + " outside [0, " +
                                       std::to_string(r) + ")");
  }
  CVector u = CVector::Zero(static_cast<Eigen::Index>(inst.dim_b()));
  const double norm = 1.0 / std::sqrt(static_cast<double>(r));
  for (std::int64_t a = 0; a < r; ++a) {
    u(static_cast<Eigen::Index>(inst.b_index_of_power(a))) = norm * unit_phase(-a * s, r);
  }
  return u;
}

CMatrix inverse_qft(std::int64_t q) {
  if (q < 1) throw Error(ErrorCode::kInvalidArgument, "Q must be positive");
  const auto n = static_cast<Eigen::Index>(q);
  CMatrix f(n, n);
  const double norm = 1.0 / std::sqrt(static_cast<double>(q));
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index j = 0; j < n; ++j) {
      f(k, j) = norm * unit_phase(-(static_cast<std::int64_t>(j) * k % q), q);
    }
  }
  return f;
}

CVector local_unitary_amplitudes(double alpha_phase, double beta_phase, double theta, int t) {
  if (t < 1 || t > 30) {
    throw Error(ErrorCode::kInvalidArgument, "t must be in [1, 30]");
  }
  const Complex zero_factor = std::polar(std::cos(theta), alpha_phase);
  const Complex one_factor = std::polar(std::sin(theta), beta_phase);
  const std::int64_t q = std::int64_t{1} << t;
  CVector amps(static_cast<Eigen::Index>(q));
  for (std::int64_t j = 0; j < q; ++j) {
    // Product over the t bits of the single-qubit state e^{ia}cos|0> + e^{ib}sin|1>.
    Complex value(1.0, 0.0);
    for (int bit = 0; bit < t; ++bit) {
      value *= ((j >> bit) & 1) != 0 ? one_factor : zero_factor;
    }
    amps(static_cast<Eigen::Index>(j)) = value;
  }
  return amps;
}

CVector register_amplitudes(const PureStateSpec& spec, const ShorInstance& inst) {
  const auto q = static_cast<Eigen::Index>(inst.dim_a());
  if (std::holds_alternative<Hadamard>(spec)) {
    return CVector::Constant(q, Complex(1.0 / std::sqrt(static_cast<double>(q)), 0.0));
  }
  if (const auto* lu = std::get_if<LocalUnitary>(&spec)) {
    if (!inst.circuit_mode()) {
      throw Error(ErrorCode::kInvalidArgument, "local-unitary state needs Q = 2^t");
    }
    constexpr double kHalfPi = std::numbers::pi / 2.0;
    for (double angle : {lu->alpha_phase, lu->beta_phase, lu->theta}) {
      if (angle < 0.0 || angle > kHalfPi + 1e-12) {
        throw Error(ErrorCode::kInvalidArgument, "local-unitary angles must lie in [0, pi/2]");
      }
    }
    return local_unitary_amplitudes(lu->alpha_phase, lu->beta_phase, lu->theta, inst.t());
  }
  const auto& values = std::get<Amplitudes>(spec).values;
  if (static_cast<Eigen::Index>(values.size()) != q) {
    throw Error(ErrorCode::kShape, "expected " + std::to_string(q) + " amplitudes, got " +
                                       std::to_string(values.size()));
  }
  CVector amps = Eigen::Map<const CVector>(values.data(), q);
  if (std::abs(amps.norm() - 1.0) > 1e-10) {
    throw Error(ErrorCode::kNotNormalized, "norm " + std::to_string(amps.norm()));
  }
  return amps;
}

CVector initial_pure_state(const ShorInstance& inst, const CVector& amplitudes) {
  if (static_cast<std::size_t>(amplitudes.size()) != inst.dim_a()) {
    throw Error(ErrorCode::kShape, "amplitude count must equal Q");
  }
  if (std::abs(amplitudes.norm() - 1.0) > 1e-10) {
    throw Error(ErrorCode::kNotNormalized, "norm " + std::to_string(amplitudes.norm()));
  }
  CVector psi = CVector::Zero(static_cast<Eigen::Index>(inst.d()));
  const std::size_t one = inst.b_index_of_power(0);
  for (std::size_t j = 0; j < inst.dim_a(); ++j) {
    psi(static_cast<Eigen::Index>(inst.ab_index(j, one))) =
        amplitudes(static_cast<Eigen::Index>(j));
  }
  return psi;
}

QuantumState prepare_initial(const InitialStateSpec& spec, const ShorInstance& inst) {
  if (const auto* pp = std::get_if<PseudoPure>(&spec)) {
    if (pp->epsilon < 0.0 || pp->epsilon > 1.0) {
      throw Error(ErrorCode::kInvalidArgument, "epsilon must lie in [0, 1]");
    }
    const CVector phi = initial_pure_state(inst, register_amplitudes(pp->inner, inst));
    const auto d = static_cast<Eigen::Index>(inst.d());
    CMatrix rho = (1.0 - pp->epsilon) * projector(phi);
    rho.diagonal().array() += pp->epsilon / static_cast<double>(d);
    return rho;
  }
  const PureStateSpec pure = std::visit(
      [](const auto& s) -> PureStateSpec {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, PseudoPure>) {
          return Hadamard{};
        } else {
          return s;
        }
      },
      spec);
  return initial_pure_state(inst, register_amplitudes(pure, inst));
}

CVector apply_inverse_qft_a(const ShorInstance& inst, const CVector& state) {
  if (static_cast<std::size_t>(state.size()) != inst.d()) {
    throw Error(ErrorCode::kShape, "state dimension must equal d");
  }
  const CMatrix f_dag = inverse_qft(inst.q());
  return apply_a_operator_left(inst, f_dag, state);
}

CVector run_pure_pipeline(const ShorInstance& inst, const CVector& amplitudes) {
  const CVector phi1 = initial_pure_state(inst, amplitudes);
  const CVector phi2 = modexp_permutation(inst).apply(phi1);
  return apply_inverse_qft_a(inst, phi2);
}

CMatrix run_mixed_pipeline(const ShorInstance& inst, const CMatrix& rho) {
  if (static_cast<std::size_t>(rho.rows()) != inst.d() || rho.rows() != rho.cols()) {
    throw Error(ErrorCode::kShape, "density matrix dimension must equal d");
  }
  const CMatrix f_dag = inverse_qft(inst.q());
  const CMatrix permuted = modexp_permutation(inst).conjugate(rho);
  // G X G^dagger with G = F^dagger (x) I, as G (G X^dagger)^dagger.
  const CMatrix left = apply_a_operator_left(inst, f_dag, permuted);
  return apply_a_operator_left(inst, f_dag, left.adjoint()).adjoint();
}

CMatrix shor_unitary(const ShorInstance& inst) {
  return apply_a_operator_left(inst, inverse_qft(inst.q()),
                               modexp_permutation(inst).to_matrix());
}

std::vector<double> outcome_distribution(const QuantumState& state, const ShorInstance& inst) {
  const std::size_t q = inst.dim_a();
  const std::size_t db = inst.dim_b();
  std::vector<double> dist(q, 0.0);
  if (const auto* psi = std::get_if<CVector>(&state)) {
    if (static_cast<std::size_t>(psi->size()) != inst.d()) {
      throw Error(ErrorCode::kShape, "state dimension must equal d");
    }
    for (std::size_t k = 0; k < q; ++k) {
      for (std::size_t b = 0; b < db; ++b) {
        dist[k] += std::norm((*psi)(static_cast<Eigen::Index>(inst.ab_index(k, b))));
      }
    }
    return dist;
  }
  const auto& rho = std::get<CMatrix>(state);
  if (static_cast<std::size_t>(rho.rows()) != inst.d() || rho.rows() != rho.cols()) {
    throw Error(ErrorCode::kShape, "density matrix dimension must equal d");
  }
  for (std::size_t k = 0; k < q; ++k) {
    for (std::size_t b = 0; b < db; ++b) {
      const auto i = static_cast<Eigen::Index>(inst.ab_index(k, b));
      dist[k] += rho(i, i).real();
    }
  }
  return dist;
}

std::optional<std::int64_t> continued_fraction_order(std::int64_t k, std::int64_t q,
                                                     std::int64_t n) {
  if (q < 1 || k < 0 || k >= q) {
    throw Error(ErrorCode::kInvalidArgument, "need 0 <= k < Q");
  }
  if (k == 0) return std::nullopt;
  // Convergents p/c of k/q via the Euclidean algorithm.
  std::int64_t num = k;
  std::int64_t den = q;
  std::int64_t p_prev = 1, p_prev2 = 0;
  std::int64_t c_prev = 0, c_prev2 = 1;
  std::optional<std::int64_t> best;
  while (den != 0) {
    const std::int64_t a = num / den;
    const std::int64_t rem = num - a * den;
    const std::int64_t p = a * p_prev + p_prev2;
    const std::int64_t c = a * c_prev + c_prev2;
    if (c >= n) break;
    // |k/Q - p/c| < 1/(2Q)  <=>  2 |k c - p Q| < c
    std::int64_t diff = k * c - p * q;
    if (diff < 0) diff = -diff;
    if (2 * diff < c) best = c;
    p_prev2 = p_prev;
    p_prev = p;
    c_prev2 = c_prev;
    c_prev = c;
    num = den;
    den = rem;
  }
  return best;
}

double success_probability(const ShorInstance& inst, std::span<const double> dist,
                           SuccessMode mode) {
  if (dist.size() != inst.dim_a()) {
    throw Error(ErrorCode::kShape, "distribution length must equal Q");
  }
  if (mode == SuccessMode::kAuto) {
    mode = inst.exact_mode() ? SuccessMode::kExact : SuccessMode::kGeneral;
  }
  double total = 0.0;
  if (mode == SuccessMode::kExact) {
    inst.require_exact_mode();
    const std::int64_t m = *inst.m();
    for (std::int64_t s = 0; s < inst.r(); ++s) {
      if (gcd(s, inst.r()) == 1) total += dist[static_cast<std::size_t>(s * m)];
    }
    return total;
  }
  for (std::int64_t k = 0; k < inst.q(); ++k) {
    const auto recovered = continued_fraction_order(k, inst.q(), inst.n());
    if (recovered && *recovered == inst.r()) total += dist[static_cast<std::size_t>(k)];
  }
  return total;
}

}  // namespace shorlab
