#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "shorlab/numerics.hpp"
#include "shorlab/shor_core.hpp"

namespace shorlab {

/// A symmetric normalized operator monotone function f: f(0) > 0 and
/// x f(1/x) = f(x). Instances are validated on construction.
class OperatorMonotoneFunction {
 public:
  using Fn = std::function<double(double)>;

  /// Validates f0 > 0, f(0) = f0, the symmetry x f(1/x) = f(x) and
  /// monotonicity on a logarithmic grid over [1e-6, 1e6]. Throws kInvalidArgument.
  static OperatorMonotoneFunction create(std::string name, Fn fn, double f0);

  /// f(x) = ((1 + sqrt x) / 2)^2, giving Wigner-Yanase skew information.
  static const OperatorMonotoneFunction& wigner_yanase();
  /// f(x) = (1 + x) / 2, the symmetric logarithmic derivative metric.
  static const OperatorMonotoneFunction& sld();
  /// Looks up "wy" or "sld".
  static const OperatorMonotoneFunction& by_name(const std::string& name);

  double operator()(double x) const { return fn_(x); }
  double f0() const noexcept { return f0_; }
  const std::string& name() const noexcept { return name_; }

 private:
  OperatorMonotoneFunction(std::string name, Fn fn, double f0)
      : name_(std::move(name)), fn_(std::move(fn)), f0_(f0) {}

  std::string name_;
  Fn fn_;
  double f0_;
};

/// c_f(x, y) = 1 / (y f(x / y)); at y = 0 the limit 1 / (x f(0)).
double morozova_chentsov(const OperatorMonotoneFunction& f, double x, double y);

// Channels --------------------------------------------------------------------

class QuantumChannel;

struct KrausList {
  std::vector<CMatrix> operators;
};
struct UnitaryMap {
  CMatrix u;
};
/// Von Neumann measurement in the computational basis of dimension `dim`.
struct Measurement {
  std::size_t dim = 0;
};
/// X -> lambda V X V^dagger + (1 - lambda) tr(X) I / d, kept in affine form.
struct Depolarizing {
  double lambda = 1.0;
  CMatrix v;
  std::size_t dim = 0;
};
/// Stages applied first to last.
struct Composed {
  std::vector<QuantumChannel> stages;
};

/// A CPTP map in one of a few structured forms. Immutable after construction;
/// use the factory functions below, which validate their inputs.
class QuantumChannel {
 public:
  using Form = std::variant<KrausList, UnitaryMap, Measurement, Depolarizing, Composed>;

  explicit QuantumChannel(Form form);

  const Form& form() const noexcept { return form_; }
  std::size_t dim() const noexcept { return dim_; }

  /// Action on an arbitrary operator (linear extension off the state space).
  CMatrix apply(const CMatrix& x) const;
  /// Heisenberg-picture adjoint: tr(Y apply(X)) = tr(apply_adjoint(Y) X).
  CMatrix apply_adjoint(const CMatrix& y) const;

  /// Finite Kraus decomposition when the form provides one (Depolarizing,
  /// or a composition containing it, does not).
  std::optional<std::vector<CMatrix>> kraus_operators() const;

 private:
  Form form_;
  std::size_t dim_ = 0;
};

QuantumChannel kraus_channel(std::vector<CMatrix> operators);
QuantumChannel unitary_channel(CMatrix u);
QuantumChannel measurement_channel(std::size_t d);
/// Throws kNotCompletelyPositive unless lambda lies in [-1/(d^2-1), 1].
QuantumChannel depolarizing_channel(std::size_t d, double lambda, CMatrix v);
QuantumChannel compose(std::vector<QuantumChannel> stages);

/// Unitary channel for S = (F^dagger (x) I_B) U.
QuantumChannel shor_unitary_channel(const ShorInstance& inst);

/// theta_x for the diagonal register-A unitary W_A = sum_x e^{i theta_x} |x><x|.
using PhaseFunction = std::function<double(std::int64_t)>;

PhaseFunction zero_phase();
/// theta_x = pi x / Q.
PhaseFunction phase_pi_over_q(std::int64_t q);
/// theta_x = pi x / (6 Q).
PhaseFunction phase_pi_over_6q(std::int64_t q);

/// W_A (x) I_B as a dense d x d matrix.
CMatrix phase_unitary(const ShorInstance& inst, const PhaseFunction& phase);

/// E = (F^dagger (x) I) o Phi o U o Phi with Phi depolarizing around W_A (x) I_B.
QuantumChannel noisy_shor_channel(const ShorInstance& inst, double lambda,
                                  const PhaseFunction& phase);

/// Outcome distribution of E(|psi_1><psi_1|) for the Hadamard input.
std::vector<double> noisy_outcome_distribution(const ShorInstance& inst, double lambda,
                                               const PhaseFunction& phase);

// Coherence quantifiers -------------------------------------------------------

/// Metric-adjusted skew information F_f(rho, K) from the spectral formula.
double skew_information(const CMatrix& rho, const CMatrix& k, const OperatorMonotoneFunction& f);

/// F_f(rho, Phi) from the spectral formula, for any rank. Eigenvalues below
/// 1e-12 are treated as exactly zero and handled by the c_f boundary value.
double channel_coherence_spectral(const CMatrix& rho, const QuantumChannel& phi,
                                  const OperatorMonotoneFunction& f);

/// F_f(rho, Phi). Pure states go through pure_channel_coherence when the
/// channel has a Kraus form; everything else is spectral.
double channel_coherence(const CMatrix& rho, const QuantumChannel& phi,
                         const OperatorMonotoneFunction& f);

/// I(|psi><psi|, Phi) = 1/2 sum_l <K_l^dag K_l + K_l K_l^dag> - sum_l |<K_l>|^2.
/// Throws kNoKrausForm for depolarizing channels.
double pure_channel_coherence(const CVector& psi, const QuantumChannel& phi);

/// Wigner-Yanase channel coherence via the trace form
/// (1 + tr(rho Phi(I))) / 2 - tr(sqrt(rho) Phi(sqrt(rho))).
double wy_channel_coherence(const CMatrix& rho, const QuantumChannel& phi);

}  // namespace shorlab
