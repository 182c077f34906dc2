#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"
#include "shorlab/coherence.hpp"
#include "shorlab/numerics.hpp"
#include "shorlab/shor_core.hpp"

namespace shorlab {

/// A_{a,k} = sum_{b<m} alpha_{a+br} e^{-2 pi i b r k / Q}, stored r x Q.
struct AmplitudeGroups {
  std::int64_t r = 0;
  std::int64_t q = 0;
  CMatrix values;
};

/// Throws kExactModeRequired unless r | Q.
AmplitudeGroups amplitude_groups(const ShorInstance& inst, const CVector& alpha);

std::int64_t euler_phi(std::int64_t r);

struct CoherencePair {
  double c = 0.0;  // C(rho_3, Pi)
  double d = 0.0;  // D(rho_1, S)
};

/// C = 1 - sum |A_{a,k}|^4 / Q^2 and D = 1 - |sum_k conj(alpha_k) A_{0,k}|^2 / Q.
CoherencePair thm1_closed_forms(const ShorInstance& inst, const CVector& alpha);

/// D with alpha_k left unconjugated, 1 - |sum_k alpha_k A_{0,k}|^2 / Q.
/// Agrees with thm1_closed_forms for real amplitudes only.
double thm1_decoherence_unconjugated(const ShorInstance& inst, const CVector& alpha);

struct PureBounds {
  double thm2_lower = 0.0;     // 4 Q min|alpha|^2 phi(r) / (r pi^2)
  double thm3_upper_sq = 0.0;  // r (1 - C) phi(r)^2, an upper bound on P^2
  double lemma1_lower = 0.0;   // 1 - C <= sum_k P(k)^2
  double lemma1_upper = 0.0;   // sum_k P(k)^2 <= r (1 - C)
};

PureBounds pure_bounds(const ShorInstance& inst, const CVector& alpha);

struct LocalUnitaryForms {
  double c = 0.0;
  double d = 0.0;
  /// sin^{2t} theta below pi/4, cos^{2t} theta above, 1/Q at pi/4.
  double min_amplitude_sq = 0.0;
  double thm2_lower = 0.0;
};

/// C and D from E_{a,k} and G_{0,k}, the groups of the per-bit amplitudes.
LocalUnitaryForms local_unitary_closed_forms(const ShorInstance& inst, double alpha_phase,
                                             double beta_phase, double theta);

struct PseudoPureForms {
  double c_f = 0.0;
  double d_f = 0.0;
  double c_wy = 0.0;
  double d_wy = 0.0;
};

/// d / (eps f((d - (d-1) eps) / eps)) + d / ((d - (d-1) eps) f(eps / (d - (d-1) eps))).
double pseudo_pure_bracket(const OperatorMonotoneFunction& f, double d, double epsilon);

/// Coherence of rho_3^eps and decoherence of rho_1^eps for initial amplitudes alpha.
/// At eps = 0 the generic-f values fall back to the pure-state ones.
PseudoPureForms pseudo_pure_closed_forms(const ShorInstance& inst, const CVector& alpha,
                                         double epsilon, const OperatorMonotoneFunction& f);

/// (1 - eps) P + eps phi(r) / Q.
double pseudo_pure_success(double p_pure, double epsilon, const ShorInstance& inst);

struct NoisyForms {
  double c_f = 0.0;
  double c_wy = 0.0;
  double d = 0.0;
};

/// Coherence of E(|psi_1><psi_1|) and decoherence of rho_1 under E with
/// W_A phases pi x / Q. At lambda = 1 the generic value is 1 - 1/r^2.
NoisyForms noisy_closed_forms(const ShorInstance& inst, double lambda,
                              const OperatorMonotoneFunction& f);

struct NoisyBound {
  double thm7_lower = 0.0;  // 27 lambda^2 phi(r) / (16 r pi^2) + (1 - lambda^2) phi(r) / Q
  double gamma = 0.0;       // lambda^2 (1/d - 1/r) + 1 - 1/d - 1/Q
};

NoisyBound noisy_bound_and_gamma(const ShorInstance& inst, double lambda);

/// |sum_{j<Q} e^{2 pi i j delta}|^2 in closed form sin^2(pi Q delta) / sin^2(pi delta).
double kernel_sq(std::int64_t q, double delta);

// Reports ---------------------------------------------------------------------

enum class ReportKind { kEquality, kLowerBound, kUpperBound, kRelation };

/// One checked statement. Equality passes when |lhs - rhs| <= tolerance.
/// LowerBound (lhs > rhs) and UpperBound (lhs < rhs) are strict with no
/// slack. Relation means lhs <= rhs up to the tolerance.
struct TheoremReport {
  std::string name;
  ReportKind kind = ReportKind::kEquality;
  double lhs = 0.0;
  double rhs = 0.0;
  /// Equality: |lhs - rhs|. LowerBound: lhs - rhs. UpperBound and Relation: rhs - lhs.
  double margin = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  nlohmann::ordered_json context = nlohmann::ordered_json::object();
};

TheoremReport make_equality(std::string name, double lhs, double rhs, double tolerance,
                            nlohmann::ordered_json context = nlohmann::ordered_json::object());
TheoremReport make_lower_bound(std::string name, double lhs, double rhs,
                               nlohmann::ordered_json context = nlohmann::ordered_json::object());
TheoremReport make_upper_bound(std::string name, double lhs, double rhs,
                               nlohmann::ordered_json context = nlohmann::ordered_json::object());
TheoremReport make_relation(std::string name, double lhs, double rhs, double tolerance,
                            nlohmann::ordered_json context = nlohmann::ordered_json::object());

/// How far a report is from failing; smaller is worse. Used to pick the
/// worst case out of a family of samples.
double slack(const TheoremReport& report);

const char* to_string(ReportKind kind) noexcept;

nlohmann::ordered_json to_json(const TheoremReport& report);

}  // namespace shorlab
