#include "shorlab/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace shorlab {

namespace {

constexpr double kPi = std::numbers::pi;

// e^{-2 pi i n / q} with n reduced exactly first.
Complex root_of_unity(std::int64_t n, std::int64_t q) {
  const std::int64_t reduced = ((n % q) + q) % q;
  return std::polar(1.0, -2.0 * kPi * static_cast<double>(reduced) / static_cast<double>(q));
}

void require_length(const ShorInstance& inst, const CVector& alpha) {
  if (static_cast<std::size_t>(alpha.size()) != inst.dim_a()) {
    throw Error(ErrorCode::kShape, "expected " + std::to_string(inst.q()) + " amplitudes");
  }
}

void require_lambda(const ShorInstance& inst, double lambda) {
  const double d = static_cast<double>(inst.d());
  const double lower = -1.0 / (d * d - 1.0);
  if (!(lambda >= lower * (1.0 + 1e-12) && lambda <= 1.0)) {
    throw Error(ErrorCode::kNotCompletelyPositive,
                "lambda = " + std::to_string(lambda) + " outside [-1/(d^2-1), 1]");
  }
}

double sum_fourth_powers(const CMatrix& groups) { return groups.cwiseAbs2().cwiseAbs2().sum(); }

Complex int_pow(Complex base, int e) {
  Complex out = 1.0;
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

int zero_bits(std::int64_t j, int t) {
  int zeros = 0;
  for (int bit = 0; bit < t; ++bit) zeros += ((j >> bit) & 1) == 0 ? 1 : 0;
  return zeros;
}

}  // namespace

AmplitudeGroups amplitude_groups(const ShorInstance& inst, const CVector& alpha) {
  inst.require_exact_mode();
  require_length(inst, alpha);
  const std::int64_t r = inst.r(), q = inst.q(), m = *inst.m();
  AmplitudeGroups out{r, q, CMatrix::Zero(r, q)};
  for (std::int64_t a = 0; a < r; ++a) {
    for (std::int64_t k = 0; k < q; ++k) {
      Complex acc = 0.0;
      for (std::int64_t b = 0; b < m; ++b) acc += alpha(a + b * r) * root_of_unity(b * r * k, q);
      out.values(a, k) = acc;
    }
  }
  return out;
}

std::int64_t euler_phi(std::int64_t r) {
  if (r < 1) throw Error(ErrorCode::kInvalidArgument, "euler_phi needs r >= 1");
  if (r == 1) return 1;
  std::int64_t count = 0;
  for (std::int64_t s = 1; s < r; ++s) count += gcd(s, r) == 1 ? 1 : 0;
  return count;
}

CoherencePair thm1_closed_forms(const ShorInstance& inst, const CVector& alpha) {
  const AmplitudeGroups g = amplitude_groups(inst, alpha);
  const double q = static_cast<double>(inst.q());
  Complex overlap = 0.0;
  for (std::int64_t k = 0; k < inst.q(); ++k) overlap += std::conj(alpha(k)) * g.values(0, k);
  return {1.0 - sum_fourth_powers(g.values) / (q * q), 1.0 - std::norm(overlap) / q};
}

double thm1_decoherence_unconjugated(const ShorInstance& inst, const CVector& alpha) {
  const AmplitudeGroups g = amplitude_groups(inst, alpha);
  Complex overlap = 0.0;
  for (std::int64_t k = 0; k < inst.q(); ++k) overlap += alpha(k) * g.values(0, k);
  return 1.0 - std::norm(overlap) / static_cast<double>(inst.q());
}

PureBounds pure_bounds(const ShorInstance& inst, const CVector& alpha) {
  const CoherencePair cd = thm1_closed_forms(inst, alpha);
  const double q = static_cast<double>(inst.q()), r = static_cast<double>(inst.r());
  const double phi = static_cast<double>(euler_phi(inst.r()));
  const double min_sq = alpha.cwiseAbs2().minCoeff();
  PureBounds out;
  out.thm2_lower = 4.0 * q * min_sq * phi / (r * kPi * kPi);
  out.thm3_upper_sq = r * (1.0 - cd.c) * phi * phi;
  out.lemma1_lower = 1.0 - cd.c;
  out.lemma1_upper = r * (1.0 - cd.c);
  return out;
}

LocalUnitaryForms local_unitary_closed_forms(const ShorInstance& inst, double alpha_phase,
                                             double beta_phase, double theta) {
  inst.require_exact_mode();
  if (!inst.circuit_mode()) {
    throw Error(ErrorCode::kInvalidArgument, "local-unitary state needs Q = 2^t");
  }
  const int t = inst.t();
  const std::int64_t r = inst.r(), q = inst.q(), m = *inst.m();
  const Complex zero_factor = std::polar(std::cos(theta), alpha_phase);
  const Complex one_factor = std::polar(std::sin(theta), beta_phase);
  auto amp = [&](std::int64_t j) {
    const int zeros = zero_bits(j, t);
    return int_pow(zero_factor, zeros) * int_pow(one_factor, t - zeros);
  };

  double fourth = 0.0;
  Complex overlap = 0.0;
  for (std::int64_t k = 0; k < q; ++k) {
    for (std::int64_t a = 0; a < r; ++a) {
      Complex e = 0.0;
      for (std::int64_t b = 0; b < m; ++b) e += amp(a + b * r) * root_of_unity(b * r * k, q);
      fourth += std::norm(e) * std::norm(e);
      if (a == 0) overlap += std::conj(amp(k)) * e;
    }
  }
  const double qd = static_cast<double>(q);
  LocalUnitaryForms out;
  out.c = 1.0 - fourth / (qd * qd);
  out.d = 1.0 - std::norm(overlap) / qd;
  if (std::abs(theta - kPi / 4) <= 1e-15) {
    out.min_amplitude_sq = 1.0 / qd;
  } else if (theta < kPi / 4) {
    out.min_amplitude_sq = std::pow(std::sin(theta), 2 * t);
  } else {
    out.min_amplitude_sq = std::pow(std::cos(theta), 2 * t);
  }
  const double phi = static_cast<double>(euler_phi(r));
  out.thm2_lower = 4.0 * qd * out.min_amplitude_sq * phi / (static_cast<double>(r) * kPi * kPi);
  return out;
}

double pseudo_pure_bracket(const OperatorMonotoneFunction& f, double d, double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "bracket needs 0 < epsilon <= 1");
  }
  const double big = d - (d - 1.0) * epsilon;
  return d / (epsilon * f(big / epsilon)) + d / (big * f(epsilon / big));
}

PseudoPureForms pseudo_pure_closed_forms(const ShorInstance& inst, const CVector& alpha,
                                         double epsilon, const OperatorMonotoneFunction& f) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon must lie in [0, 1]");
  }
  const CoherencePair pure = thm1_closed_forms(inst, alpha);
  const double d = static_cast<double>(inst.d());
  const double wy_factor =
      std::pow(std::sqrt(1.0 - (d - 1.0) * epsilon / d) - std::sqrt(epsilon / d), 2);
  PseudoPureForms out;
  out.c_wy = wy_factor * pure.c;
  out.d_wy = wy_factor * pure.d;
  if (epsilon == 0.0) {
    out.c_f = pure.c;
    out.d_f = pure.d;
  } else {
    const double factor =
        0.5 * f.f0() * (1.0 - epsilon) * (1.0 - epsilon) * pseudo_pure_bracket(f, d, epsilon);
    out.c_f = factor * pure.c;
    out.d_f = factor * pure.d;
  }
  return out;
}

double pseudo_pure_success(double p_pure, double epsilon, const ShorInstance& inst) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon must lie in [0, 1]");
  }
  if (!(p_pure >= -1e-12 && p_pure <= 1.0 + 1e-12)) {
    throw Error(ErrorCode::kInvalidArgument, "probability must lie in [0, 1]");
  }
  return (1.0 - epsilon) * p_pure +
         epsilon * static_cast<double>(euler_phi(inst.r())) / static_cast<double>(inst.q());
}

NoisyForms noisy_closed_forms(const ShorInstance& inst, double lambda,
                              const OperatorMonotoneFunction& f) {
  inst.require_exact_mode();
  require_lambda(inst, lambda);
  const double d = static_cast<double>(inst.d()), q = static_cast<double>(inst.q());
  const double r = static_cast<double>(inst.r());
  const double l2 = lambda * lambda;
  const double pure_c = 1.0 - 1.0 / (r * r);
  NoisyForms out;
  if (lambda == 1.0) {
    out.c_f = pure_c;
  } else {
    const double top = l2 * (d - 1.0) + 1.0, bottom = 1.0 - l2;
    const double bracket = d / (bottom * f(top / bottom)) + d / (top * f(bottom / top));
    out.c_f = 0.5 * f.f0() * l2 * l2 * pure_c * bracket;
  }
  out.c_wy =
      std::pow(std::sqrt(1.0 - (d - 1.0) * (1.0 - l2) / d) - std::sqrt((1.0 - l2) / d), 2) * pure_c;
  out.d = l2 * (1.0 / d - 1.0 / q) + (d - 1.0) / d;
  return out;
}

NoisyBound noisy_bound_and_gamma(const ShorInstance& inst, double lambda) {
  require_lambda(inst, lambda);
  const double d = static_cast<double>(inst.d()), q = static_cast<double>(inst.q());
  const double r = static_cast<double>(inst.r());
  const double phi = static_cast<double>(euler_phi(inst.r()));
  const double l2 = lambda * lambda;
  NoisyBound out;
  out.thm7_lower = 27.0 * l2 * phi / (16.0 * r * kPi * kPi) + (1.0 - l2) * phi / q;
  out.gamma = l2 * (1.0 / d - 1.0 / r) + 1.0 - 1.0 / d - 1.0 / q;
  return out;
}

double kernel_sq(std::int64_t q, double delta) {
  const double s = std::sin(kPi * delta);
  if (std::abs(s) < 1e-300) return static_cast<double>(q) * static_cast<double>(q);
  const double top = std::sin(kPi * static_cast<double>(q) * delta);
  return top * top / (s * s);
}

// Reports ---------------------------------------------------------------------

TheoremReport make_equality(std::string name, double lhs, double rhs, double tolerance,
                            nlohmann::ordered_json context) {
  TheoremReport out{std::move(name), ReportKind::kEquality, lhs, rhs, std::abs(lhs - rhs),
                    tolerance, false, std::move(context)};
  out.pass = out.margin <= tolerance;
  return out;
}

TheoremReport make_lower_bound(std::string name, double lhs, double rhs,
                               nlohmann::ordered_json context) {
  TheoremReport out{std::move(name), ReportKind::kLowerBound, lhs, rhs, lhs - rhs, 0.0, false,
                    std::move(context)};
  out.pass = out.margin > 0.0;
  return out;
}

TheoremReport make_upper_bound(std::string name, double lhs, double rhs,
                               nlohmann::ordered_json context) {
  TheoremReport out{std::move(name), ReportKind::kUpperBound, lhs, rhs, rhs - lhs, 0.0, false,
                    std::move(context)};
  out.pass = out.margin > 0.0;
  return out;
}

TheoremReport make_relation(std::string name, double lhs, double rhs, double tolerance,
                            nlohmann::ordered_json context) {
  TheoremReport out{std::move(name), ReportKind::kRelation, lhs, rhs, rhs - lhs, tolerance, false,
                    std::move(context)};
  out.pass = out.margin >= -tolerance;
  return out;
}

double slack(const TheoremReport& report) {
  switch (report.kind) {
    case ReportKind::kEquality:
      return report.tolerance - report.margin;
    case ReportKind::kLowerBound:
    case ReportKind::kUpperBound:
      return report.margin;
    case ReportKind::kRelation:
      return report.margin + report.tolerance;
  }
  return report.margin;
}

const char* to_string(ReportKind kind) noexcept {
  switch (kind) {
    case ReportKind::kEquality:
      return "equality";
    case ReportKind::kLowerBound:
      return "lower_bound";
    case ReportKind::kUpperBound:
      return "upper_bound";
    case ReportKind::kRelation:
      return "relation";
  }
  return "unknown";
}

nlohmann::ordered_json to_json(const TheoremReport& report) {
  nlohmann::ordered_json j;
  j["name"] = report.name;
  j["kind"] = to_string(report.kind);
  j["lhs"] = report.lhs;
  j["rhs"] = report.rhs;
  j["margin"] = report.margin;
  j["tolerance"] = report.tolerance;
  j["pass"] = report.pass;
  j["context"] = report.context;
  return j;
}

}  // namespace shorlab
