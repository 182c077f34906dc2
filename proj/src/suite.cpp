#include "shorlab/suite.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "shorlab/oracle.hpp"

namespace shorlab {

namespace {

using ojson = nlohmann::ordered_json;

constexpr double kPi = std::numbers::pi;

double slack_or_worst(const TheoremReport& r) {
  const double s = slack(r);
  return std::isnan(s) ? -std::numeric_limits<double>::infinity() : s;
}

CVector uniform_amplitudes(const ShorInstance& inst) {
  const auto q = static_cast<Eigen::Index>(inst.q());
  return CVector::Constant(q, 1.0 / std::sqrt(static_cast<double>(q)));
}

double sum_squares(const std::vector<double>& p) {
  double s = 0.0;
  for (double v : p) s += v * v;
  return s;
}

double total(const std::vector<double>& p) {
  double s = 0.0;
  for (double v : p) s += v;
  return s;
}

double exact_success(const ShorInstance& inst, const std::vector<double>& dist) {
  return oracle::brute_success_probability(inst, dist).exact;
}

double pure_success(const ShorInstance& inst, const CVector& alpha) {
  return exact_success(inst, oracle::brute_outcome_distribution(inst, alpha));
}

Amplitudes as_spec(const CVector& alpha) {
  return Amplitudes{std::vector<Complex>(alpha.begin(), alpha.end())};
}

CMatrix pseudo_pure_initial(const ShorInstance& inst, const CVector& alpha, double epsilon) {
  return std::get<CMatrix>(prepare_initial(PseudoPure{epsilon, as_spec(alpha)}, inst));
}

std::string tagged(const std::string& base, const char* key, double value) {
  ojson v = value;
  return base + "[" + key + "=" + v.dump() + "]";
}

// Every tested amplitude vector in a fixed order, with a label for context.
struct Labelled {
  const CVector* alpha;
  std::string family;
  std::size_t index;
};

std::vector<Labelled> all_samples(const SampleSet& s) {
  std::vector<Labelled> out;
  for (std::size_t i = 0; i < s.real.size(); ++i) out.push_back({&s.real[i], "real", i});
  for (std::size_t i = 0; i < s.complex.size(); ++i) out.push_back({&s.complex[i], "complex", i});
  for (std::size_t i = 0; i < s.theta.size(); ++i) out.push_back({&s.theta[i], "theta", i});
  return out;
}

ojson sample_context(const Labelled& l, const SampleSet& s) {
  ojson c;
  c["family"] = l.family;
  c["index"] = l.index;
  if (l.family == "theta") c["theta"] = s.theta_values[l.index];
  return c;
}

ojson seeded(std::uint64_t seed) {
  ojson c;
  c["seed"] = seed;
  return c;
}

}  // namespace

TheoremReport worst_case(const Reports& family, std::string name, ojson context) {
  if (family.empty()) throw Error(ErrorCode::kInvalidArgument, "empty report family for " + name);
  std::size_t worst = 0;
  for (std::size_t i = 1; i < family.size(); ++i) {
    if (slack_or_worst(family[i]) < slack_or_worst(family[worst])) worst = i;
  }
  TheoremReport out = family[worst];
  out.name = std::move(name);
  ojson ctx = std::move(context);
  ctx["samples"] = family.size();
  ctx["worst_index"] = worst;
  std::size_t failures = 0;
  for (const auto& r : family) failures += r.pass ? 0 : 1;
  ctx["failures"] = failures;
  if (!family[worst].context.empty()) ctx["worst"] = family[worst].context;
  out.context = std::move(ctx);
  return out;
}

bool all_pass(const Reports& reports) {
  for (const auto& r : reports) {
    if (!r.pass) return false;
  }
  return true;
}

SampleSet make_samples(const ShorInstance& inst, std::uint64_t seed, int count,
                       const std::vector<double>& theta_grid) {
  SampleSet s;
  std::mt19937_64 rng(seed);
  for (int i = 0; i < count; ++i) s.real.push_back(oracle::random_real_amplitudes(inst.dim_a(), rng));
  for (int i = 0; i < count; ++i) {
    s.complex.push_back(oracle::random_complex_amplitudes(inst.dim_a(), rng));
  }
  if (inst.circuit_mode()) {
    for (double th : theta_grid) {
      s.theta.push_back(local_unitary_amplitudes(0.0, 0.0, th, inst.t()));
      s.theta_values.push_back(th);
    }
  }
  return s;
}

std::vector<double> default_theta_grid() {
  std::vector<double> g;
  for (int i = 0; i <= 8; ++i) g.push_back(i * kPi / 16.0);
  return g;
}

std::vector<double> default_success_epsilon_grid() {
  std::vector<double> g;
  for (int i = 0; i <= 10; ++i) g.push_back(i / 10.0);
  return g;
}

std::vector<double> default_coherence_epsilon_grid() { return {0.1, 0.25, 0.5, 0.9}; }

std::vector<double> default_noisy_lambda_grid(const ShorInstance& inst) {
  const double d = static_cast<double>(inst.d());
  return {-1.0 / (d * d - 1.0), 0.0, 0.3, 0.8, 0.99};
}

std::vector<double> default_bound_lambda_grid() { return {0.3, 0.6, 1.0}; }

// Corollary 1 -----------------------------------------------------------------

Reports check_corollary1(BMode mode, const Tolerances& tol) {
  Reports out;
  struct Case {
    std::int64_t x;
    double c, d;
  };
  for (const Case& cs : {Case{7, 1.0 - 1.0 / 16, 1.0 - 1.0 / 16}, Case{4, 0.75, 1.0 - 1.0 / 16}}) {
    const auto inst = ShorInstance::circuit(15, cs.x, 4, mode);
    const CVector alpha = uniform_amplitudes(inst);
    const auto closed = thm1_closed_forms(inst, alpha);
    const CVector psi3 = oracle::brute_final_state(inst, alpha);
    const double c_brute = oracle::brute_measurement_coherence(psi3);
    const double d_brute = oracle::brute_overlap_defect(initial_pure_state(inst, alpha), psi3);
    const std::string base = "corollary1.x" + std::to_string(cs.x);
    ojson ctx;
    ctx["N"] = 15;
    ctx["x"] = cs.x;
    ctx["t"] = 4;
    ctx["d"] = inst.d();
    out.push_back(make_equality(base + ".C_vs_oracle", closed.c, c_brute, tol.closed_form, ctx));
    out.push_back(make_equality(base + ".D_vs_oracle", closed.d, d_brute, tol.closed_form, ctx));
    out.push_back(make_equality(base + ".C_value", closed.c, cs.c, tol.closed_form, ctx));
    out.push_back(make_equality(base + ".D_value", closed.d, cs.d, tol.closed_form, ctx));
  }
  return out;
}

// Theorem 1 -------------------------------------------------------------------

Reports check_theorem1(const ShorInstance& inst, const SampleSet& samples, std::uint64_t seed,
                       const Tolerances& tol) {
  Reports out;
  Reports c_real, d_real, d_real_plain;
  for (std::size_t i = 0; i < samples.real.size(); ++i) {
    const CVector& a = samples.real[i];
    const auto closed = thm1_closed_forms(inst, a);
    const CVector psi3 = oracle::brute_final_state(inst, a);
    const double d_brute = oracle::brute_overlap_defect(initial_pure_state(inst, a), psi3);
    c_real.push_back(make_equality("", closed.c, oracle::brute_measurement_coherence(psi3), tol.closed_form));
    d_real.push_back(make_equality("", closed.d, d_brute, tol.closed_form));
    d_real_plain.push_back(
        make_equality("", thm1_decoherence_unconjugated(inst, a), d_brute, tol.closed_form));
  }
  if (!c_real.empty()) {
    out.push_back(worst_case(c_real, "theorem1.real.C", seeded(seed)));
    out.push_back(worst_case(d_real, "theorem1.real.D", seeded(seed)));
    out.push_back(worst_case(d_real_plain, "theorem1.real.D_unconjugated", seeded(seed)));
  }

  Reports c_theta, d_theta;
  for (std::size_t i = 0; i < samples.theta.size(); ++i) {
    const double th = samples.theta_values[i];
    const auto lu = local_unitary_closed_forms(inst, 0.0, 0.0, th);
    const CVector psi3 = oracle::brute_final_state(inst, samples.theta[i]);
    const double d_brute = oracle::brute_overlap_defect(initial_pure_state(inst, samples.theta[i]), psi3);
    ojson ctx;
    ctx["theta"] = th;
    c_theta.push_back(make_equality("", lu.c, oracle::brute_measurement_coherence(psi3), tol.closed_form, ctx));
    d_theta.push_back(make_equality("", lu.d, d_brute, tol.closed_form, ctx));
  }
  if (!c_theta.empty()) {
    out.push_back(worst_case(c_theta, "theorem1.theta.C"));
    out.push_back(worst_case(d_theta, "theorem1.theta.D"));
  }

  Reports c_complex, d_complex;
  double plain_discrepancy = 0.0;
  for (std::size_t i = 0; i < samples.complex.size(); ++i) {
    const CVector& a = samples.complex[i];
    const auto closed = thm1_closed_forms(inst, a);
    const CVector psi3 = oracle::brute_final_state(inst, a);
    const double d_brute = oracle::brute_overlap_defect(initial_pure_state(inst, a), psi3);
    c_complex.push_back(
        make_equality("", closed.c, oracle::brute_measurement_coherence(psi3), tol.closed_form));
    d_complex.push_back(make_equality("", closed.d, d_brute, tol.closed_form));
    plain_discrepancy =
        std::max(plain_discrepancy, std::abs(thm1_decoherence_unconjugated(inst, a) - d_brute));
  }
  if (!c_complex.empty()) {
    ojson ctx = seeded(seed);
    ctx["D_unconjugated_max_discrepancy"] = plain_discrepancy;
    out.push_back(worst_case(c_complex, "theorem1.complex.C", ctx));
    out.push_back(worst_case(d_complex, "theorem1.complex.D", seeded(seed)));
  }
  return out;
}

// Lemma 1 ---------------------------------------------------------------------

Reports check_lemma1(const ShorInstance& inst, const SampleSet& samples, std::uint64_t seed,
                     const Tolerances& tol) {
  Reports lower, upper;
  std::size_t strict_lower = 0, strict_upper = 0;
  for (const auto& l : all_samples(samples)) {
    const auto b = pure_bounds(inst, *l.alpha);
    const double s = sum_squares(oracle::brute_outcome_distribution(inst, *l.alpha));
    lower.push_back(make_relation("", b.lemma1_lower, s, tol.identity, sample_context(l, samples)));
    upper.push_back(make_relation("", s, b.lemma1_upper, tol.identity, sample_context(l, samples)));
    strict_lower += lower.back().margin > 0.0 ? 1 : 0;
    strict_upper += upper.back().margin > 0.0 ? 1 : 0;
  }
  Reports out;
  if (!lower.empty()) {
    ojson lc = seeded(seed), uc = seeded(seed);
    lc["strict"] = strict_lower;
    uc["strict"] = strict_upper;
    out.push_back(worst_case(lower, "lemma1.lower", lc));
    out.push_back(worst_case(upper, "lemma1.upper", uc));
  }

  const CVector uniform = uniform_amplitudes(inst);
  const double s_uniform = sum_squares(oracle::brute_outcome_distribution(inst, uniform));
  out.push_back(make_equality("lemma1.upper_saturated_uniform", s_uniform,
                              pure_bounds(inst, uniform).lemma1_upper, tol.identity));
  const CVector basis = CVector::Unit(static_cast<Eigen::Index>(inst.dim_a()), 0);
  const double s_basis = sum_squares(oracle::brute_outcome_distribution(inst, basis));
  out.push_back(make_equality("lemma1.lower_saturated_basis", s_basis,
                              pure_bounds(inst, basis).lemma1_lower, tol.identity));
  return out;
}

// Theorem 2 -------------------------------------------------------------------

Reports check_theorem2(const ShorInstance& inst, const SampleSet& samples, std::uint64_t seed) {
  Reports out;
  const CVector uniform = uniform_amplitudes(inst);
  out.push_back(make_lower_bound("theorem2.uniform", pure_success(inst, uniform),
                                 pure_bounds(inst, uniform).thm2_lower));

  Reports family;
  std::size_t skipped = 0;
  for (const auto& l : all_samples(samples)) {
    if (l.alpha->cwiseAbs2().minCoeff() <= 0.0) {
      ++skipped;
      continue;
    }
    family.push_back(make_lower_bound("", pure_success(inst, *l.alpha),
                                      pure_bounds(inst, *l.alpha).thm2_lower,
                                      sample_context(l, samples)));
  }
  if (!family.empty()) {
    ojson ctx = seeded(seed);
    ctx["skipped_zero_amplitude"] = skipped;
    out.push_back(worst_case(family, "theorem2.samples", ctx));
  }

  // Every (s, k) with |s/r - k/Q| < 1/(2Q).
  Reports kernel;
  const std::int64_t q = inst.q(), r = inst.r();
  const double threshold = 4.0 * static_cast<double>(q * q) / (kPi * kPi);
  for (std::int64_t s = 0; s < r; ++s) {
    for (std::int64_t k = 0; k < q; ++k) {
      const std::int64_t num = s * q - k * r;
      if (2 * std::abs(num) >= r) continue;
      const double delta = static_cast<double>(num) / static_cast<double>(r * q);
      ojson ctx;
      ctx["s"] = s;
      ctx["k"] = k;
      kernel.push_back(make_lower_bound("", oracle::brute_kernel_sq(q, delta), threshold, ctx));
    }
  }
  out.push_back(worst_case(kernel, "theorem2.kernel"));
  return out;
}

// Theorem 3 -------------------------------------------------------------------

Reports check_theorem3(const ShorInstance& inst, const SampleSet& samples, std::uint64_t seed) {
  Reports out;
  const CVector uniform = uniform_amplitudes(inst);
  const double p = pure_success(inst, uniform);
  out.push_back(make_upper_bound("theorem3.uniform", p * p, pure_bounds(inst, uniform).thm3_upper_sq));
  Reports family;
  for (const auto& l : all_samples(samples)) {
    const double ps = pure_success(inst, *l.alpha);
    family.push_back(make_upper_bound("", ps * ps, pure_bounds(inst, *l.alpha).thm3_upper_sq,
                                      sample_context(l, samples)));
  }
  if (!family.empty()) out.push_back(worst_case(family, "theorem3.samples", seeded(seed)));
  return out;
}

// Theorem 5 -------------------------------------------------------------------

Reports check_theorem5(const ShorInstance& inst, const CVector& alpha,
                       const std::vector<double>& epsilons, const Tolerances& tol) {
  Reports out, family;
  const double p = pure_success(inst, alpha);
  for (double eps : epsilons) {
    const CMatrix rho3 = run_mixed_pipeline(inst, pseudo_pure_initial(inst, alpha, eps));
    const double mixed = exact_success(inst, oracle::brute_mixed_outcome_distribution(inst, rho3));
    ojson ctx;
    ctx["epsilon"] = eps;
    family.push_back(make_equality("", mixed, pseudo_pure_success(p, eps, inst), tol.identity, ctx));
    const bool canonical = inst.n() == 15 && inst.x() == 7 && inst.q() == 16 &&
                           (alpha - uniform_amplitudes(inst)).norm() == 0.0;
    if (canonical && eps == 0.5) {
      out.push_back(make_equality("theorem5.canonical_half", mixed, 0.3125, tol.identity, ctx));
    }
  }
  out.insert(out.begin(), worst_case(family, "theorem5.identity"));
  return out;
}

// Theorem 4 / Corollary 2 -----------------------------------------------------

Reports check_theorem4(const ShorInstance& inst, const CVector& alpha,
                       const std::vector<double>& epsilons, const Tolerances& tol) {
  const auto& wy = OperatorMonotoneFunction::wigner_yanase();
  const auto& sld = OperatorMonotoneFunction::sld();
  const auto pi = measurement_channel(inst.d());
  const auto s = shor_unitary_channel(inst);
  Reports c_spec[2], d_spec[2], c_trace, d_trace, c_ident, d_ident;
  for (double eps : epsilons) {
    const CMatrix rho1 = pseudo_pure_initial(inst, alpha, eps);
    const CMatrix rho3 = run_mixed_pipeline(inst, rho1);
    ojson ctx;
    ctx["epsilon"] = eps;
    ctx["d"] = inst.d();
    int i = 0;
    for (const auto* f : {&wy, &sld}) {
      const auto closed = pseudo_pure_closed_forms(inst, alpha, eps, *f);
      c_spec[i].push_back(make_equality("", closed.c_f, channel_coherence_spectral(rho3, pi, *f),
                                        tol.spectral, ctx));
      d_spec[i].push_back(make_equality("", closed.d_f, channel_coherence_spectral(rho1, s, *f),
                                        tol.spectral, ctx));
      ++i;
    }
    const auto closed = pseudo_pure_closed_forms(inst, alpha, eps, wy);
    c_trace.push_back(make_equality("", closed.c_wy, wy_channel_coherence(rho3, pi), tol.spectral, ctx));
    d_trace.push_back(make_equality("", closed.d_wy, wy_channel_coherence(rho1, s), tol.spectral, ctx));
    c_ident.push_back(make_equality("", closed.c_f, closed.c_wy, tol.identity, ctx));
    d_ident.push_back(make_equality("", closed.d_f, closed.d_wy, tol.identity, ctx));
  }
  return {worst_case(c_spec[0], "theorem4.wy.C_vs_spectral"),
          worst_case(d_spec[0], "theorem4.wy.D_vs_spectral"),
          worst_case(c_spec[1], "theorem4.sld.C_vs_spectral"),
          worst_case(d_spec[1], "theorem4.sld.D_vs_spectral"),
          worst_case(c_trace, "corollary2.C_vs_trace_form"),
          worst_case(d_trace, "corollary2.D_vs_trace_form"),
          worst_case(c_ident, "corollary2.C_generic_equals_wy"),
          worst_case(d_ident, "corollary2.D_generic_equals_wy")};
}

// Theorem 6 / Corollary 3 -----------------------------------------------------

Reports check_theorem6(const ShorInstance& inst, const std::vector<double>& lambdas,
                       const Tolerances& tol) {
  const auto& wy = OperatorMonotoneFunction::wigner_yanase();
  const auto& sld = OperatorMonotoneFunction::sld();
  const auto pi = measurement_channel(inst.d());
  const CMatrix rho1 = projector(initial_pure_state(inst, uniform_amplitudes(inst)));
  const double d = static_cast<double>(inst.d()), q = static_cast<double>(inst.q());
  const double r = static_cast<double>(inst.r());

  Reports c_spec[2], d_spec[2], c_trace, d_trace, c_ident;
  for (double lambda : lambdas) {
    const auto e = noisy_shor_channel(inst, lambda, phase_pi_over_q(inst.q()));
    const CMatrix sigma3 = e.apply(rho1);
    ojson ctx;
    ctx["lambda"] = lambda;
    ctx["d"] = inst.d();
    int i = 0;
    for (const auto* f : {&wy, &sld}) {
      const auto closed = noisy_closed_forms(inst, lambda, *f);
      c_spec[i].push_back(make_equality("", closed.c_f, channel_coherence_spectral(sigma3, pi, *f),
                                        tol.spectral, ctx));
      d_spec[i].push_back(make_equality("", closed.d, channel_coherence_spectral(rho1, e, *f),
                                        tol.spectral, ctx));
      ++i;
    }
    const auto closed = noisy_closed_forms(inst, lambda, wy);
    c_trace.push_back(make_equality("", closed.c_wy, wy_channel_coherence(sigma3, pi), tol.spectral, ctx));
    d_trace.push_back(make_equality("", closed.d, wy_channel_coherence(rho1, e), tol.spectral, ctx));
    c_ident.push_back(make_equality("", closed.c_f, closed.c_wy, tol.identity, ctx));
  }
  Reports out{worst_case(c_spec[0], "theorem6.wy.C_vs_spectral"),
              worst_case(d_spec[0], "theorem6.wy.D_vs_spectral"),
              worst_case(c_spec[1], "theorem6.sld.C_vs_spectral"),
              worst_case(d_spec[1], "theorem6.sld.D_vs_spectral"),
              worst_case(c_trace, "corollary3.C_vs_trace_form"),
              worst_case(d_trace, "corollary3.D_vs_trace_form"),
              worst_case(c_ident, "corollary3.C_generic_equals_wy")};

  const double c_pure = 1.0 - 1.0 / (r * r);
  for (const auto* f : {&wy, &sld}) {
    const std::string base = "theorem6." + f->name();
    const auto one = noisy_closed_forms(inst, 1.0, *f);
    const auto zero = noisy_closed_forms(inst, 0.0, *f);
    out.push_back(make_equality(base + ".C_at_lambda_1", one.c_f, c_pure, tol.closed_form));
    out.push_back(make_equality(base + ".C_at_lambda_0", zero.c_f, 0.0, tol.closed_form));
  }
  const auto one = noisy_closed_forms(inst, 1.0, wy);
  const auto zero = noisy_closed_forms(inst, 0.0, wy);
  out.push_back(make_equality("corollary3.C_at_lambda_1", one.c_wy, c_pure, tol.closed_form));
  out.push_back(make_equality("corollary3.C_at_lambda_0", zero.c_wy, 0.0, tol.closed_form));
  out.push_back(make_equality("theorem6.D_at_lambda_1", one.d, 1.0 - 1.0 / q, tol.closed_form));
  out.push_back(make_equality("theorem6.D_at_lambda_0", zero.d, 1.0 - 1.0 / d, tol.closed_form));

  // Ranges over the grid and the admissible endpoints.
  std::vector<double> range_grid = lambdas;
  for (double l : {-1.0 / (d * d - 1.0), 0.0, 1.0}) range_grid.push_back(l);
  Reports d_low, d_high, c_low, c_high;
  for (double lambda : range_grid) {
    ojson ctx;
    ctx["lambda"] = lambda;
    for (const auto* f : {&wy, &sld}) {
      const auto closed = noisy_closed_forms(inst, lambda, *f);
      ctx["f"] = f->name();
      for (double c : {closed.c_f, closed.c_wy}) {
        c_low.push_back(make_relation("", 0.0, c, tol.identity, ctx));
        c_high.push_back(make_relation("", c, c_pure, tol.identity, ctx));
      }
      d_low.push_back(make_relation("", 1.0 - 1.0 / q, closed.d, tol.identity, ctx));
      d_high.push_back(make_relation("", closed.d, 1.0 - 1.0 / d, tol.identity, ctx));
    }
  }
  out.push_back(worst_case(c_low, "theorem6.C_range_lower"));
  out.push_back(worst_case(c_high, "theorem6.C_range_upper"));
  out.push_back(worst_case(d_low, "theorem6.D_range_lower"));
  out.push_back(worst_case(d_high, "theorem6.D_range_upper"));
  return out;
}

// Theorem 7 -------------------------------------------------------------------

Reports check_theorem7(const ShorInstance& inst, const std::vector<double>& lambdas) {
  Reports out;
  for (double lambda : lambdas) {
    const auto dist = noisy_outcome_distribution(inst, lambda, phase_pi_over_6q(inst.q()));
    ojson ctx;
    ctx["lambda"] = lambda;
    out.push_back(make_lower_bound(tagged("theorem7.success", "lambda", lambda),
                                   exact_success(inst, dist),
                                   noisy_bound_and_gamma(inst, lambda).thm7_lower, ctx));
  }
  // Exact peaks s/r = k/Q, offset by the 1/(6Q) phase.
  Reports kernel;
  const std::int64_t q = inst.q(), r = inst.r();
  const double threshold = 27.0 * static_cast<double>(q * q) / (16.0 * kPi * kPi);
  for (std::int64_t s = 0; s < r; ++s) {
    for (std::int64_t k = 0; k < q; ++k) {
      if (s * q != k * r) continue;
      ojson ctx;
      ctx["s"] = s;
      ctx["k"] = k;
      kernel.push_back(make_lower_bound(
          "", oracle::brute_kernel_sq(q, 1.0 / (6.0 * static_cast<double>(q))), threshold, ctx));
    }
  }
  out.push_back(worst_case(kernel, "theorem7.kernel"));
  return out;
}

// Remark 3 --------------------------------------------------------------------

Reports check_remark3(const ShorInstance& inst, const std::vector<double>& lambdas,
                      const Tolerances& tol) {
  const CMatrix rho1 = projector(initial_pure_state(inst, uniform_amplitudes(inst)));
  const std::int64_t m = *inst.m();
  const double d = static_cast<double>(inst.d()), q = static_cast<double>(inst.q());
  const double r = static_cast<double>(inst.r());
  Reports identity, low, high;
  std::size_t other_matches = 0, other_total = 0;
  for (double lambda : lambdas) {
    const auto e = noisy_shor_channel(inst, lambda, phase_pi_over_q(inst.q()));
    const double dval = wy_channel_coherence(rho1, e);
    const auto dist = outcome_distribution(QuantumState{e.apply(rho1)}, inst);
    const double gamma = noisy_bound_and_gamma(inst, lambda).gamma;
    for (std::int64_t k = 0; k < inst.q(); ++k) {
      const double lhs = dval - dist[static_cast<std::size_t>(k)];
      if (k % m != 1 % m) {
        ++other_total;
        other_matches += std::abs(lhs - gamma) <= tol.closed_form ? 1 : 0;
        continue;
      }
      ojson ctx;
      ctx["lambda"] = lambda;
      ctx["k"] = k;
      identity.push_back(make_equality("", lhs, gamma, tol.closed_form, ctx));
    }
    ojson ctx;
    ctx["lambda"] = lambda;
    low.push_back(make_relation("", 1.0 - 1.0 / r - 1.0 / q, gamma, tol.identity, ctx));
    high.push_back(make_relation("", gamma, 1.0 - 1.0 / d - 1.0 / q, tol.identity, ctx));
  }
  ojson ctx;
  ctx["peaks"] = "k = 1 mod Q/r";
  ctx["other_outcomes"] = other_total;
  ctx["other_outcomes_matching"] = other_matches;
  return {worst_case(identity, "remark3.identity", ctx), worst_case(low, "remark3.gamma_range_lower"),
          worst_case(high, "remark3.gamma_range_upper")};
}

// Infrastructure --------------------------------------------------------------

Reports check_infrastructure(const ShorInstance& inst, std::uint64_t seed,
                             const std::vector<double>& epsilons,
                             const std::vector<double>& lambdas, const Tolerances& tol) {
  const std::size_t d = inst.d();
  const auto n = static_cast<Eigen::Index>(d);
  const CMatrix identity = CMatrix::Identity(n, n);

  Reports unitary;
  auto add_unitary = [&](const char* what, const CMatrix& u) {
    ojson ctx;
    ctx["operator"] = what;
    unitary.push_back(make_equality("", unitarity_defect(u), 0.0, tol.closed_form, ctx));
  };
  add_unitary("inverse_qft", inverse_qft(inst.q()));
  add_unitary("modexp", modexp_permutation(inst).to_matrix());
  add_unitary("shor", shor_unitary(inst));
  add_unitary("phase_pi_over_Q", phase_unitary(inst, phase_pi_over_q(inst.q())));
  add_unitary("phase_pi_over_6Q", phase_unitary(inst, phase_pi_over_6q(inst.q())));

  Reports tp;
  auto add_channel = [&](const std::string& what, const QuantumChannel& ch) {
    ojson ctx;
    ctx["channel"] = what;
    tp.push_back(make_equality("", frobenius_distance(ch.apply_adjoint(identity), identity), 0.0,
                               tol.closed_form, ctx));
  };
  add_channel("measurement", measurement_channel(d));
  add_channel("shor", shor_unitary_channel(inst));

  Reports unital;
  for (double lambda : lambdas) {
    const std::string tag = tagged("", "lambda", lambda);
    add_channel("depolarizing" + tag,
                depolarizing_channel(d, lambda, phase_unitary(inst, phase_pi_over_q(inst.q()))));
    add_channel("noisy_shor" + tag, noisy_shor_channel(inst, lambda, phase_pi_over_q(inst.q())));
    ojson ctx;
    ctx["lambda"] = lambda;
    const auto dep = depolarizing_channel(d, lambda, identity);
    unital.push_back(make_equality("", frobenius_distance(dep.apply(identity), identity), 0.0, 0.0, ctx));
  }

  Reports recon;
  std::mt19937_64 rng(seed);
  std::vector<CMatrix> states;
  for (int i = 0; i < 3; ++i) states.push_back(oracle::random_density_matrix(d, rng));
  const CVector uniform = uniform_amplitudes(inst);
  for (double eps : epsilons) {
    states.push_back(run_mixed_pipeline(inst, pseudo_pure_initial(inst, uniform, eps)));
  }
  for (const auto& m : states) {
    const auto sys = hermitian_eigensystem(m);
    const CMatrix back = sys.vectors * sys.values.cast<Complex>().asDiagonal() * sys.vectors.adjoint();
    recon.push_back(make_equality("", frobenius_distance(back, m), 0.0, tol.closed_form));
  }

  Reports sums;
  auto add_sum = [&](const std::string& what, const std::vector<double>& p) {
    ojson ctx;
    ctx["pipeline"] = what;
    sums.push_back(make_equality("", total(p), 1.0, tol.closed_form, ctx));
  };
  add_sum("pure", outcome_distribution(QuantumState{run_pure_pipeline(inst, uniform)}, inst));
  add_sum("pure_oracle", oracle::brute_outcome_distribution(inst, uniform));
  for (double eps : epsilons) {
    add_sum(tagged("pseudo_pure", "epsilon", eps),
            outcome_distribution(
                QuantumState{run_mixed_pipeline(inst, pseudo_pure_initial(inst, uniform, eps))}, inst));
  }
  for (double lambda : lambdas) {
    add_sum(tagged("noisy_pi_over_Q", "lambda", lambda),
            noisy_outcome_distribution(inst, lambda, phase_pi_over_q(inst.q())));
    add_sum(tagged("noisy_pi_over_6Q", "lambda", lambda),
            noisy_outcome_distribution(inst, lambda, phase_pi_over_6q(inst.q())));
  }

  return {worst_case(unitary, "infrastructure.unitarity"),
          worst_case(tp, "infrastructure.trace_preserving"),
          worst_case(unital, "infrastructure.depolarizing_unital"),
          worst_case(recon, "infrastructure.eigen_reconstruction", seeded(seed)),
          worst_case(sums, "infrastructure.distribution_sums")};
}

// Full run --------------------------------------------------------------------

RunReport run_verification(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const ShorInstance inst = make_instance(config);
  if (!inst.exact_mode()) throw ConfigError("r does not divide Q");

  const CVector alpha = register_amplitudes(pure_part(config.initial), inst);

  const auto theta = config.theta_grid.empty() ? default_theta_grid() : config.theta_grid;
  const auto eps_success =
      config.epsilon_grid.empty() ? default_success_epsilon_grid() : config.epsilon_grid;
  const auto eps_coherence =
      config.epsilon_grid.empty() ? default_coherence_epsilon_grid() : config.epsilon_grid;
  const auto lambda_noisy =
      config.lambda_grid.empty() ? default_noisy_lambda_grid(inst) : config.lambda_grid;
  const auto lambda_bound =
      config.lambda_grid.empty() ? default_bound_lambda_grid() : config.lambda_grid;
  const Tolerances& tol = config.tolerances;

  const SampleSet samples = make_samples(inst, config.seed, 100, theta);

  RunReport report;
  report.config = to_json(config);
  auto append = [&](Reports r) {
    report.reports.insert(report.reports.end(), std::make_move_iterator(r.begin()),
                          std::make_move_iterator(r.end()));
  };
  append(check_corollary1(config.b_mode, tol));
  append(check_theorem1(inst, samples, config.seed, tol));
  append(check_lemma1(inst, samples, config.seed, tol));
  append(check_theorem2(inst, samples, config.seed));
  append(check_theorem3(inst, samples, config.seed));
  append(check_theorem5(inst, alpha, eps_success, tol));
  append(check_theorem4(inst, alpha, eps_coherence, tol));
  append(check_theorem6(inst, lambda_noisy, tol));
  append(check_theorem7(inst, lambda_bound));
  append(check_remark3(inst, lambda_noisy, tol));
  append(check_infrastructure(inst, config.seed, eps_success, lambda_noisy, tol));

  report.distributions.emplace_back("pure",
                                    outcome_distribution(QuantumState{run_pure_pipeline(inst, alpha)}, inst));
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace shorlab
