#pragma once

#include <cstdint>
#include <vector>

#include "json.hpp"
#include "shorlab/config.hpp"
#include "shorlab/theorems.hpp"

namespace shorlab {

using Reports = std::vector<TheoremReport>;

/// Reduces a family of reports to its worst member (least slack), renamed
/// and annotated with the family size and the worst index.
TheoremReport worst_case(const Reports& family, std::string name,
                         nlohmann::ordered_json context = nlohmann::ordered_json::object());

bool all_pass(const Reports& reports);

/// Amplitude families exercised by the pure-state checks.
struct SampleSet {
  std::vector<CVector> real;
  std::vector<CVector> complex;
  /// Local-unitary inputs at each theta (phases 0); empty outside circuit mode.
  std::vector<CVector> theta;
  std::vector<double> theta_values;
};

SampleSet make_samples(const ShorInstance& inst, std::uint64_t seed, int count,
                       const std::vector<double>& theta_grid);

std::vector<double> default_theta_grid();
std::vector<double> default_success_epsilon_grid();   // 0, 0.1, ..., 1
std::vector<double> default_coherence_epsilon_grid();  // 0.1, 0.25, 0.5, 0.9
/// -1/(d^2-1), 0, 0.3, 0.8, 0.99.
std::vector<double> default_noisy_lambda_grid(const ShorInstance& inst);
/// 0.3, 0.6, 1.
std::vector<double> default_bound_lambda_grid();

// One function per group of statements. Equality checks use tol.closed_form
// against brute force, tol.identity for identities and tol.spectral against
// spectral or trace-form evaluations.

Reports check_corollary1(BMode mode, const Tolerances& tol);
Reports check_theorem1(const ShorInstance& inst, const SampleSet& samples, std::uint64_t seed,
                       const Tolerances& tol);
Reports check_lemma1(const ShorInstance& inst, const SampleSet& samples, std::uint64_t seed,
                     const Tolerances& tol);
Reports check_theorem2(const ShorInstance& inst, const SampleSet& samples, std::uint64_t seed);
Reports check_theorem3(const ShorInstance& inst, const SampleSet& samples, std::uint64_t seed);
Reports check_theorem5(const ShorInstance& inst, const CVector& alpha,
                       const std::vector<double>& epsilons, const Tolerances& tol);
Reports check_theorem4(const ShorInstance& inst, const CVector& alpha,
                       const std::vector<double>& epsilons, const Tolerances& tol);
Reports check_theorem6(const ShorInstance& inst, const std::vector<double>& lambdas,
                       const Tolerances& tol);
Reports check_theorem7(const ShorInstance& inst, const std::vector<double>& lambdas);
Reports check_remark3(const ShorInstance& inst, const std::vector<double>& lambdas,
                      const Tolerances& tol);
Reports check_infrastructure(const ShorInstance& inst, std::uint64_t seed,
                             const std::vector<double>& epsilons,
                             const std::vector<double>& lambdas, const Tolerances& tol);

struct RunReport {
  nlohmann::ordered_json config;
  Reports reports;
  /// Named outcome distributions P(k).
  std::vector<std::pair<std::string, std::vector<double>>> distributions;
  double seconds = 0.0;
};

/// Throws ConfigError("r does not divide Q") for instances outside exact mode.
RunReport run_verification(const ExperimentConfig& config);

}  // namespace shorlab
