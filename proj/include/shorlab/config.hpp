#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "shorlab/coherence.hpp"
#include "shorlab/shor_core.hpp"

namespace shorlab {

/// Bad or inconsistent experiment configuration (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class WPreset { kNone, kPiOverQ, kPiOver6Q };
enum class OutputFormat { kCsv, kJson };

struct Tolerances {
  double closed_form = 1e-10;  // closed form vs brute force
  double identity = 1e-12;     // algebraic identities, saturation, sums
  double spectral = 1e-8;      // closed form vs spectral / trace-form evaluation
};

struct OutputSpec {
  std::string path;
  OutputFormat format = OutputFormat::kCsv;
};

struct ExperimentConfig {
  std::int64_t n = 15;
  std::int64_t x = 7;
  int t = 4;
  std::optional<std::int64_t> q_override;
  BMode b_mode = BMode::kCompact;
  InitialStateSpec initial = Hadamard{};
  std::vector<double> epsilon_grid;
  std::vector<double> lambda_grid;
  std::vector<double> theta_grid;
  std::string f_name = "wy";
  WPreset w_preset = WPreset::kNone;
  std::uint64_t seed = 42;
  Tolerances tolerances;
  OutputSpec output;
  /// Depolarizing strength for `simulate`; absent means a noiseless run.
  std::optional<double> noise_lambda;
  /// Not read from JSON; set from the command line.
  std::size_t max_dim = kDefaultMaxDim;
};

/// Every key is optional; unknown keys, wrong types and out-of-range values
/// throw ConfigError.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);

nlohmann::ordered_json to_json(const ExperimentConfig& config);

/// Throws shorlab::Error (dimension limit, not coprime, ...) from the instance.
ShorInstance make_instance(const ExperimentConfig& config);

/// The pure state itself, or the inner state of a pseudo-pure mixture.
PureStateSpec pure_part(const InitialStateSpec& spec);

PhaseFunction preset_phase(WPreset preset, std::int64_t q);

const char* to_string(WPreset preset) noexcept;
const char* to_string(OutputFormat format) noexcept;
const char* to_string(BMode mode) noexcept;

BMode parse_b_mode(const std::string& s);
OutputFormat parse_format(const std::string& s);

}  // namespace shorlab
