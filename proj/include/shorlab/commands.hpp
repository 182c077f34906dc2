#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "shorlab/config.hpp"
#include "shorlab/suite.hpp"

namespace shorlab {

/// Shortest round-trip decimal form; "nan", "inf" and "-inf" for non-finite values.
std::string format_number(double v);

struct SimulationResult {
  std::vector<double> distribution;
  /// Exact-mode success when r | Q, otherwise the continued-fraction variant.
  double success = 0.0;
  double success_general = 0.0;
  std::string state;  // "pure", "pseudo_pure" or "noisy"
};

SimulationResult simulate(const ExperimentConfig& config);

struct SweepRow {
  std::string sweep;  // "theta", "epsilon" or "lambda"
  double param = 0.0;
  double c = 0.0;
  double d = 0.0;
  double p = 0.0;
  std::optional<double> lower_bound;
  std::optional<double> lower_margin;
  std::optional<double> upper_bound;
  std::optional<double> upper_margin;
  std::optional<double> reference;
};

/// Rows for every nonempty grid, in the order theta, epsilon, lambda and grid
/// order within each. Grid points run on up to `threads` workers (0 = auto).
std::vector<SweepRow> sweep(const ExperimentConfig& config, std::size_t threads = 0);

/// SHOR_LAB_THREADS, or 0 when unset.
std::size_t threads_from_env();

std::string simulate_csv(const SimulationResult& result);
std::string simulate_json(const ExperimentConfig& config, const SimulationResult& result);
std::string verify_csv(const RunReport& report);
std::string verify_json(const RunReport& report);
std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string sweep_json(const ExperimentConfig& config, const std::vector<SweepRow>& rows);

/// Companion gnuplot scripts reading the CSV at `csv_path`.
std::string simulate_gnuplot(const std::string& csv_path);
std::string sweep_gnuplot(const std::string& csv_path, const std::vector<SweepRow>& rows);

}  // namespace shorlab
