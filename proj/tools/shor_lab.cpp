#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "shorlab/commands.hpp"

namespace {

constexpr int kExitFailures = 1;
constexpr int kExitConfig = 2;
constexpr int kExitResources = 3;

struct Options {
  std::string config_path;
  std::string out;
  std::string format;
  std::optional<std::uint64_t> seed;
  std::string b_mode;
  std::optional<std::size_t> max_dim;
  std::optional<double> tol;
  bool gnuplot = false;
};

shorlab::ExperimentConfig resolve(const Options& o) {
  shorlab::ExperimentConfig c;
  if (!o.config_path.empty()) c = shorlab::load_config(o.config_path);
  if (!o.out.empty()) c.output.path = o.out;
  if (!o.format.empty()) c.output.format = shorlab::parse_format(o.format);
  if (o.seed) c.seed = *o.seed;
  if (!o.b_mode.empty()) c.b_mode = shorlab::parse_b_mode(o.b_mode);
  if (o.max_dim) c.max_dim = *o.max_dim;
  if (o.tol) {
    if (*o.tol < 0.0) throw shorlab::ConfigError("--tol must be nonnegative");
    c.tolerances = {*o.tol, *o.tol, *o.tol};
  }
  return c;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw shorlab::ConfigError("cannot write '" + path + "'");
  out << text;
}

// The summary goes to stdout unless the report itself does.
std::ostream& summary_stream(const shorlab::ExperimentConfig& c) {
  return c.output.path.empty() || c.output.path == "-" ? std::cerr : std::cout;
}

void maybe_gnuplot(const Options& o, const shorlab::ExperimentConfig& c, const std::string& script) {
  if (!o.gnuplot) return;
  if (c.output.path.empty() || c.output.format != shorlab::OutputFormat::kCsv) {
    throw shorlab::ConfigError("--gnuplot needs a CSV report written to --out");
  }
  write_text(c.output.path + ".gp", script);
}

int run_simulate(const Options& o) {
  const auto c = resolve(o);
  const auto result = shorlab::simulate(c);
  const bool csv = c.output.format == shorlab::OutputFormat::kCsv;
  write_text(c.output.path, csv ? shorlab::simulate_csv(result) : shorlab::simulate_json(c, result));
  maybe_gnuplot(o, c, shorlab::simulate_gnuplot(c.output.path));
  auto& os = summary_stream(c);
  os << "state " << result.state << "\n";
  os << "k\tP(k)\n";
  for (std::size_t k = 0; k < result.distribution.size(); ++k) {
    os << k << '\t' << shorlab::format_number(result.distribution[k]) << '\n';
  }
  os << "success " << shorlab::format_number(result.success) << " (continued fraction "
     << shorlab::format_number(result.success_general) << ")\n";
  return 0;
}

int run_verify(const Options& o) {
  const auto c = resolve(o);
  const auto report = shorlab::run_verification(c);
  const bool csv = c.output.format == shorlab::OutputFormat::kCsv;
  write_text(c.output.path, csv ? shorlab::verify_csv(report) : shorlab::verify_json(report));
  auto& os = summary_stream(c);
  std::size_t failed = 0;
  for (const auto& r : report.reports) {
    failed += r.pass ? 0 : 1;
    os << (r.pass ? "PASS " : "FAIL ") << r.name << "  margin " << shorlab::format_number(r.margin)
       << '\n';
  }
  os << report.reports.size() - failed << "/" << report.reports.size() << " checks passed\n";
  std::cerr << "elapsed " << report.seconds << " s\n";
  return failed == 0 ? 0 : kExitFailures;
}

int run_sweep(const Options& o) {
  const auto c = resolve(o);
  const auto start = std::chrono::steady_clock::now();
  const auto rows = shorlab::sweep(c, shorlab::threads_from_env());
  const bool csv = c.output.format == shorlab::OutputFormat::kCsv;
  write_text(c.output.path, csv ? shorlab::sweep_csv(rows) : shorlab::sweep_json(c, rows));
  maybe_gnuplot(o, c, shorlab::sweep_gnuplot(c.output.path, rows));
  auto& os = summary_stream(c);
  os << "sweep\tparam\tC\tD\tP\n";
  for (const auto& r : rows) {
    os << r.sweep << '\t' << shorlab::format_number(r.param) << '\t' << shorlab::format_number(r.c)
       << '\t' << shorlab::format_number(r.d) << '\t' << shorlab::format_number(r.p) << '\n';
  }
  std::cerr << "elapsed "
            << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()
            << " s\n";
  return 0;
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config_path, "JSON experiment config");
  cmd->add_option("--out", o.out, "Report path ('-' or omitted: stdout)");
  cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--seed", o.seed, "Random seed");
  cmd->add_option("--b-mode", o.b_mode, "compact or full")->check(CLI::IsMember({"compact", "full"}));
  cmd->add_option("--max-dim", o.max_dim, "Largest joint dimension d");
  cmd->add_option("--tol", o.tol, "Tolerance for every equality check");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shor order-finding simulator and coherence checks"};
  app.require_subcommand(1);
  Options o;
  auto* simulate = app.add_subcommand("simulate", "Outcome distribution and success probability");
  auto* verify = app.add_subcommand("verify", "Run every closed-form and bound check");
  auto* sweep = app.add_subcommand("sweep", "Evaluate C, D, P and bounds over parameter grids");
  for (auto* cmd : {simulate, verify, sweep}) add_common(cmd, o);
  for (auto* cmd : {simulate, sweep}) cmd->add_flag("--gnuplot", o.gnuplot, "Also write <out>.gp");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (simulate->parsed()) return run_simulate(o);
    if (verify->parsed()) return run_verify(o);
    return run_sweep(o);
  } catch (const shorlab::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const shorlab::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == shorlab::ErrorCode::kDimensionLimit ? kExitResources : kExitConfig;
  } catch (const std::bad_alloc&) {
    std::cerr << "error: out of memory\n";
    return kExitResources;
  }
}
