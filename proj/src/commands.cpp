#include "shorlab/commands.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <set>
#include <sstream>
#include <thread>

#include "shorlab/oracle.hpp"

namespace shorlab {

namespace {

using ojson = nlohmann::ordered_json;

std::string cell(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

ojson number_or_null(const std::optional<double>& v) { return v ? ojson(*v) : ojson(); }

CMatrix initial_density(const ShorInstance& inst, const InitialStateSpec& spec) {
  const QuantumState s = prepare_initial(spec, inst);
  if (const auto* psi = std::get_if<CVector>(&s)) return projector(*psi);
  return std::get<CMatrix>(s);
}

const OperatorMonotoneFunction& chosen_f(const ExperimentConfig& config) {
  return OperatorMonotoneFunction::by_name(config.f_name);
}

struct Task {
  const char* sweep;
  double param;
};

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

SimulationResult simulate(const ExperimentConfig& config) {
  const ShorInstance inst = make_instance(config);
  SimulationResult out;
  if (config.noise_lambda) {
    const auto e = noisy_shor_channel(inst, *config.noise_lambda, preset_phase(config.w_preset, inst.q()));
    out.distribution =
        outcome_distribution(QuantumState{e.apply(initial_density(inst, config.initial))}, inst);
    out.state = "noisy";
  } else {
    const QuantumState s = prepare_initial(config.initial, inst);
    if (std::holds_alternative<CVector>(s)) {
      const CVector alpha = register_amplitudes(pure_part(config.initial), inst);
      out.distribution = outcome_distribution(QuantumState{run_pure_pipeline(inst, alpha)}, inst);
      out.state = "pure";
    } else {
      out.distribution =
          outcome_distribution(QuantumState{run_mixed_pipeline(inst, std::get<CMatrix>(s))}, inst);
      out.state = "pseudo_pure";
    }
  }
  out.success = success_probability(inst, out.distribution, SuccessMode::kAuto);
  out.success_general = success_probability(inst, out.distribution, SuccessMode::kGeneral);
  return out;
}

std::size_t threads_from_env() {
  const char* v = std::getenv("SHOR_LAB_THREADS");
  if (v == nullptr || *v == '\0') return 0;
  std::size_t n = 0;
  const auto res = std::from_chars(v, v + std::char_traits<char>::length(v), n);
  if (res.ec != std::errc() || *res.ptr != '\0') {
    throw ConfigError("SHOR_LAB_THREADS: expected a nonnegative integer");
  }
  return n;
}

std::vector<SweepRow> sweep(const ExperimentConfig& config, std::size_t threads) {
  if (config.theta_grid.empty() && config.epsilon_grid.empty() && config.lambda_grid.empty()) {
    throw ConfigError("sweep needs at least one nonempty grid");
  }
  const ShorInstance inst = make_instance(config);
  if (!inst.exact_mode()) throw ConfigError("r does not divide Q");
  if (!config.theta_grid.empty() && !inst.circuit_mode()) {
    throw ConfigError("theta_grid needs circuit mode (no q_override)");
  }
  const auto& f = chosen_f(config);

  double alpha_phase = 0.0, beta_phase = 0.0;
  if (const auto* lu = std::get_if<LocalUnitary>(&config.initial)) {
    alpha_phase = lu->alpha_phase;
    beta_phase = lu->beta_phase;
  }
  const CVector alpha = register_amplitudes(pure_part(config.initial), inst);
  const double p_pure =
      success_probability(inst, outcome_distribution(QuantumState{run_pure_pipeline(inst, alpha)}, inst));
  const PhaseFunction phase = preset_phase(config.w_preset, inst.q());

  std::vector<Task> tasks;
  for (double v : config.theta_grid) tasks.push_back({"theta", v});
  for (double v : config.epsilon_grid) tasks.push_back({"epsilon", v});
  for (double v : config.lambda_grid) tasks.push_back({"lambda", v});

  auto evaluate = [&](const Task& task) {
    SweepRow row;
    row.sweep = task.sweep;
    row.param = task.param;
    if (row.sweep == "theta") {
      const CVector a = local_unitary_amplitudes(alpha_phase, beta_phase, task.param, inst.t());
      const auto lu = local_unitary_closed_forms(inst, alpha_phase, beta_phase, task.param);
      const CVector psi3 = run_pure_pipeline(inst, a);
      row.c = lu.c;
      row.d = lu.d;
      row.p = success_probability(inst, outcome_distribution(QuantumState{psi3}, inst));
      row.lower_bound = lu.thm2_lower;
      row.lower_margin = row.p - lu.thm2_lower;
      row.upper_bound = pure_bounds(inst, a).thm3_upper_sq;
      row.upper_margin = *row.upper_bound - row.p * row.p;
      row.reference = oracle::brute_measurement_coherence(oracle::brute_final_state(inst, a));
    } else if (row.sweep == "epsilon") {
      const auto forms = pseudo_pure_closed_forms(inst, alpha, task.param, f);
      const CMatrix rho1 =
          std::get<CMatrix>(prepare_initial(PseudoPure{task.param, pure_part(config.initial)}, inst));
      row.c = forms.c_f;
      row.d = forms.d_f;
      row.p = success_probability(inst, outcome_distribution(QuantumState{run_mixed_pipeline(inst, rho1)}, inst));
      row.reference = pseudo_pure_success(p_pure, task.param, inst);
    } else {
      const auto forms = noisy_closed_forms(inst, task.param, f);
      const auto bound = noisy_bound_and_gamma(inst, task.param);
      row.c = forms.c_f;
      row.d = forms.d;
      row.p = success_probability(inst, noisy_outcome_distribution(inst, task.param, phase));
      row.lower_bound = bound.thm7_lower;
      row.lower_margin = row.p - bound.thm7_lower;
      row.reference = bound.gamma;
    }
    return row;
  };

  std::vector<SweepRow> rows(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::size_t workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = std::min(workers, tasks.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        rows[i] = evaluate(tasks[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

// Writers ---------------------------------------------------------------------

std::string simulate_csv(const SimulationResult& result) {
  std::ostringstream os;
  os << "#schema=shor_lab.simulate/1\n";
  os << "k,P\n";
  for (std::size_t k = 0; k < result.distribution.size(); ++k) {
    os << k << ',' << format_number(result.distribution[k]) << '\n';
  }
  return os.str();
}

std::string simulate_json(const ExperimentConfig& config, const SimulationResult& result) {
  ojson j;
  j["schema"] = "shor_lab.simulate/1";
  j["config"] = to_json(config);
  j["state"] = result.state;
  j["success_probability"] = result.success;
  j["success_probability_general"] = result.success_general;
  j["distribution"] = result.distribution;
  return j.dump(2) + "\n";
}

std::string verify_csv(const RunReport& report) {
  std::ostringstream os;
  os << "#schema=shor_lab.verify/1\n";
  os << "name,kind,lhs,rhs,margin,tolerance,pass\n";
  for (const auto& r : report.reports) {
    os << r.name << ',' << to_string(r.kind) << ',' << format_number(r.lhs) << ','
       << format_number(r.rhs) << ',' << format_number(r.margin) << ','
       << format_number(r.tolerance) << ',' << (r.pass ? "true" : "false") << '\n';
  }
  return os.str();
}

std::string verify_json(const RunReport& report) {
  ojson j;
  j["schema"] = "shor_lab.verify/1";
  j["config"] = report.config;
  j["all_pass"] = all_pass(report.reports);
  auto reports = ojson::array();
  for (const auto& r : report.reports) reports.push_back(to_json(r));
  j["reports"] = std::move(reports);
  ojson dists = ojson::object();
  for (const auto& [name, p] : report.distributions) dists[name] = p;
  j["distributions"] = std::move(dists);
  return j.dump(2) + "\n";
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "#schema=shor_lab.sweep/1\n";
  os << "sweep,param,C,D,P,lower_bound,lower_margin,upper_bound,upper_margin,reference\n";
  for (const auto& r : rows) {
    os << r.sweep << ',' << format_number(r.param) << ',' << format_number(r.c) << ','
       << format_number(r.d) << ',' << format_number(r.p) << ',' << cell(r.lower_bound) << ','
       << cell(r.lower_margin) << ',' << cell(r.upper_bound) << ',' << cell(r.upper_margin) << ','
       << cell(r.reference) << '\n';
  }
  return os.str();
}

std::string sweep_json(const ExperimentConfig& config, const std::vector<SweepRow>& rows) {
  ojson j;
  j["schema"] = "shor_lab.sweep/1";
  j["config"] = to_json(config);
  auto arr = ojson::array();
  for (const auto& r : rows) {
    ojson o;
    o["sweep"] = r.sweep;
    o["param"] = r.param;
    o["C"] = r.c;
    o["D"] = r.d;
    o["P"] = r.p;
    o["lower_bound"] = number_or_null(r.lower_bound);
    o["lower_margin"] = number_or_null(r.lower_margin);
    o["upper_bound"] = number_or_null(r.upper_bound);
    o["upper_margin"] = number_or_null(r.upper_margin);
    o["reference"] = number_or_null(r.reference);
    arr.push_back(std::move(o));
  }
  j["rows"] = std::move(arr);
  return j.dump(2) + "\n";
}

std::string simulate_gnuplot(const std::string& csv_path) {
  std::ostringstream os;
  os << "set datafile separator ','\n"
     << "set xlabel 'k'\nset ylabel 'P(k)'\nset style fill solid 0.6\nset boxwidth 0.8\n"
     << "plot '" << csv_path << "' every ::2 using 1:2 with boxes title 'P(k)'\n";
  return os.str();
}

std::string sweep_gnuplot(const std::string& csv_path, const std::vector<SweepRow>& rows) {
  std::set<std::string> present;
  for (const auto& r : rows) present.insert(r.sweep);
  std::ostringstream os;
  os << "set datafile separator ','\nset key outside\n";
  os << "set multiplot layout " << present.size() << ",1\n";
  for (const char* s : {"theta", "epsilon", "lambda"}) {
    if (!present.count(s)) continue;
    const std::string src = "'< grep ^" + std::string(s) + ", " + csv_path + "'";
    os << "set xlabel '" << s << "'\n"
       << "plot " << src << " using 2:3 with linespoints title 'C', \\\n"
       << "     " << src << " using 2:4 with linespoints title 'D', \\\n"
       << "     " << src << " using 2:5 with linespoints title 'P'\n";
  }
  os << "unset multiplot\n";
  return os.str();
}

}  // namespace shorlab
