#include "shorlab/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>

namespace shorlab {

namespace {

using json = nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) throw ConfigError(where + ": unknown key '" + item.key() + "'");
  }
}

double get_real(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError(key + ": expected a number");
  const double out = v.get<double>();
  if (!std::isfinite(out)) throw ConfigError(key + ": not finite");
  return out;
}

std::int64_t get_int(const json& v, const std::string& key) {
  if (!v.is_number_integer()) throw ConfigError(key + ": expected an integer");
  return v.get<std::int64_t>();
}

std::string get_string(const json& v, const std::string& key) {
  if (!v.is_string()) throw ConfigError(key + ": expected a string");
  return v.get<std::string>();
}

std::vector<double> get_grid(const json& v, const std::string& key) {
  if (!v.is_array()) throw ConfigError(key + ": expected an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) out.push_back(get_real(e, key));
  return out;
}

PureStateSpec parse_pure(const json& j, const std::string& where);

InitialStateSpec parse_initial(const json& j, const std::string& where) {
  if (j.is_string()) {
    if (j.get<std::string>() == "hadamard") return Hadamard{};
    throw ConfigError(where + ": unknown initial state '" + j.get<std::string>() + "'");
  }
  if (!j.is_object() || !j.contains("kind")) throw ConfigError(where + ": expected {\"kind\": ...}");
  const std::string kind = get_string(j.at("kind"), where + ".kind");
  if (kind == "hadamard") {
    reject_unknown(j, {"kind"}, where);
    return Hadamard{};
  }
  if (kind == "local_unitary") {
    reject_unknown(j, {"kind", "alpha_phase", "beta_phase", "theta"}, where);
    LocalUnitary lu;
    if (j.contains("alpha_phase")) lu.alpha_phase = get_real(j["alpha_phase"], where + ".alpha_phase");
    if (j.contains("beta_phase")) lu.beta_phase = get_real(j["beta_phase"], where + ".beta_phase");
    if (j.contains("theta")) lu.theta = get_real(j["theta"], where + ".theta");
    return lu;
  }
  if (kind == "amplitudes") {
    reject_unknown(j, {"kind", "real", "imag"}, where);
    if (!j.contains("real")) throw ConfigError(where + ": amplitudes need 'real'");
    const auto re = get_grid(j["real"], where + ".real");
    std::vector<double> im(re.size(), 0.0);
    if (j.contains("imag")) im = get_grid(j["imag"], where + ".imag");
    if (im.size() != re.size()) throw ConfigError(where + ": 'real' and 'imag' differ in length");
    Amplitudes a;
    for (std::size_t i = 0; i < re.size(); ++i) a.values.emplace_back(re[i], im[i]);
    return a;
  }
  if (kind == "pseudo_pure") {
    reject_unknown(j, {"kind", "epsilon", "inner"}, where);
    PseudoPure p;
    if (!j.contains("epsilon")) throw ConfigError(where + ": pseudo_pure needs 'epsilon'");
    p.epsilon = get_real(j["epsilon"], where + ".epsilon");
    if (p.epsilon < 0.0 || p.epsilon > 1.0) throw ConfigError(where + ".epsilon: outside [0, 1]");
    if (j.contains("inner")) p.inner = parse_pure(j["inner"], where + ".inner");
    return p;
  }
  throw ConfigError(where + ": unknown initial state kind '" + kind + "'");
}

PureStateSpec parse_pure(const json& j, const std::string& where) {
  const InitialStateSpec spec = parse_initial(j, where);
  if (std::holds_alternative<PseudoPure>(spec)) throw ConfigError(where + ": must be a pure state");
  return pure_part(spec);
}

nlohmann::ordered_json pure_to_json(const PureStateSpec& spec);

nlohmann::ordered_json initial_to_json(const InitialStateSpec& spec) {
  nlohmann::ordered_json j;
  if (std::holds_alternative<Hadamard>(spec)) {
    j["kind"] = "hadamard";
  } else if (const auto* lu = std::get_if<LocalUnitary>(&spec)) {
    j["kind"] = "local_unitary";
    j["alpha_phase"] = lu->alpha_phase;
    j["beta_phase"] = lu->beta_phase;
    j["theta"] = lu->theta;
  } else if (const auto* a = std::get_if<Amplitudes>(&spec)) {
    j["kind"] = "amplitudes";
    auto re = nlohmann::ordered_json::array(), im = nlohmann::ordered_json::array();
    for (const auto& z : a->values) {
      re.push_back(z.real());
      im.push_back(z.imag());
    }
    j["real"] = re;
    j["imag"] = im;
  } else {
    const auto& p = std::get<PseudoPure>(spec);
    j["kind"] = "pseudo_pure";
    j["epsilon"] = p.epsilon;
    j["inner"] = pure_to_json(p.inner);
  }
  return j;
}

nlohmann::ordered_json pure_to_json(const PureStateSpec& spec) {
  return std::visit([](const auto& s) { return initial_to_json(InitialStateSpec{s}); }, spec);
}

WPreset parse_preset(const std::string& s) {
  if (s == "none") return WPreset::kNone;
  if (s == "pi_over_Q") return WPreset::kPiOverQ;
  if (s == "pi_over_6Q") return WPreset::kPiOver6Q;
  throw ConfigError("w_preset: expected none, pi_over_Q or pi_over_6Q, got '" + s + "'");
}

}  // namespace

BMode parse_b_mode(const std::string& s) {
  if (s == "compact") return BMode::kCompact;
  if (s == "full") return BMode::kFull;
  throw ConfigError("b_mode: expected compact or full, got '" + s + "'");
}

OutputFormat parse_format(const std::string& s) {
  if (s == "csv") return OutputFormat::kCsv;
  if (s == "json") return OutputFormat::kJson;
  throw ConfigError("format: expected csv or json, got '" + s + "'");
}

ExperimentConfig parse_config(const json& j) {
  reject_unknown(j,
                 {"N", "x", "t", "q_override", "b_mode", "initial", "epsilon_grid", "lambda_grid",
                  "theta_grid", "f_name", "w_preset", "seed", "tolerances", "output",
                  "noise_lambda"},
                 "config");
  ExperimentConfig c;
  if (j.contains("N")) c.n = get_int(j["N"], "N");
  if (j.contains("x")) c.x = get_int(j["x"], "x");
  if (j.contains("t")) {
    const auto t = get_int(j["t"], "t");
    if (t < 1 || t > 30) throw ConfigError("t: expected 1 <= t <= 30");
    c.t = static_cast<int>(t);
  }
  if (j.contains("q_override") && !j["q_override"].is_null()) {
    c.q_override = get_int(j["q_override"], "q_override");
    if (*c.q_override < 1) throw ConfigError("q_override: expected a positive integer");
  }
  if (c.n < 2) throw ConfigError("N: expected N >= 2");
  if (c.x < 1 || c.x >= c.n) throw ConfigError("x: expected 1 <= x < N");
  if (j.contains("b_mode")) c.b_mode = parse_b_mode(get_string(j["b_mode"], "b_mode"));
  if (j.contains("initial")) c.initial = parse_initial(j["initial"], "initial");
  if (j.contains("epsilon_grid")) {
    c.epsilon_grid = get_grid(j["epsilon_grid"], "epsilon_grid");
    for (double e : c.epsilon_grid) {
      if (e < 0.0 || e > 1.0) throw ConfigError("epsilon_grid: values must lie in [0, 1]");
    }
  }
  if (j.contains("lambda_grid")) {
    c.lambda_grid = get_grid(j["lambda_grid"], "lambda_grid");
    for (double l : c.lambda_grid) {
      if (l < -1.0 || l > 1.0) throw ConfigError("lambda_grid: values must lie in [-1, 1]");
    }
  }
  if (j.contains("theta_grid")) c.theta_grid = get_grid(j["theta_grid"], "theta_grid");
  if (j.contains("f_name")) {
    c.f_name = get_string(j["f_name"], "f_name");
    if (c.f_name != "wy" && c.f_name != "sld") throw ConfigError("f_name: expected wy or sld");
  }
  if (j.contains("w_preset")) c.w_preset = parse_preset(get_string(j["w_preset"], "w_preset"));
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw ConfigError("seed: expected a nonnegative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("tolerances")) {
    const auto& tj = j["tolerances"];
    reject_unknown(tj, {"closed_form", "identity", "spectral"}, "tolerances");
    if (tj.contains("closed_form")) c.tolerances.closed_form = get_real(tj["closed_form"], "tolerances.closed_form");
    if (tj.contains("identity")) c.tolerances.identity = get_real(tj["identity"], "tolerances.identity");
    if (tj.contains("spectral")) c.tolerances.spectral = get_real(tj["spectral"], "tolerances.spectral");
    for (double v : {c.tolerances.closed_form, c.tolerances.identity, c.tolerances.spectral}) {
      if (v < 0.0) throw ConfigError("tolerances: must be nonnegative");
    }
  }
  if (j.contains("output")) {
    const auto& oj = j["output"];
    reject_unknown(oj, {"path", "format"}, "output");
    if (oj.contains("path")) c.output.path = get_string(oj["path"], "output.path");
    if (oj.contains("format")) c.output.format = parse_format(get_string(oj["format"], "output.format"));
  }
  if (j.contains("noise_lambda") && !j["noise_lambda"].is_null()) {
    c.noise_lambda = get_real(j["noise_lambda"], "noise_lambda");
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
  return parse_config(j);
}

nlohmann::ordered_json to_json(const ExperimentConfig& c) {
  nlohmann::ordered_json j;
  j["N"] = c.n;
  j["x"] = c.x;
  j["t"] = c.t;
  j["q_override"] = c.q_override ? nlohmann::ordered_json(*c.q_override) : nlohmann::ordered_json();
  j["b_mode"] = to_string(c.b_mode);
  j["initial"] = initial_to_json(c.initial);
  j["epsilon_grid"] = c.epsilon_grid;
  j["lambda_grid"] = c.lambda_grid;
  j["theta_grid"] = c.theta_grid;
  j["f_name"] = c.f_name;
  j["w_preset"] = to_string(c.w_preset);
  j["seed"] = c.seed;
  j["tolerances"] = {{"closed_form", c.tolerances.closed_form},
                     {"identity", c.tolerances.identity},
                     {"spectral", c.tolerances.spectral}};
  j["output"] = {{"path", c.output.path}, {"format", to_string(c.output.format)}};
  j["noise_lambda"] = c.noise_lambda ? nlohmann::ordered_json(*c.noise_lambda) : nlohmann::ordered_json();
  return j;
}

ShorInstance make_instance(const ExperimentConfig& c) {
  if (c.q_override) {
    return ShorInstance::with_register_size(c.n, c.x, *c.q_override, c.b_mode, c.max_dim);
  }
  return ShorInstance::circuit(c.n, c.x, c.t, c.b_mode, c.max_dim);
}

PureStateSpec pure_part(const InitialStateSpec& spec) {
  if (const auto* p = std::get_if<PseudoPure>(&spec)) return p->inner;
  if (const auto* lu = std::get_if<LocalUnitary>(&spec)) return *lu;
  if (const auto* a = std::get_if<Amplitudes>(&spec)) return *a;
  return Hadamard{};
}

PhaseFunction preset_phase(WPreset preset, std::int64_t q) {
  switch (preset) {
    case WPreset::kPiOverQ:
      return phase_pi_over_q(q);
    case WPreset::kPiOver6Q:
      return phase_pi_over_6q(q);
    case WPreset::kNone:
      break;
  }
  return zero_phase();
}

const char* to_string(WPreset preset) noexcept {
  switch (preset) {
    case WPreset::kPiOverQ:
      return "pi_over_Q";
    case WPreset::kPiOver6Q:
      return "pi_over_6Q";
    case WPreset::kNone:
      break;
  }
  return "none";
}

const char* to_string(OutputFormat format) noexcept {
  return format == OutputFormat::kJson ? "json" : "csv";
}

const char* to_string(BMode mode) noexcept { return mode == BMode::kFull ? "full" : "compact"; }

}  // namespace shorlab
