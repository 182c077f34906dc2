// Prints one PASS/FAIL line per acceptance criterion; failing reports are
// detailed on stderr. Exit status is nonzero when any criterion fails.
//
// usage: acceptance <path-to-shor_lab>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <unistd.h>

#include "shorlab/suite.hpp"

using namespace shorlab;

namespace {

int failed_criteria = 0;

void criterion(int id, const std::string& title, const Reports& reports) {
  const bool ok = all_pass(reports);
  if (!ok) ++failed_criteria;
  std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << id << ": " << title << " (" << reports.size()
            << " reports)\n";
  for (const auto& r : reports) {
    if (!r.pass) std::cerr << "    criterion " << id << " failing: " << to_json(r).dump() << '\n';
  }
}

void append(Reports& into, const Reports& more) { into.insert(into.end(), more.begin(), more.end()); }

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Reports determinism(const std::string& tool) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("shorlab_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  Reports out;
  for (const char* format : {"json", "csv"}) {
    std::string text[2];
    int status[2];
    for (int run = 0; run < 2; ++run) {
      const fs::path file = dir / (std::string("verify.") + format);
      const std::string cmd = "\"" + tool + "\" verify --seed 42 --format " + format + " --out \"" +
                              file.string() + "\" > /dev/null 2>&1";
      status[run] = std::system(cmd.c_str());
      text[run] = slurp(file);
    }
    nlohmann::ordered_json ctx;
    ctx["format"] = format;
    ctx["bytes"] = text[0].size();
    ctx["exit_status"] = status[0];
    const bool same = !text[0].empty() && text[0] == text[1] && status[0] == status[1];
    out.push_back(make_equality(std::string("determinism.") + format, same ? 1.0 : 0.0, 1.0, 0.0, ctx));
  }
  fs::remove_all(dir);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: acceptance <path-to-shor_lab>\n";
    return 2;
  }
  const Tolerances tol;  // 1e-10 closed form, 1e-12 identities, 1e-8 spectral
  const std::uint64_t seed = 42;
  const auto inst = ShorInstance::circuit(15, 7, 4, BMode::kCompact);
  const auto full = ShorInstance::circuit(15, 7, 4, BMode::kFull);
  const CVector uniform = CVector::Constant(16, 0.25);
  const SampleSet samples = make_samples(inst, seed, 100, default_theta_grid());

  {
    Reports r = check_corollary1(BMode::kCompact, tol);
    append(r, check_corollary1(BMode::kFull, tol));
    criterion(1, "Corollary 1 exact values, closed form vs oracle", r);
  }
  criterion(2, "Theorem 1 equality on random real, theta-grid and complex inputs",
            check_theorem1(inst, samples, seed, tol));
  criterion(3, "Lemma 1 chain and saturation", check_lemma1(inst, samples, seed, tol));
  criterion(4, "Theorem 2 lower bound and kernel check", check_theorem2(inst, samples, seed));
  criterion(5, "Theorem 3 upper bound", check_theorem3(inst, samples, seed));
  criterion(6, "Theorem 5 pseudo-pure success identity",
            check_theorem5(inst, uniform, default_success_epsilon_grid(), tol));
  criterion(7, "Theorem 4 / Corollary 2 vs spectral and trace-form evaluation",
            check_theorem4(inst, uniform, default_coherence_epsilon_grid(), tol));
  criterion(8, "Theorem 6 / Corollary 3 vs spectral and trace-form evaluation, endpoints",
            check_theorem6(inst, default_noisy_lambda_grid(inst), tol));
  criterion(9, "Theorem 7 noisy success bound and kernel check",
            check_theorem7(inst, {0.0, 0.3, 0.6, 1.0}));
  criterion(10, "Remark 3 identity at shifted peaks and gamma range",
            check_remark3(inst, default_noisy_lambda_grid(inst), tol));
  {
    Reports r = check_infrastructure(inst, seed, default_success_epsilon_grid(),
                                     default_noisy_lambda_grid(inst), tol);
    append(r, check_infrastructure(full, seed, default_success_epsilon_grid(),
                                   default_noisy_lambda_grid(full), tol));
    criterion(11, "Infrastructure: unitarity, trace preservation, unitality, eigen, sums", r);
  }
  criterion(12, "Determinism of verify reports", determinism(argv[1]));

  std::cout << (12 - failed_criteria) << "/12 criteria passed\n";
  return failed_criteria == 0 ? 0 : 1;
}
