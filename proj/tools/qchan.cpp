#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qchan/capacity.hpp"
#include "qchan/channel.hpp"
#include "qchan/purity.hpp"
#include "qchan/sweep.hpp"
#include "qchan/version.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitInconclusive = 3;

qchan::Channel load_channel(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open channel spec: " + path);
  json j;
  in >> j;
  return qchan::channel_from_json(j);
}

int default_parallelism() {
  if (const char* env = std::getenv("QCHAN_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return 1;
}

void print_state(const qchan::Matrix& rho) {
  for (int i = 0; i < rho.rows(); ++i) {
    std::cout << "    ";
    for (int j = 0; j < rho.cols(); ++j) {
      std::cout << rho(i, j).real() << (rho(i, j).imag() >= 0 ? "+" : "")
                << rho(i, j).imag() << "i  ";
    }
    std::cout << "\n";
  }
}

int cmd_nu(const std::string& channel_path, double p, int restarts,
           std::uint64_t seed) {
  qchan::Channel phi = load_channel(channel_path);
  qchan::PurityOptions opts;
  if (restarts > 0) opts.restarts = restarts;
  opts.seed = seed;
  qchan::PurityResult result = qchan::nu_p(phi, p, opts);
  std::cout.precision(15);
  std::cout << "nu_p = " << result.value << "  (p = " << p
            << ", form = " << phi.form_name() << ")\n";
  std::cout << "  restarts used: " << result.restarts_used
            << ", converged: " << (result.converged ? "yes" : "no") << "\n";
  std::cout << "  argmax input state:\n";
  print_state(result.argmax_state);
  return result.converged ? kExitOk : kExitInconclusive;
}

int cmd_capacity(const std::string& channel_path, double tol,
                 std::uint64_t seed, const std::string& display) {
  qchan::Channel phi = load_channel(channel_path);
  qchan::CapacityOptions opts;
  opts.tol = tol;
  opts.seed = seed;
  qchan::CapacityResult result = qchan::chi_star(phi, opts);
  std::cout.precision(15);
  double value = result.chi_star;
  if (display == "bits") {
    std::cout << "chi_star = " << value / std::log(2.0) << " bits\n";
  } else {
    std::cout << "chi_star = " << value << " nats\n";
  }
  std::cout << "  duality gap: " << result.duality_gap << " (tol " << tol
            << ")\n";
  std::cout << "  ensemble size: " << result.ensemble.probs.size() << "\n";
  std::cout << "  average input:\n";
  print_state(result.avg_input);
  return result.converged ? kExitOk : kExitInconclusive;
}

int cmd_verify(const qchan::SweepConfig& config, const std::string& format,
               const std::string& out_path) {
  qchan::SweepResult result = qchan::run_sweep(config);

  std::string rendered;
  if (format == "json") {
    rendered = qchan::reports_to_json(result.reports).dump(2);
    rendered += "\n";
  } else {
    rendered = qchan::reports_to_csv(result.reports);
  }
  if (out_path.empty()) {
    std::cout << rendered;
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot write: " + out_path);
    out << rendered;
  }

  if (result.violations > 0) {
    std::string candidate_path =
        (out_path.empty() ? std::string("qchan") : out_path) +
        ".counterexample." + std::to_string(config.seed) + ".json";
    json bundle = json::array();
    for (const auto& c : result.counterexamples) bundle.push_back(c);
    std::ofstream cand(candidate_path);
    cand << bundle.dump(2) << "\n";
    std::cerr << config.check << ": " << result.violations
              << " violation(s); candidates written to " << candidate_path
              << "\n";
    return kExitViolation;
  }
  if (result.inconclusive > 0) {
    std::cerr << config.check << ": " << result.inconclusive
              << " inconclusive instance(s)\n";
    return kExitInconclusive;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum-channel purity, capacity and inequality checks"};
  app.set_version_flag("--version", qchan::kVersion);
  app.require_subcommand(1);

  std::string channel_path;
  double p = 2.0;
  int restarts = 0;
  std::uint64_t seed = 0x51c0ffee;
  auto* nu = app.add_subcommand("nu", "Maximal output p-norm of a channel");
  nu->add_option("--channel", channel_path, "Channel spec JSON")->required();
  nu->add_option("--p", p, "Schatten exponent (>= 1)")->required();
  nu->add_option("--restarts", restarts, "Optimizer restarts");
  nu->add_option("--seed", seed, "Optimizer seed");

  std::string cap_channel;
  double cap_tol = 1e-5;
  std::uint64_t cap_seed = 0xcab1e;
  std::string display = "nats";
  auto* cap = app.add_subcommand("capacity", "Holevo capacity chi*");
  cap->add_option("--channel", cap_channel, "Channel spec JSON")->required();
  cap->add_option("--tol", cap_tol, "Duality-gap tolerance");
  cap->add_option("--seed", cap_seed, "Optimizer seed");
  cap->add_option("--display", display, "nats|bits")
      ->check(CLI::IsMember({"nats", "bits"}));

  qchan::SweepConfig config;
  config.parallelism = default_parallelism();
  std::string format = "csv";
  std::string out_path;
  auto* verify = app.add_subcommand("verify", "Run a verification sweep");
  verify->add_option("check", config.check, "Check name")->required();
  verify->add_option("--trials", config.trials, "Instance count")->required();
  verify
      ->add_option("--seed", config.seed,
                   "Master seed (required: no wall-clock default)")
      ->required();
  verify->add_option("--p", config.p, "Schatten exponent (0 = per instance)");
  verify->add_option("--K", config.K, "Block dimension (0 = per instance)");
  verify->add_option("--parallelism", config.parallelism, "Worker threads");
  verify->add_flag("--exploratory", config.exploratory,
                   "Sample outside the proved scope");
  verify->add_option("--format", format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  verify->add_option("--out", out_path, "Report file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (nu->parsed()) return cmd_nu(channel_path, p, restarts, seed);
    if (cap->parsed()) return cmd_capacity(cap_channel, cap_tol, cap_seed, display);
    return cmd_verify(config, format, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
}
