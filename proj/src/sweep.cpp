#include "qchan/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "qchan/version.hpp"

namespace qchan {

namespace {

using json = nlohmann::json;

struct InstanceOutcome {
  std::uint64_t seed = 0;
  std::vector<CheckReport> reports;
  json context;
};

double draw_p(Rng& rng) {
  static constexpr double kGrid[3] = {1.5, 2.0, 3.0};
  return kGrid[rng.next_u64() % 3];
}

Channel draw_small_factor(Rng& rng) {
  switch (rng.next_u64() % 3) {
    case 0: return random_cq(2, 2, rng);
    case 1: return random_qc(2, 2, rng);
    default: return Channel::qubit_affine(random_qubit_affine(rng, false));
  }
}

InstanceOutcome run_instance(const SweepConfig& cfg, std::uint64_t iseed) {
  Rng rng(iseed);
  InstanceOutcome out;
  out.seed = iseed;
  out.context["check"] = cfg.check;
  out.context["instance_seed"] = iseed;
  out.context["version"] = kVersion;

  const int K = cfg.K > 0 ? cfg.K : 2 + static_cast<int>(rng.next_u64() % 3);

  if (cfg.check == "conjecture1") {
    double p = cfg.p;
    QubitAffineParams params;
    if (cfg.exploratory) {
      if (p <= 0.0) p = rng.uniform(1.0, 5.0);
      params = random_qubit_affine(rng, false);
    } else {
      if (p <= 0.0) p = 2.0;
      bool integer = std::abs(p - std::round(p)) < 1e-9;
      if (integer && p > 2.5) {
        params = random_translation_condition_params(rng, rng.uniform() < 0.5);
      } else {
        params = random_qubit_affine(rng, false);
      }
    }
    Channel phi = Channel::qubit_affine(params);
    Matrix m = random_block_psd(K, rng);
    out.context["p"] = p;
    out.context["K"] = K;
    out.context["channel"] = channel_to_json(phi);
    out.context["M"] = matrix_to_json(m);
    out.reports.push_back(check_conjecture1(phi, m, p, iseed));
  } else if (cfg.check == "entropy-bound") {
    Channel phi = Channel::qubit_affine(random_qubit_affine(rng, false));
    Matrix m = random_block_psd(K, rng);
    out.context["K"] = K;
    out.context["channel"] = channel_to_json(phi);
    out.context["M"] = matrix_to_json(m);
    out.reports.push_back(check_entropy_bound(phi, m, iseed));
  } else if (cfg.check == "lieb-ruskai") {
    Matrix x = random_psd(K, rng);
    Matrix v = random_unitary(K, rng);
    double lambda = rng.uniform();
    double p = cfg.p > 0.0 ? cfg.p : draw_p(rng);
    out.context["p"] = p;
    out.context["lambda"] = lambda;
    out.context["X"] = matrix_to_json(x);
    out.context["V"] = matrix_to_json(v);
    out.reports.push_back(check_lieb_ruskai(x, v, lambda, p, iseed));
  } else if (cfg.check == "multiplicativity") {
    double p = cfg.p > 0.0 ? cfg.p : draw_p(rng);
    int d = 2 + static_cast<int>(rng.next_u64() % 2);
    int rank = 2 + static_cast<int>(rng.next_u64() % (d * d - 1));
    Channel omega = random_cptp(d, d, rank, rng);
    Channel phi = draw_small_factor(rng);
    out.context["p"] = p;
    out.context["omega"] = channel_to_json(omega);
    out.context["phi"] = channel_to_json(phi);
    PurityOptions opts;
    opts.seed = Rng::mix(iseed, 0xa1);
    out.reports.push_back(check_multiplicativity(omega, phi, p, iseed, opts));
  } else if (cfg.check == "additivity") {
    int rank = 2 + static_cast<int>(rng.next_u64() % 3);
    Channel omega = rng.uniform() < 0.5
                        ? Channel::qubit_affine(random_qubit_affine(rng, true))
                        : random_cptp(2, 2, rank, rng);
    Channel phi = draw_small_factor(rng);
    out.context["omega"] = channel_to_json(omega);
    out.context["phi"] = channel_to_json(phi);
    CapacityOptions opts;
    opts.seed = Rng::mix(iseed, 0xc2);
    auto [chi_rep, smin_rep] = check_additivity(omega, phi, iseed, opts);
    out.reports.push_back(std::move(chi_rep));
    out.reports.push_back(std::move(smin_rep));
  } else if (cfg.check == "qc-identity") {
    int rank = 2 + static_cast<int>(rng.next_u64() % 3);
    Channel omega = random_cptp(2, 2, rank, rng);
    Channel phi = random_qc(2, 2, rng);
    Matrix tau = random_density(4, rng);
    out.context["omega"] = channel_to_json(omega);
    out.context["phi"] = channel_to_json(phi);
    out.context["tau"] = matrix_to_json(tau);
    CapacityOptions opts;
    opts.seed = Rng::mix(iseed, 0xc4);
    out.reports.push_back(check_qc_identity(omega, phi, tau, iseed, opts));
  } else if (cfg.check == "block-decompose") {
    int p = cfg.p > 0.0 ? static_cast<int>(std::round(cfg.p))
                        : 2 + static_cast<int>(rng.next_u64() % 3);
    QubitAffineParams params = canonicalize_qubit(random_translation_condition_params(
                                   rng, rng.uniform() < 0.5))
                                   .params;
    Channel phi = Channel::qubit_affine(params);
    Matrix m = random_block_psd(K, rng);
    out.context["p"] = p;
    out.context["K"] = K;
    out.context["channel"] = channel_to_json(phi);
    out.context["M"] = matrix_to_json(m);
    BlockDecomposition bd = block_decompose(m, phi, p, iseed);
    out.reports = bd.sub_reports;
  } else {
    throw std::invalid_argument("run_sweep: unknown check '" + cfg.check + "'");
  }
  return out;
}

std::string fmt_general(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", x);
  return buf;
}

std::string fmt_scientific(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15e", x);
  return buf;
}

}  // namespace

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> kChecks = {
      "conjecture1",      "entropy-bound", "lieb-ruskai", "multiplicativity",
      "additivity",       "qc-identity",   "block-decompose"};
  return kChecks;
}

SweepResult run_sweep(const SweepConfig& config) {
  if (config.trials < 1) {
    throw std::invalid_argument("run_sweep: trials must be >= 1");
  }
  if (std::find(known_checks().begin(), known_checks().end(), config.check) ==
      known_checks().end()) {
    throw std::invalid_argument("run_sweep: unknown check '" + config.check +
                                "'");
  }

  std::vector<std::uint64_t> seeds(config.trials);
  for (int i = 0; i < config.trials; ++i) {
    seeds[i] = instance_seed(config.seed, static_cast<std::uint64_t>(i));
  }

  std::vector<InstanceOutcome> outcomes(config.trials);
  const int threads = std::max(1, std::min(config.parallelism, config.trials));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (;;) {
      int i = next.fetch_add(1);
      if (i >= config.trials) return;
      try {
        outcomes[i] = run_instance(config, seeds[i]);
      } catch (const std::exception& e) {
        InstanceOutcome bad;
        bad.seed = seeds[i];
        CheckReport rep;
        rep.check_name = config.check;
        rep.instance_seed = seeds[i];
        rep.inconclusive = true;
        rep.diagnostics = std::string("instance error: ") + e.what();
        bad.reports.push_back(std::move(rep));
        outcomes[i] = std::move(bad);
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::sort(outcomes.begin(), outcomes.end(),
            [](const InstanceOutcome& a, const InstanceOutcome& b) {
              return a.seed < b.seed;
            });

  SweepResult result;
  for (auto& o : outcomes) {
    bool violated = false;
    bool inconclusive = false;
    for (const auto& rep : o.reports) {
      if (rep.inconclusive) inconclusive = true;
      else if (!rep.pass) violated = true;
    }
    if (violated) {
      ++result.violations;
      json candidate = o.context;
      json reports = json::array();
      for (const auto& rep : o.reports) {
        reports.push_back({{"check_name", rep.check_name},
                           {"lhs", rep.lhs},
                           {"rhs", rep.rhs},
                           {"gap", rep.gap},
                           {"tolerance", rep.tolerance},
                           {"pass", rep.pass}});
      }
      candidate["reports"] = std::move(reports);
      result.counterexamples.push_back(std::move(candidate));
    }
    if (inconclusive) ++result.inconclusive;
    for (auto& rep : o.reports) result.reports.push_back(std::move(rep));
  }
  return result;
}

std::string reports_to_csv(const std::vector<CheckReport>& reports) {
  std::string out = "check_name,instance_seed,lhs,rhs,gap,pass,tolerance\n";
  for (const auto& r : reports) {
    out += r.check_name;
    out += ',';
    out += std::to_string(r.instance_seed);
    out += ',';
    out += fmt_general(r.lhs);
    out += ',';
    out += fmt_general(r.rhs);
    out += ',';
    out += fmt_scientific(r.gap);
    out += ',';
    out += r.pass ? "true" : "false";
    out += ',';
    out += fmt_general(r.tolerance);
    out += '\n';
  }
  return out;
}

nlohmann::json reports_to_json(const std::vector<CheckReport>& reports) {
  json arr = json::array();
  for (const auto& r : reports) {
    arr.push_back({{"check_name", r.check_name},
                   {"instance_seed", r.instance_seed},
                   {"lhs", r.lhs},
                   {"rhs", r.rhs},
                   {"gap", r.gap},
                   {"pass", r.pass},
                   {"tolerance", r.tolerance},
                   {"inconclusive", r.inconclusive},
                   {"diagnostics", r.diagnostics}});
  }
  return arr;
}

}  // namespace qchan
