// Acceptance gate: one line per criterion (C1..C12 PASS/FAIL), nonzero exit
// if any criterion fails. Each criterion is self-contained and seeded.
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "qchan/capacity.hpp"
#include "qchan/channel.hpp"
#include "qchan/conjectures.hpp"
#include "qchan/purity.hpp"
#include "qchan/sweep.hpp"

using namespace qchan;

namespace {

constexpr int kWorkers = 8;

// Run fn(i) for i in [0, n) on a small worker pool; collect failure notes.
std::vector<std::string> run_parallel(int n,
                                      const std::function<std::string(int)>& fn) {
  std::vector<std::string> failures;
  std::mutex mu;
  std::atomic<int> next{0};
  auto worker = [&] {
    for (;;) {
      int i = next.fetch_add(1);
      if (i >= n) return;
      std::string note;
      try {
        note = fn(i);
      } catch (const std::exception& e) {
        note = "instance " + std::to_string(i) + " threw: " + e.what();
      }
      if (!note.empty()) {
        std::lock_guard<std::mutex> lock(mu);
        failures.push_back(note);
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < kWorkers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return failures;
}

bool report(int idx, const std::vector<std::string>& failures, double secs) {
  if (failures.empty()) {
    std::printf("C%d PASS  (%.1fs)\n", idx, secs);
    return true;
  }
  std::printf("C%d FAIL  (%.1fs)\n", idx, secs);
  for (std::size_t i = 0; i < failures.size() && i < 5; ++i) {
    std::printf("   %s\n", failures[i].c_str());
  }
  if (failures.size() > 5) {
    std::printf("   ... %zu more\n", failures.size() - 5);
  }
  return false;
}

std::string mult_instance(const Channel& om, const Channel& ph, double p,
                          std::uint64_t seed, double eq_tol) {
  PurityOptions opts;
  opts.restarts = 12;
  opts.seed = seed;
  CheckReport rep = check_multiplicativity(om, ph, p, seed, opts);
  if (rep.inconclusive) return "seed " + std::to_string(seed) + ": inconclusive";
  if (rep.gap < -1e-8 || rep.gap > eq_tol) {
    std::ostringstream s;
    s << "seed " << seed << " p=" << p << " gap=" << rep.gap << " ["
      << rep.diagnostics << "]";
    return s.str();
  }
  return "";
}

// --- C1: multiplicativity with a CQ factor ------------------------------
std::vector<std::string> criterion1() {
  struct Job {
    std::uint64_t seed;
    double p;
  };
  std::vector<Job> jobs;
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 5; ++j) {
      for (double p : {1.5, 2.0, 3.0}) {
        jobs.push_back({Rng::mix(0xc1, i * 100 + j * 10 +
                                           static_cast<int>(p * 2)),
                        p});
      }
    }
  }
  return run_parallel(static_cast<int>(jobs.size()), [&](int i) {
    Rng rng(jobs[i].seed, 1);
    int d = (rng.next_u64() % 2 == 0) ? 2 : 3;
    Channel om = random_cptp(d, d, 2 + static_cast<int>(rng.next_u64() % 2),
                             rng);
    Channel cq = random_cq(2, 2, rng);
    return mult_instance(om, cq, jobs[i].p, jobs[i].seed, 1e-4);
  });
}

// --- C2: chi* additivity with a QC factor -------------------------------
std::vector<std::string> criterion2() {
  return run_parallel(30, [&](int i) -> std::string {
    std::uint64_t seed = Rng::mix(0xc2, i);
    Rng rng(seed, 2);
    Channel om = random_cptp(2, 2, 2 + static_cast<int>(rng.next_u64() % 3),
                             rng);
    Channel qc = random_qc(2, 2, rng);

    CapacityOptions opts;
    opts.seed = seed;
    CapacityResult a = chi_star(om, opts);
    CapacityOptions qopts = opts;
    qopts.seed = Rng::mix(seed, 2);
    CapacityResult b = chi_star(qc, qopts);
    if (a.duality_gap > 1e-4 || b.duality_gap > 1e-4) {
      std::ostringstream s;
      s << "seed " << seed << " factor duality gaps " << a.duality_gap << ", "
        << b.duality_gap;
      return s.str();
    }

    Ensemble product;
    for (std::size_t x = 0; x < a.ensemble.probs.size(); ++x) {
      for (std::size_t y = 0; y < b.ensemble.probs.size(); ++y) {
        double pr = a.ensemble.probs[x] * b.ensemble.probs[y];
        if (pr < 1e-4) continue;
        product.probs.push_back(pr);
        product.states.push_back(
            tensor(a.ensemble.states[x], b.ensemble.states[y]));
      }
    }
    double z = 0.0;
    for (double pr : product.probs) z += pr;
    for (double& pr : product.probs) pr /= z;

    CapacityOptions jopts = opts;
    jopts.seed = Rng::mix(seed, 3);
    jopts.init_ensemble = product;
    CapacityResult joint = chi_star(tensor_channels(om, qc), jopts);
    double gap = joint.chi_star - a.chi_star - b.chi_star;
    if (std::abs(gap) > 2e-3) {
      std::ostringstream s;
      s << "seed " << seed << " additivity gap " << gap;
      return s.str();
    }
    return "";
  });
}

// --- C3: qubit multiplicativity at p = 2 --------------------------------
std::vector<std::string> criterion3() {
  return run_parallel(30, [&](int i) {
    std::uint64_t seed = Rng::mix(0xc3, i);
    Rng rng(seed, 3);
    Channel ph = Channel::qubit_affine(random_qubit_affine(rng, false));
    int d = 2 + static_cast<int>(rng.next_u64() % 2);
    Channel om = random_cptp(d, d, 2 + static_cast<int>(rng.next_u64() % 2),
                             rng);
    return mult_instance(om, ph, 2.0, seed, 1e-4);
  });
}

// --- C4: translation-condition channels at integer p --------------------
std::vector<std::string> criterion4() {
  struct Job {
    int i;
    double p;
  };
  std::vector<Job> jobs;
  for (int i = 0; i < 20; ++i) {
    for (double p : {2.0, 3.0}) jobs.push_back({i, p});
  }
  return run_parallel(static_cast<int>(jobs.size()), [&](int k) {
    std::uint64_t seed = Rng::mix(0xc4, jobs[k].i * 10 +
                                            static_cast<int>(jobs[k].p));
    Rng rng(seed, 4);
    bool unital = (jobs[k].i % 2 == 0);
    Channel ph = Channel::qubit_affine(
        random_translation_condition_params(rng, unital));
    int d = 2 + static_cast<int>(rng.next_u64() % 2);
    Channel om = random_cptp(d, d, 2 + static_cast<int>(rng.next_u64() % 2),
                             rng);
    return mult_instance(om, ph, jobs[k].p, seed, 1e-4);
  });
}

std::vector<std::string> sweep_criterion(const SweepConfig& cfg,
                                         bool forbid_inconclusive = true) {
  SweepResult res = run_sweep(cfg);
  std::vector<std::string> failures;
  if (res.violations > 0) {
    failures.push_back(cfg.check + ": " + std::to_string(res.violations) +
                       " violation(s)");
  }
  if (forbid_inconclusive && res.inconclusive > 0) {
    failures.push_back(cfg.check + ": " + std::to_string(res.inconclusive) +
                       " inconclusive instance(s)");
  }
  for (const auto& rep : res.reports) {
    if (!rep.pass && !rep.inconclusive) {
      std::ostringstream s;
      s << cfg.check << " seed " << rep.instance_seed << " gap=" << rep.gap;
      failures.push_back(s.str());
      break;
    }
  }
  return failures;
}

// --- C5: conjectured norm bound, proved scopes --------------------------
std::vector<std::string> criterion5() {
  std::vector<std::string> failures;
  SweepConfig p2;
  p2.check = "conjecture1";
  p2.trials = 1000;
  p2.seed = 0xc5a;
  p2.p = 2.0;
  p2.parallelism = kWorkers;
  for (auto& f : sweep_criterion(p2)) failures.push_back("p=2: " + f);

  for (double p : {3.0, 4.0}) {
    SweepConfig cfg;
    cfg.check = "conjecture1";
    cfg.trials = 250;
    cfg.seed = 0xc5b + static_cast<std::uint64_t>(p);
    cfg.p = p;
    cfg.parallelism = kWorkers;
    for (auto& f : sweep_criterion(cfg)) {
      failures.push_back("p=" + std::to_string(p) + ": " + f);
    }
  }
  return failures;
}

// --- C6: block norm bound with equality endpoints -----------------------
std::vector<std::string> criterion6() {
  SweepConfig cfg;
  cfg.check = "lieb-ruskai";
  cfg.trials = 500;
  cfg.seed = 0xc6;
  cfg.parallelism = kWorkers;
  std::vector<std::string> failures = sweep_criterion(cfg);

  Rng rng(0xc6e);
  Matrix x = random_psd(3, rng);
  for (double lambda : {0.0, 1.0}) {
    for (double p : {1.5, 2.0, 3.0}) {
      CheckReport rep =
          check_lieb_ruskai(x, Matrix::Identity(3, 3), lambda, p);
      if (!rep.pass || std::abs(rep.gap) > 1e-10) {
        std::ostringstream s;
        s << "equality endpoint lambda=" << lambda << " p=" << p
          << " gap=" << rep.gap;
        failures.push_back(s.str());
      }
    }
  }
  return failures;
}

// --- C7: QC relative-entropy identity -----------------------------------
std::vector<std::string> criterion7() {
  SweepConfig cfg;
  cfg.check = "qc-identity";
  cfg.trials = 200;
  cfg.seed = 0xc7;
  cfg.parallelism = kWorkers;
  return sweep_criterion(cfg);
}

// --- C8: norm-derivative/entropy link plus the entropy bound ------------
std::vector<std::string> criterion8() {
  std::vector<std::string> failures;
  Rng rng(0xc8);
  for (int i = 0; i < 100; ++i) {
    int d = 2 + static_cast<int>(rng.next_u64() % 3);
    Matrix rho = random_density(d, rng);
    double s = von_neumann_entropy(rho);
    double fd = norm_derivative_at_one(rho, 1e-4);
    if (std::abs(fd + s) > 1e-3) {
      std::ostringstream out;
      out << "state " << i << " |d/dp + S| = " << std::abs(fd + s);
      failures.push_back(out.str());
    }
  }
  SweepConfig cfg;
  cfg.check = "entropy-bound";
  cfg.trials = 300;
  cfg.seed = 0xc8b;
  cfg.parallelism = kWorkers;
  for (auto& f : sweep_criterion(cfg)) failures.push_back(f);
  return failures;
}

// --- C9: unital qubit capacity shortcut ---------------------------------
std::vector<std::string> criterion9() {
  return run_parallel(20, [&](int i) -> std::string {
    std::uint64_t seed = Rng::mix(0xc9, i);
    Rng rng(seed, 9);
    Channel ph = Channel::qubit_affine(random_qubit_affine(rng, true));
    CapacityOptions opts;
    opts.seed = seed;
    double opt = chi_star(ph, opts).chi_star;
    double closed = chi_star_unital_qubit(ph);
    if (std::abs(opt - closed) > 1e-4) {
      std::ostringstream s;
      s << "seed " << seed << " optimizer " << opt << " vs closed " << closed;
      return s.str();
    }
    return "";
  });
}

// --- C10: depolarizing closed form --------------------------------------
std::vector<std::string> criterion10() {
  std::vector<std::string> failures;
  for (double lambda : {-0.3, 0.0, 0.25, 0.5, 0.75, 1.0}) {
    for (double p : {1.0, 1.5, 2.0, 3.0, 5.0}) {
      QubitAffineParams params;
      params.lambda = {lambda, lambda, lambda};
      double opt = nu_p(Channel::qubit_affine(params), p).value;
      double closed = nu_p_depolarizing(lambda, p);
      if (std::abs(opt - closed) > 1e-6) {
        std::ostringstream s;
        s << "lambda=" << lambda << " p=" << p << " optimizer " << opt
          << " closed " << closed;
        failures.push_back(s.str());
      }
    }
  }
  return failures;
}

// --- C11: block decomposition sub-checks --------------------------------
std::vector<std::string> criterion11() {
  SweepConfig cfg;
  cfg.check = "block-decompose";
  cfg.trials = 300;
  cfg.seed = 0xc11;
  cfg.parallelism = kWorkers;
  return sweep_criterion(cfg);
}

// --- C12: determinism across parallelism --------------------------------
std::vector<std::string> criterion12() {
  std::vector<std::string> failures;
  for (const char* check : {"conjecture1", "lieb-ruskai"}) {
    SweepConfig cfg;
    cfg.check = check;
    cfg.trials = 48;
    cfg.seed = 0xc12;
    if (std::string(check) == "conjecture1") cfg.p = 2.0;
    cfg.parallelism = 1;
    std::string serial = reports_to_csv(run_sweep(cfg).reports);
    cfg.parallelism = kWorkers;
    std::string parallel = reports_to_csv(run_sweep(cfg).reports);
    if (serial != parallel) {
      failures.push_back(std::string(check) +
                         ": reports differ across parallelism");
    }
  }
  return failures;
}

}  // namespace

int main() {
  std::vector<std::function<std::vector<std::string>()>> criteria = {
      criterion1, criterion2, criterion3, criterion4,  criterion5,
      criterion6, criterion7, criterion8, criterion9,  criterion10,
      criterion11, criterion12};

  bool all_pass = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<std::string> failures;
    try {
      failures = criteria[i]();
    } catch (const std::exception& e) {
      failures.push_back(std::string("criterion threw: ") + e.what());
    }
    double secs = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    all_pass &= report(static_cast<int>(i) + 1, failures, secs);
    std::fflush(stdout);
  }
  return all_pass ? 0 : 1;
}
