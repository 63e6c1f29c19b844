#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qchan/conjectures.hpp"

namespace qchan {

// A seeded batch of instances of one check. Instance seeds are pre-derived
// from the master seed, so the sorted report is byte-identical for any
// parallelism level. p = 0 / K = 0 mean "drawn per instance".
struct SweepConfig {
  std::string check;  // conjecture1, entropy-bound, lieb-ruskai,
                      // multiplicativity, additivity, qc-identity,
                      // block-decompose
  int trials = 1;
  std::uint64_t seed = 0;
  double p = 0.0;
  int K = 0;
  int parallelism = 1;
  bool exploratory = false;  // conjecture1 outside the proved scope
};

struct SweepResult {
  std::vector<CheckReport> reports;  // sorted by instance_seed
  std::vector<nlohmann::json> counterexamples;
  int violations = 0;
  int inconclusive = 0;
};

const std::vector<std::string>& known_checks();

SweepResult run_sweep(const SweepConfig& config);

// CSV with header check_name,instance_seed,lhs,rhs,gap,pass,tolerance;
// 15 significant digits, gaps in scientific notation.
std::string reports_to_csv(const std::vector<CheckReport>& reports);

nlohmann::json reports_to_json(const std::vector<CheckReport>& reports);

}  // namespace qchan
