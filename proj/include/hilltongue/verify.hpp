#pragma once

#include <cstdint>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "hilltongue/config.hpp"
#include "hilltongue/sweeps.hpp"

namespace hilltongue {

struct CheckResult {
  std::string id;
  std::string name;
  /// What result of the theory the check exercises.
  std::string anchor;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  /// Wall-clock budget; 0 means none.
  double budget = 0.0;
};

/// Deterministic small rationals p/q with p in [-9, 9], q in [1, 9].
class RationalSampler {
 public:
  explicit RationalSampler(std::uint64_t seed = 20240601) : rng_(seed) {}
  Rational any();
  Rational nonzero();

 private:
  std::mt19937_64 rng_;
};

/// Module invariants evaluated on the configured problem.
std::vector<CheckResult> check_config(const RunConfig& config, int threads = 0);

/// The ten acceptance criteria plus the Mathieu chart ordering.
std::vector<CheckResult> acceptance_suite(int threads = 0);

/// Oracle endpoint stability under step doubling and Wronskian drift;
/// returns the worst endpoint change and |det - 1| over the records.
struct OracleAudit {
  double max_endpoint_change = 0.0;
  double max_det_error = 0.0;
  std::size_t records = 0;
};

OracleAudit audit_records(const ProblemSpec& spec, const std::vector<TongueRecord>& records,
                          const IntegratorSettings& settings = {});

/// One line per check; timing is printed only when requested so CLI reports
/// stay byte-identical between runs.
void print_checks(std::ostream& os, const std::vector<CheckResult>& checks, bool timing);

bool all_passed(const std::vector<CheckResult>& checks);

}  // namespace hilltongue
