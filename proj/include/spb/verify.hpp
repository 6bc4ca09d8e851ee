#pragma once

// Verification suites: each check names a property and an instance, records
// observed values and a pass flag.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "spb/measures.hpp"
#include "spb/oracle.hpp"

namespace spb {

struct CheckRecord {
  std::string property;
  std::string instance;
  std::vector<std::pair<std::string, double>> observed;
  bool pass;
};

struct VerifyReport {
  std::string suite;
  std::vector<CheckRecord> checks;
  bool all_pass() const;
};

struct VerifyOptions {
  long n = 0;  // 0: the suite's default blocklengths
  std::uint64_t seed = 1;
  long trials = 1000000;
};

/// identities, augustin, spe, htbe, threshold, symmetric, gaussian, theorems, moments.
std::vector<std::string> verify_suites();

/// Throws PreconditionError for an unknown suite name.
VerifyReport run_verify(const std::string& suite, const VerifyOptions& opts = {});

/// Random test instances shared by the suites and the tests.
FiniteDist random_distribution(Rng& rng, Index size, double floor = 0.0);
DiscreteChannel random_channel(Rng& rng, Index inputs, Index outputs, double floor = 0.0);

}  // namespace spb
