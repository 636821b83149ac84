#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "filt/filtered_space.hpp"
#include "filt/persistence.hpp"

namespace filt {

struct CheckResult {
  std::string name;
  int trials = 0;
  int violations = 0;
};

struct VerifyReport {
  std::string suite;
  int trials = 0;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  std::vector<std::string> counterexamples;
  bool passed = true;
};

// Runs a property suite: stability, pullback, pseudometric, geodesic,
// gh-stability, reduction, or all. Trials scale the randomized checks;
// counterexamples list concrete violating instances.
VerifyReport run_verify(const std::string& suite, int trials, std::uint64_t seed);

std::string serialize_verify_report(const VerifyReport& report);

namespace oracles {

// Betti number of the eps-sublevel complex in degree k over F_p, by dense
// Gaussian elimination on the boundary operators (independent of the
// column-reduction pairing).
int sublevel_betti(const FilteredSpace& space, double eps, int k, int p);

// Number of diagram points alive at eps: birth <= eps < death.
int alive_count(const PersistenceDiagram& diagram, double eps);

}  // namespace oracles

}  // namespace filt
