#pragma once

#include <utility>
#include <vector>

#include "filt/persistence.hpp"

namespace filt {

// Partial matching between two diagrams: (index into D1, index into D2)
// pairs; indices absent from every pair are unmatched.
struct PartialMatching {
  std::vector<std::pair<int, int>> pairs;
};

// Cost of a partial matching: max over matched pairs of the l-infinity
// distance and over unmatched points of half their persistence, with the
// conventions |inf - inf| = 0, |finite - inf| = inf, and half persistence
// of an essential point = inf. Empty diagrams cost 0.
double matching_cost(const PersistenceDiagram& d1, const PersistenceDiagram& d2,
                     const PartialMatching& matching);

struct BottleneckResult {
  double value = 0;              // may be +infinity
  PartialMatching certificate;   // matching_cost(certificate) == value
};

// Exact bottleneck distance. Essential points match among themselves (a
// count mismatch makes the distance infinite); finite points are resolved
// by threshold search over the finite candidate set with bipartite
// matching feasibility.
BottleneckResult bottleneck(const PersistenceDiagram& d1, const PersistenceDiagram& d2);

// Oracle: minimize matching_cost over every partial matching.
// Requires |d1| + |d2| <= 12.
double bottleneck_bruteforce(const PersistenceDiagram& d1, const PersistenceDiagram& d2);

}  // namespace filt
