#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "filt/filtered_space.hpp"

namespace filt {

// Subset of X x Y with full projections to both factors; pairs are
// (x index, y index), kept sorted and deduplicated.
struct Correspondence {
  std::vector<std::pair<int, int>> pairs;
};

// Z with a map to each factor: to_x[z], to_y[z] are vertex indices.
// Both maps must be surjective where a parametrization is required.
struct Tripod {
  std::vector<std::string> z_names;
  std::vector<int> to_x;
  std::vector<int> to_y;
};

// Exact tripod cost: max over non-empty tau <= Z of
// |F_X(phi_X(tau)) - F_Y(phi_Y(tau))| by powerset enumeration.
// Serial by design; it is the reference the correspondence kernel is
// checked against.
double tripod_cost(const FilteredSpace& x, const FilteredSpace& y, const Tripod& tripod,
                   int enumeration_bound = 16);

// Exact cost of a correspondence: max over R-compatible simplex pairs
// (sigma, sigma') of |F_X(sigma) - F_Y(sigma')|. Equals the tripod cost
// of (R, pi_1, pi_2). With capped = true only simplex pairs within the
// caps of x and y are enumerated (a smaller quantity).
double correspondence_cost(const FilteredSpace& x, const FilteredSpace& y,
                           const Correspondence& r, bool capped = false);

// Plain per-pair reference implementation of the same maximum.
double correspondence_cost_serial(const FilteredSpace& x, const FilteredSpace& y,
                                  const Correspondence& r, bool capped = false);

struct DfOptions {
  bool capped = false;
  int max_grid_bits = 12;  // refuse when |X| * |Y| exceeds this
};

struct DfResult {
  double value = 0;
  std::vector<Correspondence> minimizers;  // every argmin, ascending encoding
};

// Exact tripod distance by enumerating all correspondences R <= X x Y.
DfResult df_exact(const FilteredSpace& x, const FilteredSpace& y, const DfOptions& options = {});

// Reference implementation: same enumeration, serial, built on
// correspondence_cost_serial.
DfResult df_exact_serial(const FilteredSpace& x, const FilteredSpace& y,
                         const DfOptions& options = {});

struct DfUpperResult {
  double value = 0;
  Correspondence witness;
};

// Seeded local search over correspondences (add / remove / swap moves,
// greedy descent with restarts). budget counts cost evaluations. The
// result is an upper bound for the exact distance and is deterministic
// for a fixed seed.
DfUpperResult df_upper(const FilteredSpace& x, const FilteredSpace& y, std::uint64_t budget,
                       std::uint64_t seed);

// Pullback composite over the middle space: Z = {(z1, z2) : both map to
// the same Y vertex}. Throws empty_composite if Z is empty.
Tripod compose_tripods(const FilteredSpace& x, const FilteredSpace& y, const FilteredSpace& w,
                       const Tripod& t1, const Tripod& t2);

// The correspondence {(phi_X(z), phi_Y(z)) : z in Z} of a tripod.
Correspondence induced_correspondence(const Tripod& tripod);

// The tripod (R, pi_1, pi_2) of a correspondence.
Tripod correspondence_tripod(const Correspondence& r, const FilteredSpace& x,
                             const FilteredSpace& y);

}  // namespace filt
