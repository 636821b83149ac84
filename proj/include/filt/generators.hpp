#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "filt/filtered_space.hpp"
#include "filt/metric.hpp"
#include "filt/persistence.hpp"
#include "filt/tripod.hpp"

namespace filt {

// Deterministic random source; the double path avoids distribution
// objects so a seed pins the stream across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool chance(double p) { return uniform01() < p; }

 private:
  std::mt19937_64 engine_;
};

// Stable per-trial seed derivation (splitmix64 step).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// Monotone by construction: values assigned in increasing dimension with
// a running max over facets. Vertices are named v0, v1, ...
FilteredSpace random_filtered_space(int n, int cap, double lo, double hi, Rng& rng);

// As above but on a caller-provided vertex set (for same-set pairs).
FilteredSpace random_filtration_on(const std::vector<std::string>& vertices, int cap, double lo,
                                   double hi, Rng& rng);

// Either pairwise distances of points on a line segment or a shortest-path
// completion of a random symmetric matrix. Points are named p0, p1, ...
FiniteMetricSpace random_metric_space(int n, Rng& rng);

PersistenceDiagram random_diagram(int degree, int max_points, double essential_chance, Rng& rng);

// Surjection onto the vertices of target from z_size sources z0, z1, ...
VertexMap random_surjection(int z_size, const FilteredSpace& target, Rng& rng);

Correspondence random_correspondence(int nx, int ny, Rng& rng);

// Tripod with surjective maps onto [nx] and [ny]; needs z_size >= max.
Tripod random_tripod(int z_size, int nx, int ny, Rng& rng);

// Serialized random instances for scripting; byte-identical per spec.
struct RandomInstanceSpec {
  enum class Kind { filtered_space, metric_space, diagram };
  Kind kind = Kind::filtered_space;
  int size = 3;
  int cap = -1;  // filtered spaces: -1 means full powerset
  double lo = 0.0, hi = 1.0;
  std::uint64_t seed = 0;
};

std::string generate_instance(const RandomInstanceSpec& spec);

}  // namespace filt
