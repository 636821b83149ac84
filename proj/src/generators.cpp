#include "filt/generators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "filt/io.hpp"

namespace filt {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

FilteredSpace random_filtration_on(const std::vector<std::string>& vertices, int cap, double lo,
                                   double hi, Rng& rng) {
  const int n = static_cast<int>(vertices.size());
  const int effective_cap = std::min(cap, n - 1);
  std::vector<Mask> masks;
  const Mask top = Mask{1} << n;
  for (Mask m = 1; m < top; ++m)
    if (mask_dim(m) <= effective_cap) masks.push_back(m);
  std::sort(masks.begin(), masks.end(), simplex_order_less);

  std::unordered_map<Mask, double> values;
  std::vector<std::pair<Simplex, double>> assignments;
  for (Mask m : masks) {
    double v = rng.uniform(lo, hi);
    for (Mask rest = m; mask_card(m) >= 2 && rest; rest &= rest - 1)
      v = std::max(v, values.at(m & ~(rest & -rest)));
    values[m] = v;
    assignments.emplace_back(Simplex::from_mask(m), v);
  }
  return FilteredSpace(vertices, effective_cap, assignments);
}

FilteredSpace random_filtered_space(int n, int cap, double lo, double hi, Rng& rng) {
  std::vector<std::string> vertices;
  for (int i = 0; i < n; ++i) vertices.push_back("v" + std::to_string(i));
  return random_filtration_on(vertices, cap, lo, hi, rng);
}

FiniteMetricSpace random_metric_space(int n, Rng& rng) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("p" + std::to_string(i));
  std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0));
  if (rng.chance(0.5)) {
    // points on a line segment
    std::vector<double> xs(n);
    for (double& x : xs) x = rng.uniform01();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) dist[i][j] = std::fabs(xs[i] - xs[j]);
  } else {
    // shortest-path completion of random symmetric weights
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) dist[i][j] = dist[j][i] = rng.uniform(0.2, 1.0);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          dist[i][j] = std::min(dist[i][j], dist[i][k] + dist[k][j]);
  }
  return FiniteMetricSpace(names, dist);
}

PersistenceDiagram random_diagram(int degree, int max_points, double essential_chance, Rng& rng) {
  PersistenceDiagram d;
  d.degree = degree;
  const int count = rng.uniform_int(0, max_points);
  for (int i = 0; i < count; ++i) {
    DiagramPoint p;
    p.birth = rng.uniform01();
    p.death = rng.chance(essential_chance) ? std::numeric_limits<double>::infinity()
                                           : p.birth + rng.uniform01();
    d.points.push_back(p);
  }
  return d;
}

VertexMap random_surjection(int z_size, const FilteredSpace& target, Rng& rng) {
  const int n = target.vertex_count();
  if (z_size < n) raise(errc::invalid_spec, "need at least as many sources as targets");
  VertexMap map;
  for (int i = 0; i < z_size; ++i) map.source_names.push_back("z" + std::to_string(i));
  map.to_target.assign(z_size, -1);
  // place each target at a distinct random source, fill the rest uniformly
  std::vector<int> slots(z_size);
  std::iota(slots.begin(), slots.end(), 0);
  for (int x = 0; x < n; ++x) {
    const int pick = rng.uniform_int(x, z_size - 1);
    std::swap(slots[x], slots[pick]);
    map.to_target[slots[x]] = x;
  }
  for (int i = 0; i < z_size; ++i)
    if (map.to_target[i] < 0) map.to_target[i] = rng.uniform_int(0, n - 1);
  return map;
}

Correspondence random_correspondence(int nx, int ny, Rng& rng) {
  Correspondence r;
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j)
      if (rng.chance(0.4)) r.pairs.emplace_back(i, j);
  std::vector<char> hit_x(nx, 0), hit_y(ny, 0);
  for (const auto& [i, j] : r.pairs) hit_x[i] = 1, hit_y[j] = 1;
  for (int i = 0; i < nx; ++i)
    if (!hit_x[i]) {
      const int j = rng.uniform_int(0, ny - 1);
      r.pairs.emplace_back(i, j);
      hit_y[j] = 1;
    }
  for (int j = 0; j < ny; ++j)
    if (!hit_y[j]) r.pairs.emplace_back(rng.uniform_int(0, nx - 1), j);
  std::sort(r.pairs.begin(), r.pairs.end());
  r.pairs.erase(std::unique(r.pairs.begin(), r.pairs.end()), r.pairs.end());
  return r;
}

Tripod random_tripod(int z_size, int nx, int ny, Rng& rng) {
  if (z_size < std::max(nx, ny)) raise(errc::invalid_spec, "tripod too small to be surjective");
  Tripod t;
  for (int i = 0; i < z_size; ++i) t.z_names.push_back("z" + std::to_string(i));
  auto surjective_map = [&](int n) {
    std::vector<int> map(z_size, -1);
    std::vector<int> slots(z_size);
    std::iota(slots.begin(), slots.end(), 0);
    for (int x = 0; x < n; ++x) {
      const int pick = rng.uniform_int(x, z_size - 1);
      std::swap(slots[x], slots[pick]);
      map[slots[x]] = x;
    }
    for (int i = 0; i < z_size; ++i)
      if (map[i] < 0) map[i] = rng.uniform_int(0, n - 1);
    return map;
  };
  t.to_x = surjective_map(nx);
  t.to_y = surjective_map(ny);
  return t;
}

std::string generate_instance(const RandomInstanceSpec& spec) {
  if (spec.size <= 0) raise(errc::invalid_spec, "size must be positive");
  if (spec.lo > spec.hi) raise(errc::invalid_spec, "value range is empty");
  Rng rng(spec.seed);
  switch (spec.kind) {
    case RandomInstanceSpec::Kind::filtered_space: {
      const int cap = spec.cap < 0 ? spec.size - 1 : spec.cap;
      return serialize_filtered_space(random_filtered_space(spec.size, cap, spec.lo, spec.hi, rng));
    }
    case RandomInstanceSpec::Kind::metric_space:
      return serialize_metric_space(random_metric_space(spec.size, rng));
    case RandomInstanceSpec::Kind::diagram:
      return serialize_diagram(random_diagram(0, spec.size, 0.25, rng));
  }
  raise(errc::invalid_spec, "unknown instance kind");
}

}  // namespace filt
