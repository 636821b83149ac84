#include "filt/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

namespace filt {

namespace {

constexpr double kTriangleSlack = 1e-9;

std::vector<std::pair<Simplex, double>> filtration_assignments(
    const FiniteMetricSpace& m, int cap, double (*simplex_value)(const FiniteMetricSpace&, Mask)) {
  const int n = m.size();
  const int effective_cap = std::min(cap, n - 1);
  std::vector<std::pair<Simplex, double>> assignments;
  const Mask top = Mask{1} << n;
  for (Mask mask = 1; mask < top; ++mask) {
    if (mask_dim(mask) > effective_cap) continue;
    assignments.emplace_back(Simplex::from_mask(mask), simplex_value(m, mask));
  }
  return assignments;
}

double diameter_of(const FiniteMetricSpace& m, Mask mask) {
  double best = 0;
  for (Mask a = mask; a; a &= a - 1) {
    const int i = std::countr_zero(a);
    for (Mask b = a & (a - 1); b; b &= b - 1) best = std::max(best, m.distance(i, std::countr_zero(b)));
  }
  return best;
}

double radius_of(const FiniteMetricSpace& m, Mask mask) {
  double best = std::numeric_limits<double>::infinity();
  for (int p = 0; p < m.size(); ++p) {
    double reach = 0;
    for (Mask a = mask; a; a &= a - 1) reach = std::max(reach, m.distance(std::countr_zero(a), p));
    best = std::min(best, reach);
  }
  return best;
}

double distortion_of_pairs(const FiniteMetricSpace& m, const FiniteMetricSpace& n,
                           const std::vector<std::pair<int, int>>& pairs) {
  double best = 0;
  for (std::size_t a = 0; a < pairs.size(); ++a)
    for (std::size_t b = a; b < pairs.size(); ++b)
      best = std::max(best, std::fabs(m.distance(pairs[a].first, pairs[b].first) -
                                      n.distance(pairs[a].second, pairs[b].second)));
  return best;
}

std::vector<std::pair<int, int>> grid_pairs(Mask r, int ny) {
  std::vector<std::pair<int, int>> pairs;
  while (r) {
    const int k = std::countr_zero(r);
    pairs.emplace_back(k / ny, k % ny);
    r &= r - 1;
  }
  return pairs;
}

}  // namespace

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::string> point_names,
                                     std::vector<std::vector<double>> distances)
    : names_(std::move(point_names)), dist_(std::move(distances)) {
  const int n = static_cast<int>(names_.size());
  if (n == 0) raise(errc::invalid_spec, "point set must be non-empty");
  {
    std::unordered_set<std::string> seen;
    for (const auto& name : names_)
      if (!seen.insert(name).second) raise(errc::duplicate_vertex, "duplicate point '" + name + "'");
  }
  if (static_cast<int>(dist_.size()) != n)
    raise(errc::metric_violation, "distance matrix must be square");
  for (const auto& row : dist_)
    if (static_cast<int>(row.size()) != n)
      raise(errc::metric_violation, "distance matrix must be square");
  for (int i = 0; i < n; ++i) {
    if (dist_[i][i] != 0) raise(errc::metric_violation, "non-zero diagonal entry");
    for (int j = 0; j < n; ++j) {
      if (!std::isfinite(dist_[i][j]) || dist_[i][j] < 0)
        raise(errc::metric_violation, "distances must be finite and non-negative");
      if (dist_[i][j] != dist_[j][i]) raise(errc::metric_violation, "distance matrix not symmetric");
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (dist_[i][j] > dist_[i][k] + dist_[k][j] + kTriangleSlack)
          raise(errc::metric_violation, "triangle inequality violated at (" + names_[i] + ", " +
                                            names_[j] + ", " + names_[k] + ")");
}

FilteredSpace rips_filtration(const FiniteMetricSpace& m, int cap) {
  if (cap < 0) raise(errc::invalid_spec, "cap must be >= 0");
  return FilteredSpace(m.point_names(), std::min(cap, m.size() - 1),
                       filtration_assignments(m, cap, diameter_of));
}

FilteredSpace cech_filtration(const FiniteMetricSpace& m, int cap) {
  if (cap < 0) raise(errc::invalid_spec, "cap must be >= 0");
  return FilteredSpace(m.point_names(), std::min(cap, m.size() - 1),
                       filtration_assignments(m, cap, radius_of));
}

double distortion(const FiniteMetricSpace& m, const FiniteMetricSpace& n,
                  const Correspondence& r) {
  auto pairs = r.pairs;
  if (pairs.empty()) raise(errc::not_a_correspondence, "empty correspondence");
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  Mask hit_m = 0, hit_n = 0;
  for (const auto& [i, j] : pairs) {
    if (i < 0 || i >= m.size() || j < 0 || j >= n.size())
      raise(errc::not_a_correspondence, "pair index out of range");
    hit_m |= Mask{1} << i;
    hit_n |= Mask{1} << j;
  }
  if (hit_m != (Mask{1} << m.size()) - 1 || hit_n != (Mask{1} << n.size()) - 1)
    raise(errc::not_a_correspondence, "projections must be full");
  return distortion_of_pairs(m, n, pairs);
}

GromovHausdorffResult gromov_hausdorff_exact(const FiniteMetricSpace& m,
                                             const FiniteMetricSpace& n,
                                             const GhOptions& options) {
  const int nx = m.size(), ny = n.size();
  if (nx * ny > options.max_grid_bits)
    raise(errc::too_large,
          "correspondence enumeration needs |X|*|Y| <= " + std::to_string(options.max_grid_bits));
  const std::int64_t total = std::int64_t{1} << (nx * ny);
  const Mask full_y = (Mask{1} << ny) - 1;
  std::vector<double> cost(static_cast<std::size_t>(total),
                           std::numeric_limits<double>::quiet_NaN());

#pragma omp parallel for schedule(dynamic, 256)
  for (std::int64_t r = 1; r < total; ++r) {
    Mask cover = 0;
    bool valid = true;
    for (int px = 0; px < nx && valid; ++px) {
      const Mask row = (static_cast<Mask>(r) >> (px * ny)) & full_y;
      if (!row) valid = false;
      cover |= row;
    }
    if (!valid || cover != full_y) continue;
    cost[static_cast<std::size_t>(r)] = distortion_of_pairs(m, n, grid_pairs(static_cast<Mask>(r), ny));
  }

  GromovHausdorffResult result;
  double best = std::numeric_limits<double>::infinity();
  for (std::int64_t r = 1; r < total; ++r) {
    const double c = cost[static_cast<std::size_t>(r)];
    if (!std::isnan(c) && c < best) best = c;
  }
  for (std::int64_t r = 1; r < total; ++r)
    if (cost[static_cast<std::size_t>(r)] == best)
      result.minimizers.push_back({grid_pairs(static_cast<Mask>(r), ny)});
  result.value = best / 2;
  return result;
}

GromovHausdorffResult gromov_hausdorff_exact_serial(const FiniteMetricSpace& m,
                                                    const FiniteMetricSpace& n,
                                                    const GhOptions& options) {
  const int nx = m.size(), ny = n.size();
  if (nx * ny > options.max_grid_bits)
    raise(errc::too_large,
          "correspondence enumeration needs |X|*|Y| <= " + std::to_string(options.max_grid_bits));
  const std::int64_t total = std::int64_t{1} << (nx * ny);
  const Mask full_y = (Mask{1} << ny) - 1;
  GromovHausdorffResult result;
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> cost(static_cast<std::size_t>(total),
                           std::numeric_limits<double>::quiet_NaN());
  for (std::int64_t r = 1; r < total; ++r) {
    Mask cover = 0;
    bool valid = true;
    for (int px = 0; px < nx && valid; ++px) {
      const Mask row = (static_cast<Mask>(r) >> (px * ny)) & full_y;
      if (!row) valid = false;
      cover |= row;
    }
    if (!valid || cover != full_y) continue;
    Correspondence c{grid_pairs(static_cast<Mask>(r), ny)};
    cost[static_cast<std::size_t>(r)] = distortion(m, n, c);
    best = std::min(best, cost[static_cast<std::size_t>(r)]);
  }
  for (std::int64_t r = 1; r < total; ++r)
    if (cost[static_cast<std::size_t>(r)] == best)
      result.minimizers.push_back({grid_pairs(static_cast<Mask>(r), ny)});
  result.value = best / 2;
  return result;
}

}  // namespace filt
