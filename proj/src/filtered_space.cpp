#include "filt/filtered_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

namespace filt {

namespace {

constexpr int kMaxVertices = 24;  // keeps powerset enumeration tractable

std::size_t simplex_count_within(int n, int cap) {
  // sum_{k=1}^{cap+1} C(n, k)
  std::size_t total = 0;
  std::size_t binom = 1;
  for (int k = 1; k <= cap + 1 && k <= n; ++k) {
    binom = binom * static_cast<std::size_t>(n - k + 1) / static_cast<std::size_t>(k);
    total += binom;
  }
  return total;
}

}  // namespace

FilteredSpace::FilteredSpace(std::vector<std::string> vertex_names, int dimension_cap,
                             const std::vector<std::pair<Simplex, double>>& assignments)
    : names_(std::move(vertex_names)) {
  if (names_.empty()) raise(errc::invalid_spec, "vertex set must be non-empty");
  if (static_cast<int>(names_.size()) > kMaxVertices)
    raise(errc::too_large, "more than 24 vertices");
  {
    std::unordered_set<std::string> seen;
    for (const auto& name : names_)
      if (!seen.insert(name).second)
        raise(errc::duplicate_vertex, "duplicate vertex '" + name + "'");
  }
  const int n = vertex_count();
  if (dimension_cap < 0) raise(errc::invalid_spec, "dimension_cap must be >= 0");
  cap_ = std::min(dimension_cap, n - 1);

  values_.reserve(assignments.size());
  for (const auto& [simplex, v] : assignments) {
    if (simplex.vertices.empty()) raise(errc::invalid_simplex, "simplex must be non-empty");
    if (simplex.vertices.back() >= n)
      raise(errc::unknown_simplex, "simplex " + simplex.to_string() + " uses unknown vertex");
    if (simplex.dimension() > cap_)
      raise(errc::invalid_spec,
            "simplex " + simplex.to_string() + " exceeds dimension cap " + std::to_string(cap_));
    if (!std::isfinite(v))
      raise(errc::invalid_spec, "non-finite value on simplex " + simplex.to_string());
    if (!values_.emplace(simplex.mask(), v).second)
      raise(errc::duplicate_simplex, "duplicate simplex " + simplex.to_string());
  }

  if (values_.size() != simplex_count_within(n, cap_)) {
    // locate one gap for the message
    const Mask top = Mask{1} << n;
    for (Mask m = 1; m < top; ++m) {
      if (mask_dim(m) <= cap_ && !values_.count(m))
        raise(errc::missing_simplex, "missing simplex " + Simplex::from_mask(m).to_string());
    }
  }

  for (const auto& [m, v] : values_) {
    if (mask_card(m) < 2) continue;
    for (Mask rest = m; rest; rest &= rest - 1) {
      const Mask facet = m & ~(rest & -rest);
      const double fv = values_.at(facet);
      if (fv > v)
        raise(errc::non_monotone, "value " + std::to_string(fv) + " on face " +
                                      Simplex::from_mask(facet).to_string() + " exceeds value " +
                                      std::to_string(v) + " on " + Simplex::from_mask(m).to_string());
    }
  }
}

double FilteredSpace::value(const Simplex& s) const {
  if (s.vertices.empty()) raise(errc::invalid_simplex, "simplex must be non-empty");
  if (s.vertices.back() >= vertex_count())
    raise(errc::unknown_simplex, "simplex " + s.to_string() + " uses unknown vertex");
  return value(s.mask());
}

double FilteredSpace::value(Mask m) const {
  auto it = values_.find(m);
  if (it == values_.end())
    raise(errc::unknown_simplex, "no value stored for simplex " + Simplex::from_mask(m).to_string());
  return it->second;
}

double FilteredSpace::max_value() const {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& [m, v] : values_) best = std::max(best, v);
  return best;
}

std::vector<Simplex> FilteredSpace::sublevel(double epsilon) const {
  std::vector<Mask> masks;
  for (const auto& [m, v] : values_)
    if (v <= epsilon) masks.push_back(m);
  std::sort(masks.begin(), masks.end(), simplex_order_less);
  std::vector<Simplex> out;
  out.reserve(masks.size());
  for (Mask m : masks) out.push_back(Simplex::from_mask(m));
  return out;
}

std::vector<std::pair<Simplex, double>> FilteredSpace::entries() const {
  std::vector<Mask> masks;
  masks.reserve(values_.size());
  for (const auto& [m, v] : values_) masks.push_back(m);
  std::sort(masks.begin(), masks.end(), simplex_order_less);
  std::vector<std::pair<Simplex, double>> out;
  out.reserve(masks.size());
  for (Mask m : masks) out.emplace_back(Simplex::from_mask(m), values_.at(m));
  return out;
}

bool operator==(const FilteredSpace& a, const FilteredSpace& b) {
  return a.names_ == b.names_ && a.cap_ == b.cap_ && a.values_ == b.values_;
}

FilteredSpace pullback(const FilteredSpace& space, const VertexMap& phi, std::optional<int> cap) {
  const int nz = static_cast<int>(phi.source_names.size());
  const int nx = space.vertex_count();
  if (nz == 0) raise(errc::invalid_spec, "empty source vertex set");
  if (nz > kMaxVertices) raise(errc::too_large, "more than 24 source vertices");
  if (static_cast<int>(phi.to_target.size()) != nz)
    raise(errc::invalid_spec, "assignment size does not match source vertex count");
  for (int t : phi.to_target)
    if (t < 0 || t >= nx) raise(errc::invalid_spec, "assignment target out of range");
  {
    std::vector<char> hit(nx, 0);
    for (int t : phi.to_target) hit[t] = 1;
    for (int x = 0; x < nx; ++x)
      if (!hit[x])
        raise(errc::not_surjective,
              "vertex '" + space.vertex_names()[x] + "' not covered by the parametrization");
  }

  const int cap_z = std::min(nz - 1, std::max(0, cap.value_or(nz - 1)));
  std::vector<Mask> image(std::size_t{1} << nz, 0);
  for (int z = 0; z < nz; ++z) image[Mask{1} << z] = Mask{1} << phi.to_target[z];

  std::vector<std::pair<Simplex, double>> assignments;
  const Mask top = Mask{1} << nz;
  for (Mask m = 1; m < top; ++m) {
    if (mask_dim(m) > cap_z) continue;
    const Mask low = m & -m;
    if (m != low) image[m] = image[m & (m - 1)] | image[low];
    if (!space.contains(image[m]))
      raise(errc::unknown_simplex, "image simplex " + Simplex::from_mask(image[m]).to_string() +
                                       " exceeds the dimension cap of the target space");
    assignments.emplace_back(Simplex::from_mask(m), space.value(image[m]));
  }
  return FilteredSpace(phi.source_names, cap_z, assignments);
}

std::vector<double> dense_value_table(const FilteredSpace& space) {
  const int n = space.vertex_count();
  if (n > 20) raise(errc::too_large, "dense table limited to 20 vertices");
  std::vector<double> table(std::size_t{1} << n, std::numeric_limits<double>::quiet_NaN());
  for (const auto& [s, v] : space.entries()) table[s.mask()] = v;
  return table;
}

}  // namespace filt
