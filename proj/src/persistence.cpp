#include "filt/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

namespace filt {

namespace {

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// inverse[a] * a = 1 mod p for a in [1, p)
std::vector<int> multiplicative_inverse_vector(int p) {
  std::vector<int> inverse(p);
  inverse[1] = 1;
  // p - p/a * a = p mod a, so inverse[a] = -(p/a) * inverse[p mod a] mod p
  for (int a = 2; a < p; ++a) inverse[a] = p - static_cast<int>(std::int64_t(p / a) * inverse[p % a] % p);
  return inverse;
}

using Column = std::vector<std::pair<int, int>>;

// target += lambda * source (mod p), rows kept ascending, zeros dropped
void add_scaled(Column& target, const Column& source, int lambda, int p) {
  Column out;
  out.reserve(target.size() + source.size());
  std::size_t i = 0, j = 0;
  while (i < target.size() || j < source.size()) {
    if (j == source.size() || (i < target.size() && target[i].first < source[j].first)) {
      out.push_back(target[i++]);
    } else if (i == target.size() || source[j].first < target[i].first) {
      int c = static_cast<int>(std::int64_t(source[j].second) * lambda % p);
      if (c) out.emplace_back(source[j].first, c);
      ++j;
    } else {
      int c = static_cast<int>((target[i].second + std::int64_t(source[j].second) * lambda) % p);
      if (c) out.emplace_back(target[i].first, c);
      ++i, ++j;
    }
  }
  target = std::move(out);
}

}  // namespace

double persistence_of(const DiagramPoint& p) {
  return std::isinf(p.death) ? std::numeric_limits<double>::infinity() : p.death - p.birth;
}

bool same_diagram(const PersistenceDiagram& a, const PersistenceDiagram& b) {
  if (a.degree != b.degree || a.points.size() != b.points.size()) return false;
  auto key = [](const DiagramPoint& p) { return std::make_pair(p.birth, p.death); };
  auto sa = a.points, sb = b.points;
  auto cmp = [&](const DiagramPoint& x, const DiagramPoint& y) { return key(x) < key(y); };
  std::sort(sa.begin(), sa.end(), cmp);
  std::sort(sb.begin(), sb.end(), cmp);
  return sa == sb;
}

SortedFiltration sort_filtration(const FilteredSpace& space, int working_cap) {
  if (working_cap < 0) raise(errc::invalid_spec, "working cap must be >= 0");
  if (working_cap > space.dimension_cap())
    raise(errc::cap_exceeds_space, "working cap " + std::to_string(working_cap) +
                                       " exceeds space cap " +
                                       std::to_string(space.dimension_cap()));
  SortedFiltration out;
  for (const auto& [s, v] : space.entries()) {
    if (s.dimension() > working_cap) continue;
    out.simplices.push_back(s.mask());
    out.values.push_back(v);
  }
  std::vector<std::size_t> order(out.simplices.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (out.values[a] != out.values[b]) return out.values[a] < out.values[b];
    return simplex_order_less(out.simplices[a], out.simplices[b]);
  });
  SortedFiltration sorted;
  sorted.simplices.reserve(order.size());
  sorted.values.reserve(order.size());
  for (std::size_t i : order) {
    sorted.simplices.push_back(out.simplices[i]);
    sorted.values.push_back(out.values[i]);
  }
  return sorted;
}

BoundaryMatrix boundary_matrix(const SortedFiltration& filtration, int field_prime) {
  if (!is_prime(field_prime)) raise(errc::not_prime, std::to_string(field_prime) + " is not prime");
  std::unordered_map<Mask, int> index;
  index.reserve(filtration.size());
  for (std::size_t i = 0; i < filtration.size(); ++i) index[filtration.simplices[i]] = static_cast<int>(i);

  BoundaryMatrix matrix;
  matrix.modulus = field_prime;
  matrix.columns.resize(filtration.size());
  for (std::size_t j = 0; j < filtration.size(); ++j) {
    const Mask m = filtration.simplices[j];
    if (mask_card(m) < 2) continue;
    Column& col = matrix.columns[j];
    int position = 0;  // rank of the dropped vertex, gives sign (-1)^position
    for (Mask rest = m; rest; rest &= rest - 1, ++position) {
      const Mask facet = m & ~(rest & -rest);
      const int coeff = (position % 2 == 0) ? 1 : field_prime - 1;
      col.emplace_back(index.at(facet), coeff);
    }
    std::sort(col.begin(), col.end());
  }
  return matrix;
}

ReductionResult reduce(BoundaryMatrix& matrix) {
  const int p = matrix.modulus;
  const auto inverse = multiplicative_inverse_vector(p);
  const int n = static_cast<int>(matrix.columns.size());
  std::vector<int> low_to_col(n, -1);

  for (int j = 0; j < n; ++j) {
    Column& col = matrix.columns[j];
    while (!col.empty()) {
      const int low = col.back().first;
      const int other = low_to_col[low];
      if (other < 0) {
        low_to_col[low] = j;
        break;
      }
      const int pivot = matrix.columns[other].back().second;
      const int lambda = static_cast<int>(std::int64_t(p - col.back().second) * inverse[pivot] % p);
      add_scaled(col, matrix.columns[other], lambda, p);
    }
  }

  ReductionResult result;
  std::vector<char> paired(n, 0);
  for (int low = 0; low < n; ++low) {
    const int j = low_to_col[low];
    if (j >= 0) {
      result.pairs.emplace_back(low, j);
      paired[low] = paired[j] = 1;
    }
  }
  for (int i = 0; i < n; ++i)
    if (!paired[i] && matrix.columns[i].empty()) result.essential.push_back(i);
  return result;
}

std::vector<PersistenceDiagram> diagrams(const FilteredSpace& space, int k_max, int field_prime,
                                         bool keep_diagonal) {
  if (k_max < 0) raise(errc::invalid_spec, "k_max must be >= 0");
  const int working_cap = std::min(k_max + 1, space.vertex_count() - 1);
  if (space.dimension_cap() < working_cap)
    raise(errc::insufficient_cap, "dimension cap " + std::to_string(space.dimension_cap()) +
                                      " too small for degree " + std::to_string(k_max));
  const SortedFiltration filtration = sort_filtration(space, working_cap);
  BoundaryMatrix matrix = boundary_matrix(filtration, field_prime);
  const ReductionResult reduced = reduce(matrix);

  std::vector<PersistenceDiagram> out(k_max + 1);
  for (int k = 0; k <= k_max; ++k) out[k].degree = k;
  for (const auto& [i, j] : reduced.pairs) {
    const int k = mask_dim(filtration.simplices[i]);
    if (k > k_max) continue;
    const double birth = filtration.values[i];
    const double death = filtration.values[j];
    if (birth == death && !keep_diagonal) continue;
    out[k].points.push_back({birth, death});
  }
  for (int i : reduced.essential) {
    const int k = mask_dim(filtration.simplices[i]);
    if (k > k_max) continue;
    out[k].points.push_back({filtration.values[i], std::numeric_limits<double>::infinity()});
  }
  auto cmp = [](const DiagramPoint& a, const DiagramPoint& b) {
    return std::make_pair(a.birth, a.death) < std::make_pair(b.birth, b.death);
  };
  for (auto& d : out) std::sort(d.points.begin(), d.points.end(), cmp);
  return out;
}

}  // namespace filt
