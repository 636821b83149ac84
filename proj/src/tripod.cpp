#include "filt/tripod.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace filt {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct CostTables {
  int nx = 0, ny = 0;
  std::vector<double> vx, vy;  // dense value tables, NaN beyond the caps
};

CostTables make_tables(const FilteredSpace& x, const FilteredSpace& y, bool capped) {
  if (!capped && !(x.full_powerset() && y.full_powerset()))
    raise(errc::cap_too_low_for_exact,
          "dimension caps must reach the full powerset (pass capped for the capped variant)");
  CostTables t;
  t.nx = x.vertex_count();
  t.ny = y.vertex_count();
  t.vx = dense_value_table(x);
  t.vy = dense_value_table(y);
  return t;
}

// row[x] = partners of x in Y, col[y] = partners of y in X.
struct Adjacency {
  std::vector<Mask> row, col;
};

Adjacency adjacency_of(const std::vector<std::pair<int, int>>& pairs, int nx, int ny) {
  Adjacency a;
  a.row.assign(nx, 0);
  a.col.assign(ny, 0);
  for (const auto& [px, py] : pairs) {
    a.row[px] |= Mask{1} << py;
    a.col[py] |= Mask{1} << px;
  }
  return a;
}

std::vector<std::pair<int, int>> canonical_pairs(const Correspondence& r, int nx, int ny) {
  if (r.pairs.empty()) raise(errc::not_a_correspondence, "empty correspondence");
  auto pairs = r.pairs;
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  for (const auto& [px, py] : pairs)
    if (px < 0 || px >= nx || py < 0 || py >= ny)
      raise(errc::not_a_correspondence, "pair index out of range");
  const Adjacency a = adjacency_of(pairs, nx, ny);
  for (int i = 0; i < nx; ++i)
    if (!a.row[i]) raise(errc::not_a_correspondence, "projection misses an X vertex");
  for (int j = 0; j < ny; ++j)
    if (!a.col[j]) raise(errc::not_a_correspondence, "projection misses a Y vertex");
  return pairs;
}

// Scratch for the compatibility kernel; cover_y[sigma] is the union of
// row[x] over x in sigma, cover_x[sigma'] the union of col[y] over y in
// sigma'. (sigma, sigma') is R-compatible iff sigma <= cover_x[sigma']
// and sigma' <= cover_y[sigma].
struct KernelScratch {
  std::vector<Mask> cover_x, cover_y;
};

double cost_kernel(const CostTables& t, const Adjacency& a, KernelScratch& scratch) {
  const std::size_t size_x = std::size_t{1} << t.nx;
  const std::size_t size_y = std::size_t{1} << t.ny;
  scratch.cover_y.assign(size_x, 0);
  scratch.cover_x.assign(size_y, 0);
  for (Mask m = 1; m < size_x; ++m)
    scratch.cover_y[m] = scratch.cover_y[m & (m - 1)] | a.row[std::countr_zero(m)];
  for (Mask m = 1; m < size_y; ++m)
    scratch.cover_x[m] = scratch.cover_x[m & (m - 1)] | a.col[std::countr_zero(m)];

  double best = 0;
  for (Mask s = 1; s < size_x; ++s) {
    const double vx = t.vx[s];
    if (std::isnan(vx)) continue;
    const Mask cover_y = scratch.cover_y[s];
    for (Mask sp = 1; sp < size_y; ++sp) {
      const double vy = t.vy[sp];
      if (std::isnan(vy)) continue;
      if ((s & ~scratch.cover_x[sp]) || (sp & ~cover_y)) continue;
      best = std::max(best, std::fabs(vx - vy));
    }
  }
  return best;
}

Correspondence correspondence_from_mask(Mask r, int ny) {
  Correspondence out;
  while (r) {
    const int k = std::countr_zero(r);
    out.pairs.emplace_back(k / ny, k % ny);
    r &= r - 1;
  }
  return out;
}

// Enumerate every correspondence mask, writing each cost into cost[mask]
// (NaN where the projections are not full), then scan for the argmin set.
template <typename CostFn>
DfResult scan_masks(int nx, int ny, bool parallel, CostFn&& cost_of) {
  const std::int64_t total = std::int64_t{1} << (nx * ny);
  std::vector<double> cost(static_cast<std::size_t>(total), kNaN);
  const Mask full_y = (Mask{1} << ny) - 1;

#pragma omp parallel if (parallel)
  {
    KernelScratch scratch;
    std::vector<Mask> row(nx);
#pragma omp for schedule(dynamic, 256)
    for (std::int64_t r = 1; r < total; ++r) {
      Mask cover = 0;
      bool valid = true;
      for (int px = 0; px < nx; ++px) {
        row[px] = (static_cast<Mask>(r) >> (px * ny)) & full_y;
        if (!row[px]) {
          valid = false;
          break;
        }
        cover |= row[px];
      }
      if (!valid || cover != full_y) continue;
      cost[static_cast<std::size_t>(r)] = cost_of(static_cast<Mask>(r), row, scratch);
    }
  }

  DfResult result;
  result.value = std::numeric_limits<double>::infinity();
  for (std::int64_t r = 1; r < total; ++r) {
    const double c = cost[static_cast<std::size_t>(r)];
    if (!std::isnan(c) && c < result.value) result.value = c;
  }
  for (std::int64_t r = 1; r < total; ++r)
    if (cost[static_cast<std::size_t>(r)] == result.value)
      result.minimizers.push_back(correspondence_from_mask(static_cast<Mask>(r), ny));
  return result;
}

void check_grid(const FilteredSpace& x, const FilteredSpace& y, int max_grid_bits) {
  if (x.vertex_count() * y.vertex_count() > max_grid_bits)
    raise(errc::too_large, "correspondence enumeration needs |X|*|Y| <= " +
                               std::to_string(max_grid_bits));
}

}  // namespace

double tripod_cost(const FilteredSpace& x, const FilteredSpace& y, const Tripod& tripod,
                   int enumeration_bound) {
  const int nz = static_cast<int>(tripod.z_names.size());
  if (nz == 0) raise(errc::invalid_spec, "empty tripod");
  if (nz > enumeration_bound)
    raise(errc::enumeration_bound_exceeded,
          "|Z| = " + std::to_string(nz) + " exceeds bound " + std::to_string(enumeration_bound));
  if (static_cast<int>(tripod.to_x.size()) != nz || static_cast<int>(tripod.to_y.size()) != nz)
    raise(errc::invalid_spec, "tripod maps must cover Z");
  const int nx = x.vertex_count(), ny = y.vertex_count();
  Mask hit_x = 0, hit_y = 0;
  for (int z = 0; z < nz; ++z) {
    if (tripod.to_x[z] < 0 || tripod.to_x[z] >= nx || tripod.to_y[z] < 0 || tripod.to_y[z] >= ny)
      raise(errc::invalid_spec, "tripod map target out of range");
    hit_x |= Mask{1} << tripod.to_x[z];
    hit_y |= Mask{1} << tripod.to_y[z];
  }
  if (hit_x != (Mask{1} << nx) - 1 || hit_y != (Mask{1} << ny) - 1)
    raise(errc::not_surjective, "tripod maps must be surjective");

  const CostTables t = make_tables(x, y, /*capped=*/false);
  const std::size_t total = std::size_t{1} << nz;
  std::vector<Mask> image_x(total, 0), image_y(total, 0);
  for (int z = 0; z < nz; ++z) {
    image_x[Mask{1} << z] = Mask{1} << tripod.to_x[z];
    image_y[Mask{1} << z] = Mask{1} << tripod.to_y[z];
  }
  double best = 0;
  for (Mask m = 1; m < total; ++m) {
    const Mask low = m & -m;
    if (m != low) {
      image_x[m] = image_x[m & (m - 1)] | image_x[low];
      image_y[m] = image_y[m & (m - 1)] | image_y[low];
    }
    best = std::max(best, std::fabs(t.vx[image_x[m]] - t.vy[image_y[m]]));
  }
  return best;
}

double correspondence_cost(const FilteredSpace& x, const FilteredSpace& y,
                           const Correspondence& r, bool capped) {
  const CostTables t = make_tables(x, y, capped);
  const auto pairs = canonical_pairs(r, t.nx, t.ny);
  const Adjacency a = adjacency_of(pairs, t.nx, t.ny);
  KernelScratch scratch;
  return cost_kernel(t, a, scratch);
}

double correspondence_cost_serial(const FilteredSpace& x, const FilteredSpace& y,
                                  const Correspondence& r, bool capped) {
  const CostTables t = make_tables(x, y, capped);
  const auto pairs = canonical_pairs(r, t.nx, t.ny);
  const Adjacency a = adjacency_of(pairs, t.nx, t.ny);
  double best = 0;
  for (Mask s = 1; s < (Mask{1} << t.nx); ++s) {
    if (std::isnan(t.vx[s])) continue;
    for (Mask sp = 1; sp < (Mask{1} << t.ny); ++sp) {
      if (std::isnan(t.vy[sp])) continue;
      bool compatible = true;
      for (Mask rest = s; rest && compatible; rest &= rest - 1)
        compatible = (a.row[std::countr_zero(rest)] & sp) != 0;
      for (Mask rest = sp; rest && compatible; rest &= rest - 1)
        compatible = (a.col[std::countr_zero(rest)] & s) != 0;
      if (compatible) best = std::max(best, std::fabs(t.vx[s] - t.vy[sp]));
    }
  }
  return best;
}

DfResult df_exact(const FilteredSpace& x, const FilteredSpace& y, const DfOptions& options) {
  check_grid(x, y, options.max_grid_bits);
  const CostTables t = make_tables(x, y, options.capped);
  const int ny = t.ny;
  return scan_masks(t.nx, t.ny, /*parallel=*/true,
                    [&](Mask, const std::vector<Mask>& row, KernelScratch& scratch) {
                      Adjacency a;
                      a.row = row;
                      a.col.assign(ny, 0);
                      for (int px = 0; px < t.nx; ++px)
                        for (Mask rest = row[px]; rest; rest &= rest - 1)
                          a.col[std::countr_zero(rest)] |= Mask{1} << px;
                      return cost_kernel(t, a, scratch);
                    });
}

DfResult df_exact_serial(const FilteredSpace& x, const FilteredSpace& y,
                         const DfOptions& options) {
  check_grid(x, y, options.max_grid_bits);
  make_tables(x, y, options.capped);  // surface cap errors identically
  const int ny = y.vertex_count();
  return scan_masks(x.vertex_count(), ny, /*parallel=*/false,
                    [&](Mask r, const std::vector<Mask>&, KernelScratch&) {
                      return correspondence_cost_serial(x, y, correspondence_from_mask(r, ny),
                                                        options.capped);
                    });
}

DfUpperResult df_upper(const FilteredSpace& x, const FilteredSpace& y, std::uint64_t budget,
                       std::uint64_t seed) {
  if (budget == 0) raise(errc::invalid_spec, "budget must be positive");
  const CostTables t = make_tables(x, y, /*capped=*/false);
  const int nx = t.nx, ny = t.ny;
  std::mt19937_64 rng(seed);
  KernelScratch scratch;

  auto evaluate = [&](const std::vector<std::pair<int, int>>& pairs) {
    return cost_kernel(t, adjacency_of(pairs, nx, ny), scratch);
  };

  // value-sorted greedy start; identity when the vertex counts agree
  auto greedy_start = [&]() {
    std::vector<std::pair<int, int>> pairs;
    if (nx == ny) {
      for (int i = 0; i < nx; ++i) pairs.emplace_back(i, i);
      return pairs;
    }
    std::vector<int> xs(nx), ys(ny);
    for (int i = 0; i < nx; ++i) xs[i] = i;
    for (int j = 0; j < ny; ++j) ys[j] = j;
    auto by_value = [](const std::vector<double>& table) {
      return [&table](int a, int b) {
        const double va = table[Mask{1} << a], vb = table[Mask{1} << b];
        return va != vb ? va < vb : a < b;
      };
    };
    std::sort(xs.begin(), xs.end(), by_value(t.vx));
    std::sort(ys.begin(), ys.end(), by_value(t.vy));
    const int common = std::min(nx, ny);
    for (int k = 0; k < common; ++k) pairs.emplace_back(xs[k], ys[k]);
    for (int k = common; k < nx; ++k) pairs.emplace_back(xs[k], ys[common - 1]);
    for (int k = common; k < ny; ++k) pairs.emplace_back(xs[common - 1], ys[k]);
    return pairs;
  };
  auto random_start = [&]() {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < nx; ++i)
      for (int j = 0; j < ny; ++j)
        if (rng() % 5 < 2) pairs.emplace_back(i, j);
    const Adjacency a = adjacency_of(pairs, nx, ny);
    for (int i = 0; i < nx; ++i)
      if (!a.row[i]) pairs.emplace_back(i, static_cast<int>(rng() % ny));
    Adjacency repaired = adjacency_of(pairs, nx, ny);
    for (int j = 0; j < ny; ++j)
      if (!repaired.col[j]) pairs.emplace_back(static_cast<int>(rng() % nx), j);
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    return pairs;
  };

  DfUpperResult best;
  best.value = std::numeric_limits<double>::infinity();
  std::uint64_t evaluations = 0;
  const int stall_limit = 16 + nx * ny;
  int restart = 0;

  while (evaluations < budget) {
    std::vector<std::pair<int, int>> current = restart == 0 ? greedy_start() : random_start();
    ++restart;
    double current_cost = evaluate(current);
    ++evaluations;
    if (current_cost < best.value) {
      best.value = current_cost;
      best.witness.pairs = current;
    }
    int stalled = 0;
    int dead_proposals = 0;
    while (evaluations < budget && stalled < stall_limit && dead_proposals < 32) {
      std::vector<std::pair<int, int>> candidate = current;
      const int move = static_cast<int>(rng() % 3);
      bool built = false;
      if (move == 0) {  // add an absent pair
        std::vector<std::pair<int, int>> absent;
        Adjacency a = adjacency_of(current, nx, ny);
        for (int i = 0; i < nx; ++i)
          for (int j = 0; j < ny; ++j)
            if (!(a.row[i] >> j & 1)) absent.emplace_back(i, j);
        if (!absent.empty()) {
          candidate.push_back(absent[rng() % absent.size()]);
          std::sort(candidate.begin(), candidate.end());
          built = true;
        }
      } else if (move == 1) {  // remove a removable pair
        Adjacency a = adjacency_of(current, nx, ny);
        std::vector<std::size_t> removable;
        for (std::size_t k = 0; k < current.size(); ++k) {
          const auto& [px, py] = current[k];
          if (mask_card(a.row[px]) >= 2 && mask_card(a.col[py]) >= 2) removable.push_back(k);
        }
        if (!removable.empty()) {
          candidate.erase(candidate.begin() +
                          static_cast<std::ptrdiff_t>(removable[rng() % removable.size()]));
          built = true;
        }
      } else {  // swap one endpoint of a pair
        Adjacency a = adjacency_of(current, nx, ny);
        const std::size_t k = rng() % current.size();
        const auto [px, py] = current[k];
        std::vector<std::pair<int, int>> replacements;
        if (mask_card(a.col[py]) >= 2)
          for (int j = 0; j < ny; ++j)
            if (j != py && !(a.row[px] >> j & 1)) replacements.emplace_back(px, j);
        if (mask_card(a.row[px]) >= 2)
          for (int i = 0; i < nx; ++i)
            if (i != px && !(a.col[py] >> i & 1)) replacements.emplace_back(i, py);
        if (!replacements.empty()) {
          candidate[k] = replacements[rng() % replacements.size()];
          std::sort(candidate.begin(), candidate.end());
          candidate.erase(std::unique(candidate.begin(), candidate.end()), candidate.end());
          built = true;
        }
      }
      if (!built) {
        ++dead_proposals;
        continue;
      }
      dead_proposals = 0;
      const double candidate_cost = evaluate(candidate);
      ++evaluations;
      if (candidate_cost < current_cost) {
        current = std::move(candidate);
        current_cost = candidate_cost;
        stalled = 0;
        if (current_cost < best.value) {
          best.value = current_cost;
          best.witness.pairs = current;
        }
      } else {
        ++stalled;
      }
    }
  }
  std::sort(best.witness.pairs.begin(), best.witness.pairs.end());
  return best;
}

Tripod compose_tripods(const FilteredSpace& x, const FilteredSpace& y, const FilteredSpace& w,
                       const Tripod& t1, const Tripod& t2) {
  const int n1 = static_cast<int>(t1.z_names.size());
  const int n2 = static_cast<int>(t2.z_names.size());
  if (n1 == 0 || n2 == 0) raise(errc::invalid_spec, "empty tripod");
  auto check = [](const Tripod& t, int left, int right) {
    Mask hx = 0, hy = 0;
    for (std::size_t z = 0; z < t.z_names.size(); ++z) {
      hx |= Mask{1} << t.to_x[z];
      hy |= Mask{1} << t.to_y[z];
    }
    if (hx != (Mask{1} << left) - 1 || hy != (Mask{1} << right) - 1)
      raise(errc::not_surjective, "tripod maps must be surjective");
  };
  check(t1, x.vertex_count(), y.vertex_count());
  check(t2, y.vertex_count(), w.vertex_count());

  Tripod out;
  for (int z1 = 0; z1 < n1; ++z1)
    for (int z2 = 0; z2 < n2; ++z2)
      if (t1.to_y[z1] == t2.to_x[z2]) {
        out.z_names.push_back(t1.z_names[z1] + "|" + t2.z_names[z2]);
        out.to_x.push_back(t1.to_x[z1]);
        out.to_y.push_back(t2.to_y[z2]);
      }
  if (out.z_names.empty()) raise(errc::empty_composite, "composite tripod is empty");
  return out;
}

Correspondence induced_correspondence(const Tripod& tripod) {
  Correspondence r;
  for (std::size_t z = 0; z < tripod.z_names.size(); ++z)
    r.pairs.emplace_back(tripod.to_x[z], tripod.to_y[z]);
  std::sort(r.pairs.begin(), r.pairs.end());
  r.pairs.erase(std::unique(r.pairs.begin(), r.pairs.end()), r.pairs.end());
  return r;
}

Tripod correspondence_tripod(const Correspondence& r, const FilteredSpace& x,
                             const FilteredSpace& y) {
  const auto pairs = canonical_pairs(r, x.vertex_count(), y.vertex_count());
  Tripod t;
  for (const auto& [px, py] : pairs) {
    t.z_names.push_back(x.vertex_names()[px] + "|" + y.vertex_names()[py]);
    t.to_x.push_back(px);
    t.to_y.push_back(py);
  }
  return t;
}

}  // namespace filt
