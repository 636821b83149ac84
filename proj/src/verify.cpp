#include "filt/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "filt/bottleneck.hpp"
#include "filt/error.hpp"
#include "filt/generators.hpp"
#include "filt/geodesic.hpp"
#include "filt/io.hpp"
#include "filt/metric.hpp"
#include "filt/tripod.hpp"

namespace filt {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxCounterexamples = 4;

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::string squash(const std::string& s) {
  std::string out;
  bool pending = false;
  for (char c : s) {
    if (c == '\n' || c == ' ') {
      pending = true;
      continue;
    }
    if (pending && !out.empty()) out += ' ';
    pending = false;
    out += c;
  }
  return out;
}

// Runs `trials` independent attempts of fn in parallel. fn returns a
// violation description or nullopt; escaped exceptions count as
// violations too so a crashing property is reported, not fatal.
template <typename Fn>
void run_trials(const std::string& name, int trials, std::uint64_t check_seed,
                VerifyReport& report, Fn&& fn) {
  std::vector<std::string> failures(static_cast<std::size_t>(trials));
#pragma omp parallel for schedule(dynamic)
  for (int t = 0; t < trials; ++t) {
    Rng rng(derive_seed(check_seed, static_cast<std::uint64_t>(t)));
    try {
      if (auto bad = fn(t, rng)) failures[static_cast<std::size_t>(t)] = *bad;
    } catch (const std::exception& e) {
      failures[static_cast<std::size_t>(t)] = std::string("unexpected error: ") + e.what();
    }
  }
  CheckResult result{name, trials, 0};
  for (int t = 0; t < trials; ++t) {
    const std::string& f = failures[static_cast<std::size_t>(t)];
    if (f.empty()) continue;
    ++result.violations;
    if (result.violations <= kMaxCounterexamples)
      report.counterexamples.push_back(name + " trial " + std::to_string(t) + ": " + f);
  }
  if (result.violations > kMaxCounterexamples)
    report.counterexamples.push_back(
        name + ": " + std::to_string(result.violations - kMaxCounterexamples) +
        " further violations suppressed");
  if (result.violations > 0) report.passed = false;
  report.checks.push_back(std::move(result));
}

using Maybe = std::optional<std::string>;

std::vector<std::string> vertex_names(int n) {
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
  return names;
}

// ---------------------------------------------------------------- stability

void suite_stability(int trials, std::uint64_t seed, VerifyReport& report) {
  run_trials("sublevel-stability", trials, derive_seed(seed, 0), report,
             [](int, Rng& rng) -> Maybe {
               int n = rng.uniform_int(2, 5);
               int cap = std::min(3, n - 1);
               auto names = vertex_names(n);
               FilteredSpace f = random_filtration_on(names, cap, 0.0, 1.0, rng);
               FilteredSpace g = random_filtration_on(names, cap, 0.0, 1.0, rng);
               double delta = 0;
               for (const auto& [simplex, value] : f.entries())
                 delta = std::max(delta, std::fabs(value - g.value(simplex)));
               auto df = diagrams(f, 2);
               auto dg = diagrams(g, 2);
               for (int k = 0; k <= 2; ++k) {
                 double d = bottleneck(df[static_cast<std::size_t>(k)],
                                       dg[static_cast<std::size_t>(k)])
                                .value;
                 if (d > delta + 1e-9)
                   return "degree " + std::to_string(k) + ": bottleneck " + fmt(d) +
                          " exceeds sup-norm gap " + fmt(delta) + "\nF = " +
                          squash(serialize_filtered_space(f)) + "\nG = " +
                          squash(serialize_filtered_space(g));
               }
               return std::nullopt;
             });

  run_trials("diagram-distance-below-df", trials, derive_seed(seed, 1), report,
             [](int, Rng& rng) -> Maybe {
               FilteredSpace x = random_filtered_space(rng.uniform_int(1, 3), 2, 0.0, 1.0, rng);
               FilteredSpace y = random_filtered_space(rng.uniform_int(1, 3), 2, 0.0, 1.0, rng);
               double d = df_exact(x, y).value;
               auto dx = diagrams(x, 2);
               auto dy = diagrams(y, 2);
               for (int k = 0; k <= 2; ++k) {
                 double b = bottleneck(dx[static_cast<std::size_t>(k)],
                                       dy[static_cast<std::size_t>(k)])
                                .value;
                 if (b > d + 1e-9)
                   return "degree " + std::to_string(k) + ": bottleneck " + fmt(b) +
                          " exceeds tripod distance " + fmt(d) + "\nX = " +
                          squash(serialize_filtered_space(x)) + "\nY = " +
                          squash(serialize_filtered_space(y));
               }
               return std::nullopt;
             });

  // Two points joined at height 1 against a single point: the diagram
  // distance is 1/2 while the tripod distance is 1, so the dominance
  // above is not tight.
  run_trials("strict-gap-instance", 1, derive_seed(seed, 2), report, [](int, Rng&) -> Maybe {
    FilteredSpace x({"a", "b"}, 1,
                    {{Simplex({0}), 0.0}, {Simplex({1}), 0.0}, {Simplex({0, 1}), 1.0}});
    FilteredSpace y({"c"}, 0, {{Simplex({0}), 0.0}});
    double b = bottleneck(diagrams(x, 0)[0], diagrams(y, 0)[0]).value;
    double d = df_exact(x, y).value;
    if (std::fabs(b - 0.5) > 1e-12) return "bottleneck " + fmt(b) + " expected 0.5";
    if (std::fabs(d - 1.0) > 1e-12) return "tripod distance " + fmt(d) + " expected 1";
    if (!(b + 0.25 < d)) return "gap vanished: " + fmt(b) + " vs " + fmt(d);
    return std::nullopt;
  });
}

// ----------------------------------------------------------------- pullback

void suite_pullback(int trials, std::uint64_t seed, VerifyReport& report) {
  run_trials("pullback-diagram-invariance", trials, derive_seed(seed, 0), report,
             [](int, Rng& rng) -> Maybe {
               int n = rng.uniform_int(2, 5);
               FilteredSpace x = random_filtered_space(n, std::min(3, n - 1), 0.0, 1.0, rng);
               int nz = rng.uniform_int(n, 7);
               VertexMap phi = random_surjection(nz, x, rng);
               FilteredSpace p = pullback(x, phi, std::min(3, nz - 1));
               auto dx = diagrams(x, 2);
               auto dp = diagrams(p, 2);
               for (int k = 0; k <= 2; ++k)
                 if (!same_diagram(dx[static_cast<std::size_t>(k)], dp[static_cast<std::size_t>(k)]))
                   return "degree " + std::to_string(k) + " diagram changed\nX = " +
                          squash(serialize_filtered_space(x)) + "\npullback = " +
                          squash(serialize_filtered_space(p));
               return std::nullopt;
             });

  run_trials("pullback-identity", trials, derive_seed(seed, 1), report,
             [](int, Rng& rng) -> Maybe {
               int n = rng.uniform_int(1, 5);
               FilteredSpace x = random_filtered_space(n, std::min(3, n - 1), 0.0, 1.0, rng);
               VertexMap id{x.vertex_names(), std::vector<int>(static_cast<std::size_t>(n))};
               std::iota(id.to_target.begin(), id.to_target.end(), 0);
               if (!(pullback(x, id, x.dimension_cap()) == x))
                 return "identity pullback differs\nX = " + squash(serialize_filtered_space(x));
               return std::nullopt;
             });

  run_trials("sublevel-closure", trials, derive_seed(seed, 2), report,
             [](int, Rng& rng) -> Maybe {
               int n = rng.uniform_int(2, 5);
               FilteredSpace x = random_filtered_space(n, std::min(3, n - 1), 0.0, 1.0, rng);
               double eps = rng.uniform(-0.2, 1.2);
               auto sub = x.sublevel(eps);
               std::vector<Mask> masks;
               for (const auto& s : sub) masks.push_back(s.mask());
               auto present = [&](Mask m) {
                 return std::find(masks.begin(), masks.end(), m) != masks.end();
               };
               for (const auto& s : sub) {
                 if (x.value(s) > eps)
                   return "sublevel(" + fmt(eps) + ") contains " + s.to_string() + " with value " +
                          fmt(x.value(s));
                 Mask m = s.mask();
                 if (mask_card(m) < 2) continue;
                 for (Mask rest = m; rest; rest &= rest - 1) {
                   Mask facet = m & ~(rest & -rest);
                   if (!present(facet))
                     return "sublevel(" + fmt(eps) + ") misses a face of " + s.to_string();
                 }
               }
               double eps2 = eps + rng.uniform(0.0, 0.5);
               auto sub2 = x.sublevel(eps2);
               std::vector<Mask> masks2;
               for (const auto& s : sub2) masks2.push_back(s.mask());
               for (Mask m : masks)
                 if (std::find(masks2.begin(), masks2.end(), m) == masks2.end())
                   return "sublevel(" + fmt(eps) + ") not inside sublevel(" + fmt(eps2) + ")";
               return std::nullopt;
             });

  // Degree-0 oracle: elder-rule union-find over the sorted filtration.
  // Besides the full multiset agreement this pins the essential count to
  // the component count of the final complex.
  run_trials("essential-components", trials, derive_seed(seed, 3), report,
             [](int, Rng& rng) -> Maybe {
               int n = rng.uniform_int(1, 6);
               FilteredSpace x = random_filtered_space(n, std::min(2, n - 1), 0.0, 1.0, rng);
               auto dgs = diagrams(x, 0);
               SortedFiltration order = sort_filtration(x, std::min(1, n - 1));
               std::vector<int> parent(static_cast<std::size_t>(n));
               std::iota(parent.begin(), parent.end(), 0);
               std::vector<double> birth(static_cast<std::size_t>(n), 0.0);
               auto find = [&](int v) {
                 while (parent[static_cast<std::size_t>(v)] != v)
                   v = parent[static_cast<std::size_t>(v)];
                 return v;
               };
               PersistenceDiagram oracle{0, {}};
               for (std::size_t i = 0; i < order.size(); ++i) {
                 Mask m = order.simplices[i];
                 double value = order.values[i];
                 if (mask_card(m) == 1) {
                   birth[static_cast<std::size_t>(std::countr_zero(m))] = value;
                   continue;
                 }
                 int a = find(std::countr_zero(m));
                 int b = find(std::countr_zero(m & (m - 1)));
                 if (a == b) continue;
                 std::size_t ai = static_cast<std::size_t>(a), bi = static_cast<std::size_t>(b);
                 int young = birth[ai] >= birth[bi] ? a : b;
                 int old = young == a ? b : a;
                 if (value > birth[static_cast<std::size_t>(young)])
                   oracle.points.push_back({birth[static_cast<std::size_t>(young)], value});
                 parent[static_cast<std::size_t>(young)] = old;
               }
               int components = 0;
               for (int v = 0; v < n; ++v)
                 if (find(v) == v) {
                   ++components;
                   oracle.points.push_back({birth[static_cast<std::size_t>(v)], kInf});
                 }
               if (!same_diagram(dgs[0], oracle))
                 return "degree-0 diagram disagrees with the union-find oracle\nX = " +
                        squash(serialize_filtered_space(x));
               int essential = 0;
               for (const auto& p : dgs[0].points)
                 if (std::isinf(p.death)) ++essential;
               if (essential != components)
                 return std::to_string(essential) + " essential classes vs " +
                        std::to_string(components) + " components";
               return std::nullopt;
             });

  // Collapsing two of three sources onto one vertex: the pullback values
  // follow the images and the degree-0 diagram is unchanged.
  run_trials("collapse-instance", 1, derive_seed(seed, 4), report, [](int, Rng&) -> Maybe {
    FilteredSpace x({"a", "b"}, 1,
                    {{Simplex({0}), 0.0}, {Simplex({1}), 0.0}, {Simplex({0, 1}), 1.0}});
    VertexMap phi{{"z1", "z2", "z3"}, {0, 0, 1}};
    FilteredSpace p = pullback(x, phi, 2);
    const std::vector<std::pair<std::vector<int>, double>> expected = {
        {{0}, 0.0}, {{1}, 0.0}, {{2}, 0.0}, {{0, 1}, 0.0},
        {{0, 2}, 1.0}, {{1, 2}, 1.0}, {{0, 1, 2}, 1.0}};
    for (const auto& [verts, want] : expected) {
      double got = p.value(Simplex(verts));
      if (got != want)
        return "pullback value " + fmt(got) + " expected " + fmt(want) + " on " +
               Simplex(verts).to_string();
    }
    if (!same_diagram(diagrams(p, 0)[0], diagrams(x, 0)[0]))
      return std::string("degree-0 diagram changed under collapse");
    return std::nullopt;
  });
}

// -------------------------------------------------------------- pseudometric

void suite_pseudometric(int trials, std::uint64_t seed, VerifyReport& report) {
  run_trials("df-symmetry-self", trials, derive_seed(seed, 0), report,
             [](int, Rng& rng) -> Maybe {
               FilteredSpace x = random_filtered_space(rng.uniform_int(1, 3), 2, 0.0, 1.0, rng);
               FilteredSpace y = random_filtered_space(rng.uniform_int(1, 3), 2, 0.0, 1.0, rng);
               DfResult a = df_exact(x, y);
               DfResult b = df_exact(y, x);
               if (a.value != b.value)
                 return "asymmetric: " + fmt(a.value) + " vs " + fmt(b.value);
               if (a.minimizers.size() != b.minimizers.size())
                 return std::string("minimizer counts differ under swap");
               if (df_exact(x, x).value != 0.0) return std::string("nonzero self distance");
               return std::nullopt;
             });

  run_trials("df-triangle", trials, derive_seed(seed, 1), report, [](int, Rng& rng) -> Maybe {
    FilteredSpace x = random_filtered_space(rng.uniform_int(1, 3), 2, 0.0, 1.0, rng);
    FilteredSpace y = random_filtered_space(rng.uniform_int(1, 3), 2, 0.0, 1.0, rng);
    FilteredSpace z = random_filtered_space(rng.uniform_int(1, 3), 2, 0.0, 1.0, rng);
    double xz = df_exact(x, z).value;
    double xy = df_exact(x, y).value;
    double yz = df_exact(y, z).value;
    if (xz > xy + yz + 1e-9)
      return "triangle violated: " + fmt(xz) + " > " + fmt(xy) + " + " + fmt(yz);
    return std::nullopt;
  });

  run_trials("upper-bound-dominates", trials, derive_seed(seed, 2), report,
             [](int, Rng& rng) -> Maybe {
               FilteredSpace x = random_filtered_space(rng.uniform_int(1, 3), 2, 0.0, 1.0, rng);
               FilteredSpace y = random_filtered_space(rng.uniform_int(1, 3), 2, 0.0, 1.0, rng);
               DfUpperResult up = df_upper(x, y, 400, rng.next());
               double exact = df_exact(x, y).value;
               if (up.value < exact - 1e-12)
                 return "upper bound " + fmt(up.value) + " below exact " + fmt(exact);
               double witness = correspondence_cost(x, y, up.witness);
               if (witness != up.value)
                 return "witness cost " + fmt(witness) + " differs from reported " + fmt(up.value);
               return std::nullopt;
             });

  run_trials("bottleneck-pseudometric", trials, derive_seed(seed, 3), report,
             [](int, Rng& rng) -> Maybe {
               PersistenceDiagram d1 = random_diagram(0, 4, 0.3, rng);
               PersistenceDiagram d2 = random_diagram(0, 4, 0.3, rng);
               PersistenceDiagram d3 = random_diagram(0, 4, 0.3, rng);
               BottleneckResult b12 = bottleneck(d1, d2);
               if (b12.value != bottleneck(d2, d1).value)
                 return std::string("bottleneck asymmetric");
               if (bottleneck(d1, d1).value != 0.0)
                 return std::string("nonzero bottleneck self distance");
               double b13 = bottleneck(d1, d3).value;
               double b23 = bottleneck(d2, d3).value;
               if (b13 > b12.value + b23 + 1e-9)
                 return "triangle violated: " + fmt(b13) + " > " + fmt(b12.value) + " + " +
                        fmt(b23) + "\nD1 = " + squash(serialize_diagram(d1)) + "\nD2 = " +
                        squash(serialize_diagram(d2)) + "\nD3 = " + squash(serialize_diagram(d3));
               double cert = matching_cost(d1, d2, b12.certificate);
               if (cert != b12.value)
                 return "certificate cost " + fmt(cert) + " differs from value " + fmt(b12.value);
               return std::nullopt;
             });
}

// ----------------------------------------------------------------- geodesic

struct GeoInstance {
  FilteredSpace x, y;
  double df;
  Correspondence r;
};

std::optional<GeoInstance> make_geo_instance(Rng& rng) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    int nx = rng.uniform_int(1, 2);
    int ny = rng.uniform_int(1, 3);
    FilteredSpace x = random_filtered_space(nx, nx - 1, 0.0, 1.0, rng);
    FilteredSpace y = random_filtered_space(ny, ny - 1, 0.0, 1.0, rng);
    DfResult res = df_exact(x, y);
    const Correspondence* best = nullptr;
    for (const auto& r : res.minimizers)
      if (r.pairs.size() <= 4 && (!best || r.pairs.size() < best->pairs.size())) best = &r;
    if (best)
      return GeoInstance{std::move(x), std::move(y), res.value, *best};
  }
  return std::nullopt;
}

void suite_geodesic(int trials, std::uint64_t seed, VerifyReport& report) {
  const std::vector<double> grid = {0.0, 0.25, 0.5, 0.75, 1.0};

  run_trials("geodesy-grid", trials, derive_seed(seed, 0), report,
             [&grid](int, Rng& rng) -> Maybe {
               auto inst = make_geo_instance(rng);
               if (!inst) return std::nullopt;
               GeodesicCurve curve = make_geodesic(inst->x, inst->y, inst->r, inst->df);
               SelfTestReport self = geodesic_self_test(curve, grid);
               if (self.max_deviation > 1e-9) {
                 std::string detail;
                 for (const auto& s : self.samples)
                   if (std::fabs(s.distance - s.expected) == self.max_deviation)
                     detail = " at (s, t) = (" + fmt(s.s) + ", " + fmt(s.t) + ")";
                 return "deviation " + fmt(self.max_deviation) + detail + "\nX = " +
                        squash(serialize_filtered_space(inst->x)) + "\nY = " +
                        squash(serialize_filtered_space(inst->y));
               }
               return std::nullopt;
             });

  run_trials("endpoint-match", trials, derive_seed(seed, 1), report, [](int, Rng& rng) -> Maybe {
    auto inst = make_geo_instance(rng);
    if (!inst) return std::nullopt;
    GeodesicCurve curve = make_geodesic(inst->x, inst->y, inst->r, inst->df);
    Tripod tp = correspondence_tripod(inst->r, inst->x, inst->y);
    if (!(curve.at(0.0) == pullback(inst->x, VertexMap{tp.z_names, tp.to_x})))
      return std::string("curve(0) is not the pullback of X");
    if (!(curve.at(1.0) == pullback(inst->y, VertexMap{tp.z_names, tp.to_y})))
      return std::string("curve(1) is not the pullback of Y");
    auto dx = diagrams(inst->x, 2);
    auto d0 = diagrams(curve.at(0.0), 2);
    auto dy = diagrams(inst->y, 2);
    auto d1 = diagrams(curve.at(1.0), 2);
    for (int k = 0; k <= 2; ++k) {
      if (!same_diagram(dx[static_cast<std::size_t>(k)], d0[static_cast<std::size_t>(k)]))
        return "degree " + std::to_string(k) + " diagram differs at t = 0";
      if (!same_diagram(dy[static_cast<std::size_t>(k)], d1[static_cast<std::size_t>(k)]))
        return "degree " + std::to_string(k) + " diagram differs at t = 1";
    }
    return std::nullopt;
  });

  run_trials("length-sandwich", trials, derive_seed(seed, 2), report, [](int, Rng& rng) -> Maybe {
    auto inst = make_geo_instance(rng);
    if (!inst) return std::nullopt;
    GeodesicCurve curve = make_geodesic(inst->x, inst->y, inst->r, inst->df);
    auto dx = diagrams(inst->x, 1);
    auto dy = diagrams(inst->y, 1);
    for (int k = 0; k <= 1; ++k) {
      double b = bottleneck(dx[static_cast<std::size_t>(k)], dy[static_cast<std::size_t>(k)]).value;
      PathLengthReport len = diagram_path_length(curve, k, 1e-4, 10);
      if (len.value < b - 1e-9 || len.value > inst->df + 1e-9)
        return "degree " + std::to_string(k) + ": length " + fmt(len.value) +
               " outside [" + fmt(b) + ", " + fmt(inst->df) + "]\nX = " +
               squash(serialize_filtered_space(inst->x)) + "\nY = " +
               squash(serialize_filtered_space(inst->y));
    }
    return std::nullopt;
  });

  run_trials("segment-linearity", trials, derive_seed(seed, 3), report,
             [](int, Rng& rng) -> Maybe {
               auto inst = make_geo_instance(rng);
               if (!inst) return std::nullopt;
               GeodesicCurve curve = make_geodesic(inst->x, inst->y, inst->r, inst->df);
               double s = rng.uniform(0.0, 1.0);
               double t = rng.uniform(0.0, 1.0);
               double mid = (s + t) / 2;
               FilteredSpace a = curve.at(s);
               FilteredSpace b = curve.at(t);
               FilteredSpace m = curve.at(mid);
               for (const auto& [simplex, value] : a.entries()) {
                 double expected = (value + b.value(simplex)) / 2;
                 if (std::fabs(m.value(simplex) - expected) > 1e-9)
                   return "value at midpoint " + fmt(mid) + " off by " +
                          fmt(std::fabs(m.value(simplex) - expected)) + " on " +
                          simplex.to_string();
               }
               return std::nullopt;
             });

  // Two points merging into one: the degree-0 path length approaches the
  // full tripod distance 1 while the endpoint bottleneck stays 1/2, so
  // the refined bound is strictly sharper. At depth d the dyadic sum is
  // 1 - 2^-(d+1).
  run_trials("strengthening-instance", 1, derive_seed(seed, 4), report, [](int, Rng&) -> Maybe {
    FilteredSpace x({"a", "b"}, 1,
                    {{Simplex({0}), 0.0}, {Simplex({1}), 0.0}, {Simplex({0, 1}), 1.0}});
    FilteredSpace y({"c"}, 0, {{Simplex({0}), 0.0}});
    StrengthenedBound bound = strengthened_lower_bound(x, y, 0, 1e-6, 14);
    double expected = 1.0 - std::ldexp(1.0, -15);
    if (std::fabs(bound.df - 1.0) > 1e-12)
      return "tripod distance " + fmt(bound.df) + " expected 1";
    if (std::fabs(bound.value - expected) > 1e-12)
      return "refined bound " + fmt(bound.value) + " expected " + fmt(expected);
    double b = bottleneck(diagrams(x, 0)[0], diagrams(y, 0)[0]).value;
    if (!(bound.value > b + 0.25))
      return "refined bound " + fmt(bound.value) + " not sharper than bottleneck " + fmt(b);
    return std::nullopt;
  });
}

// ------------------------------------------------------------- gh-stability

void suite_gh_stability(int trials, std::uint64_t seed, VerifyReport& report) {
  run_trials("rips-df-vs-gh", trials, derive_seed(seed, 0), report, [](int, Rng& rng) -> Maybe {
    FiniteMetricSpace m = random_metric_space(rng.uniform_int(1, 3), rng);
    FiniteMetricSpace n = random_metric_space(rng.uniform_int(1, 3), rng);
    double gh = gromov_hausdorff_exact(m, n).value;
    double d = df_exact(rips_filtration(m, m.size() - 1), rips_filtration(n, n.size() - 1)).value;
    if (d > 2 * gh + 1e-9)
      return "tripod distance " + fmt(d) + " exceeds twice GH " + fmt(gh) + "\nM = " +
             squash(serialize_metric_space(m)) + "\nN = " + squash(serialize_metric_space(n));
    return std::nullopt;
  });

  run_trials("cech-df-vs-gh", trials, derive_seed(seed, 1), report, [](int, Rng& rng) -> Maybe {
    FiniteMetricSpace m = random_metric_space(rng.uniform_int(1, 3), rng);
    FiniteMetricSpace n = random_metric_space(rng.uniform_int(1, 3), rng);
    double gh = gromov_hausdorff_exact(m, n).value;
    double d = df_exact(cech_filtration(m, m.size() - 1), cech_filtration(n, n.size() - 1)).value;
    if (d > 2 * gh + 1e-9)
      return "tripod distance " + fmt(d) + " exceeds twice GH " + fmt(gh) + "\nM = " +
             squash(serialize_metric_space(m)) + "\nN = " + squash(serialize_metric_space(n));
    return std::nullopt;
  });

  run_trials("diagram-vs-gh", trials, derive_seed(seed, 2), report, [](int, Rng& rng) -> Maybe {
    int sm = rng.uniform_int(2, 4);
    int sn = rng.uniform_int(2, 3);
    FiniteMetricSpace m = random_metric_space(sm, rng);
    FiniteMetricSpace n = random_metric_space(sn, rng);
    double gh = gromov_hausdorff_exact(m, n).value;
    for (bool use_rips : {true, false}) {
      FilteredSpace fm = use_rips ? rips_filtration(m, std::min(2, sm - 1))
                                  : cech_filtration(m, std::min(2, sm - 1));
      FilteredSpace fn = use_rips ? rips_filtration(n, std::min(2, sn - 1))
                                  : cech_filtration(n, std::min(2, sn - 1));
      auto dm = diagrams(fm, 1);
      auto dn = diagrams(fn, 1);
      for (int k = 0; k <= 1; ++k) {
        double b = bottleneck(dm[static_cast<std::size_t>(k)], dn[static_cast<std::size_t>(k)])
                       .value;
        if (b > 2 * gh + 1e-9)
          return std::string(use_rips ? "rips" : "cech") + " degree " + std::to_string(k) +
                 ": bottleneck " + fmt(b) + " exceeds twice GH " + fmt(gh) + "\nM = " +
                 squash(serialize_metric_space(m)) + "\nN = " + squash(serialize_metric_space(n));
      }
    }
    return std::nullopt;
  });

  run_trials("radius-diameter", trials, derive_seed(seed, 3), report, [](int, Rng& rng) -> Maybe {
    int s = rng.uniform_int(1, 5);
    FiniteMetricSpace m = random_metric_space(s, rng);
    FilteredSpace rips = rips_filtration(m, std::min(3, s - 1));
    FilteredSpace cech = cech_filtration(m, std::min(3, s - 1));
    for (const auto& [simplex, diam] : rips.entries()) {
      double rad = cech.value(simplex);
      if (rad > diam + 1e-12)
        return "radius " + fmt(rad) + " above diameter " + fmt(diam) + " on " +
               simplex.to_string();
      if (diam > 2 * rad + 1e-9)
        return "diameter " + fmt(diam) + " above twice radius " + fmt(rad) + " on " +
               simplex.to_string();
    }
    return std::nullopt;
  });

  run_trials("gh-two-point", trials, derive_seed(seed, 4), report, [](int, Rng& rng) -> Maybe {
    FiniteMetricSpace m = random_metric_space(2, rng);
    FiniteMetricSpace n = random_metric_space(2, rng);
    double gh = gromov_hausdorff_exact(m, n).value;
    double expected = std::fabs(m.distance(0, 1) - n.distance(0, 1)) / 2;
    if (gh != expected) return "GH " + fmt(gh) + " expected " + fmt(expected);
    return std::nullopt;
  });

  run_trials("gh-symmetry-self", trials, derive_seed(seed, 5), report, [](int, Rng& rng) -> Maybe {
    FiniteMetricSpace m = random_metric_space(rng.uniform_int(1, 3), rng);
    FiniteMetricSpace n = random_metric_space(rng.uniform_int(1, 3), rng);
    if (gromov_hausdorff_exact(m, n).value != gromov_hausdorff_exact(n, m).value)
      return std::string("GH asymmetric");
    if (gromov_hausdorff_exact(m, m).value != 0.0) return std::string("nonzero GH self distance");
    return std::nullopt;
  });

  run_trials("minimizer-distortion", trials, derive_seed(seed, 6), report,
             [](int, Rng& rng) -> Maybe {
               FiniteMetricSpace m = random_metric_space(rng.uniform_int(2, 3), rng);
               FiniteMetricSpace n = random_metric_space(rng.uniform_int(2, 3), rng);
               GromovHausdorffResult gh = gromov_hausdorff_exact(m, n);
               DfResult d =
                   df_exact(rips_filtration(m, m.size() - 1), rips_filtration(n, n.size() - 1));
               for (const auto& r : d.minimizers)
                 if (distortion(m, n, r) < 2 * gh.value - 1e-12)
                   return "correspondence below twice GH: distortion " +
                          fmt(distortion(m, n, r)) + " vs " + fmt(2 * gh.value);
               return std::nullopt;
             });
}

// ---------------------------------------------------------------- reduction

std::vector<double> probe_values(const FilteredSpace& space) {
  std::vector<double> values;
  for (const auto& [simplex, value] : space.entries()) values.push_back(value);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::vector<double> probes;
  probes.push_back(values.front() - 0.5);
  for (std::size_t i = 0; i < values.size(); ++i) {
    probes.push_back(values[i]);
    if (i + 1 < values.size()) probes.push_back((values[i] + values[i + 1]) / 2);
  }
  probes.push_back(values.back() + 0.5);
  return probes;
}

void suite_reduction(int trials, std::uint64_t seed, VerifyReport& report) {
  run_trials("tripod-vs-correspondence", trials, derive_seed(seed, 0), report,
             [](int, Rng& rng) -> Maybe {
               int nx = rng.uniform_int(1, 3);
               int ny = rng.uniform_int(1, 3);
               FilteredSpace x = random_filtered_space(nx, nx - 1, 0.0, 1.0, rng);
               FilteredSpace y = random_filtered_space(ny, ny - 1, 0.0, 1.0, rng);
               Tripod tripod = random_tripod(rng.uniform_int(std::max(nx, ny), 7), nx, ny, rng);
               double via_tripod = tripod_cost(x, y, tripod);
               Correspondence induced = induced_correspondence(tripod);
               double via_kernel = correspondence_cost(x, y, induced);
               if (via_tripod != via_kernel)
                 return "tripod cost " + fmt(via_tripod) + " vs correspondence cost " +
                        fmt(via_kernel) + "\nX = " + squash(serialize_filtered_space(x)) +
                        "\nY = " + squash(serialize_filtered_space(y));
               if (correspondence_cost_serial(x, y, induced) != via_kernel)
                 return std::string("serial kernel disagrees with table kernel");
               Correspondence r = random_correspondence(nx, ny, rng);
               if (correspondence_cost(x, y, r) != tripod_cost(x, y, correspondence_tripod(r, x, y)))
                 return std::string("correspondence disagrees with its own tripod");
               return std::nullopt;
             });

  run_trials("bottleneck-vs-bruteforce", std::max(1, (2 * trials) / 3), derive_seed(seed, 1),
             report, [](int, Rng& rng) -> Maybe {
               PersistenceDiagram d1 = random_diagram(0, 4, 0.3, rng);
               PersistenceDiagram d2 = random_diagram(0, 4, 0.3, rng);
               BottleneckResult b = bottleneck(d1, d2);
               double brute = bottleneck_bruteforce(d1, d2);
               bool agree = (std::isinf(b.value) && std::isinf(brute)) ||
                            std::fabs(b.value - brute) <= 1e-9;
               if (!agree)
                 return "bottleneck " + fmt(b.value) + " vs bruteforce " + fmt(brute) +
                        "\nD1 = " + squash(serialize_diagram(d1)) + "\nD2 = " +
                        squash(serialize_diagram(d2));
               if (matching_cost(d1, d2, b.certificate) != b.value)
                 return std::string("certificate cost differs from reported value");
               return std::nullopt;
             });

  run_trials("betti-oracle", std::max(1, trials / 3), derive_seed(seed, 2), report,
             [](int, Rng& rng) -> Maybe {
               int config = rng.uniform_int(0, 2);
               int n = config == 0 ? 3 : (config == 1 ? 4 : 5);
               int cap = config == 2 ? 2 : n - 1;
               int k_max = config == 2 ? 1 : 2;
               FilteredSpace x = random_filtered_space(n, cap, 0.0, 1.0, rng);
               for (int p : {2, 3}) {
                 auto dgs = diagrams(x, k_max, p);
                 for (int k = 0; k <= k_max; ++k)
                   for (double eps : probe_values(x)) {
                     int alive = oracles::alive_count(dgs[static_cast<std::size_t>(k)], eps);
                     int betti = oracles::sublevel_betti(x, eps, k, p);
                     if (alive != betti)
                       return "degree " + std::to_string(k) + " at eps " + fmt(eps) + " mod " +
                              std::to_string(p) + ": " + std::to_string(alive) +
                              " alive vs rank count " + std::to_string(betti) + "\nX = " +
                              squash(serialize_filtered_space(x));
                   }
               }
               return std::nullopt;
             });

  run_trials("field-independence", std::max(1, trials / 3), derive_seed(seed, 3), report,
             [](int, Rng& rng) -> Maybe {
               int n = rng.uniform_int(2, 5);
               FilteredSpace x = random_filtered_space(n, std::min(3, n - 1), 0.0, 1.0, rng);
               auto d2 = diagrams(x, 2, 2);
               auto d3 = diagrams(x, 2, 3);
               auto d5 = diagrams(x, 2, 5);
               for (int k = 0; k <= 2; ++k) {
                 std::size_t ki = static_cast<std::size_t>(k);
                 if (!same_diagram(d2[ki], d3[ki]) || !same_diagram(d2[ki], d5[ki]))
                   return "degree " + std::to_string(k) + " diagram depends on the field\nX = " +
                          squash(serialize_filtered_space(x));
               }
               return std::nullopt;
             });

  run_trials("io-roundtrip", std::max(1, trials / 3), derive_seed(seed, 4), report,
             [](int, Rng& rng) -> Maybe {
               int n = rng.uniform_int(1, 5);
               FilteredSpace x = random_filtered_space(n, std::min(3, n - 1), 0.0, 1.0, rng);
               if (!(parse_filtered_space(serialize_filtered_space(x)) == x))
                 return std::string("filtered space round trip changed the space");
               PersistenceDiagram d = random_diagram(1, 5, 0.3, rng);
               PersistenceDiagram d_back = parse_diagram(serialize_diagram(d));
               if (!same_diagram(d, d_back)) return std::string("diagram round trip changed it");
               FiniteMetricSpace m = random_metric_space(rng.uniform_int(1, 4), rng);
               FiniteMetricSpace m_back = parse_metric_space(serialize_metric_space(m));
               if (m.point_names() != m_back.point_names() || m.matrix() != m_back.matrix())
                 return std::string("metric space round trip changed it");
               RandomInstanceSpec spec;
               spec.kind = RandomInstanceSpec::Kind::filtered_space;
               spec.size = n;
               spec.seed = rng.next();
               if (generate_instance(spec) != generate_instance(spec))
                 return std::string("instance generation is not reproducible");
               return std::nullopt;
             });
}

}  // namespace

namespace oracles {
namespace {

int matrix_rank_mod_p(std::vector<std::vector<int>> m, int p) {
  if (m.empty() || m[0].empty()) return 0;
  std::size_t rows = m.size(), cols = m[0].size();
  int rank = 0;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t pivot = row;
    while (pivot < rows && m[pivot][col] % p == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[row], m[pivot]);
    int inv = 1;  // inverse of the pivot by Fermat: a^(p-2) mod p
    for (int e = 0, a = m[row][col] % p; e < p - 2; ++e) inv = inv * a % p;
    for (std::size_t c = col; c < cols; ++c) m[row][c] = m[row][c] * inv % p;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row || m[r][col] % p == 0) continue;
      int factor = m[r][col] % p;
      for (std::size_t c = col; c < cols; ++c)
        m[r][c] = ((m[r][c] - factor * m[row][c]) % p + p) % p;
    }
    ++row;
    ++rank;
  }
  return rank;
}

// Rank of the boundary operator from the card-(k + 1) simplices of the
// eps-sublevel to its card-k simplices, over F_p.
int boundary_rank(const std::vector<Mask>& cells, const std::vector<Mask>& facets, int p) {
  if (cells.empty() || facets.empty()) return 0;
  std::vector<std::vector<int>> m(facets.size(), std::vector<int>(cells.size(), 0));
  for (std::size_t j = 0; j < cells.size(); ++j) {
    int position = 0;
    for (Mask rest = cells[j]; rest; rest &= rest - 1, ++position) {
      Mask facet = cells[j] & ~(rest & -rest);
      auto it = std::lower_bound(facets.begin(), facets.end(), facet);
      if (it != facets.end() && *it == facet)
        m[static_cast<std::size_t>(it - facets.begin())][j] = position % 2 == 0 ? 1 : p - 1;
    }
  }
  return matrix_rank_mod_p(std::move(m), p);
}

}  // namespace

int sublevel_betti(const FilteredSpace& space, double eps, int k, int p) {
  if (k < 0) raise(errc::invalid_spec, "degree must be non-negative");
  if (p < 2) raise(errc::not_prime, "modulus must be a prime");
  std::vector<Mask> below, at, above;
  for (const auto& s : space.sublevel(eps)) {
    int card = static_cast<int>(s.vertices.size());
    if (card == k) below.push_back(s.mask());
    if (card == k + 1) at.push_back(s.mask());
    if (card == k + 2) above.push_back(s.mask());
  }
  std::sort(below.begin(), below.end());
  std::sort(at.begin(), at.end());
  int kernel = static_cast<int>(at.size()) - boundary_rank(at, below, p);
  return kernel - boundary_rank(above, at, p);
}

int alive_count(const PersistenceDiagram& diagram, double eps) {
  int alive = 0;
  for (const auto& p : diagram.points)
    if (p.birth <= eps && eps < p.death) ++alive;
  return alive;
}

}  // namespace oracles

VerifyReport run_verify(const std::string& suite, int trials, std::uint64_t seed) {
  if (trials < 1) raise(errc::invalid_spec, "trials must be positive");
  using SuiteFn = void (*)(int, std::uint64_t, VerifyReport&);
  const std::vector<std::pair<std::string, SuiteFn>> suites = {
      {"stability", suite_stability},       {"pullback", suite_pullback},
      {"pseudometric", suite_pseudometric}, {"geodesic", suite_geodesic},
      {"gh-stability", suite_gh_stability}, {"reduction", suite_reduction}};
  VerifyReport report;
  report.suite = suite;
  report.trials = trials;
  report.seed = seed;
  bool found = false;
  for (const auto& [name, fn] : suites) {
    if (suite != "all" && suite != name) continue;
    fn(trials, seed, report);
    found = true;
  }
  if (!found) raise(errc::unknown_suite, "unknown suite: " + suite);
  return report;
}

std::string serialize_verify_report(const VerifyReport& report) {
  nlohmann::ordered_json j;
  j["suite"] = report.suite;
  j["trials"] = report.trials;
  j["seed"] = report.seed;
  j["passed"] = report.passed;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : report.checks)
    j["checks"].push_back({{"name", c.name}, {"trials", c.trials}, {"violations", c.violations}});
  j["counterexamples"] = report.counterexamples;
  return j.dump(2);
}

}  // namespace filt
