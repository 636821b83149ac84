#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "filt/generators.hpp"
#include "filt/geodesic.hpp"
#include "filt/simplex.hpp"
#include "test_support.hpp"

using filt::Correspondence;
using filt::errc;
using filt::FilteredSpace;
using filt::GeodesicCurve;
using filt::Simplex;
using filt_test::code_of;

namespace {

FilteredSpace two_point() {
  return FilteredSpace({"a", "b"}, 1,
                       {{Simplex({0}), 0.0}, {Simplex({1}), 0.0}, {Simplex({0, 1}), 1.0}});
}

FilteredSpace one_point() { return FilteredSpace({"c"}, 0, {{Simplex({0}), 0.0}}); }

GeodesicCurve collapse_curve() {
  return filt::make_geodesic(two_point(), one_point(), Correspondence{{{0, 0}, {1, 0}}});
}

}  // namespace

TEST_CASE("geodesic construction and evaluation") {
  GeodesicCurve curve = collapse_curve();
  CHECK(curve.df() == 1.0);
  CHECK(curve.z_size() == 2);

  FilteredSpace mid = curve.at(0.5);
  CHECK(mid.vertex_names() == std::vector<std::string>{"a|c", "b|c"});
  CHECK(mid.value(Simplex({0})) == 0.0);
  CHECK(mid.value(Simplex({0, 1})) == 0.5);  // (1 - t) * 1 + t * 0

  // Restricting the cap keeps only the low-dimensional part.
  CHECK(curve.at(0.5, 0).simplex_count() == 2);

  CHECK(code_of([&] { curve.at(-0.1); }) == errc::out_of_range);
  CHECK(code_of([&] { curve.at(1.5); }) == errc::out_of_range);
}

TEST_CASE("only minimizing correspondences make geodesics") {
  FilteredSpace x = two_point();
  // The full relation on X x X costs 1, far from the self distance 0.
  Correspondence full{{{0, 0}, {0, 1}, {1, 0}, {1, 1}}};
  CHECK(code_of([&] { filt::make_geodesic(x, x, full); }) == errc::not_minimizing);
  // A wrong distance hint is rejected the same way.
  CHECK(code_of([&] {
          filt::make_geodesic(two_point(), one_point(), Correspondence{{{0, 0}, {1, 0}}}, 0.5);
        }) == errc::not_minimizing);
  CHECK_NOTHROW(filt::make_geodesic(x, x, Correspondence{{{0, 0}, {1, 1}}}));
}

TEST_CASE("oversized parametrizations are refused") {
  filt::Rng rng(97);
  FilteredSpace x = filt::random_filtered_space(5, 4, 0.0, 1.0, rng);
  FilteredSpace y = filt::random_filtered_space(5, 4, 0.0, 1.0, rng);
  Correspondence wide;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      if (i != 0 || j < 1) wide.pairs.emplace_back(i, j);  // 21 pairs
  double cost = filt::correspondence_cost(x, y, wide);
  CHECK(code_of([&] { filt::make_geodesic(x, y, wide, cost); }) == errc::too_large);
}

TEST_CASE("geodesy on the sample grid") {
  GeodesicCurve curve = collapse_curve();
  filt::SelfTestReport report = filt::geodesic_self_test(curve, {0.0, 0.25, 0.5, 0.75, 1.0});
  CHECK(report.samples.size() == 10);  // unordered pairs
  CHECK(report.max_deviation <= 1e-9);
  for (const auto& s : report.samples) {
    CHECK(s.expected == std::fabs(s.s - s.t) * curve.df());
    CHECK(std::fabs(s.distance - s.expected) <= report.max_deviation);
  }
}

TEST_CASE("path length of the collapse curve follows the dyadic formula") {
  GeodesicCurve curve = collapse_curve();

  // At depth d the sum is 1 - 2^-(d+1): every refinement halves the gap.
  filt::PathLengthReport shallow = filt::diagram_path_length(curve, 0, 1e-12, 1);
  CHECK(shallow.value == 0.75);
  CHECK(shallow.depth == 1);
  CHECK_FALSE(shallow.converged);
  CHECK(shallow.partition == std::vector<double>{0.0, 0.5, 1.0});
  CHECK(shallow.segment_values == std::vector<double>{0.5, 0.25});

  filt::PathLengthReport deep = filt::diagram_path_length(curve, 0, 1e-6, 14);
  CHECK(deep.value == 1.0 - std::ldexp(1.0, -15));
  CHECK(deep.depth == 14);
  CHECK_FALSE(deep.converged);

  // A loose tolerance stops as soon as the increment drops below it.
  filt::PathLengthReport loose = filt::diagram_path_length(curve, 0, 0.1, 14);
  CHECK(loose.value == 0.9375);
  CHECK(loose.depth == 3);
  CHECK(loose.converged);
}

TEST_CASE("path length validates its inputs") {
  GeodesicCurve curve = collapse_curve();
  CHECK(code_of([&] { filt::diagram_path_length(curve, -1, 1e-6, 4); }) == errc::invalid_spec);
  CHECK(code_of([&] { filt::diagram_path_length(curve, 0, 0.0, 4); }) == errc::invalid_spec);
  CHECK(code_of([&] { filt::diagram_path_length(curve, 0, 1e-6, -1); }) == errc::invalid_spec);
  CHECK(code_of([&] { filt::diagram_path_length(curve, 0, 1e-6, 29); }) == errc::invalid_spec);
}

TEST_CASE("parallel and serial path lengths agree") {
  GeodesicCurve curve = collapse_curve();
  for (int depth : {0, 3, 8}) {
    filt::PathLengthReport fast = filt::diagram_path_length(curve, 0, 1e-12, depth);
    filt::PathLengthReport slow = filt::diagram_path_length_serial(curve, 0, 1e-12, depth);
    CHECK(fast.value == slow.value);
    CHECK(fast.depth == slow.depth);
    CHECK(fast.segment_values == slow.segment_values);
  }
}

TEST_CASE("strengthened lower bound on the collapse pair") {
  filt::StrengthenedBound bound = filt::strengthened_lower_bound(two_point(), one_point(), 0,
                                                                 1e-6, 14);
  CHECK(bound.df == 1.0);
  CHECK(bound.value == 1.0 - std::ldexp(1.0, -15));
  CHECK(bound.best.pairs == std::vector<std::pair<int, int>>{{0, 0}, {1, 0}});
  CHECK(bound.report.degree == 0);
  CHECK_FALSE(bound.report.converged);
}

TEST_CASE("path lengths sit between the endpoint distance and df") {
  filt::Rng rng(101);
  int done = 0;
  for (int trial = 0; trial < 60 && done < 20; ++trial) {
    int nx = rng.uniform_int(1, 2), ny = rng.uniform_int(1, 3);
    FilteredSpace x = filt::random_filtered_space(nx, nx - 1, 0.0, 1.0, rng);
    FilteredSpace y = filt::random_filtered_space(ny, ny - 1, 0.0, 1.0, rng);
    filt::DfResult res = filt::df_exact(x, y);
    const Correspondence* small = nullptr;
    for (const auto& r : res.minimizers)
      if (r.pairs.size() <= 4 && (!small || r.pairs.size() < small->pairs.size())) small = &r;
    if (!small) continue;
    ++done;
    GeodesicCurve curve = filt::make_geodesic(x, y, *small, res.value);
    auto dx = filt::diagrams(x, 1);
    auto dy = filt::diagrams(y, 1);
    for (int k = 0; k <= 1; ++k) {
      double endpoints = filt::bottleneck(dx[static_cast<std::size_t>(k)],
                                          dy[static_cast<std::size_t>(k)])
                             .value;
      filt::PathLengthReport len = filt::diagram_path_length(curve, k, 1e-4, 10);
      CHECK(len.value >= endpoints - 1e-9);
      CHECK(len.value <= res.value + 1e-9);
    }
  }
  CHECK(done == 20);
}
