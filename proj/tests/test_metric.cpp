#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "filt/generators.hpp"
#include "filt/metric.hpp"
#include "filt/simplex.hpp"
#include "test_support.hpp"

using filt::Correspondence;
using filt::errc;
using filt::FiniteMetricSpace;
using filt::Simplex;
using filt_test::code_of;

namespace {

FiniteMetricSpace segment(double d) {
  return FiniteMetricSpace({"p", "q"}, {{0.0, d}, {d, 0.0}});
}

// Three points on a line at 0, 1, 2.
FiniteMetricSpace line3() {
  return FiniteMetricSpace({"p", "q", "r"},
                           {{0.0, 1.0, 2.0}, {1.0, 0.0, 1.0}, {2.0, 1.0, 0.0}});
}

}  // namespace

TEST_CASE("metric validation") {
  CHECK(code_of([] { FiniteMetricSpace({}, {}); }) == errc::invalid_spec);
  CHECK(code_of([] { FiniteMetricSpace({"p", "p"}, {{0, 1}, {1, 0}}); }) ==
        errc::duplicate_vertex);
  CHECK(code_of([] { FiniteMetricSpace({"p", "q"}, {{0, 1}}); }) == errc::metric_violation);
  CHECK(code_of([] { FiniteMetricSpace({"p", "q"}, {{0.5, 1}, {1, 0}}); }) ==
        errc::metric_violation);
  CHECK(code_of([] { FiniteMetricSpace({"p", "q"}, {{0, 1}, {2, 0}}); }) ==
        errc::metric_violation);
  CHECK(code_of([] { FiniteMetricSpace({"p", "q"}, {{0, -1}, {-1, 0}}); }) ==
        errc::metric_violation);
  CHECK(code_of([] {
          FiniteMetricSpace({"p", "q", "r"},
                            {{0, 1, 3}, {1, 0, 1}, {3, 1, 0}});  // 3 > 1 + 1
        }) == errc::metric_violation);
  CHECK_NOTHROW(FiniteMetricSpace({"p", "q", "r"},
                                  {{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}));  // tight is fine
}

TEST_CASE("rips assigns diameters") {
  filt::FilteredSpace rips = filt::rips_filtration(line3(), 2);
  CHECK(rips.value(Simplex({0})) == 0.0);
  CHECK(rips.value(Simplex({0, 1})) == 1.0);
  CHECK(rips.value(Simplex({0, 2})) == 2.0);
  CHECK(rips.value(Simplex({0, 1, 2})) == 2.0);
  CHECK(rips.vertex_names() == line3().point_names());
}

TEST_CASE("cech assigns witness radii") {
  filt::FilteredSpace cech = filt::cech_filtration(line3(), 2);
  CHECK(cech.value(Simplex({0})) == 0.0);
  CHECK(cech.value(Simplex({0, 1})) == 1.0);
  CHECK(cech.value(Simplex({0, 2})) == 1.0);     // the middle point witnesses
  CHECK(cech.value(Simplex({0, 1, 2})) == 1.0);  // likewise

  // With only the two endpoints available the witness is an endpoint.
  CHECK(filt::cech_filtration(segment(0.7), 1).value(Simplex({0, 1})) == 0.7);
}

TEST_CASE("filtration caps") {
  CHECK(filt::rips_filtration(line3(), 1).dimension_cap() == 1);
  CHECK(filt::rips_filtration(line3(), 9).dimension_cap() == 2);  // clamped
  CHECK(code_of([] { filt::rips_filtration(line3(), -1); }) == errc::invalid_spec);
  CHECK(code_of([] { filt::cech_filtration(line3(), -1); }) == errc::invalid_spec);
}

TEST_CASE("radius and diameter bracket each other") {
  filt::Rng rng(71);
  for (int trial = 0; trial < 40; ++trial) {
    FiniteMetricSpace m = filt::random_metric_space(rng.uniform_int(1, 5), rng);
    int cap = std::min(3, m.size() - 1);
    filt::FilteredSpace rips = filt::rips_filtration(m, cap);
    filt::FilteredSpace cech = filt::cech_filtration(m, cap);
    for (const auto& [simplex, diam] : rips.entries()) {
      double rad = cech.value(simplex);
      CHECK(rad <= diam + 1e-12);
      CHECK(diam <= 2 * rad + 1e-9);
    }
  }
}

TEST_CASE("distortion of correspondences") {
  FiniteMetricSpace m = segment(1.0);
  FiniteMetricSpace n = segment(3.0);
  Correspondence bijection{{{0, 0}, {1, 1}}};
  CHECK(filt::distortion(m, n, bijection) == 2.0);

  Correspondence full{{{0, 0}, {0, 1}, {1, 0}, {1, 1}}};
  // (0,0) against (1,1): |d(0,1) - d(0,1)| in either factor realizes 3.
  CHECK(filt::distortion(m, n, full) == 3.0);

  CHECK(code_of([&] { filt::distortion(m, n, Correspondence{}); }) ==
        errc::not_a_correspondence);
  CHECK(code_of([&] { filt::distortion(m, n, Correspondence{{{0, 0}}}); }) ==
        errc::not_a_correspondence);
  CHECK(code_of([&] { filt::distortion(m, n, Correspondence{{{0, 0}, {1, 7}}}); }) ==
        errc::not_a_correspondence);
}

TEST_CASE("two-point Gromov-Hausdorff closed form") {
  filt::Rng rng(73);
  for (int trial = 0; trial < 30; ++trial) {
    FiniteMetricSpace m = filt::random_metric_space(2, rng);
    FiniteMetricSpace n = filt::random_metric_space(2, rng);
    double expected = std::fabs(m.distance(0, 1) - n.distance(0, 1)) / 2;
    CHECK(filt::gromov_hausdorff_exact(m, n).value == expected);
  }
}

TEST_CASE("Gromov-Hausdorff symmetry, self distance, and minimizers") {
  filt::Rng rng(79);
  for (int trial = 0; trial < 25; ++trial) {
    FiniteMetricSpace m = filt::random_metric_space(rng.uniform_int(1, 3), rng);
    FiniteMetricSpace n = filt::random_metric_space(rng.uniform_int(1, 3), rng);
    filt::GromovHausdorffResult r = filt::gromov_hausdorff_exact(m, n);
    CHECK(r.value == filt::gromov_hausdorff_exact(n, m).value);
    CHECK(filt::gromov_hausdorff_exact(m, m).value == 0.0);
    REQUIRE(!r.minimizers.empty());
    for (const auto& c : r.minimizers) CHECK(filt::distortion(m, n, c) == 2 * r.value);
  }
}

TEST_CASE("parallel and serial distortion enumerations agree") {
  filt::Rng rng(83);
  for (int trial = 0; trial < 15; ++trial) {
    FiniteMetricSpace m = filt::random_metric_space(rng.uniform_int(2, 3), rng);
    FiniteMetricSpace n = filt::random_metric_space(rng.uniform_int(2, 3), rng);
    filt::GromovHausdorffResult fast = filt::gromov_hausdorff_exact(m, n);
    filt::GromovHausdorffResult slow = filt::gromov_hausdorff_exact_serial(m, n);
    CHECK(fast.value == slow.value);
    REQUIRE(fast.minimizers.size() == slow.minimizers.size());
    for (std::size_t i = 0; i < fast.minimizers.size(); ++i)
      CHECK(fast.minimizers[i].pairs == slow.minimizers[i].pairs);
  }
}

TEST_CASE("the enumeration refuses oversized grids") {
  filt::Rng rng(89);
  FiniteMetricSpace m = filt::random_metric_space(4, rng);
  FiniteMetricSpace n = filt::random_metric_space(4, rng);
  CHECK(code_of([&] { filt::gromov_hausdorff_exact(m, n); }) == errc::too_large);
  filt::GhOptions wide;
  wide.max_grid_bits = 16;
  CHECK_NOTHROW(filt::gromov_hausdorff_exact(m, n, wide));
}
