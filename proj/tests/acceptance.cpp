// Acceptance gate: every release-blocking behavior gets one pass/fail line
// with its runtime. Exits nonzero if any line fails. Values and tolerances
// are frozen here on purpose; loosening them is a release decision, not a
// code style one.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "filt/bottleneck.hpp"
#include "filt/filtered_space.hpp"
#include "filt/generators.hpp"
#include "filt/geodesic.hpp"
#include "filt/metric.hpp"
#include "filt/persistence.hpp"
#include "filt/tripod.hpp"
#include "filt/verify.hpp"

namespace {

using filt::FilteredSpace;
using filt::Simplex;
using Failure = std::optional<std::string>;

int failures = 0;

void criterion(const std::string& name, double budget_seconds,
               const std::function<Failure()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Failure failure;
  try {
    failure = body();
  } catch (const std::exception& e) {
    failure = std::string("unexpected error: ") + e.what();
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!failure && elapsed > budget_seconds)
    failure = "took " + std::to_string(elapsed) + " s, budget " +
              std::to_string(budget_seconds) + " s";
  if (failure) {
    ++failures;
    std::printf("[FAIL] %s: %s\n", name.c_str(), failure->c_str());
  } else {
    std::printf("[PASS] %s (%.2f s)\n", name.c_str(), elapsed);
  }
  std::fflush(stdout);
}

FilteredSpace two_point(double edge) {
  return FilteredSpace({"a", "b"}, 1,
                       {{Simplex({0}), 0.0}, {Simplex({1}), 0.0}, {Simplex({0, 1}), edge}});
}

FilteredSpace one_point() { return FilteredSpace({"c"}, 0, {{Simplex({0}), 0.0}}); }

Failure suite_passes(const std::string& suite, int trials, std::uint64_t seed) {
  const auto report = filt::run_verify(suite, trials, seed);
  if (report.passed) return std::nullopt;
  std::string detail = suite + " suite found violations:";
  for (const auto& check : report.checks)
    if (check.violations > 0)
      detail += " " + check.name + " (" + std::to_string(check.violations) + ")";
  return detail;
}

}  // namespace

int main() {
  criterion("collapse pair: tripod distance is 1, and 0 once the edge is free", 1.0, []() -> Failure {
    if (filt::df_exact(two_point(1.0), one_point()).value != 1.0)
      return "expected distance 1 for the unit edge collapse";
    if (filt::df_exact(two_point(0.0), one_point()).value != 0.0)
      return "expected distance 0 for the zero edge collapse";
    return std::nullopt;
  });

  criterion("degree-0 bottleneck gap 0.5 sits strictly below tripod distance 1", 1.0,
            []() -> Failure {
              const auto dx = filt::diagrams(two_point(1.0), 1);
              const auto dy = filt::diagrams(one_point(), 1);
              for (const auto* side : {&dx, &dy})
                for (std::size_t k = 1; k < side->size(); ++k)
                  if (!(*side)[k].points.empty()) return "positive degrees should be empty";
              const double gap = filt::bottleneck(dx[0], dy[0]).value;
              if (gap != 0.5) return "bottleneck should be exactly 0.5";
              const double df = filt::df_exact(two_point(1.0), one_point()).value;
              if (!(gap < df) || df != 1.0) return "gap must be strictly below the distance 1";
              return std::nullopt;
            });

  criterion("strengthened lower bound recovers the full distance within 1e-3", 30.0,
            []() -> Failure {
              const auto x = two_point(1.0);
              const auto y = one_point();
              const auto bound = filt::strengthened_lower_bound(x, y, 0, 1e-6, 14);
              if (std::fabs(bound.value - 1.0) > 1e-3)
                return "bound " + std::to_string(bound.value) + " misses 1.0 by more than 1e-3";
              const auto dx = filt::diagrams(x, 0);
              const auto dy = filt::diagrams(y, 0);
              const double naive = filt::bottleneck(dx[0], dy[0]).value;
              if (!(bound.value > naive)) return "bound must strictly beat the bottleneck gap";
              if (std::fabs(bound.value - bound.df) > 1e-3)
                return "bound must match the tripod distance within 1e-3";
              return std::nullopt;
            });

  criterion("stability: diagram distance below the filtration gap, 200 trials", 60.0,
            []() -> Failure { return suite_passes("stability", 200, 2024); });

  criterion("pullback invariance: exact diagram equality, 200 trials", 60.0,
            []() -> Failure { return suite_passes("pullback", 200, 2025); });

  criterion("pseudometric axioms on 50 random triples of 2-3 point spaces", 120.0,
            []() -> Failure {
              filt::Rng rng(4242);
              for (int t = 0; t < 50; ++t) {
                auto draw = [&] {
                  const int n = rng.uniform_int(2, 3);
                  return filt::random_filtered_space(n, n - 1, 0.0, 1.0, rng);
                };
                const auto x = draw(), y = draw(), z = draw();
                const double xy = filt::df_exact(x, y).value;
                if (xy != filt::df_exact(y, x).value)
                  return "symmetry broke on trial " + std::to_string(t);
                if (filt::df_exact(x, x).value != 0.0)
                  return "self distance nonzero on trial " + std::to_string(t);
                const double xz = filt::df_exact(x, z).value;
                const double yz = filt::df_exact(y, z).value;
                if (xz > xy + yz + 1e-9)
                  return "triangle inequality broke on trial " + std::to_string(t);
              }
              return std::nullopt;
            });

  criterion("geodesics: grid distances match |s-t| scaling, 30 instances", 120.0,
            []() -> Failure { return suite_passes("geodesic", 30, 2026); });

  criterion("metric stability: rips/cech/diagram bounds against GH on 100 pairs", 120.0,
            []() -> Failure {
              filt::Rng rng(777);
              for (int t = 0; t < 100; ++t) {
                const auto m = filt::random_metric_space(rng.uniform_int(2, 3), rng);
                const auto n = filt::random_metric_space(rng.uniform_int(2, 3), rng);
                const double gh = filt::gromov_hausdorff_exact(m, n).value;
                const auto rips_m = filt::rips_filtration(m, m.size() - 1);
                const auto rips_n = filt::rips_filtration(n, n.size() - 1);
                if (filt::df_exact(rips_m, rips_n).value > 2 * gh + 1e-9)
                  return "rips bound broke on trial " + std::to_string(t);
                const auto cech_m = filt::cech_filtration(m, m.size() - 1);
                const auto cech_n = filt::cech_filtration(n, n.size() - 1);
                if (filt::df_exact(cech_m, cech_n).value > 2 * gh + 1e-9)
                  return "cech bound broke on trial " + std::to_string(t);
                const auto dm = filt::diagrams(rips_m, 2);
                const auto dn = filt::diagrams(rips_n, 2);
                for (int k = 0; k <= 2; ++k)
                  if (filt::bottleneck(dm[static_cast<std::size_t>(k)],
                                       dn[static_cast<std::size_t>(k)]).value >
                      2 * gh + 1e-9)
                    return "diagram bound broke at degree " + std::to_string(k) + " on trial " +
                           std::to_string(t);
              }
              for (int t = 0; t < 20; ++t) {
                const auto m = filt::random_metric_space(2, rng);
                const auto n = filt::random_metric_space(2, rng);
                const double expected = std::fabs(m.distance(0, 1) - n.distance(0, 1)) / 2;
                if (filt::gromov_hausdorff_exact(m, n).value != expected)
                  return "two-point closed form broke on trial " + std::to_string(t);
              }
              return std::nullopt;
            });

  criterion("oracle agreement: 300 bottleneck pairs, 450 tripods, 150 rank checks", 180.0,
            []() -> Failure {
              const auto report = filt::run_verify("reduction", 450, 2027);
              if (!report.passed) return suite_passes("reduction", 450, 2027);
              auto trials_of = [&](const std::string& check) {
                for (const auto& c : report.checks)
                  if (c.name == check) return c.trials;
                return -1;
              };
              if (trials_of("bottleneck-vs-bruteforce") < 300)
                return "bottleneck oracle needs at least 300 pairs";
              if (trials_of("tripod-vs-correspondence") < 200)
                return "tripod oracle needs at least 200 instances";
              if (trials_of("betti-oracle") < 100) return "rank oracle needs at least 100 spaces";
              return std::nullopt;
            });

  if (failures > 0) {
    std::printf("%d acceptance criteria failed\n", failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
