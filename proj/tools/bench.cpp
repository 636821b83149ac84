// Micro benchmark: the OpenMP mask-enumeration kernels against their
// serial reference implementations, with an agreement check on every
// workload so a speedup never hides a wrong answer.

#include <chrono>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <string>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "filt/generators.hpp"
#include "filt/geodesic.hpp"
#include "filt/metric.hpp"
#include "filt/tripod.hpp"

namespace {

template <typename F>
double time_best_ms(F&& f, int reps) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    auto start = std::chrono::steady_clock::now();
    f();
    auto stop = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(stop - start).count());
  }
  return best;
}

void report(const std::string& name, double serial_ms, double parallel_ms, bool agree) {
  std::cout << std::left << std::setw(44) << name << std::right << std::fixed
            << std::setprecision(2) << std::setw(10) << serial_ms << " ms" << std::setw(10)
            << parallel_ms << " ms" << std::setw(9) << std::setprecision(2)
            << (parallel_ms > 0 ? serial_ms / parallel_ms : 0.0) << "x   "
            << (agree ? "agree" : "DISAGREE") << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial reference vs parallel kernel timings"};
  int reps = 3;
  std::uint64_t seed = 7;
  app.add_option("--reps", reps, "repetitions per measurement (default 3)");
  app.add_option("--seed", seed, "instance seed (default 7)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

#ifdef _OPENMP
  std::cout << "threads: " << omp_get_max_threads() << "\n";
#else
  std::cout << "threads: 1 (built without OpenMP)\n";
#endif
  std::cout << std::left << std::setw(44) << "workload" << std::right << std::setw(13) << "serial"
            << std::setw(13) << "parallel" << std::setw(10) << "speedup" << "\n";

  bool all_agree = true;

  {
    filt::Rng rng(seed);
    filt::FilteredSpace x = filt::random_filtered_space(4, 3, 0.0, 1.0, rng);
    filt::FilteredSpace y = filt::random_filtered_space(4, 3, 0.0, 1.0, rng);
    filt::DfOptions options;
    options.max_grid_bits = 16;
    filt::DfResult serial, parallel;
    double s = time_best_ms([&] { serial = filt::df_exact_serial(x, y, options); }, reps);
    double p = time_best_ms([&] { parallel = filt::df_exact(x, y, options); }, reps);
    bool agree = serial.value == parallel.value &&
                 serial.minimizers.size() == parallel.minimizers.size();
    all_agree = all_agree && agree;
    report("correspondence enumeration, 4x4 grid", s, p, agree);
  }

  {
    filt::Rng rng(filt::derive_seed(seed, 1));
    filt::FiniteMetricSpace m = filt::random_metric_space(4, rng);
    filt::FiniteMetricSpace n = filt::random_metric_space(4, rng);
    filt::GhOptions options;
    options.max_grid_bits = 16;
    filt::GromovHausdorffResult serial, parallel;
    double s = time_best_ms([&] { serial = filt::gromov_hausdorff_exact_serial(m, n, options); },
                            reps);
    double p = time_best_ms([&] { parallel = filt::gromov_hausdorff_exact(m, n, options); }, reps);
    bool agree = serial.value == parallel.value &&
                 serial.minimizers.size() == parallel.minimizers.size();
    all_agree = all_agree && agree;
    report("distortion enumeration, 4x4 grid", s, p, agree);
  }

  {
    // Two points collapsing to one: the dyadic sums keep strictly
    // increasing, so the refinement always reaches max_depth.
    filt::FilteredSpace x({"a", "b"}, 1,
                          {{filt::Simplex({0}), 0.0},
                           {filt::Simplex({1}), 0.0},
                           {filt::Simplex({0, 1}), 1.0}});
    filt::FilteredSpace y({"c"}, 0, {{filt::Simplex({0}), 0.0}});
    filt::DfResult df = filt::df_exact(x, y);
    filt::GeodesicCurve curve = filt::make_geodesic(x, y, df.minimizers.front(), df.value);
    filt::PathLengthReport serial, parallel;
    double s = time_best_ms(
        [&] { serial = filt::diagram_path_length_serial(curve, 0, 1e-18, 13); }, reps);
    double p =
        time_best_ms([&] { parallel = filt::diagram_path_length(curve, 0, 1e-18, 13); }, reps);
    bool agree = serial.value == parallel.value && serial.depth == parallel.depth;
    all_agree = all_agree && agree;
    report("diagram path length, depth 13", s, p, agree);
  }

  if (!all_agree) {
    std::cerr << "kernel disagreement detected\n";
    return 1;
  }
  return 0;
}
