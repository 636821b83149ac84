#include "filt/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

namespace filt {

namespace {

// D_degree of the curve at t, computed on the smallest sufficient skeleton.
PersistenceDiagram diagram_at(const GeodesicCurve& curve, int degree, double t) {
  const int cap = std::min(degree + 1, curve.z_size() - 1);
  return diagrams(curve.at(t, cap), degree)[degree];
}

}  // namespace

GeodesicCurve::GeodesicCurve(FilteredSpace x, FilteredSpace y, Correspondence t)
    : x_(std::move(x)), y_(std::move(y)), t_(std::move(t)) {
  const Tripod tripod = correspondence_tripod(t_, x_, y_);
  z_names_ = tripod.z_names;
  const int nz = static_cast<int>(z_names_.size());
  if (nz > 20) raise(errc::too_large, "correspondence too large for dense tables");
  const std::vector<double> vx = dense_value_table(x_);
  const std::vector<double> vy = dense_value_table(y_);
  const std::size_t total = std::size_t{1} << nz;
  std::vector<Mask> image_x(total, 0), image_y(total, 0);
  for (int z = 0; z < nz; ++z) {
    image_x[Mask{1} << z] = Mask{1} << tripod.to_x[z];
    image_y[Mask{1} << z] = Mask{1} << tripod.to_y[z];
  }
  pull_x_.assign(total, 0);
  pull_y_.assign(total, 0);
  for (Mask m = 1; m < total; ++m) {
    const Mask low = m & -m;
    if (m != low) {
      image_x[m] = image_x[m & (m - 1)] | image_x[low];
      image_y[m] = image_y[m & (m - 1)] | image_y[low];
    }
    pull_x_[m] = vx[image_x[m]];
    pull_y_[m] = vy[image_y[m]];
  }
}

FilteredSpace GeodesicCurve::at(double t, std::optional<int> cap) const {
  if (!(t >= 0.0 && t <= 1.0)) raise(errc::out_of_range, "curve parameter must lie in [0, 1]");
  const int nz = z_size();
  const int cap_z = std::min(nz - 1, std::max(0, cap.value_or(nz - 1)));
  std::vector<std::pair<Simplex, double>> assignments;
  const Mask top = Mask{1} << nz;
  for (Mask m = 1; m < top; ++m) {
    if (mask_dim(m) > cap_z) continue;
    assignments.emplace_back(Simplex::from_mask(m), (1.0 - t) * pull_x_[m] + t * pull_y_[m]);
  }
  return FilteredSpace(z_names_, cap_z, assignments);
}

GeodesicCurve make_geodesic(const FilteredSpace& x, const FilteredSpace& y,
                            const Correspondence& t, std::optional<double> df_value) {
  const double cost = correspondence_cost(x, y, t);
  const double exact = df_value ? *df_value : df_exact(x, y).value;
  if (std::fabs(cost - exact) > 1e-9)
    raise(errc::not_minimizing, "correspondence cost " + std::to_string(cost) +
                                    " differs from the exact distance " + std::to_string(exact));
  GeodesicCurve curve(x, y, t);
  curve.df_value_ = exact;
  return curve;
}

SelfTestReport geodesic_self_test(const GeodesicCurve& curve, const std::vector<double>& ts) {
  std::vector<double> grid = ts;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  SelfTestReport report;
  DfOptions options;
  options.max_grid_bits = 16;
  for (std::size_t a = 0; a < grid.size(); ++a) {
    for (std::size_t b = a + 1; b < grid.size(); ++b) {
      GeodesySample sample;
      sample.s = grid[a];
      sample.t = grid[b];
      sample.distance = df_exact(curve.at(grid[a]), curve.at(grid[b]), options).value;
      sample.expected = (grid[b] - grid[a]) * curve.df();
      report.max_deviation =
          std::max(report.max_deviation, std::fabs(sample.distance - sample.expected));
      report.samples.push_back(sample);
    }
  }
  return report;
}

namespace {

PathLengthReport path_length_impl(const GeodesicCurve& curve, int degree, double tol,
                                  int max_depth, bool parallel) {
  if (degree < 0) raise(errc::invalid_spec, "degree must be >= 0");
  if (!(tol > 0)) raise(errc::invalid_spec, "tolerance must be positive");
  if (max_depth < 0 || max_depth > 28) raise(errc::invalid_spec, "max_depth out of range");

  // diagrams cached by numerator at scale 2^max_depth
  const std::int64_t denominator = std::int64_t{1} << max_depth;
  std::unordered_map<std::int64_t, PersistenceDiagram> cache;
  cache.emplace(0, diagram_at(curve, degree, 0.0));
  cache.emplace(denominator, diagram_at(curve, degree, 1.0));

  PathLengthReport report;
  report.degree = degree;
  double previous = bottleneck(cache.at(0), cache.at(denominator)).value;
  report.value = previous;
  report.depth = 0;
  report.segment_values = {previous};
  report.partition = {0.0, 1.0};

  for (int depth = 1; depth <= max_depth; ++depth) {
    const std::int64_t step = std::int64_t{1} << (max_depth - depth);
    const std::int64_t segments = std::int64_t{1} << depth;
    // new nodes are the odd multiples of step
    std::vector<PersistenceDiagram> fresh(static_cast<std::size_t>(segments / 2));
#pragma omp parallel for schedule(dynamic, 16) if (parallel)
    for (std::int64_t k = 0; k < segments / 2; ++k) {
      const std::int64_t numerator = (2 * k + 1) * step;
      fresh[static_cast<std::size_t>(k)] =
          diagram_at(curve, degree, static_cast<double>(numerator) / static_cast<double>(denominator));
    }
    for (std::int64_t k = 0; k < segments / 2; ++k)
      cache.emplace((2 * k + 1) * step, std::move(fresh[static_cast<std::size_t>(k)]));

    std::vector<double> segment_values(static_cast<std::size_t>(segments));
#pragma omp parallel for schedule(dynamic, 16) if (parallel)
    for (std::int64_t k = 0; k < segments; ++k)
      segment_values[static_cast<std::size_t>(k)] =
          bottleneck(cache.at(k * step), cache.at((k + 1) * step)).value;
    double sum = 0;
    for (double v : segment_values) sum += v;

    report.depth = depth;
    report.segment_values = std::move(segment_values);
    report.partition.clear();
    for (std::int64_t k = 0; k <= segments; ++k)
      report.partition.push_back(static_cast<double>(k * step) / static_cast<double>(denominator));

    // triangle inequality: refinement never shrinks the sum
    if (sum < previous - 1e-12)
      raise(errc::invalid_spec, "refinement decreased the length sum; numeric breakdown");
    report.value = sum;
    if (sum - previous < tol) {
      report.converged = true;
      break;
    }
    previous = sum;
  }
  return report;
}

}  // namespace

PathLengthReport diagram_path_length(const GeodesicCurve& curve, int degree, double tol,
                                     int max_depth) {
  return path_length_impl(curve, degree, tol, max_depth, /*parallel=*/true);
}

PathLengthReport diagram_path_length_serial(const GeodesicCurve& curve, int degree, double tol,
                                            int max_depth) {
  return path_length_impl(curve, degree, tol, max_depth, /*parallel=*/false);
}

StrengthenedBound strengthened_lower_bound(const FilteredSpace& x, const FilteredSpace& y,
                                           int degree, double tol, int max_depth) {
  const DfResult exact = df_exact(x, y);
  StrengthenedBound bound;
  bound.df = exact.value;
  bound.value = -1;
  for (const Correspondence& minimizer : exact.minimizers) {
    const GeodesicCurve curve = make_geodesic(x, y, minimizer, exact.value);
    PathLengthReport report = diagram_path_length(curve, degree, tol, max_depth);
    if (report.value > bound.value) {
      bound.value = report.value;
      bound.best = minimizer;
      bound.report = std::move(report);
    }
  }
  return bound;
}

}  // namespace filt
