#pragma once

#include <optional>
#include <string>
#include <vector>

#include "filt/bottleneck.hpp"
#include "filt/filtered_space.hpp"
#include "filt/tripod.hpp"

namespace filt {

// Straight-line geodesic through a minimizing correspondence T: the curve
// t -> (Z, (1 - t) * pullback(F_X) + t * pullback(F_Y)) on Z = T.
class GeodesicCurve {
 public:
  const FilteredSpace& x() const { return x_; }
  const FilteredSpace& y() const { return y_; }
  const Correspondence& correspondence() const { return t_; }
  double df() const { return df_value_; }
  int z_size() const { return static_cast<int>(z_names_.size()); }

  // Space at parameter t in [0, 1]; cap defaults to |Z| - 1.
  FilteredSpace at(double t, std::optional<int> cap = std::nullopt) const;

 private:
  friend GeodesicCurve make_geodesic(const FilteredSpace&, const FilteredSpace&,
                                     const Correspondence&, std::optional<double>);
  GeodesicCurve(FilteredSpace x, FilteredSpace y, Correspondence t);

  FilteredSpace x_, y_;
  Correspondence t_;
  std::vector<std::string> z_names_;
  std::vector<double> pull_x_, pull_y_;  // dense tables over masks of Z
  double df_value_ = 0;
};

// Validates that T is a correspondence whose cost matches the exact
// distance within 1e-9 (the distance is recomputed unless supplied).
GeodesicCurve make_geodesic(const FilteredSpace& x, const FilteredSpace& y,
                            const Correspondence& t,
                            std::optional<double> df_value = std::nullopt);

struct GeodesySample {
  double s = 0, t = 0;
  double distance = 0;   // df_exact(curve(s), curve(t))
  double expected = 0;   // |s - t| * df(X, Y)
};

struct SelfTestReport {
  double max_deviation = 0;
  std::vector<GeodesySample> samples;
};

// Checks d_F(curve(s), curve(t)) = |s - t| * d_F(X, Y) on a sample grid.
// Needs |Z|^2 <= 16 for the inner exact distances.
SelfTestReport geodesic_self_test(const GeodesicCurve& curve, const std::vector<double>& ts);

struct PathLengthReport {
  int degree = 0;
  double value = 0;
  std::vector<double> partition;       // final dyadic partition
  std::vector<double> segment_values;  // bottleneck per segment
  int depth = 0;
  bool converged = false;
};

// Length of the diagram path t -> D_k(curve(t)) by dyadic refinement:
// double the partition until the sum of per-segment bottleneck distances
// increases by less than tol. Hitting max_depth first sets converged =
// false on the best value.
PathLengthReport diagram_path_length(const GeodesicCurve& curve, int degree, double tol,
                                     int max_depth = 14);
PathLengthReport diagram_path_length_serial(const GeodesicCurve& curve, int degree, double tol,
                                            int max_depth = 14);

struct StrengthenedBound {
  double value = 0;      // max path length over all minimizing correspondences
  double df = 0;         // the exact distance, an upper bound for value
  Correspondence best;   // the argmax correspondence
  PathLengthReport report;
};

// Lower bound for d_F in one degree: the diagram path length along every
// minimizing geodesic, maximized.
StrengthenedBound strengthened_lower_bound(const FilteredSpace& x, const FilteredSpace& y,
                                           int degree, double tol, int max_depth = 14);

}  // namespace filt
