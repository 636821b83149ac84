#pragma once

#include <string>
#include <vector>

#include "filt/filtered_space.hpp"
#include "filt/tripod.hpp"

namespace filt {

// Finite metric space: named points and a dense distance matrix.
// Validates zero diagonal, symmetry, non-negativity, and the triangle
// inequality (with 1e-9 slack).
class FiniteMetricSpace {
 public:
  FiniteMetricSpace(std::vector<std::string> point_names,
                    std::vector<std::vector<double>> distances);

  int size() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& point_names() const { return names_; }
  double distance(int i, int j) const { return dist_[i][j]; }
  const std::vector<std::vector<double>>& matrix() const { return dist_; }

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<double>> dist_;
};

// Vietoris-Rips filtration: F(sigma) = diameter of sigma (0 on vertices).
FilteredSpace rips_filtration(const FiniteMetricSpace& m, int cap);

// Cech filtration with ambient witnesses: F(sigma) = min over points p of
// max over x in sigma of d(x, p).
FilteredSpace cech_filtration(const FiniteMetricSpace& m, int cap);

// Metric distortion of a correspondence: max over pairs of pairs of
// |d_X(x, x') - d_Y(y, y')|.
double distortion(const FiniteMetricSpace& m, const FiniteMetricSpace& n,
                  const Correspondence& r);

struct GromovHausdorffResult {
  double value = 0;
  std::vector<Correspondence> minimizers;
};

struct GhOptions {
  int max_grid_bits = 12;
};

// Exact Gromov-Hausdorff distance: half the minimal distortion over all
// correspondences, by enumeration.
GromovHausdorffResult gromov_hausdorff_exact(const FiniteMetricSpace& m,
                                             const FiniteMetricSpace& n,
                                             const GhOptions& options = {});

// Reference implementation built on the public distortion().
GromovHausdorffResult gromov_hausdorff_exact_serial(const FiniteMetricSpace& m,
                                                    const FiniteMetricSpace& n,
                                                    const GhOptions& options = {});

}  // namespace filt
