#pragma once

#include <utility>
#include <vector>

#include "filt/filtered_space.hpp"

namespace filt {

struct DiagramPoint {
  double birth = 0;
  double death = 0;  // +infinity for essential classes

  friend bool operator==(const DiagramPoint&, const DiagramPoint&) = default;
};

// death - birth; +infinity for essential points.
double persistence_of(const DiagramPoint& p);

struct PersistenceDiagram {
  int degree = 0;
  std::vector<DiagramPoint> points;
};

// Exact multiset equality of points (degrees must match too).
bool same_diagram(const PersistenceDiagram& a, const PersistenceDiagram& b);

// Simplices up to working_cap ordered by (value asc, dimension asc, lex asc).
struct SortedFiltration {
  std::vector<Mask> simplices;
  std::vector<double> values;
  std::size_t size() const { return simplices.size(); }
};

SortedFiltration sort_filtration(const FilteredSpace& space, int working_cap);

// Sparse boundary matrix over F_p; column j lists (row, coeff) with rows
// ascending, coeff in [1, p).
struct BoundaryMatrix {
  int modulus = 2;
  std::vector<std::vector<std::pair<int, int>>> columns;
};

BoundaryMatrix boundary_matrix(const SortedFiltration& filtration, int field_prime);

// Left-to-right column reduction. pairs hold (i, j) with low(j) = i after
// reduction; essential lists zero columns that are nobody's low.
struct ReductionResult {
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> essential;
};

ReductionResult reduce(BoundaryMatrix& matrix);

// Persistence diagrams D_0..D_k_max of the sublevel filtration over F_p.
// Requires dimension_cap >= min(k_max + 1, vertex_count - 1); zero-length
// points are dropped unless keep_diagonal.
std::vector<PersistenceDiagram> diagrams(const FilteredSpace& space, int k_max,
                                         int field_prime = 2, bool keep_diagonal = false);

}  // namespace filt
