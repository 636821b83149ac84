#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "filt/simplex.hpp"

namespace filt {

// Finite filtered space (X, F_X): an ordered vertex set together with a
// monotone real value on every non-empty simplex up to dimension_cap.
// Monotone means F(sigma) >= F(tau) whenever tau is a face of sigma.
class FilteredSpace {
 public:
  // Validates: distinct vertices, exactly the simplices within the cap
  // (no gaps, no extras), finite values, monotonicity.
  FilteredSpace(std::vector<std::string> vertex_names, int dimension_cap,
                const std::vector<std::pair<Simplex, double>>& assignments);

  int vertex_count() const { return static_cast<int>(names_.size()); }
  int dimension_cap() const { return cap_; }
  bool full_powerset() const { return cap_ >= vertex_count() - 1; }
  const std::vector<std::string>& vertex_names() const { return names_; }
  std::size_t simplex_count() const { return values_.size(); }

  double value(const Simplex& s) const;
  double value(Mask m) const;
  bool contains(Mask m) const { return values_.count(m) != 0; }
  double max_value() const;

  // Simplices with value <= epsilon, ordered by (dimension, lex).
  std::vector<Simplex> sublevel(double epsilon) const;

  // All (simplex, value) entries, ordered by (dimension, lex).
  std::vector<std::pair<Simplex, double>> entries() const;

  friend bool operator==(const FilteredSpace&, const FilteredSpace&);

 private:
  std::vector<std::string> names_;
  int cap_ = 0;
  std::unordered_map<Mask, double> values_;
};

// Parametrization data: source vertex names plus per-source target index.
struct VertexMap {
  std::vector<std::string> source_names;
  std::vector<int> to_target;
};

// Pullback filtration along a surjection phi: Z -> X, i.e.
// value(tau) = F_X(phi(tau)). Result cap defaults to |Z| - 1 and is
// clamped to it; every image simplex must lie within the cap of `space`.
FilteredSpace pullback(const FilteredSpace& space, const VertexMap& phi,
                       std::optional<int> cap = std::nullopt);

// Dense value table indexed by mask, NaN where undefined. Size 1 << n.
std::vector<double> dense_value_table(const FilteredSpace& space);

}  // namespace filt
