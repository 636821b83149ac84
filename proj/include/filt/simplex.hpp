#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "filt/error.hpp"

namespace filt {

// Subset of vertex indices packed into bits; bit i set <=> vertex i present.
using Mask = std::uint64_t;

inline int mask_card(Mask m) { return std::popcount(m); }
inline int mask_dim(Mask m) { return std::popcount(m) - 1; }

// Non-empty simplex: strictly increasing list of vertex indices.
struct Simplex {
  std::vector<int> vertices;

  Simplex() = default;
  explicit Simplex(std::vector<int> v);
  static Simplex from_mask(Mask m);

  int dimension() const { return static_cast<int>(vertices.size()) - 1; }
  Mask mask() const;
  std::string to_string() const;

  friend bool operator==(const Simplex&, const Simplex&) = default;
};

// Lexicographic order on the ascending vertex lists of two masks.
bool mask_lex_less(Mask a, Mask b);

// (dimension, lex) order; the deterministic order used for listings.
bool simplex_order_less(Mask a, Mask b);

}  // namespace filt
