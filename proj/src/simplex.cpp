#include "filt/simplex.hpp"

#include <sstream>

namespace filt {

Simplex::Simplex(std::vector<int> v) : vertices(std::move(v)) {
  if (vertices.empty()) raise(errc::invalid_simplex, "simplex must be non-empty");
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i] < 0) raise(errc::invalid_simplex, "negative vertex index");
    if (i > 0 && vertices[i] <= vertices[i - 1])
      raise(errc::invalid_simplex, "vertex indices must be strictly increasing");
  }
}

Simplex Simplex::from_mask(Mask m) {
  Simplex s;
  while (m) {
    s.vertices.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return s;
}

Mask Simplex::mask() const {
  Mask m = 0;
  for (int v : vertices) {
    if (v >= 64) raise(errc::too_large, "vertex index beyond 63 not representable");
    m |= Mask{1} << v;
  }
  return m;
}

std::string Simplex::to_string() const {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (i) out << ',';
    out << vertices[i];
  }
  out << '}';
  return out.str();
}

bool mask_lex_less(Mask a, Mask b) {
  while (a && b) {
    int va = std::countr_zero(a);
    int vb = std::countr_zero(b);
    if (va != vb) return va < vb;
    a &= a - 1;
    b &= b - 1;
  }
  return a == 0 && b != 0;
}

bool simplex_order_less(Mask a, Mask b) {
  int ca = mask_card(a), cb = mask_card(b);
  if (ca != cb) return ca < cb;
  return mask_lex_less(a, b);
}

}  // namespace filt
