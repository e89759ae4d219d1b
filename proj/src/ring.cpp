#include "khplumb/ring.hpp"

#include <stdexcept>

namespace khplumb {

Scalar normalize(Ring r, const Scalar& v) {
  if (r == Ring::Q) {
    Scalar out = v;
    out.canonicalize();
    return out;
  }
  if (v.get_den() != 1) throw std::invalid_argument("non-integral coefficient for ring " + ring_name(r));
  if (r == Ring::Z) return v;
  mpz_class m = v.get_num() % 2;
  if (m < 0) m += 2;
  return Scalar(m);
}

bool in_two_r(Ring r, const Scalar& v) {
  switch (r) {
    case Ring::F2:
      return normalize(r, v) == 0;
    case Ring::Z: {
      if (v.get_den() != 1) return false;
      mpz_class m = v.get_num() % 2;
      return m == 0;
    }
    case Ring::Q:
      return true;
  }
  return false;
}

std::string ring_name(Ring r) {
  switch (r) {
    case Ring::F2: return "f2";
    case Ring::Z: return "z";
    case Ring::Q: return "q";
  }
  return "?";
}

Ring parse_ring(std::string_view s) {
  if (s == "f2" || s == "F2") return Ring::F2;
  if (s == "z" || s == "Z") return Ring::Z;
  if (s == "q" || s == "Q") return Ring::Q;
  throw std::invalid_argument("unknown ring '" + std::string(s) + "' (expected f2, z or q)");
}

std::string scalar_string(const Scalar& v) { return v.get_str(); }

}  // namespace khplumb
