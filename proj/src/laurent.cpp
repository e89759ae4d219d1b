#include "khplumb/laurent.hpp"

#include <stdexcept>

namespace khplumb {

Laurent Laurent::monomial(int exponent, const mpz_class& c) {
  Laurent p;
  p.add(exponent, c);
  return p;
}

void Laurent::add(int exponent, const mpz_class& c) {
  mpz_class& v = terms_[exponent];
  v += c;
  if (v == 0) terms_.erase(exponent);
}

mpz_class Laurent::coefficient(int exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? mpz_class(0) : it->second;
}

Laurent Laurent::operator+(const Laurent& o) const {
  Laurent out = *this;
  for (const auto& [e, c] : o.terms_) out.add(e, c);
  return out;
}

Laurent Laurent::operator-(const Laurent& o) const {
  Laurent out = *this;
  for (const auto& [e, c] : o.terms_) out.add(e, -c);
  return out;
}

Laurent Laurent::operator*(const Laurent& o) const {
  Laurent out;
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) out.add(e1 + e2, c1 * c2);
  return out;
}

Laurent Laurent::mirror() const {
  Laurent out;
  for (const auto& [e, c] : terms_) out.add(-e, c);
  return out;
}

Laurent Laurent::divided_by(const Laurent& o) const {
  if (o.is_zero()) throw std::domain_error("division by zero polynomial");
  Laurent rem = *this;
  Laurent quot;
  const int lead_e = o.terms_.rbegin()->first;
  const mpz_class lead_c = o.terms_.rbegin()->second;
  const int low_o = o.terms_.begin()->first;
  while (!rem.is_zero()) {
    const int e = rem.terms_.rbegin()->first;
    const mpz_class c = rem.terms_.rbegin()->second;
    if (e - lead_e + low_o < rem.terms_.begin()->first || c % lead_c != 0)
      throw std::domain_error("polynomial division is not exact");
    Laurent m = monomial(e - lead_e, c / lead_c);
    quot = quot + m;
    rem = rem - m * o;
  }
  return quot;
}

std::string Laurent::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    mpz_class a = abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    if (e == 0) {
      out += a.get_str();
      continue;
    }
    if (a != 1) out += a.get_str();
    out += "q";
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

}  // namespace khplumb
