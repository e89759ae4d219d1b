#pragma once

#include <gmpxx.h>

#include <map>
#include <string>

namespace khplumb {

// Integer Laurent polynomial in q, stored sparsely.
class Laurent {
 public:
  Laurent() = default;
  static Laurent monomial(int exponent, const mpz_class& c = 1);

  void add(int exponent, const mpz_class& c);
  mpz_class coefficient(int exponent) const;
  const std::map<int, mpz_class>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Laurent operator+(const Laurent& o) const;
  Laurent operator-(const Laurent& o) const;
  Laurent operator*(const Laurent& o) const;
  Laurent mirror() const;  // q -> q^-1
  bool operator==(const Laurent& o) const { return terms_ == o.terms_; }

  // Exact division; throws if the divisor does not divide.
  Laurent divided_by(const Laurent& o) const;

  // Ascending powers, e.g. "q + q^3 + q^5 - q^9"; "q^-1" for negative powers.
  std::string str() const;

 private:
  std::map<int, mpz_class> terms_;
};

}  // namespace khplumb
