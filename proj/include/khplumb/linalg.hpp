#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "khplumb/ring.hpp"

namespace khplumb {

struct MatrixEntry {
  int row = 0;
  int col = 0;
  int value = 0;
};

// Sparse integer matrix; repeated positions are summed.
struct IntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<MatrixEntry> entries;
};

std::size_t matrix_rank(const IntMatrix& a, Ring r);

// Nonzero diagonal of the Smith normal form, ascending under divisibility.
std::vector<mpz_class> invariant_factors(const IntMatrix& a);

// Some x with a*x = b over the ring, or nullopt.
std::optional<std::vector<Scalar>> solve(const IntMatrix& a, const std::vector<Scalar>& b, Ring r);

using DenseZ = std::vector<std::vector<mpz_class>>;

// u * a * v = d with u, v unimodular and d diagonal, d[k][k] | d[k+1][k+1].
struct SmithForm {
  DenseZ u;
  DenseZ d;
  DenseZ v;
};

SmithForm smith_form(const DenseZ& a);
DenseZ multiply(const DenseZ& a, const DenseZ& b);
DenseZ to_dense(const IntMatrix& a);

}  // namespace khplumb
