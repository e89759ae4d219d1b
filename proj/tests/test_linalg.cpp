#include <gtest/gtest.h>

#include <random>

#include "khplumb/linalg.hpp"
#include "oracle.hpp"

using namespace khplumb;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, int rows, int cols, int density_pct, int range) {
  std::uniform_int_distribution<int> pct(0, 99), val(-range, range);
  IntMatrix m{rows, cols, {}};
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      if (pct(rng) < density_pct) m.entries.push_back({r, c, val(rng)});
  return m;
}

oracle::Dense dense(const IntMatrix& m) {
  oracle::Dense d(m.rows, std::vector<mpq_class>(m.cols, 0));
  for (const auto& e : m.entries) d[e.row][e.col] += e.value;
  return d;
}

mpq_class determinant(DenseZ a) {
  const int n = static_cast<int>(a.size());
  std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(n));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m[r][c] = a[r][c];
  mpq_class det = 1;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (int r = c + 1; r < n; ++r) {
      mpq_class f = m[r][c] / m[c][c];
      for (int k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

}  // namespace

TEST(Linalg, RankMatchesDenseOracle) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int rows = 1 + static_cast<int>(rng() % 30), cols = 1 + static_cast<int>(rng() % 30);
    IntMatrix m = random_matrix(rng, rows, cols, 5 + static_cast<int>(rng() % 40), 3);
    EXPECT_EQ(matrix_rank(m, Ring::Q), static_cast<std::size_t>(oracle::rank(dense(m), false)));
    EXPECT_EQ(matrix_rank(m, Ring::Z), static_cast<std::size_t>(oracle::rank(dense(m), false)));
    EXPECT_EQ(matrix_rank(m, Ring::F2), static_cast<std::size_t>(oracle::rank(dense(m), true)));
  }
}

TEST(Linalg, RepeatedEntriesAreSummed) {
  IntMatrix m{2, 2, {{0, 0, 1}, {0, 0, 1}, {1, 1, 1}}};
  EXPECT_EQ(matrix_rank(m, Ring::Q), 2U);
  EXPECT_EQ(matrix_rank(m, Ring::F2), 1U);
}

TEST(Linalg, SmithFormRemultiplies) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 150; ++trial) {
    const int rows = 1 + static_cast<int>(rng() % 9), cols = 1 + static_cast<int>(rng() % 9);
    IntMatrix m = random_matrix(rng, rows, cols, 60, 6);
    DenseZ a = to_dense(m);
    SmithForm f = smith_form(a);
    ASSERT_EQ(multiply(multiply(f.u, a), f.v), f.d);
    EXPECT_EQ(abs(determinant(f.u)), 1);
    EXPECT_EQ(abs(determinant(f.v)), 1);
    std::vector<mpz_class> diag;
    for (int k = 0; k < rows; ++k)
      for (int c = 0; c < cols; ++c)
        if (k != c) EXPECT_EQ(f.d[k][c], 0);
    for (int k = 0; k < std::min(rows, cols); ++k)
      if (f.d[k][k] != 0) diag.push_back(abs(f.d[k][k]));
    for (std::size_t k = 1; k < diag.size(); ++k) EXPECT_EQ(diag[k] % diag[k - 1], 0);
    EXPECT_EQ(invariant_factors(m), diag);
    EXPECT_EQ(diag.size(), matrix_rank(m, Ring::Z));
  }
}

TEST(Linalg, InvariantFactorsOfKnownMatrix) {
  IntMatrix m{2, 2, {{0, 0, 2}, {1, 1, 4}}};
  EXPECT_EQ(invariant_factors(m), (std::vector<mpz_class>{2, 4}));
  IntMatrix n{2, 2, {{0, 0, 2}, {1, 1, 3}}};
  EXPECT_EQ(invariant_factors(n), (std::vector<mpz_class>{1, 6}));
}

TEST(Linalg, SolveRespectsRing) {
  IntMatrix two{1, 1, {{0, 0, 2}}};
  std::vector<Scalar> one{1};
  EXPECT_FALSE(solve(two, one, Ring::Z).has_value());
  EXPECT_FALSE(solve(two, one, Ring::F2).has_value());
  auto q = solve(two, one, Ring::Q);
  ASSERT_TRUE(q.has_value());
  EXPECT_EQ((*q)[0], mpq_class(1, 2));
}

TEST(Linalg, SolveWitnessesAreExact) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const int rows = 1 + static_cast<int>(rng() % 8), cols = 1 + static_cast<int>(rng() % 8);
    IntMatrix m = random_matrix(rng, rows, cols, 50, 3);
    oracle::Dense a = dense(m);
    // b in the image over Z
    std::vector<Scalar> x0(cols), b(rows, 0);
    for (auto& v : x0) v = static_cast<int>(rng() % 5) - 2;
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) b[r] += a[r][c] * x0[c];
    for (Ring ring : {Ring::Z, Ring::Q, Ring::F2}) {
      auto x = solve(m, b, ring);
      ASSERT_TRUE(x.has_value());
      for (int r = 0; r < rows; ++r) {
        Scalar s = 0;
        for (int c = 0; c < cols; ++c) s += a[r][c] * (*x)[c];
        EXPECT_EQ(normalize(ring, s - b[r]), 0);
      }
    }
  }
}
