#include "khplumb/linalg.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

namespace khplumb {

namespace {

struct F2Ops {
  using T = unsigned char;
  static T from_int(long v) { return static_cast<T>(((v % 2) + 2) % 2); }
  static T from_scalar(const Scalar& s) {
    if (s.get_den() != 1) throw std::invalid_argument("non-integral right-hand side over F2");
    mpz_class m = s.get_num() % 2;
    return m == 0 ? 0 : 1;
  }
  static Scalar to_scalar(T v) { return Scalar(v); }
  static bool zero(T v) { return v == 0; }
  static bool pivotable(T v) { return v != 0; }
  static T inverse(T) { return 1; }
  static T mul(T a, T b) { return a & b; }
  static T sub(T a, T b) { return a ^ b; }
};

struct QOps {
  using T = mpq_class;
  static T from_int(long v) { return T(v); }
  static T from_scalar(const Scalar& s) { return s; }
  static Scalar to_scalar(const T& v) { return v; }
  static bool zero(const T& v) { return v == 0; }
  static bool pivotable(const T& v) { return v != 0; }
  static T inverse(const T& v) { return T(1) / v; }
  static T mul(const T& a, const T& b) { return a * b; }
  static T sub(const T& a, const T& b) { return a - b; }
};

struct ZOps {
  using T = mpz_class;
  static T from_int(long v) { return T(v); }
  static T from_scalar(const Scalar& s) {
    if (s.get_den() != 1) throw std::invalid_argument("non-integral right-hand side over Z");
    return s.get_num();
  }
  static Scalar to_scalar(const T& v) { return Scalar(v); }
  static bool zero(const T& v) { return v == 0; }
  static bool pivotable(const T& v) { return v == 1 || v == -1; }
  static T inverse(const T& v) { return v; }
  static T mul(const T& a, const T& b) { return a * b; }
  static T sub(const T& a, const T& b) { return a - b; }
};

// Sparse elimination that pivots only on entries the ring can invert
// (everything nonzero over a field, +-1 over Z). What cannot be pivoted is
// left as a remainder block.
template <class Ops>
class Eliminator {
 public:
  using T = typename Ops::T;
  using Row = std::vector<std::pair<int, T>>;

  struct Pivot {
    int row;
    int col;
    Row snapshot;
    T rhs;
  };

  Eliminator(const IntMatrix& a, const std::vector<T>* rhs) : ncols_(a.cols) {
    std::vector<std::map<int, long>> acc(a.rows);
    for (const MatrixEntry& e : a.entries) {
      if (e.row < 0 || e.row >= a.rows || e.col < 0 || e.col >= a.cols)
        throw std::out_of_range("matrix entry outside its shape");
      acc[e.row][e.col] += e.value;
    }
    rows_.resize(a.rows);
    col_rows_.resize(a.cols);
    for (int r = 0; r < a.rows; ++r)
      for (const auto& [c, v] : acc[r]) {
        T t = Ops::from_int(v);
        if (Ops::zero(t)) continue;
        rows_[r].emplace_back(c, t);
        col_rows_[c].insert(r);
      }
    active_.assign(a.rows, true);
    if (rhs) rhs_ = *rhs;
    else rhs_.assign(a.rows, Ops::from_int(0));
  }

  void run() {
    std::vector<bool> done(ncols_, false);
    bool progress = true;
    while (progress) {
      progress = false;
      std::vector<int> order;
      for (int c = 0; c < ncols_; ++c)
        if (!done[c] && !col_rows_[c].empty()) order.push_back(c);
      std::stable_sort(order.begin(), order.end(),
                       [&](int a, int b) { return col_rows_[a].size() < col_rows_[b].size(); });
      for (int c : order) {
        if (done[c] || col_rows_[c].empty()) continue;
        int best = -1;
        std::size_t best_len = std::numeric_limits<std::size_t>::max();
        for (int r : col_rows_[c]) {
          if (Ops::pivotable(get(r, c)) && rows_[r].size() < best_len) {
            best = r;
            best_len = rows_[r].size();
          }
        }
        if (best < 0) continue;
        eliminate(best, c);
        done[c] = true;
        progress = true;
      }
    }
  }

  const std::vector<Pivot>& pivots() const { return pivots_; }
  const std::vector<Row>& rows() const { return rows_; }
  const std::vector<T>& rhs() const { return rhs_; }
  bool active(int r) const { return active_[r]; }
  int row_count() const { return static_cast<int>(rows_.size()); }

 private:
  const T& get(int r, int c) const {
    const Row& row = rows_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& p, int k) { return p.first < k; });
    return it->second;
  }

  void eliminate(int r, int c) {
    const T pinv = Ops::inverse(get(r, c));
    pivots_.push_back({r, c, rows_[r], rhs_[r]});
    active_[r] = false;
    for (const auto& [k, v] : rows_[r]) col_rows_[k].erase(r);
    const Row prow = rows_[r];
    const T prhs = rhs_[r];
    std::vector<int> targets(col_rows_[c].begin(), col_rows_[c].end());
    for (int i : targets) {
      const T f = Ops::mul(get(i, c), pinv);
      Row merged;
      merged.reserve(rows_[i].size() + prow.size());
      auto a = rows_[i].begin(), ae = rows_[i].end();
      auto b = prow.begin(), be = prow.end();
      while (a != ae || b != be) {
        if (b == be || (a != ae && a->first < b->first)) {
          merged.push_back(*a++);
        } else if (a == ae || b->first < a->first) {
          T v = Ops::sub(Ops::from_int(0), Ops::mul(f, b->second));
          if (!Ops::zero(v)) {
            merged.emplace_back(b->first, v);
            col_rows_[b->first].insert(i);
          }
          ++b;
        } else {
          T v = Ops::sub(a->second, Ops::mul(f, b->second));
          if (Ops::zero(v)) col_rows_[a->first].erase(i);
          else merged.emplace_back(a->first, v);
          ++a;
          ++b;
        }
      }
      rows_[i] = std::move(merged);
      rhs_[i] = Ops::sub(rhs_[i], Ops::mul(f, prhs));
    }
  }

  int ncols_;
  std::vector<Row> rows_;
  std::vector<std::set<int>> col_rows_;
  std::vector<bool> active_;
  std::vector<T> rhs_;
  std::vector<Pivot> pivots_;
};

template <class Ops>
std::optional<std::vector<typename Ops::T>> field_solve(const IntMatrix& a, const std::vector<typename Ops::T>& b) {
  using T = typename Ops::T;
  Eliminator<Ops> el(a, &b);
  el.run();
  for (int r = 0; r < el.row_count(); ++r) {
    if (!el.active(r)) continue;
    if (!el.rows()[r].empty()) throw std::logic_error("field elimination left a nonzero row");
    if (!Ops::zero(el.rhs()[r])) return std::nullopt;
  }
  std::vector<T> x(a.cols, Ops::from_int(0));
  const auto& piv = el.pivots();
  for (auto it = piv.rbegin(); it != piv.rend(); ++it) {
    T s = it->rhs;
    T pv = Ops::from_int(0);
    for (const auto& [j, v] : it->snapshot) {
      if (j == it->col) pv = v;
      else s = Ops::sub(s, Ops::mul(v, x[j]));
    }
    x[it->col] = Ops::mul(s, Ops::inverse(pv));
  }
  return x;
}

void swap_rows(DenseZ& m, std::size_t a, std::size_t b) { std::swap(m[a], m[b]); }

void swap_cols(DenseZ& m, std::size_t a, std::size_t b) {
  for (auto& row : m) std::swap(row[a], row[b]);
}

// row a -= q * row b
void row_axpy(DenseZ& m, std::size_t a, const mpz_class& q, std::size_t b) {
  for (std::size_t k = 0; k < m[a].size(); ++k) m[a][k] -= q * m[b][k];
}

void col_axpy(DenseZ& m, std::size_t a, const mpz_class& q, std::size_t b) {
  for (auto& row : m) row[a] -= q * row[b];
}

DenseZ identity(std::size_t n) {
  DenseZ id(n, std::vector<mpz_class>(n, 0));
  for (std::size_t k = 0; k < n; ++k) id[k][k] = 1;
  return id;
}

}  // namespace

DenseZ to_dense(const IntMatrix& a) {
  DenseZ m(a.rows, std::vector<mpz_class>(a.cols, 0));
  for (const MatrixEntry& e : a.entries) m[e.row][e.col] += e.value;
  return m;
}

DenseZ multiply(const DenseZ& a, const DenseZ& b) {
  const std::size_t n = a.size();
  const std::size_t k = b.size();
  const std::size_t m = k ? b[0].size() : 0;
  DenseZ out(n, std::vector<mpz_class>(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][l] * b[l][j];
    }
  return out;
}

SmithForm smith_form(const DenseZ& a) {
  const std::size_t m = a.size();
  const std::size_t n = m ? a[0].size() : 0;
  SmithForm f{identity(m), a, identity(n)};
  DenseZ& d = f.d;
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    // smallest nonzero magnitude in the trailing block goes to (t,t)
    auto bring_min = [&](bool whole_block) -> bool {
      std::size_t bi = m, bj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (!whole_block && i != t && j != t) continue;
          if (d[i][j] != 0 && (bi == m || abs(d[i][j]) < abs(d[bi][bj]))) {
            bi = i;
            bj = j;
          }
        }
      if (bi == m) return false;
      if (bi != t) {
        swap_rows(d, t, bi);
        swap_rows(f.u, t, bi);
      }
      if (bj != t) {
        swap_cols(d, t, bj);
        swap_cols(f.v, t, bj);
      }
      return true;
    };
    if (!bring_min(true)) break;
    while (true) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d[i][t] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), d[i][t].get_mpz_t(), d[t][t].get_mpz_t());
        row_axpy(d, i, q, t);
        row_axpy(f.u, i, q, t);
        if (d[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d[t][j] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), d[t][j].get_mpz_t(), d[t][t].get_mpz_t());
        col_axpy(d, j, q, t);
        col_axpy(f.v, j, q, t);
        if (d[t][j] != 0) clean = false;
      }
      if (!clean) {
        bring_min(false);
        continue;
      }
      // enforce divisibility of the rest of the block
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (d[i][j] % d[t][t] != 0) {
            row_axpy(d, t, -1, i);
            row_axpy(f.u, t, -1, i);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (d[t][t] < 0) {
      for (auto& x : d[t]) x = -x;
      for (auto& x : f.u[t]) x = -x;
    }
  }
  return f;
}

std::size_t matrix_rank(const IntMatrix& a, Ring r) {
  if (r == Ring::F2) {
    Eliminator<F2Ops> el(a, nullptr);
    el.run();
    return el.pivots().size();
  }
  if (r == Ring::Q) {
    Eliminator<QOps> el(a, nullptr);
    el.run();
    return el.pivots().size();
  }
  return invariant_factors(a).size();
}

namespace {

struct Remainder {
  std::vector<int> rows;
  std::vector<int> cols;
  DenseZ m;
};

Remainder remainder_of(const Eliminator<ZOps>& el) {
  Remainder rem;
  std::set<int> cols;
  for (int r = 0; r < el.row_count(); ++r) {
    if (!el.active(r)) continue;
    rem.rows.push_back(r);
    for (const auto& [c, v] : el.rows()[r]) cols.insert(c);
  }
  rem.cols.assign(cols.begin(), cols.end());
  rem.m.assign(rem.rows.size(), std::vector<mpz_class>(rem.cols.size(), 0));
  for (std::size_t i = 0; i < rem.rows.size(); ++i)
    for (const auto& [c, v] : el.rows()[rem.rows[i]]) {
      auto it = std::lower_bound(rem.cols.begin(), rem.cols.end(), c);
      rem.m[i][it - rem.cols.begin()] = v;
    }
  return rem;
}

}  // namespace

std::vector<mpz_class> invariant_factors(const IntMatrix& a) {
  Eliminator<ZOps> el(a, nullptr);
  el.run();
  std::vector<mpz_class> out(el.pivots().size(), 1);
  Remainder rem = remainder_of(el);
  if (!rem.cols.empty()) {
    SmithForm f = smith_form(rem.m);
    for (std::size_t k = 0; k < std::min(rem.rows.size(), rem.cols.size()); ++k)
      if (f.d[k][k] != 0) out.push_back(f.d[k][k]);
  }
  return out;
}

std::optional<std::vector<Scalar>> solve(const IntMatrix& a, const std::vector<Scalar>& b, Ring r) {
  if (static_cast<int>(b.size()) != a.rows) throw std::invalid_argument("right-hand side has the wrong length");
  if (r == Ring::F2) {
    std::vector<F2Ops::T> rhs;
    for (const Scalar& s : b) rhs.push_back(F2Ops::from_scalar(s));
    auto x = field_solve<F2Ops>(a, rhs);
    if (!x) return std::nullopt;
    std::vector<Scalar> out;
    for (auto v : *x) out.push_back(F2Ops::to_scalar(v));
    return out;
  }
  if (r == Ring::Q) return field_solve<QOps>(a, b);

  std::vector<mpz_class> rhs;
  for (const Scalar& s : b) rhs.push_back(ZOps::from_scalar(s));
  Eliminator<ZOps> el(a, &rhs);
  el.run();
  std::vector<mpz_class> x(a.cols, 0);
  Remainder rem = remainder_of(el);
  if (!rem.rows.empty()) {
    std::vector<mpz_class> bb;
    for (int row : rem.rows) bb.push_back(el.rhs()[row]);
    if (rem.cols.empty()) {
      for (const auto& v : bb)
        if (v != 0) return std::nullopt;
    } else {
      SmithForm f = smith_form(rem.m);
      // u*m*v = d, so m*y = bb becomes d*z = u*bb with y = v*z
      std::vector<mpz_class> c(rem.rows.size(), 0);
      for (std::size_t i = 0; i < rem.rows.size(); ++i)
        for (std::size_t k = 0; k < rem.rows.size(); ++k) c[i] += f.u[i][k] * bb[k];
      std::vector<mpz_class> z(rem.cols.size(), 0);
      for (std::size_t i = 0; i < rem.rows.size(); ++i) {
        mpz_class dii = i < rem.cols.size() ? f.d[i][i] : mpz_class(0);
        if (dii == 0) {
          if (c[i] != 0) return std::nullopt;
          continue;
        }
        if (c[i] % dii != 0) return std::nullopt;
        z[i] = c[i] / dii;
      }
      for (std::size_t j = 0; j < rem.cols.size(); ++j) {
        mpz_class y = 0;
        for (std::size_t k = 0; k < rem.cols.size(); ++k) y += f.v[j][k] * z[k];
        x[rem.cols[j]] = y;
      }
    }
  }
  const auto& piv = el.pivots();
  for (auto it = piv.rbegin(); it != piv.rend(); ++it) {
    mpz_class s = it->rhs;
    mpz_class pv = 0;
    for (const auto& [j, v] : it->snapshot) {
      if (j == it->col) pv = v;
      else s -= v * x[j];
    }
    x[it->col] = s * pv;
  }
  std::vector<Scalar> out;
  for (const auto& v : x) out.push_back(Scalar(v));
  return out;
}

}  // namespace khplumb
