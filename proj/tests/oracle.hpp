#pragma once
// Brute-force Khovanov complex built straight from PD slots with dense
// matrices. Shares no code with the library beyond the diagram type.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "khplumb/diagram.hpp"

namespace oracle {

struct Circles {
  std::vector<int> of_label;  // edge label -> circle, -1 if unused
  int count = 0;
};

inline Circles circles(const khplumb::LinkDiagram& d, std::uint64_t s) {
  int max_label = 0;
  for (const auto& c : d.crossings())
    for (int l : c.slots) max_label = std::max(max_label, l);
  std::vector<int> parent(max_label + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  auto join = [&](int a, int b) { parent[find(a)] = find(b); };
  for (int t = 0; t < d.crossing_count(); ++t) {
    const auto& x = d.crossings()[t].slots;
    if ((s >> t) & 1U) {
      join(x[0], x[1]);
      join(x[2], x[3]);
    } else {
      join(x[0], x[3]);
      join(x[1], x[2]);
    }
  }
  Circles out;
  out.of_label.assign(max_label + 1, -1);
  std::map<int, int> root_id;
  out.count = d.free_loops();
  std::vector<bool> used(max_label + 1, false);
  for (const auto& c : d.crossings())
    for (int l : c.slots) used[l] = true;
  for (int l = 1; l <= max_label; ++l) {
    if (!used[l]) continue;
    auto [it, fresh] = root_id.emplace(find(l), out.count);
    if (fresh) ++out.count;
    out.of_label[l] = it->second;
  }
  return out;
}

struct Gen {
  std::uint64_t s;
  std::uint64_t labels;
};

struct Grading {
  int i, j;
  auto operator<=>(const Grading&) const = default;
};

inline Grading grading(const khplumb::LinkDiagram& d, const Gen& g, int circle_count) {
  const int n = d.crossing_count();
  const int b = __builtin_popcountll(g.s);
  const int sigma = (n - b) - b;
  const int ones = __builtin_popcountll(g.labels);
  const int tau = ones - (circle_count - ones);
  const int w = d.writhe();
  const int i = (w - sigma) / 2;
  return {i, w + i - tau};
}

struct Complex {
  std::map<Grading, std::vector<Gen>> groups;
  std::map<std::pair<std::uint64_t, std::uint64_t>, int> index;  // within its group
};

inline Complex build(const khplumb::LinkDiagram& d) {
  Complex c;
  const int n = d.crossing_count();
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    const int k = circles(d, s).count;
    for (std::uint64_t l = 0; l < (std::uint64_t{1} << k); ++l) {
      Gen g{s, l};
      auto& grp = c.groups[grading(d, g, k)];
      c.index[{s, l}] = static_cast<int>(grp.size());
      grp.push_back(g);
    }
  }
  return c;
}

// Terms (target generator, sign) of the differential of one generator.
inline std::vector<std::pair<Gen, int>> boundary(const khplumb::LinkDiagram& d, const Gen& g) {
  std::vector<std::pair<Gen, int>> out;
  const Circles before = circles(d, g.s);
  int a_seen = 0;
  for (int t = 0; t < d.crossing_count(); ++t) {
    if ((g.s >> t) & 1U) continue;
    const int sign = a_seen % 2 ? -1 : 1;
    ++a_seen;
    const std::uint64_t s2 = g.s | (std::uint64_t{1} << t);
    const Circles after = circles(d, s2);
    const auto& x = d.crossings()[t].slots;
    const int a = before.of_label[x[0]], b = before.of_label[x[2]];
    // carry labels of untouched circles across, via any edge on them
    std::uint64_t base = 0;
    std::vector<bool> done(after.count, false);
    for (int l = 0; l < static_cast<int>(before.of_label.size()); ++l) {
      const int c0 = before.of_label[l];
      if (c0 < 0 || c0 == a || c0 == b) continue;
      const int c1 = after.of_label[l];
      if (done[c1]) continue;
      done[c1] = true;
      if ((g.labels >> c0) & 1U) base |= std::uint64_t{1} << c1;
    }
    for (int f = 0; f < d.free_loops(); ++f)
      if ((g.labels >> f) & 1U) base |= std::uint64_t{1} << f;
    const int la = (g.labels >> a) & 1U, lb = (g.labels >> b) & 1U;
    if (a != b) {
      if (la && lb) continue;
      const int m = after.of_label[x[0]];
      out.push_back({{s2, base | (std::uint64_t(la | lb) << m)}, sign});
    } else {
      const int c1 = after.of_label[x[0]], c2 = after.of_label[x[2]];
      if (la) {
        out.push_back({{s2, base | (std::uint64_t{1} << c1) | (std::uint64_t{1} << c2)}, sign});
      } else {
        out.push_back({{s2, base | (std::uint64_t{1} << c1)}, sign});
        out.push_back({{s2, base | (std::uint64_t{1} << c2)}, sign});
      }
    }
  }
  return out;
}

using Dense = std::vector<std::vector<mpq_class>>;

// Matrix of d : C^{i,j} -> C^{i+1,j}
inline Dense matrix(const khplumb::LinkDiagram& d, const Complex& c, Grading g) {
  auto src = c.groups.find(g);
  auto dst = c.groups.find({g.i + 1, g.j});
  const int rows = dst == c.groups.end() ? 0 : static_cast<int>(dst->second.size());
  const int cols = src == c.groups.end() ? 0 : static_cast<int>(src->second.size());
  Dense m(rows, std::vector<mpq_class>(cols, 0));
  if (rows == 0 || cols == 0) return m;
  for (int k = 0; k < cols; ++k)
    for (const auto& [t, sign] : boundary(d, src->second[k])) m[c.index.at({t.s, t.labels})][k] += sign;
  return m;
}

inline int rank(Dense m, bool mod2) {
  const int rows = static_cast<int>(m.size());
  const int cols = rows ? static_cast<int>(m[0].size()) : 0;
  auto reduce = [&](mpq_class& v) {
    if (!mod2) return;
    mpz_class n = v.get_num() % 2;
    v = n < 0 ? n + 2 : n;
  };
  for (auto& row : m)
    for (auto& v : row) reduce(v);
  int r = 0;
  for (int col = 0; col < cols && r < rows; ++col) {
    int piv = -1;
    for (int k = r; k < rows; ++k)
      if (m[k][col] != 0) {
        piv = k;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[piv], m[r]);
    for (int k = 0; k < rows; ++k) {
      if (k == r || m[k][col] == 0) continue;
      mpq_class f = m[k][col] / m[r][col];
      for (int c2 = col; c2 < cols; ++c2) {
        m[k][c2] -= f * m[r][c2];
        reduce(m[k][c2]);
      }
    }
    ++r;
  }
  return r;
}

// Betti numbers per bigrading (nonzero only), over F2 or Q.
inline std::map<Grading, int> homology(const khplumb::LinkDiagram& d, bool mod2) {
  Complex c = build(d);
  std::map<Grading, int> out;
  for (const auto& [g, gens] : c.groups) {
    const int out_rank = rank(matrix(d, c, g), mod2);
    const int in_rank = rank(matrix(d, c, {g.i - 1, g.j}), mod2);
    const int h = static_cast<int>(gens.size()) - out_rank - in_rank;
    if (h) out[g] = h;
  }
  return out;
}

// Graded Euler characteristic: exponent -> coefficient
inline std::map<int, long> euler(const khplumb::LinkDiagram& d) {
  std::map<int, long> out;
  for (const auto& [g, gens] : build(d).groups) {
    out[g.j] += (g.i % 2 ? -1 : 1) * static_cast<long>(gens.size());
    if (out[g.j] == 0) out.erase(g.j);
  }
  return out;
}

}  // namespace oracle
