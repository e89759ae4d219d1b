#include "khplumb/homology.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace khplumb {

namespace {

void check_cap(const LinkDiagram& d, int cap) {
  if (d.crossing_count() > cap)
    throw CapExceeded(std::to_string(d.crossing_count()) + " crossings exceed the cap of " + std::to_string(cap));
}

IntMatrix assemble(const LinkDiagram& d, const std::vector<EnhancedKey>& cols, const std::vector<EnhancedKey>& rows) {
  std::unordered_map<EnhancedKey, int, KeyHash> index;
  for (std::size_t k = 0; k < rows.size(); ++k) index.emplace(rows[k], static_cast<int>(k));
  IntMatrix m;
  m.rows = static_cast<int>(rows.size());
  m.cols = static_cast<int>(cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for_each_boundary_term(d, cols[c], [&](int, const EnhancedKey& y, int sign) {
      auto it = index.find(y);
      if (it == index.end()) throw std::logic_error("differential left its bigrading");
      m.entries.push_back({it->second, static_cast<int>(c), sign});
    });
  return m;
}

}  // namespace

std::map<BiGrading, std::vector<EnhancedKey>> chain_bases(const LinkDiagram& d, int cap) {
  check_cap(d, cap);
  const int n = d.crossing_count();
  std::map<BiGrading, std::vector<EnhancedKey>> out;
  for (Smoothing s = 0; s < (Smoothing{1} << n); ++s) {
    const int c = resolve_smoothing(d, s)->size();
    if (c > cap) throw CapExceeded("state with " + std::to_string(c) + " circles exceeds the cap");
    for (LabelWord l = 0; l < (LabelWord{1} << c); ++l) {
      EnhancedKey k{s, l};
      out[bigrading(d, k)].push_back(k);
    }
  }
  for (auto& [g, v] : out) std::sort(v.begin(), v.end(), KeyLess());
  return out;
}

std::vector<EnhancedKey> chain_basis(const LinkDiagram& d, BiGrading g, int cap) {
  check_cap(d, cap);
  const int n = d.crossing_count();
  const int w = d.writhe();
  // i = (w - n + 2b) / 2
  const int twice_b = 2 * g.i - w + n;
  std::vector<EnhancedKey> out;
  if (twice_b < 0 || twice_b % 2 != 0 || twice_b / 2 > n) return out;
  const int b = twice_b / 2;
  for (Smoothing s = 0; s < (Smoothing{1} << n); ++s) {
    if (__builtin_popcountll(s) != b) continue;
    const int c = resolve_smoothing(d, s)->size();
    // j = w + i - (2k - c)
    const int twice_k = w + g.i + c - g.j;
    if (twice_k < 0 || twice_k % 2 != 0 || twice_k / 2 > c) continue;
    const int k = twice_k / 2;
    for (LabelWord l = 0; l < (LabelWord{1} << c); ++l)
      if (__builtin_popcountll(l) == k) out.push_back({s, l});
  }
  std::sort(out.begin(), out.end(), KeyLess());
  return out;
}

BoundaryMatrix boundary_matrix(const LinkDiagram& d, BiGrading g, Ring r, int cap) {
  BoundaryMatrix bm;
  bm.grading = g;
  bm.ring = r;
  bm.cols = chain_basis(d, g, cap);
  bm.rows = chain_basis(d, {g.i + 1, g.j}, cap);
  bm.matrix = assemble(d, bm.cols, bm.rows);
  return bm;
}

HomologyTable homology(const LinkDiagram& d, Ring r, int cap) {
  auto bases = chain_bases(d, cap);
  struct Out {
    std::size_t rank = 0;
    std::vector<mpz_class> factors;
  };
  std::map<BiGrading, Out> outgoing;
  for (const auto& [g, cols] : bases) {
    auto it = bases.find({g.i + 1, g.j});
    if (it == bases.end()) continue;
    IntMatrix m = assemble(d, cols, it->second);
    Out o;
    if (r == Ring::Z) {
      o.factors = invariant_factors(m);
      o.rank = o.factors.size();
    } else {
      o.rank = matrix_rank(m, r);
    }
    outgoing[g] = std::move(o);
  }
  HomologyTable table;
  for (const auto& [g, cols] : bases) {
    HomologyGroup h;
    long rank = static_cast<long>(cols.size());
    if (auto it = outgoing.find(g); it != outgoing.end()) rank -= static_cast<long>(it->second.rank);
    if (auto it = outgoing.find({g.i - 1, g.j}); it != outgoing.end()) {
      rank -= static_cast<long>(it->second.rank);
      for (const auto& f : it->second.factors)
        if (f > 1) h.torsion.push_back(f);
    }
    h.rank = static_cast<int>(rank);
    if (h.rank > 0 || !h.torsion.empty()) table[g] = h;
  }
  return table;
}

bool is_cycle(const Chain& c) { return differential(c).is_zero(); }

BoundaryCheck is_boundary(const Chain& c) {
  BoundaryCheck out;
  if (c.is_zero()) {
    out.exact = true;
    out.witness = Chain(c.diagram_ptr(), c.ring());
    return out;
  }
  auto g = c.grading();
  if (!g) throw std::invalid_argument("is_boundary needs a chain homogeneous in (i,j)");
  const LinkDiagram& d = c.diagram();
  std::vector<EnhancedKey> cols = chain_basis(d, {g->i - 1, g->j}, 62);
  std::vector<EnhancedKey> rows = chain_basis(d, *g, 62);
  IntMatrix m = assemble(d, cols, rows);
  std::unordered_map<EnhancedKey, int, KeyHash> index;
  for (std::size_t k = 0; k < rows.size(); ++k) index.emplace(rows[k], static_cast<int>(k));
  std::vector<Scalar> b(rows.size(), 0);
  for (const auto& [k, v] : c.terms()) b[index.at(k)] = v;
  auto x = solve(m, b, c.ring());
  if (!x) return out;
  out.exact = true;
  Chain w(c.diagram_ptr(), c.ring());
  for (std::size_t k = 0; k < cols.size(); ++k)
    if ((*x)[k] != 0) w.add(cols[k], (*x)[k]);
  out.witness = std::move(w);
  return out;
}

Laurent jones_polynomial(const LinkDiagram& d, int cap) {
  Laurent p;
  for (const auto& [g, basis] : chain_bases(d, cap))
    p.add(g.j, mpz_class(static_cast<long>(basis.size())) * (g.i % 2 == 0 ? 1 : -1));
  return p;
}

Laurent state_sum_jones(const LinkDiagram& d, int cap) {
  check_cap(d, cap);
  const int n = d.crossing_count();
  const int w = d.writhe();
  Laurent loop = Laurent::monomial(1) + Laurent::monomial(-1);
  Laurent p;
  for (Smoothing s = 0; s < (Smoothing{1} << n); ++s) {
    const int b = __builtin_popcountll(s);
    const int sigma = n - 2 * b;
    const int i = (w - sigma) / 2;
    Laurent term = Laurent::monomial((3 * w - sigma) / 2, i % 2 == 0 ? 1 : -1);
    const int c = resolve_smoothing(d, s)->size();
    for (int k = 0; k < c; ++k) term = term * loop;
    p = p + term;
  }
  return p;
}

Laurent euler_characteristic(const HomologyTable& h) {
  Laurent p;
  for (const auto& [g, grp] : h) p.add(g.j, mpz_class(grp.rank) * (g.i % 2 == 0 ? 1 : -1));
  return p;
}

Laurent normalized_euler_characteristic(const LinkDiagram& d, int basepoint, int side, int cap) {
  check_cap(d, cap);
  const int n = d.crossing_count();
  Laurent p;
  for (Smoothing s = 0; s < (Smoothing{1} << n); ++s) {
    auto r = resolve_smoothing(d, s);
    int idx = basepoint < 0 ? r->index_of(basepoint) : r->edge_circle[d.edge_index(basepoint)];
    if (idx < 0) throw std::invalid_argument("basepoint not on the diagram");
    for (LabelWord l = 0; l < (LabelWord{1} << r->size()); ++l) {
      if (static_cast<int>((l >> idx) & 1U) != side) continue;
      BiGrading g = bigrading(d, {s, l});
      p.add(g.j + (side ? 1 : -1), g.i % 2 == 0 ? 1 : -1);
    }
  }
  return p;
}

}  // namespace khplumb
