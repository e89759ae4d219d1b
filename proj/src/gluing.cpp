#include "khplumb/gluing.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace khplumb {

bool GluingMap::x_first() const {
  for (std::size_t a = 0; a < x_crossings.size(); ++a)
    if (x_crossings[a] != static_cast<int>(a)) return false;
  for (std::size_t a = 0; a < y_crossings.size(); ++a)
    if (y_crossings[a] != static_cast<int>(x_crossings.size() + a)) return false;
  return true;
}

Smoothing GluingMap::combine(Smoothing xs, Smoothing ys) const {
  Smoothing z = 0;
  for (std::size_t a = 0; a < x_crossings.size(); ++a)
    if ((xs >> a) & 1U) z |= Smoothing{1} << x_crossings[a];
  for (std::size_t a = 0; a < y_crossings.size(); ++a)
    if ((ys >> a) & 1U) z |= Smoothing{1} << y_crossings[a];
  return z;
}

std::vector<CircleOrigin> circle_origins(const GluingMap& g, Smoothing xs, Smoothing ys) {
  const LinkDiagram& dz = *g.dz;
  const LinkDiagram& dx = *g.dx;
  const LinkDiagram& dy = *g.dy;
  std::vector<std::pair<Side, int>> owner(dz.crossing_count(), {Side::Shared, -1});
  for (std::size_t a = 0; a < g.x_crossings.size(); ++a) owner[g.x_crossings[a]] = {Side::X, static_cast<int>(a)};
  for (std::size_t a = 0; a < g.y_crossings.size(); ++a) owner[g.y_crossings[a]] = {Side::Y, static_cast<int>(a)};
  auto rz = resolve_smoothing(dz, g.combine(xs, ys));
  auto rx = resolve_smoothing(dx, xs);
  auto ry = resolve_smoothing(dy, ys);
  std::vector<CircleOrigin> out(rz->size());
  auto set_once = [](std::optional<int>& slot, int id) {
    if (slot && *slot != id) throw GluingError("glued circle meets two circles of one factor");
    slot = id;
  };
  for (int k = 0; k < rz->free_loops; ++k) {
    const int f = -rz->ids[k] - 1;
    const LoopOrigin& o = g.z_loops.at(f);
    if (o.side != Side::Y) out[k].x = o.x_loop;
    if (o.side != Side::X) out[k].y = o.y_loop;
  }
  for (int e = 0; e < dz.edge_count(); ++e) {
    CircleOrigin& o = out[rz->edge_circle[e]];
    for (const SlotRef& end : dz.edge_ends(e)) {
      auto [side, a] = owner[end.crossing];
      if (side == Side::X) set_once(o.x, rx->ids[rx->edge_circle[dx.edge_at(a, end.slot)]]);
      else if (side == Side::Y) set_once(o.y, ry->ids[ry->edge_circle[dy.edge_at(a, end.slot)]]);
    }
  }
  // a shared circle that is a free loop on one side only shows up through the other
  const bool r0_loop = g.r0 < 0, s0_loop = g.s0 < 0;
  for (CircleOrigin& o : out) {
    if (!o.x && r0_loop && o.y && *o.y == g.s0) o.x = g.r0;
    if (!o.y && s0_loop && o.x && *o.x == g.r0) o.y = g.s0;
  }
  return out;
}

std::vector<int> GluingMap::display_order() const {
  State z = z_state();
  State xs = x_state(), ys = y_state();
  auto origins = circle_origins(*this, x, y);
  std::vector<int> order;
  auto z_of = [&](bool from_x, int id) {
    for (std::size_t k = 0; k < origins.size(); ++k) {
      const auto& o = from_x ? origins[k].x : origins[k].y;
      if (o && *o == id) return z.circle_ids()[k];
    }
    throw GluingError("factor circle missing from the glued state");
  };
  for (int id : xs.circle_ids())
    if (id != r0) order.push_back(z_of(true, id));
  order.push_back(t0);
  for (int id : ys.circle_ids())
    if (id != s0) order.push_back(z_of(false, id));
  return order;
}

namespace {

struct Join {
  int c;
  int in;
  int out;
};

int partner_slot(bool is_b, int s) { return is_b ? (s ^ 1) : (3 - s); }

std::vector<Join> circle_joins(const LinkDiagram& d, Smoothing s, int id) {
  if (id < 0) return {};
  const int e0 = d.edge_index(id);
  const SlotRef start = d.edge_ends(e0)[0];
  SlotRef at = d.edge_ends(e0)[1];
  std::vector<Join> joins;
  while (true) {
    const int out = partner_slot((s >> at.crossing) & 1U, at.slot);
    joins.push_back({at.crossing, at.slot, out});
    const SlotRef leave{at.crossing, out};
    const int e = d.edge_at(leave.crossing, leave.slot);
    if (e == e0 && leave == start) break;
    at = d.other_end(e, leave);
    if (joins.size() > 4 * static_cast<std::size_t>(d.crossing_count()) + 4)
      throw std::logic_error("circle traversal did not close");
  }
  return joins;
}

int max_label(const LinkDiagram& d) { return d.edge_count() ? d.edge_label(d.edge_count() - 1) : 0; }

std::optional<PlumbResult> attempt(const DiagramPtr& dx, Smoothing x, int r0, const DiagramPtr& dy, Smoothing y, int s0,
                                   const std::vector<Join>& jx, std::vector<Join> jy, const std::string& word,
                                   bool reversed) {
  const int nx = dx->crossing_count();
  const int ny = dy->crossing_count();
  const int ly = max_label(*dx);
  int next_label = ly + max_label(*dy) + 1;

  std::vector<Crossing> cs = dx->crossings();
  for (const Crossing& c : dy->crossings()) {
    Crossing shifted = c;
    for (int& l : shifted.slots) l += ly;
    cs.push_back(shifted);
  }
  // desired head per (pre-relabel) label, in D_z coordinates
  std::map<int, SlotRef> heads;
  for (int e = 0; e < dx->edge_count(); ++e) heads[dx->edge_label(e)] = dx->edge_head(e);
  for (int e = 0; e < dy->edge_count(); ++e) {
    SlotRef h = dy->edge_head(e);
    heads[dy->edge_label(e) + ly] = {h.crossing + nx, h.slot};
  }
  for (Join& j : jy) j.c += nx;
  if (reversed) {
    std::reverse(jy.begin(), jy.end());
    for (Join& j : jy) std::swap(j.in, j.out);
  }
  bool orientation_ok = true;
  const std::size_t m = jx.size(), n = jy.size();
  if (m > 0 && n > 0) {
    std::vector<Join> merged;
    std::size_t ix = 0, iy = 0;
    for (char ch : word) merged.push_back(ch == 'x' ? jx[ix++] : jy[iy++]);
    auto factor_edge = [&](int c, int slot, bool want_tail) {
      // is the old edge at this slot leaving (tail) / entering (head) there?
      if (c < nx) {
        int e = dx->edge_at(c, slot);
        return want_tail ? dx->edge_tail(e) == SlotRef{c, slot} : dx->edge_head(e) == SlotRef{c, slot};
      }
      int e = dy->edge_at(c - nx, slot);
      return want_tail ? dy->edge_tail(e) == SlotRef{c - nx, slot} : dy->edge_head(e) == SlotRef{c - nx, slot};
    };
    for (std::size_t k = 0; k < merged.size(); ++k) {
      const Join& a = merged[k];
      const Join& b = merged[(k + 1) % merged.size()];
      const int label = next_label++;
      cs[a.c].slots[a.out] = label;
      cs[b.c].slots[b.in] = label;
      const bool fwd1 = factor_edge(a.c, a.out, true);
      const bool fwd2 = factor_edge(b.c, b.in, false);
      if (fwd1 != fwd2) orientation_ok = false;
      heads[label] = fwd1 ? SlotRef{b.c, b.in} : SlotRef{a.c, a.out};
    }
  }
  // canonical relabelling by first appearance
  std::map<int, int> relabel;
  for (Crossing& c : cs)
    for (int& l : c.slots) {
      auto it = relabel.find(l);
      if (it == relabel.end()) it = relabel.emplace(l, static_cast<int>(relabel.size()) + 1).first;
      l = it->second;
    }
  std::map<int, SlotRef> new_heads;
  for (const auto& [old, h] : heads)
    if (auto it = relabel.find(old); it != relabel.end()) new_heads[it->second] = h;

  // free loops
  std::vector<LoopOrigin> loops;
  for (int f = 0; f < dx->free_loops(); ++f) {
    int id = -(f + 1);
    if (id == r0) {
      if (s0 < 0) loops.push_back({Side::Shared, r0, s0});
      continue;  // a free r0 glued to a circle with crossings disappears
    }
    loops.push_back({Side::X, id, 0});
  }
  for (int f = 0; f < dy->free_loops(); ++f) {
    int id = -(f + 1);
    if (id == s0) continue;
    loops.push_back({Side::Y, 0, id});
  }

  DiagramPtr dz;
  bool consistent = true;
  try {
    auto desired = [&](int label) -> std::optional<SlotRef> {
      if (!orientation_ok) return std::nullopt;
      auto it = new_heads.find(label);
      if (it == new_heads.end()) return std::nullopt;
      return it->second;
    };
    dz = std::make_shared<const LinkDiagram>(
        orient_by_heads(cs, static_cast<int>(loops.size()), desired, &consistent));
  } catch (const DiagramError&) {
    return std::nullopt;
  }

  GluingMap g;
  g.dx = dx;
  g.dy = dy;
  g.dz = dz;
  g.x = x;
  g.y = y;
  g.r0 = r0;
  g.s0 = s0;
  g.x_crossings.resize(nx);
  std::iota(g.x_crossings.begin(), g.x_crossings.end(), 0);
  g.y_crossings.resize(ny);
  std::iota(g.y_crossings.begin(), g.y_crossings.end(), nx);
  g.z_loops = loops;
  g.interleave = word;
  g.y_reversed = reversed;
  g.orientation_respected = orientation_ok && consistent;

  State z(dz, g.combine(x, y));
  State xs(dx, x), ys(dy, y);
  if (z.circle_count() != xs.circle_count() + ys.circle_count() - 1) return std::nullopt;
  std::vector<CircleOrigin> origins;
  try {
    origins = circle_origins(g, x, y);
  } catch (const GluingError&) {
    return std::nullopt;
  }
  int shared = -1;
  for (std::size_t k = 0; k < origins.size(); ++k) {
    if (origins[k].x && origins[k].y) {
      if (shared >= 0 || *origins[k].x != r0 || *origins[k].y != s0) return std::nullopt;
      shared = static_cast<int>(k);
    }
  }
  if (shared < 0) return std::nullopt;
  g.t0 = z.circle_ids()[shared];
  return PlumbResult{dz, z, g};
}

}  // namespace

PlumbResult plumb_diagrams(const DiagramPtr& dx, Smoothing x, int r0, const DiagramPtr& dy, Smoothing y, int s0,
                           const std::string& interleave) {
  State xs(dx, x), ys(dy, y);
  if (xs.resolution().index_of(r0) < 0)
    throw GluingError("circle " + std::to_string(r0) + " is not a circle of state " + xs.word());
  if (ys.resolution().index_of(s0) < 0)
    throw GluingError("circle " + std::to_string(s0) + " is not a circle of state " + ys.word());
  std::vector<Join> jx = circle_joins(*dx, x, r0);
  std::vector<Join> jy = circle_joins(*dy, y, s0);
  std::string word = interleave;
  if (word.empty()) word = std::string(jx.size(), 'x') + std::string(jy.size(), 'y');
  if (static_cast<std::size_t>(std::count(word.begin(), word.end(), 'x')) != jx.size() ||
      static_cast<std::size_t>(std::count(word.begin(), word.end(), 'y')) != jy.size() ||
      word.size() != jx.size() + jy.size())
    throw GluingError("interleave word '" + word + "' is not a shuffle of " + std::to_string(jx.size()) +
                      " x-attachments and " + std::to_string(jy.size()) + " y-attachments");
  for (bool reversed : {false, true}) {
    if (reversed && (jx.empty() || jy.empty())) break;
    if (auto r = attempt(dx, x, r0, dy, y, s0, jx, jy, word, reversed)) return *r;
  }
  throw GluingError("interleave word '" + word + "' does not give a planar plumbing");
}

GluingMap deplumb(const State& z, int circle_id, const std::vector<int>& x_crossings) {
  const LinkDiagram& dz = z.diagram();
  const int n = dz.crossing_count();
  if (z.resolution().index_of(circle_id) < 0) throw GluingError("no circle " + std::to_string(circle_id));
  if (dz.free_loops() > 0) throw GluingError("cannot de-plumb a diagram with free loops");
  std::vector<bool> in_x(n, false);
  for (int t : x_crossings) {
    if (t < 0 || t >= n) throw GluingError("crossing index out of range");
    in_x[t] = true;
  }
  GluingMap g;
  g.dz = z.diagram_ptr();
  for (int t = 0; t < n; ++t) (in_x[t] ? g.x_crossings : g.y_crossings).push_back(t);
  if (g.x_crossings.empty() || g.y_crossings.empty()) throw GluingError("both factors need crossings");

  auto factor = [&](const std::vector<int>& kept, DiagramPtr& out, Smoothing& s, int& shared) {
    std::vector<bool> keep(n, false);
    for (int t : kept) keep[t] = true;
    const int ne = dz.edge_count();
    std::vector<int> parent(ne);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
    for (int t = 0; t < n; ++t) {
      if (keep[t]) continue;
      int e0 = dz.edge_at(t, 0), e1 = dz.edge_at(t, 1), e2 = dz.edge_at(t, 2), e3 = dz.edge_at(t, 3);
      if (z.is_b(t)) {
        parent[find(e0)] = find(e1);
        parent[find(e2)] = find(e3);
      } else {
        parent[find(e0)] = find(e3);
        parent[find(e1)] = find(e2);
      }
    }
    std::vector<int> least(ne, 0);
    for (int e = ne - 1; e >= 0; --e) least[find(e)] = dz.edge_label(e);
    std::vector<Crossing> cs;
    s = 0;
    for (std::size_t a = 0; a < kept.size(); ++a) {
      Crossing c;
      for (int sl = 0; sl < 4; ++sl) c.slots[sl] = least[find(dz.edge_at(kept[a], sl))];
      cs.push_back(c);
      if (z.is_b(kept[a])) s |= Smoothing{1} << a;
    }
    out = std::make_shared<const LinkDiagram>(LinkDiagram(cs));
    // the shared circle through one of its kept slots
    shared = 0;
    const Resolution& rz = z.resolution();
    const int zc = rz.index_of(circle_id);
    State fs(out, s);
    for (std::size_t a = 0; a < kept.size(); ++a)
      for (int sl = 0; sl < 4; ++sl)
        if (rz.edge_circle[dz.edge_at(kept[a], sl)] == zc) {
          shared = fs.circle_of(cs[a].slots[sl]);
          return true;
        }
    return false;
  };
  if (!factor(g.x_crossings, g.dx, g.x, g.r0) || !factor(g.y_crossings, g.dy, g.y, g.s0))
    throw GluingError("circle " + std::to_string(circle_id) + " does not meet both factors");
  g.t0 = circle_id;
  // check the split really is a plumbing
  State xs = g.x_state(), ys = g.y_state();
  if (z.circle_count() != xs.circle_count() + ys.circle_count() - 1)
    throw GluingError("crossing split along circle " + std::to_string(circle_id) + " is not a plumbing");
  auto origins = circle_origins(g, g.x, g.y);
  for (std::size_t k = 0; k < origins.size(); ++k) {
    bool both = origins[k].x && origins[k].y;
    if (both != (z.circle_ids()[k] == circle_id))
      throw GluingError("crossing split along circle " + std::to_string(circle_id) + " is not a plumbing");
  }
  return g;
}

}  // namespace khplumb
