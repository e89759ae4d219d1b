#include "khplumb/structure.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <unordered_set>

namespace khplumb {

StateGraph state_graph(const State& x) {
  StateGraph g;
  g.vertex_count = x.circle_count();
  const LinkDiagram& d = x.diagram();
  const Resolution& r = x.resolution();
  for (int t = 0; t < d.crossing_count(); ++t) {
    GraphEdge e;
    e.crossing = t;
    e.u = r.edge_circle[d.edge_at(t, 0)];
    e.v = r.edge_circle[d.edge_at(t, 2)];
    if (e.u > e.v) std::swap(e.u, e.v);
    e.kind = x.is_b(t) ? ArcKind::B : ArcKind::A;
    g.edges.push_back(e);
  }
  return g;
}

namespace {

std::vector<std::vector<int>> find_blocks(const StateGraph& g) {
  const int n = g.vertex_count;
  std::vector<std::vector<std::pair<int, int>>> adj(n);  // (edge index, neighbour)
  std::vector<std::vector<int>> blocks;
  for (int k = 0; k < static_cast<int>(g.edges.size()); ++k) {
    const GraphEdge& e = g.edges[k];
    if (e.is_loop()) {
      blocks.push_back({k});
      continue;
    }
    adj[e.u].push_back({k, e.v});
    adj[e.v].push_back({k, e.u});
  }
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<int> stack;
  int timer = 0;
  std::function<void(int, int)> dfs = [&](int u, int parent_edge) {
    disc[u] = low[u] = timer++;
    for (auto [k, v] : adj[u]) {
      if (k == parent_edge) continue;
      if (disc[v] < 0) {
        stack.push_back(k);
        dfs(v, k);
        low[u] = std::min(low[u], low[v]);
        if (low[v] >= disc[u]) {
          std::vector<int> block;
          while (true) {
            int top = stack.back();
            stack.pop_back();
            block.push_back(top);
            if (top == k) break;
          }
          blocks.push_back(block);
        }
      } else if (disc[v] < disc[u]) {
        stack.push_back(k);
        low[u] = std::min(low[u], disc[v]);
      }
    }
  };
  for (int v = 0; v < n; ++v)
    if (disc[v] < 0) dfs(v, -1);
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  std::sort(blocks.begin(), blocks.end());
  // translate edge indices into crossing indices (they coincide, kept explicit)
  for (auto& b : blocks)
    for (int& k : b) k = g.edges[k].crossing;
  return blocks;
}

std::vector<Zone> find_zones(const StateGraph& g, ArcKind kind) {
  const int n = g.vertex_count;
  std::vector<std::vector<std::pair<int, int>>> adj(n);
  std::vector<bool> touched(n, false);
  for (const GraphEdge& e : g.edges) {
    if (e.kind != kind) continue;
    adj[e.u].push_back({e.crossing, e.v});
    if (!e.is_loop()) adj[e.v].push_back({e.crossing, e.u});
    touched[e.u] = touched[e.v] = true;
  }
  std::vector<int> color(n, -1);
  std::vector<Zone> zones;
  for (int s = 0; s < n; ++s) {
    if (!touched[s] || color[s] >= 0) continue;
    Zone z;
    z.kind = kind;
    std::set<int> crossings;
    std::deque<int> queue{s};
    color[s] = 0;
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      z.circles.push_back(u);
      for (auto [t, v] : adj[u]) {
        crossings.insert(t);
        if (color[v] < 0) {
          color[v] = 1 - color[u];
          queue.push_back(v);
        } else if (color[v] == color[u]) {
          z.bipartite = false;
        }
      }
    }
    std::sort(z.circles.begin(), z.circles.end());
    for (int c : z.circles) z.color.push_back(color[c]);
    z.crossings.assign(crossings.begin(), crossings.end());
    zones.push_back(std::move(z));
  }
  return zones;
}

}  // namespace

bool ZoneDecomposition::a_zones_bipartite() const {
  return std::all_of(a_zones.begin(), a_zones.end(), [](const Zone& z) { return z.bipartite; });
}

int ZoneDecomposition::zone_of(ArcKind kind, int circle) const {
  const auto& zones = kind == ArcKind::A ? a_zones : b_zones;
  for (std::size_t k = 0; k < zones.size(); ++k)
    if (std::binary_search(zones[k].circles.begin(), zones[k].circles.end(), circle)) return static_cast<int>(k);
  return -1;
}

ZoneDecomposition zone_decomposition(const State& x) {
  ZoneDecomposition z;
  z.graph = state_graph(x);
  z.blocks = find_blocks(z.graph);
  for (const GraphEdge& e : z.graph.edges)
    if (e.is_loop()) z.adequate = false;
  std::vector<int> block_count(z.graph.vertex_count, 0);
  for (const auto& b : z.blocks) {
    std::set<int> verts;
    bool has_a = false, has_b = false;
    for (int t : b) {
      const GraphEdge& e = z.graph.edges[t];
      verts.insert(e.u);
      verts.insert(e.v);
      (e.kind == ArcKind::A ? has_a : has_b) = true;
    }
    if (has_a && has_b) z.homogeneous = false;
    for (int v : verts) ++block_count[v];
  }
  for (int v = 0; v < z.graph.vertex_count; ++v)
    if (block_count[v] >= 2) z.cut_circles.push_back(v);
  z.a_zones = find_zones(z.graph, ArcKind::A);
  z.b_zones = find_zones(z.graph, ArcKind::B);
  // connectivity of G_x
  std::vector<int> parent(z.graph.vertex_count);
  for (int v = 0; v < z.graph.vertex_count; ++v) parent[v] = v;
  std::function<int(int)> find = [&](int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
  for (const GraphEdge& e : z.graph.edges) parent[find(e.u)] = find(e.v);
  int comps = 0;
  for (int v = 0; v < z.graph.vertex_count; ++v)
    if (find(v) == v) ++comps;
  z.connected = comps <= 1;
  return z;
}

bool EquivalenceClass::contains(const EnhancedKey& k) const {
  return std::binary_search(members.begin(), members.end(), k, KeyLess());
}

namespace {

// All label words reachable inside one zone, as full words differing from
// `labels` only on the zone's circles.
std::vector<LabelWord> zone_orbit(const StateGraph& g, const Zone& zone, LabelWord labels, std::size_t cap) {
  std::vector<std::pair<int, int>> arcs;
  for (int t : zone.crossings) {
    const GraphEdge& e = g.edges[t];
    if (!e.is_loop()) arcs.push_back({e.u, e.v});
  }
  std::unordered_set<LabelWord> seen{labels};
  std::vector<LabelWord> order{labels};
  for (std::size_t head = 0; head < order.size(); ++head) {
    LabelWord cur = order[head];
    for (auto [u, v] : arcs) {
      if (((cur >> u) & 1U) == ((cur >> v) & 1U)) continue;
      LabelWord next = cur ^ (LabelWord{1} << u) ^ (LabelWord{1} << v);
      if (seen.insert(next).second) {
        order.push_back(next);
        if (order.size() > cap) throw CapExceeded("equivalence class exceeds the orbit cap");
      }
    }
  }
  return order;
}

}  // namespace

EquivalenceClass equivalence_class(const EnhancedState& X, ArcKind kind, std::size_t cap) {
  ZoneDecomposition z = zone_decomposition(X.state());
  const auto& zones = kind == ArcKind::A ? z.a_zones : z.b_zones;
  std::vector<LabelWord> words{X.labels()};
  for (const Zone& zone : zones) {
    LabelWord mask = 0;
    for (int c : zone.circles) mask |= LabelWord{1} << c;
    std::vector<LabelWord> orbit = zone_orbit(z.graph, zone, X.labels(), cap);
    if (orbit.size() == 1) continue;
    if (words.size() * orbit.size() > cap) throw CapExceeded("equivalence class exceeds the orbit cap");
    std::vector<LabelWord> next;
    next.reserve(words.size() * orbit.size());
    for (LabelWord w : words)
      for (LabelWord o : orbit) next.push_back((w & ~mask) | (o & mask));
    words = std::move(next);
  }
  EquivalenceClass cls;
  cls.kind = kind;
  cls.base = X.key();
  for (LabelWord w : words) cls.members.push_back({X.state().smoothing(), w});
  std::sort(cls.members.begin(), cls.members.end(), KeyLess());
  return cls;
}

namespace {

int sign_with(const ZoneDecomposition& z, LabelWord x, LabelWord y) {
  LabelWord covered = 0;
  int parity = 0;
  for (const Zone& zone : z.a_zones) {
    int zx = 0, zy = 0, cx = 0, cy = 0;
    for (std::size_t k = 0; k < zone.circles.size(); ++k) {
      const int c = zone.circles[k];
      covered |= LabelWord{1} << c;
      const bool x0 = ((x >> c) & 1U) == 0, y0 = ((y >> c) & 1U) == 0;
      zx += x0;
      zy += y0;
      if (zone.color[k] == 1) {
        cx += x0;
        cy += y0;
      }
    }
    if (zx != zy) throw SignUndefined("enhanced states are not A-equivalent");
    if (zx == 0) continue;
    if (!zone.bipartite) throw SignUndefined("a non-bipartite A-zone carries a 0-label");
    parity += cx + cy;
  }
  if ((x & ~covered) != (y & ~covered)) throw SignUndefined("enhanced states differ outside the A-zones");
  return parity % 2 == 0 ? 1 : -1;
}

}  // namespace

int a_sign(const EnhancedState& X, const EnhancedState& Y) {
  if (!(X.state() == Y.state())) throw SignUndefined("enhanced states of different states");
  ZoneDecomposition z = zone_decomposition(X.state());
  return sign_with(z, X.labels(), Y.labels());
}

Chain a_trace(const EnhancedState& X, Ring r) {
  EquivalenceClass cls = equivalence_class(X, ArcKind::A);
  Chain out(X.state().diagram_ptr(), r);
  if (r == Ring::F2) {
    for (const auto& k : cls.members) out.add(k, 1);
    return out;
  }
  ZoneDecomposition z = zone_decomposition(X.state());
  for (const auto& k : cls.members) out.add(k, sign_with(z, X.labels(), k.l));
  return out;
}

bool trace_cycle_check(const EnhancedState& X, Ring r) { return differential(a_trace(X, r)).is_zero(); }

}  // namespace khplumb
