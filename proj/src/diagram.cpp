#include "khplumb/diagram.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

namespace khplumb {

namespace {

std::atomic<std::uint64_t> g_next_uid{1};

}  // namespace

LinkDiagram::LinkDiagram(std::vector<Crossing> crossings, int free_loops, std::vector<bool> reversed)
    : crossings_(std::move(crossings)), free_loops_(free_loops), reversed_(std::move(reversed)) {
  if (free_loops_ < 0) throw DiagramError("negative free loop count");
  if (crossings_.size() > 62) throw DiagramError("too many crossings (limit 62)");
  build_edges();
  build_components();
  check_planar();
  if (reversed_.empty()) reversed_.assign(components_.size(), false);
  if (reversed_.size() != components_.size())
    throw DiagramError("orientation given for " + std::to_string(reversed_.size()) + " components, diagram has " +
                       std::to_string(components_.size()));
  for (int t = 0; t < crossing_count(); ++t) writhe_ += crossing_sign(t);
  uid_ = g_next_uid.fetch_add(1);
}

void LinkDiagram::build_edges() {
  std::map<int, std::vector<SlotRef>> occ;
  for (int c = 0; c < crossing_count(); ++c)
    for (int s = 0; s < 4; ++s) {
      int l = crossings_[c].slots[s];
      if (l < 1) throw DiagramError("edge label " + std::to_string(l) + " is not a positive integer");
      occ[l].push_back({c, s});
    }
  labels_.clear();
  ends_.clear();
  slot_edge_.assign(crossings_.size(), {-1, -1, -1, -1});
  for (auto& [label, refs] : occ) {
    if (refs.size() != 2)
      throw DiagramError("edge " + std::to_string(label) + " appears " + std::to_string(refs.size()) +
                         " times (expected 2)");
    int e = static_cast<int>(labels_.size());
    labels_.push_back(label);
    ends_.push_back({refs[0], refs[1]});
    for (const SlotRef& r : refs) slot_edge_[r.crossing][r.slot] = e;
  }
}

int LinkDiagram::edge_index(int label) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
  if (it == labels_.end() || *it != label) throw DiagramError("no edge labelled " + std::to_string(label));
  return static_cast<int>(it - labels_.begin());
}

bool LinkDiagram::has_edge(int label) const { return std::binary_search(labels_.begin(), labels_.end(), label); }

SlotRef LinkDiagram::other_end(int e, SlotRef at) const { return ends_[e][0] == at ? ends_[e][1] : ends_[e][0]; }

void LinkDiagram::build_components() {
  const int n = edge_count();
  edge_component_.assign(n, -1);
  default_head_.assign(n, -1);
  components_.clear();
  for (int start = 0; start < n; ++start) {
    if (edge_component_[start] >= 0) continue;
    const SlotRef p0 = ends_[start][0], p1 = ends_[start][1];
    int n0 = slot_edge_[p0.crossing][(p0.slot + 2) % 4];
    int n1 = slot_edge_[p1.crossing][(p1.slot + 2) % 4];
    int head;
    if (n0 != n1) {
      head = labels_[n0] < labels_[n1] ? 0 : 1;
    } else if (p0.slot == 0 || p1.slot == 0) {
      head = p0.slot == 0 ? 0 : 1;
    } else if (p0.slot == 2 || p1.slot == 2) {
      head = p0.slot == 2 ? 1 : 0;
    } else {
      head = 0;
    }
    const int k = static_cast<int>(components_.size());
    components_.emplace_back();
    int e = start;
    int h = head;
    while (true) {
      if (edge_component_[e] >= 0) {
        if (e == start && h == head) break;
        throw DiagramError("strand through edge " + std::to_string(labels_[e]) + " does not close up");
      }
      edge_component_[e] = k;
      default_head_[e] = h;
      components_.back().push_back(e);
      SlotRef at = ends_[e][h];
      SlotRef out{at.crossing, (at.slot + 2) % 4};
      int next = slot_edge_[out.crossing][out.slot];
      h = ends_[next][0] == out ? 1 : 0;
      e = next;
    }
  }
}

void LinkDiagram::check_planar() const {
  const int v = crossing_count();
  const int e = edge_count();
  if (v == 0) return;
  // faces of the rotation system: follow an edge, then turn to the next slot
  std::vector<std::array<bool, 4>> seen(v, {false, false, false, false});
  int faces = 0;
  for (int c = 0; c < v; ++c)
    for (int s = 0; s < 4; ++s) {
      if (seen[c][s]) continue;
      ++faces;
      SlotRef d{c, s};
      while (!seen[d.crossing][d.slot]) {
        seen[d.crossing][d.slot] = true;
        SlotRef o = other_end(slot_edge_[d.crossing][d.slot], d);
        d = {o.crossing, (o.slot + 1) % 4};
      }
    }
  std::vector<int> parent(v);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
  for (int i = 0; i < e; ++i) parent[find(ends_[i][0].crossing)] = find(ends_[i][1].crossing);
  int comps = 0;
  for (int c = 0; c < v; ++c)
    if (find(c) == c) ++comps;
  if (v - e + faces != 2 * comps) throw DiagramError("diagram is not planar");
}

SlotRef LinkDiagram::edge_head(int e) const {
  int h = default_head_[e];
  if (reversed_[edge_component_[e]]) h = 1 - h;
  return ends_[e][h];
}

SlotRef LinkDiagram::edge_tail(int e) const {
  int h = default_head_[e];
  if (reversed_[edge_component_[e]]) h = 1 - h;
  return ends_[e][1 - h];
}

int LinkDiagram::crossing_sign(int t) const {
  bool under_forward = edge_head(slot_edge_[t][0]) == SlotRef{t, 0};
  bool over_forward = edge_head(slot_edge_[t][1]) == SlotRef{t, 1};
  return under_forward == over_forward ? 1 : -1;
}


int writhe(const LinkDiagram& d) { return d.writhe(); }

LinkDiagram parse_pd(std::string_view text) {
  std::vector<Crossing> crossings;
  int loops = 0;
  bool loops_seen = false;
  std::vector<std::pair<int, bool>> orient;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw DiagramError("line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    // a single line may hold several records separated by '/'
    std::string::size_type pos = 0;
    while (pos <= line.size()) {
      auto slash = line.find('/', pos);
      std::string rec = line.substr(pos, slash == std::string::npos ? std::string::npos : slash - pos);
      pos = slash == std::string::npos ? line.size() + 1 : slash + 1;
      std::istringstream ls(rec);
      std::string tag;
      if (!(ls >> tag)) continue;
      if (tag == "X") {
        Crossing c;
        for (int s = 0; s < 4; ++s)
          if (!(ls >> c.slots[s])) fail("crossing needs four integer edge labels");
        std::string extra;
        if (ls >> extra) fail("unexpected token '" + extra + "'");
        crossings.push_back(c);
      } else if (tag == "loops") {
        if (loops_seen) fail("duplicate loops record");
        if (!(ls >> loops) || loops < 0) fail("loops needs a non-negative count");
        std::string extra;
        if (ls >> extra) fail("unexpected token '" + extra + "'");
        loops_seen = true;
      } else if (tag == "orient") {
        int comp;
        std::string dir;
        if (!(ls >> comp >> dir) || comp < 1 || (dir != "+" && dir != "-"))
          fail("orient needs a component index and + or -");
        orient.emplace_back(comp, dir == "-");
      } else {
        fail("unknown record '" + tag + "'");
      }
    }
  }
  LinkDiagram base(crossings, loops);
  if (orient.empty()) return base;
  std::vector<bool> rev(base.component_count(), false);
  for (auto [comp, r] : orient) {
    if (comp > base.component_count())
      throw DiagramError("orient refers to component " + std::to_string(comp) + " of " +
                         std::to_string(base.component_count()));
    rev[comp - 1] = r;
  }
  return LinkDiagram(crossings, loops, rev);
}

LinkDiagram load_pd(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_pd(ss.str());
}

std::string serialize_pd(const LinkDiagram& d) {
  std::ostringstream out;
  for (const Crossing& c : d.crossings())
    out << "X " << c.slots[0] << ' ' << c.slots[1] << ' ' << c.slots[2] << ' ' << c.slots[3] << '\n';
  if (d.free_loops() > 0) out << "loops " << d.free_loops() << '\n';
  for (int k = 0; k < d.component_count(); ++k)
    if (d.reversed()[k]) out << "orient " << k + 1 << " -\n";
  return out.str();
}

LinkDiagram orient_by_heads(std::vector<Crossing> crossings, int free_loops,
                            const std::function<std::optional<SlotRef>(int)>& desired_head, bool* consistent) {
  LinkDiagram base(crossings, free_loops);
  std::vector<bool> rev(base.component_count(), false);
  bool ok = true;
  for (int k = 0; k < base.component_count(); ++k) {
    std::optional<bool> want;
    bool clash = false;
    for (int e : base.component(k)) {
      auto h = desired_head(base.edge_label(e));
      if (!h) continue;
      bool r = !(base.edge_head(e) == *h);
      if (want && *want != r) clash = true;
      if (!want) want = r;
    }
    if (clash) ok = false;
    else if (want) rev[k] = *want;
  }
  if (consistent) *consistent = ok;
  return LinkDiagram(std::move(crossings), free_loops, rev);
}

LinkDiagram mirror(const LinkDiagram& d) {
  std::vector<Crossing> cs;
  for (const Crossing& c : d.crossings()) cs.push_back({{c.slots[1], c.slots[2], c.slots[3], c.slots[0]}});
  // keep every edge pointing the same way; slot s moves to (s+3)%4
  return orient_by_heads(cs, d.free_loops(), [&](int label) -> std::optional<SlotRef> {
    SlotRef h = d.edge_head(d.edge_index(label));
    return SlotRef{h.crossing, (h.slot + 3) % 4};
  });
}

LinkDiagram reverse_orientation(const LinkDiagram& d) {
  std::vector<bool> rev = d.reversed();
  for (std::size_t k = 0; k < rev.size(); ++k) rev[k] = !rev[k];
  return LinkDiagram(d.crossings(), d.free_loops(), rev);
}

LinkDiagram braid_closure(int strands, const std::vector<int>& word) {
  if (strands < 1) throw DiagramError("a braid needs at least one strand");
  int next = 1;
  std::vector<int> start(strands), cur(strands);
  for (int k = 0; k < strands; ++k) start[k] = cur[k] = next++;
  std::vector<Crossing> cs;
  std::map<int, SlotRef> head;
  for (int g : word) {
    const int k = std::abs(g) - 1;
    if (g == 0 || k + 1 >= strands) throw DiagramError("braid generator " + std::to_string(g) + " out of range");
    const int a = cur[k], b = cur[k + 1], c = next++, d = next++;
    const int t = static_cast<int>(cs.size());
    if (g < 0) {
      cs.push_back({{b, d, c, a}});
      head[a] = {t, 3};
      head[b] = {t, 0};
    } else {
      cs.push_back({{a, b, d, c}});
      head[a] = {t, 0};
      head[b] = {t, 1};
    }
    // strands swap positions: the one from a leaves at NE, the one from b at NW
    cur[k] = c;
    cur[k + 1] = d;
  }
  std::map<int, int> rename;
  int loops = 0;
  for (int k = 0; k < strands; ++k) {
    if (cur[k] == start[k]) {
      ++loops;
      continue;
    }
    rename[cur[k]] = start[k];
  }
  for (Crossing& c : cs)
    for (int& s : c.slots) {
      auto it = rename.find(s);
      if (it != rename.end()) s = it->second;
    }
  return orient_by_heads(cs, loops, [&](int label) -> std::optional<SlotRef> {
    auto it = head.find(label);
    if (it == head.end()) return std::nullopt;
    return it->second;
  });
}

}  // namespace khplumb
