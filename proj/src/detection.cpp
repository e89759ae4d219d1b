#include "khplumb/detection.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <unordered_set>

#include "khplumb/gluing.hpp"
#include "khplumb/homology.hpp"
#include "khplumb/plumbing.hpp"

namespace khplumb {

namespace {

// Component id per circle index of G_x.
std::vector<int> components(const ZoneDecomposition& zd) {
  const int n = zd.graph.vertex_count;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
  for (const GraphEdge& e : zd.graph.edges) parent[find(e.u)] = find(e.v);
  std::vector<int> out(n);
  for (int v = 0; v < n; ++v) out[v] = find(v);
  return out;
}

// Label a component root away from p: A-zone circles and isolated circles get 1.
int root_label(const ZoneDecomposition& zd, int c) {
  if (zd.zone_of(ArcKind::A, c) >= 0) return 1;
  if (zd.zone_of(ArcKind::B, c) >= 0) return 0;
  return 1;
}

int index_of_basepoint(const State& x, int p) {
  int idx = x.resolution().index_of(p);
  if (idx < 0) throw DetectionError("basepoint c" + std::to_string(p) + " is not a circle of the state");
  return idx;
}

}  // namespace

XPair construct_xpm(const State& x, int p) {
  ZoneDecomposition zd = zone_decomposition(x);
  if (!zd.homogeneously_adequate()) throw DetectionError("state is not homogeneously adequate");
  const int pi = index_of_basepoint(x, p);
  const int n = zd.graph.vertex_count;
  std::vector<int> label(n, -1);
  std::vector<bool> a_done(zd.a_zones.size(), false), b_done(zd.b_zones.size(), false);

  auto spread = [&](int root) {
    std::deque<int> queue{root};
    while (!queue.empty()) {
      int c = queue.front();
      queue.pop_front();
      for (ArcKind kind : {ArcKind::A, ArcKind::B}) {
        int z = zd.zone_of(kind, c);
        if (z < 0) continue;
        auto& done = kind == ArcKind::A ? a_done : b_done;
        if (done[z]) continue;
        done[z] = true;
        const Zone& zone = kind == ArcKind::A ? zd.a_zones[z] : zd.b_zones[z];
        for (int v : zone.circles) {
          if (label[v] >= 0) continue;
          label[v] = kind == ArcKind::A ? 1 : 0;
          queue.push_back(v);
        }
      }
    }
  };

  label[pi] = 1;
  spread(pi);
  for (int c = 0; c < n; ++c) {
    if (label[c] >= 0) continue;
    label[c] = root_label(zd, c);
    spread(c);
  }
  LabelWord minus = 0;
  for (int c = 0; c < n; ++c)
    if (label[c]) minus |= LabelWord{1} << c;
  LabelWord plus = minus & ~(LabelWord{1} << pi);
  return {EnhancedState(x, minus), EnhancedState(x, plus)};
}

int j_target(const State& x, std::optional<int> p) {
  ZoneDecomposition zd = zone_decomposition(x);
  if (!zd.homogeneous) throw DetectionError("state is not homogeneous");
  int circles_a = 0, circles_b = 0;
  for (const Zone& z : zd.a_zones) circles_a += static_cast<int>(z.circles.size());
  for (const Zone& z : zd.b_zones) circles_b += static_cast<int>(z.circles.size());
  int j = x.diagram().writhe() + gradings_of_state(x).i + circles_b - circles_a +
          static_cast<int>(zd.a_zones.size()) - static_cast<int>(zd.b_zones.size());
  const int n = zd.graph.vertex_count;
  if (n == 0) return j;
  std::vector<int> comp = components(zd);
  const int home = comp[p ? index_of_basepoint(x, *p) : 0];
  std::vector<bool> seen(n, false);
  for (int c = 0; c < n; ++c) {
    if (comp[c] == home || seen[comp[c]]) continue;
    seen[comp[c]] = true;
    j += root_label(zd, c) ? -1 : 1;
  }
  return j;
}

namespace {

std::set<EnhancedKey, KeyLess> b_class_set(const EnhancedState& X) {
  EquivalenceClass cls = equivalence_class(X, ArcKind::B);
  return {cls.members.begin(), cls.members.end()};
}

}  // namespace

bool check_2r_image(const EnhancedState& X, Ring r) {
  if (r == Ring::Q) return true;
  const auto cls = b_class_set(X);
  const LinkDiagram& d = X.diagram();
  const BiGrading g = bigrading(X);
  const Smoothing s = X.state().smoothing();
  for (int t = 0; t < d.crossing_count(); ++t) {
    if (!X.state().is_b(t)) continue;
    State w(X.state().diagram_ptr(), s & ~(Smoothing{1} << t));
    for (const EnhancedState& W : enumerate_enhancements(w, 62)) {
      if (bigrading(W).j != g.j) continue;
      long sum = 0;
      for_each_boundary_term(d, W.key(), [&](int u, const EnhancedKey& k, int sign) {
        if (u == t && cls.count(k)) sum += sign;
      });
      if (!in_two_r(r, Scalar(sum))) return false;
    }
  }
  return true;
}

bool check_2r_image_exhaustive(const EnhancedState& X, Ring r, int cap) {
  const auto cls = b_class_set(X);
  const BiGrading g = bigrading(X);
  for (const EnhancedKey& k : chain_basis(X.diagram(), {g.i - 1, g.j}, cap)) {
    Chain dw = differential(Chain::of(EnhancedState(State(X.state().diagram_ptr(), k.s), k.l), r));
    if (!in_two_r(r, augmentation(project(dw, cls)))) return false;
  }
  return true;
}

bool prop1_singleton(const EnhancedState& X) {
  EquivalenceClass a = equivalence_class(X, ArcKind::A);
  EquivalenceClass b = equivalence_class(X, ArcKind::B);
  std::vector<EnhancedKey> both;
  std::set_intersection(a.members.begin(), a.members.end(), b.members.begin(), b.members.end(),
                        std::back_inserter(both), KeyLess());
  return both.size() == 1;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Certified: return "certified";
    case Verdict::HypothesisFailed: return "hypothesis-failed";
    case Verdict::CheckFailed: return "check-failed";
  }
  return "?";
}

namespace {

// Gates shared by both pipelines. Returns the ring the traces are taken in,
// or nullopt when nothing can be certified.
std::optional<Ring> open_certificate(DetectionCertificate& c, const State& x, int p, Ring r) {
  c.basepoint = p;
  c.ring = r;
  c.i_x = gradings_of_state(x).i;
  ZoneDecomposition zd = zone_decomposition(x);
  c.homogeneously_adequate = zd.homogeneously_adequate();
  c.a_zones_bipartite = zd.a_zones_bipartite();
  c.connected = zd.connected;
  c.verdict = Verdict::HypothesisFailed;
  if (r == Ring::Q) {
    c.diagnostics.push_back("certification needs F2 or Z coefficients; over Q every 2R test is vacuous");
    return std::nullopt;
  }
  if (!zd.adequate) c.diagnostics.push_back("state is not adequate: a crossing arc joins a circle to itself");
  if (!zd.homogeneous) c.diagnostics.push_back("state is not homogeneous: a block mixes A- and B-arcs");
  if (!c.homogeneously_adequate) return std::nullopt;
  if (x.resolution().index_of(p) < 0) {
    c.diagnostics.push_back("basepoint c" + std::to_string(p) + " is not a circle of the state");
    return std::nullopt;
  }
  c.j_x = j_target(x, p);
  if (!c.connected)
    c.diagnostics.push_back("G_x is disconnected; components away from the basepoint are rooted at their smallest circle");
  if (r == Ring::Z && !c.a_zones_bipartite) {
    c.diagnostics.push_back("Z gate failed: an A-zone is not bipartite; F2 evidence only");
    return Ring::F2;
  }
  c.verdict = Verdict::Certified;
  return r;
}

SideReport check_side(const EnhancedState& X, const Chain& trace, bool want_z, int expected_j,
                      DetectionCertificate& c, const char* name) {
  SideReport s{X, bigrading(X), trace};
  s.prop1 = prop1_singleton(X);
  s.cycle = is_cycle(trace);
  s.two_r = check_2r_image(X, trace.ring());
  s.nonboundary_f2 = !is_boundary(trace.ring() == Ring::F2 ? trace : a_trace(X, Ring::F2)).exact;
  if (want_z) s.nonboundary_z = !is_boundary(trace).exact;
  auto fail = [&](const std::string& why) {
    c.diagnostics.push_back(std::string(name) + ": " + why);
    c.verdict = Verdict::CheckFailed;
  };
  if (s.grading.i != c.i_x || s.grading.j != expected_j)
    fail("grading (" + std::to_string(s.grading.i) + "," + std::to_string(s.grading.j) + ") differs from the target");
  if (!s.prop1) fail("[X]_A and [X]_B do not meet in a single state");
  if (!s.cycle) fail("trace is not a cycle");
  if (!s.two_r) fail("2R obstruction fails");
  if (!s.nonboundary_f2) fail("trace is a boundary over F2");
  if (s.nonboundary_z && !*s.nonboundary_z) fail("trace is a boundary over Z");
  const bool argument = s.prop1 && s.cycle && s.two_r;
  const bool algebra = trace.ring() == Ring::F2 ? s.nonboundary_f2 : s.nonboundary_z.value_or(false);
  if (argument && !algebra) fail("the 2R argument and the linear algebra disagree");
  return s;
}

void finish(DetectionCertificate& c, const XPair& xs, const Chain& tm, const Chain& tp, bool want_z) {
  const bool gated = c.verdict == Verdict::HypothesisFailed;
  c.minus = check_side(xs.minus, tm, want_z, c.j_x - 1, c, "X-");
  c.plus = check_side(xs.plus, tp, want_z, c.j_x + 1, c, "X+");
  if (gated && c.verdict == Verdict::CheckFailed) return;
  if (gated) c.verdict = Verdict::HypothesisFailed;
}

}  // namespace

DetectionCertificate certify(const State& x, int p, Ring r) {
  DetectionCertificate c{x};
  std::optional<Ring> tr = open_certificate(c, x, p, r);
  if (!tr) return c;
  XPair xs = construct_xpm(x, p);
  finish(c, xs, a_trace(xs.minus, *tr), a_trace(xs.plus, *tr), *tr == Ring::Z);
  return c;
}

namespace {

struct Built {
  EnhancedState minus;
  EnhancedState plus;
  Chain trace_minus;
  Chain trace_plus;
};

std::string indent(int depth) { return std::string(2 * depth, ' '); }

Built build(const State& z, int p, Ring r, std::vector<std::string>& steps, int depth) {
  ZoneDecomposition zd = zone_decomposition(z);
  int cut = -1;
  if (zd.connected)
    for (int c : zd.cut_circles)
      if (zd.zone_of(ArcKind::A, c) >= 0 && zd.zone_of(ArcKind::B, c) >= 0) {
        cut = c;
        break;
      }
  if (cut < 0) {
    const std::size_t zones = zd.a_zones.size() + zd.b_zones.size();
    if (zones > 1 && zd.connected) throw std::logic_error("multi-zone state without a de-plumbing circle");
    steps.push_back(indent(depth) + "base: " + std::to_string(zones) + " zone(s), " +
                    std::to_string(z.diagram().crossing_count()) + " crossing(s)");
    XPair xs = construct_xpm(z, p);
    Built b{xs.minus, xs.plus, a_trace(xs.minus, r), a_trace(xs.plus, r)};
    if (!is_cycle(b.trace_minus) || !is_cycle(b.trace_plus)) throw std::logic_error("base trace is not a cycle");
    return b;
  }

  // x side: the A-zone at the cut circle and everything hanging off it
  std::vector<std::vector<std::pair<int, int>>> adj(zd.graph.vertex_count);
  for (const GraphEdge& e : zd.graph.edges) {
    adj[e.u].push_back({e.crossing, e.v});
    adj[e.v].push_back({e.crossing, e.u});
  }
  std::vector<bool> seen(zd.graph.vertex_count, false), taken(z.diagram().crossing_count(), false);
  seen[cut] = true;
  std::deque<int> queue;
  for (const GraphEdge& e : zd.graph.edges)
    if (e.kind == ArcKind::A && (e.u == cut || e.v == cut)) {
      taken[e.crossing] = true;
      int o = e.u == cut ? e.v : e.u;
      if (!seen[o]) {
        seen[o] = true;
        queue.push_back(o);
      }
    }
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (auto [t, v] : adj[u]) {
      taken[t] = true;
      if (!seen[v]) {
        seen[v] = true;
        queue.push_back(v);
      }
    }
  }
  std::vector<int> xcross;
  for (int t = 0; t < static_cast<int>(taken.size()); ++t)
    if (taken[t]) xcross.push_back(t);

  const int cut_id = z.circle_ids()[cut];
  GluingMap g = deplumb(z, cut_id, xcross);
  auto origins = circle_origins(g, g.x, g.y);
  const int pi = z.circle_index(p);
  const bool on_shared = p == cut_id;
  const bool in_x = on_shared || seen[pi];
  steps.push_back(indent(depth) + "split at c" + std::to_string(cut_id) + ": " + std::to_string(g.x_crossings.size()) +
                  " A-side crossing(s), " + std::to_string(g.y_crossings.size()) + " B-side crossing(s), " +
                  (on_shared ? "p on the shared circle" : in_x ? "p on the A side" : "p on the B side"));

  Built fx = build(g.x_state(), on_shared ? g.r0 : in_x ? *origins[pi].x : g.r0, r, steps, depth + 1);
  Built fy = build(g.y_state(), on_shared ? g.s0 : in_x ? g.s0 : *origins[pi].y, r, steps, depth + 1);

  std::pair<EnhancedState, EnhancedState> xm{fx.minus, fy.minus}, xp{fx.plus, fy.plus};
  if (!on_shared) {
    if (in_x) {
      // match the label X carries on the shared circle
      const EnhancedState& ysel = fx.minus.label_of(g.r0) ? fy.minus : fy.plus;
      xm = {fx.minus, ysel};
      xp = {fx.plus, ysel};
    } else {
      const EnhancedState& xsel = fy.minus.label_of(g.s0) ? fx.minus : fx.plus;
      xm = {xsel, fy.minus};
      xp = {xsel, fy.plus};
    }
  }
  Built out{plumb(xm.first, xm.second, g), plumb(xp.first, xp.second, g),
            plumb_trace_cycle(xm.first, xm.second, g, r), plumb_trace_cycle(xp.first, xp.second, g, r)};
  for (auto* pr : {&xm, &xp}) {
    Transfer2R t = transfer_2r(pr->first, pr->second, g, r);
    if (!t.verified) throw std::logic_error("2R property did not transfer to the plumbed state");
  }
  steps.push_back(indent(depth) + "rebuilt c" + std::to_string(cut_id) + ": traces agree, 2R transferred");
  if (out.minus.state().smoothing() != z.smoothing()) throw std::logic_error("re-plumbed state differs from the original");
  // leave the states on the caller's diagram
  return {EnhancedState(z, out.minus.labels()), EnhancedState(z, out.plus.labels()), out.trace_minus, out.trace_plus};
}

bool equal_up_to_sign(const Chain& a, const Chain& b) { return a == b || a == b * Scalar(-1); }

}  // namespace

DetectionCertificate inductive_certify(const State& x, int p, Ring r) {
  DetectionCertificate c{x};
  c.method = "inductive";
  std::optional<Ring> tr = open_certificate(c, x, p, r);
  if (!tr) return c;
  std::optional<Built> built;
  try {
    built = build(x, p, *tr, c.steps, 0);
  } catch (const std::exception& e) {
    c.diagnostics.push_back(std::string("inductive route failed: ") + e.what());
    c.verdict = Verdict::CheckFailed;
    return c;
  }
  const Built& b = *built;
  XPair direct = construct_xpm(x, p);
  if (!(b.minus == direct.minus) || !(b.plus == direct.plus)) {
    c.diagnostics.push_back("inductive X+- differ from the zone construction");
    c.verdict = Verdict::CheckFailed;
  }
  if (!equal_up_to_sign(b.trace_minus, a_trace(direct.minus, *tr)) ||
      !equal_up_to_sign(b.trace_plus, a_trace(direct.plus, *tr))) {
    c.diagnostics.push_back("inductive traces differ from the direct traces");
    c.verdict = Verdict::CheckFailed;
  }
  finish(c, {b.minus, b.plus}, b.trace_minus, b.trace_plus, *tr == Ring::Z);
  return c;
}

}  // namespace khplumb
