#include "khplumb/report.hpp"

#include <sstream>

namespace khplumb {

std::string circle_name(int id) { return "c" + std::to_string(id); }

namespace {

std::string labels_of(const LinkDiagram& d, const EnhancedKey& k) {
  const int n = resolve_smoothing(d, k.s)->size();
  std::string out(n, '0');
  for (int r = 0; r < n; ++r)
    if ((k.l >> r) & 1U) out[r] = '1';
  return out;
}

Json ids_json(const State& x, const std::vector<int>& circles) {
  Json a = Json::array();
  for (int c : circles) a.push_back(circle_name(x.circle_ids()[c]));
  return a;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t k = 0; k < parts.size(); ++k) out += (k ? sep : "") + parts[k];
  return out;
}

}  // namespace

Json to_json(const Chain& c) {
  Json terms = Json::array();
  const int n = c.diagram().crossing_count();
  for (const auto& [k, v] : c.terms())
    terms.push_back({{"coeff", v.get_str()}, {"state", smoothing_word(k.s, n)}, {"labels", labels_of(c.diagram(), k)}});
  Json out = {{"ring", ring_name(c.ring())}, {"terms", terms}};
  if (auto g = c.grading()) out["grading"] = {g->i, g->j};
  return out;
}

std::string to_text(const Chain& c) {
  if (c.is_zero()) return "0";
  std::vector<std::string> parts;
  const int n = c.diagram().crossing_count();
  for (const auto& [k, v] : c.terms())
    parts.push_back(v.get_str() + "*" + smoothing_word(k.s, n) + "/" + labels_of(c.diagram(), k));
  return join(parts, " + ");
}

Json to_json(const HomologyTable& h, Ring r) {
  Json groups = Json::array();
  for (const auto& [g, grp] : h) {
    Json e = {{"i", g.i}, {"j", g.j}, {"rank", grp.rank}};
    if (r == Ring::Z) {
      Json t = Json::array();
      for (const auto& v : grp.torsion) t.push_back(v.get_str());
      e["torsion"] = t;
    }
    groups.push_back(e);
  }
  return {{"ring", ring_name(r)}, {"groups", groups}};
}

std::string homology_text(const HomologyTable& h, Ring r) {
  std::ostringstream out;
  out << "ring " << ring_name(r) << "\n";
  for (const auto& [g, grp] : h) {
    out << "(" << g.i << "," << g.j << ") rank " << grp.rank;
    for (const auto& t : grp.torsion) out << " Z/" << t.get_str();
    out << "\n";
  }
  return out.str();
}

Json to_json(const State& x, const ZoneDecomposition& z) {
  Json zones = Json::array();
  for (const auto* list : {&z.a_zones, &z.b_zones})
    for (const Zone& zone : *list) {
      Json cr = Json::array();
      for (int t : zone.crossings) cr.push_back(t);
      zones.push_back({{"kind", zone.kind == ArcKind::A ? "A" : "B"},
                       {"circles", ids_json(x, zone.circles)},
                       {"crossings", cr},
                       {"bipartite", zone.bipartite}});
    }
  Json blocks = Json::array();
  for (const auto& b : z.blocks) blocks.push_back(b);
  Json circles = Json::array();
  for (int id : x.circle_ids()) circles.push_back(circle_name(id));
  return {{"state", x.word()},
          {"circles", circles},
          {"adequate", z.adequate},
          {"homogeneous", z.homogeneous},
          {"connected", z.connected},
          {"a_zones_bipartite", z.a_zones_bipartite()},
          {"blocks", blocks},
          {"cut_circles", ids_json(x, z.cut_circles)},
          {"zones", zones}};
}

std::string zones_text(const State& x, const ZoneDecomposition& z) {
  std::ostringstream out;
  std::vector<std::string> circles;
  for (int id : x.circle_ids()) circles.push_back(circle_name(id));
  out << "state " << x.word() << "\n";
  out << "circles " << join(circles, " ") << "\n";
  out << "adequate " << (z.adequate ? "yes" : "no") << ", homogeneous " << (z.homogeneous ? "yes" : "no")
      << ", connected " << (z.connected ? "yes" : "no") << "\n";
  std::vector<std::string> cuts;
  for (int c : z.cut_circles) cuts.push_back(circle_name(x.circle_ids()[c]));
  out << "cut circles " << (cuts.empty() ? "-" : join(cuts, " ")) << "\n";
  for (const auto* list : {&z.a_zones, &z.b_zones})
    for (const Zone& zone : *list) {
      std::vector<std::string> cs;
      for (int c : zone.circles) cs.push_back(circle_name(x.circle_ids()[c]));
      out << (zone.kind == ArcKind::A ? "A" : "B") << "-zone {" << join(cs, " ") << "} crossings";
      for (int t : zone.crossings) out << " " << t;
      if (!zone.bipartite) out << " (not bipartite)";
      out << "\n";
    }
  return out.str();
}

std::string zones_dot(const State& x, const ZoneDecomposition& z) {
  std::ostringstream out;
  out << "graph G {\n";
  for (int id : x.circle_ids()) out << "  \"" << circle_name(id) << "\";\n";
  for (const GraphEdge& e : z.graph.edges)
    out << "  \"" << circle_name(x.circle_ids()[e.u]) << "\" -- \"" << circle_name(x.circle_ids()[e.v])
        << "\" [label=\"" << e.crossing << "\"" << (e.kind == ArcKind::B ? ", style=dashed" : "") << "];\n";
  out << "}\n";
  return out.str();
}

namespace {

Json side_json(const SideReport& s) {
  Json checks = {{"prop1_singleton", s.prop1},
                 {"cycle_check", s.cycle},
                 {"twoR_check", s.two_r},
                 {"nonboundary_F2", s.nonboundary_f2}};
  if (s.nonboundary_z) checks["nonboundary_Z"] = *s.nonboundary_z;
  return {{"state", s.x.state().word()},
          {"labels", s.x.label_word()},
          {"grading", {s.grading.i, s.grading.j}},
          {"trace", to_json(s.trace)},
          {"checks", checks}};
}

std::string yes(bool b) { return b ? "yes" : "no"; }

}  // namespace

Json to_json(const DetectionCertificate& c) {
  Json out = {{"state", c.state.word()},
              {"basepoint", circle_name(c.basepoint)},
              {"ring", ring_name(c.ring)},
              {"method", c.method},
              {"verdict", verdict_name(c.verdict)},
              {"i_x", c.i_x},
              {"j_x", c.j_x},
              {"homogeneously_adequate", c.homogeneously_adequate},
              {"a_zones_bipartite", c.a_zones_bipartite},
              {"connected", c.connected}};
  if (c.minus) out["X-"] = side_json(*c.minus);
  if (c.plus) out["X+"] = side_json(*c.plus);
  out["diagnostics"] = c.diagnostics;
  if (!c.steps.empty()) out["steps"] = c.steps;
  return out;
}

std::string certificate_text(const DetectionCertificate& c) {
  std::ostringstream out;
  out << "state " << c.state.word() << ", basepoint " << circle_name(c.basepoint) << ", ring " << ring_name(c.ring)
      << " (" << c.method << ")\n";
  out << "verdict: " << verdict_name(c.verdict) << "\n";
  out << "homogeneously adequate " << yes(c.homogeneously_adequate) << ", A-zones bipartite "
      << yes(c.a_zones_bipartite) << ", G_x connected " << yes(c.connected) << "\n";
  if (c.homogeneously_adequate) out << "i_x = " << c.i_x << ", j_x = " << c.j_x << "\n";
  for (const auto& [name, side] : {std::pair{"X-", &c.minus}, std::pair{"X+", &c.plus}}) {
    if (!*side) continue;
    const SideReport& s = **side;
    out << name << " = " << s.x.label_word() << " at (" << s.grading.i << "," << s.grading.j << ")\n";
    out << "  trace over " << ring_name(s.trace.ring()) << ": " << to_text(s.trace) << "\n";
    out << "  singleton " << yes(s.prop1) << ", cycle " << yes(s.cycle) << ", 2R " << yes(s.two_r)
        << ", non-boundary F2 " << yes(s.nonboundary_f2);
    if (s.nonboundary_z) out << ", non-boundary Z " << yes(*s.nonboundary_z);
    out << "\n";
  }
  for (const auto& s : c.steps) out << "step: " << s << "\n";
  for (const auto& d : c.diagnostics) out << "note: " << d << "\n";
  return out.str();
}

Json to_json(const GluingMap& g) {
  State xs = g.x_state(), ys = g.y_state(), zs = g.z_state();
  Json order = Json::array();
  for (int id : g.display_order()) order.push_back(circle_name(id));
  return {{"x_state", xs.word()},
          {"y_state", ys.word()},
          {"z_state", zs.word()},
          {"r0", circle_name(g.r0)},
          {"s0", circle_name(g.s0)},
          {"t0", circle_name(g.t0)},
          {"x_crossings", g.x_crossings},
          {"y_crossings", g.y_crossings},
          {"interleave", g.interleave},
          {"y_reversed", g.y_reversed},
          {"orientation_respected", g.orientation_respected},
          {"circle_order", order},
          {"pd", serialize_pd(*g.dz)}};
}

Json states_json(const DiagramPtr& d, bool enhanced, int cap) {
  Json out = Json::array();
  for (const State& x : enumerate_states(d, cap)) {
    StateGradings sg = gradings_of_state(x);
    Json e = {{"state", x.word()}, {"circles", x.circle_count()}, {"sigma", sg.sigma}, {"i", sg.i}};
    if (enhanced) {
      Json en = Json::array();
      for (const EnhancedState& X : enumerate_enhancements(x, cap)) {
        BiGrading g = bigrading(X);
        en.push_back({{"labels", X.label_word()}, {"i", g.i}, {"j", g.j}});
      }
      e["enhancements"] = en;
    }
    out.push_back(e);
  }
  return out;
}

std::string states_text(const DiagramPtr& d, bool enhanced, int cap) {
  std::ostringstream out;
  for (const State& x : enumerate_states(d, cap)) {
    StateGradings sg = gradings_of_state(x);
    out << x.word() << " circles " << x.circle_count() << " sigma " << sg.sigma << " i " << sg.i << "\n";
    if (!enhanced) continue;
    for (const EnhancedState& X : enumerate_enhancements(x, cap)) {
      BiGrading g = bigrading(X);
      out << "  " << X.label_word() << " (" << g.i << "," << g.j << ")\n";
    }
  }
  return out.str();
}

}  // namespace khplumb
