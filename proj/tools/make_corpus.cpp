// Regenerates corpus/*.pd and corpus/fixtures.json.
//   make_corpus <outdir>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "khplumb/gluing.hpp"
#include "khplumb/homology.hpp"
#include "khplumb/plumbing.hpp"
#include "khplumb/structure.hpp"

using namespace khplumb;
using nlohmann::ordered_json;

namespace {

DiagramPtr share(LinkDiagram d) { return std::make_shared<const LinkDiagram>(std::move(d)); }

void require(bool ok, const std::string& what) {
  if (!ok) throw std::runtime_error("corpus check failed: " + what);
}

ordered_json state_entry(const State& x, const std::string& role) {
  return {{"role", role}, {"state", x.word()}};
}

ordered_json enh_entry(const EnhancedState& X, const std::string& role) {
  return {{"role", role}, {"state", X.state().word()}, {"labels", X.label_word()}};
}

// z circle id fed by the x-side circle with the given id
int z_circle_from_x(const GluingMap& g, int x_id) {
  auto origins = circle_origins(g, g.x, g.y);
  State z = g.z_state();
  for (std::size_t k = 0; k < origins.size(); ++k)
    if (origins[k].x && *origins[k].x == x_id) return z.circle_ids()[k];
  throw std::runtime_error("no z circle for x circle " + std::to_string(x_id));
}

// Tries an alternating attachment order first so the gluing is not a plain
// connected sum; falls back to the default order.
PlumbResult glue(const DiagramPtr& dx, Smoothing x, int r0, const DiagramPtr& dy, Smoothing y, int s0) {
  for (const char* w : {"xyxyxy", "xyxy", ""}) {
    try {
      return plumb_diagrams(dx, x, r0, dy, y, s0, w);
    } catch (const GluingError&) {
    }
  }
  throw std::runtime_error("no planar gluing");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_corpus <outdir>\n";
    return 2;
  }
  const std::filesystem::path out = argv[1];
  std::filesystem::create_directories(out);
  ordered_json manifest = ordered_json::array();
  auto emit = [&](const std::string& name, const LinkDiagram& d, const std::string& note, ordered_json states) {
    std::ofstream f(out / (name + ".pd"));
    f << "# " << note << "\n" << serialize_pd(d);
    manifest.push_back({{"file", name + ".pd"}, {"note", note}, {"crossings", d.crossing_count()}, {"states", states}});
  };

  const DiagramPtr T = share(parse_pd("X 1 4 2 5\nX 3 6 4 1\nX 5 2 6 3\n"));
  const DiagramPtr L = share(mirror(*T));
  const DiagramPtr H = share(parse_pd("X 4 1 3 2\nX 2 3 1 4\n"));
  require(jones_polynomial(*T).str() == "q + q^3 + q^5 - q^9", "right-handed trefoil");
  require(State(T, 0).circle_count() == 2 && State(T, 7).circle_count() == 3, "trefoil state circles");
  require(State(L, 0).circle_count() == 3 && State(L, 7).circle_count() == 2, "mirror state circles");
  require(State(H, 0).circle_count() == 2, "Hopf all-A circles");

  emit("unknot", parse_pd("loops 1"), "crossingless unknot", ordered_json::array());
  emit("kink", parse_pd("X 1 1 2 2"), "unknot with one kink", ordered_json::array());
  emit("hopf", *H, "Hopf link", ordered_json::array({state_entry(State(H, 0), "adequate")}));
  emit("trefoil_rh", *T, "right-handed trefoil",
       ordered_json::array({state_entry(State(T, 0), "adequate"), state_entry(State(T, 7), "adequate")}));
  emit("trefoil_lh", *L, "left-handed trefoil", ordered_json::array());
  emit("two_loops", parse_pd("loops 2"), "two-component unlink, no crossings", ordered_json::array());
  emit("figure_eight", parse_pd("X 4 2 5 1\nX 8 6 1 5\nX 6 3 7 4\nX 2 7 3 8\n"), "figure-eight knot",
       ordered_json::array());

  // R2 picture of the split unlink
  LinkDiagram r2 = braid_closure(2, {1, -1});
  require(jones_polynomial(r2).str() == "q^-2 + 2 + q^2", "R2 unlink");
  emit("r2_unlink", r2, "two-component unlink drawn with one R2 clasp", ordered_json::array());

  // trefoil with an extra R1/R2 pair
  LinkDiagram t5 = braid_closure(2, {1, 1, 1, 1, -1});
  require(jones_polynomial(t5).str() == jones_polynomial(*T).str(), "5-crossing trefoil");
  emit("trefoil_5", t5, "right-handed trefoil, 5-crossing diagram", ordered_json::array());

  // inessential state carrying a 2-torsion class
  {
    const DiagramPtr D = share(braid_closure(3, {2, 2, -1, -1, -1}));
    State x(D, parse_smoothing("AAAAB", 5));
    EnhancedState X(x, (LabelWord{1} << x.circle_count()) - 1);
    require(!zone_decomposition(x).adequate, "inessential state is not adequate");
    require(is_cycle(Chain::of(X, Ring::Z)), "inessential X is a cycle");
    emit("inessential", *D, "Hopf clasp summed with a left-handed trefoil; X is a 2-torsion class",
         ordered_json::array({enh_entry(X, "X")}));
  }

  // homogeneously adequate state made of three zones
  {
    auto a = glue(T, 0, T->edge_label(0), L, 7, L->edge_label(0));
    State za = a.z;
    const int other = za.circle_ids().back();
    auto b = glue(a.dz, za.smoothing(), other, H, 0, H->edge_label(0));
    ZoneDecomposition zd = zone_decomposition(b.z);
    require(zd.homogeneously_adequate() && zd.a_zones.size() == 2 && zd.b_zones.size() == 1, "fig2 zones");
    emit("fig2", *b.dz, "three-zone homogeneously adequate state", ordered_json::array({state_entry(b.z, "x")}));
  }

  // plumbing families: T-BBB * T-AAA * Hopf-AA, and T-BBB * LH-AAA * Hopf-AA
  auto family = [&](const std::string& name, const DiagramPtr& d2, const std::string& note, Ring ring) {
    State x1(T, 7), x2(d2, 0), x3(H, 0);
    const int c1 = x1.circle_ids()[0], c1b = x1.circle_ids()[1];
    const int c2 = x2.circle_ids()[0], c3 = x3.circle_ids()[0];
    auto g12 = glue(T, 7, c1, d2, 0, c2);
    const int shared = z_circle_from_x(g12.map, c1b);
    auto g = glue(g12.dz, g12.z.smoothing(), shared, H, 0, c3);

    LabelWord l1 = LabelWord{1} << x1.circle_index(c1);
    EnhancedState X1(x1, l1);
    LabelWord l2 = (LabelWord{1} << x2.circle_count()) - 1;
    if (ring == Ring::F2) l2 &= ~(LabelWord{1} << x2.circle_index(x2.circle_ids().back()));
    EnhancedState X2(x2, l2);
    EnhancedState X3(x3, LabelWord{1} << x3.circle_index(x3.circle_ids()[1]));
    EnhancedState X12 = plumb(X1, X2, g12.map);
    EnhancedState X = plumb(X12, X3, g.map);
    for (const EnhancedState* f : {&X1, &X2, &X3, &X12, &X}) require(trace_cycle_check(*f, ring), name + " traces");
    emit(name, *g.dz, note,
         ordered_json::array({enh_entry(X1, "factor1"), enh_entry(X2, "factor2"), enh_entry(X3, "factor3"),
                              enh_entry(X12, "product12"), enh_entry(X, "product")}));
    std::ofstream(out / (name + "_factor12.pd")) << "# first two factors of " << name << "\n" << serialize_pd(*g12.dz);
  };
  family("xfamily", T, "T-BBB * T-AAA * Hopf-AA; traces work over Z", Ring::Z);
  family("yfamily", L, "T-BBB * LH-AAA * Hopf-AA; non-bipartite A-zone, F2 only", Ring::F2);

  // closure of (s1^2 s2^2)^2: crossings of the non-alternating trefoil (s1 s2)^2 doubled
  {
    require(jones_polynomial(braid_closure(3, {1, 2, 1, 2})).str() == jones_polynomial(*T).str(),
            "undoubled diagram is a trefoil");
    LinkDiagram d = braid_closure(3, {1, 1, 2, 2, 1, 1, 2, 2});
    const DiagramPtr D = share(d);
    emit("doubled_trefoil", d, "every crossing of a 4-crossing trefoil diagram doubled; exploratory",
         ordered_json::array({state_entry(resolve(D, "AABBAABB"), "checkerboard"),
                              state_entry(resolve(D, "BBAABBAA"), "checkerboard")}));
  }

  std::ofstream(out / "fixtures.json") << manifest.dump(2) << "\n";
  return 0;
}
