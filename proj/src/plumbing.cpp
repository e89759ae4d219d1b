#include "khplumb/plumbing.hpp"

#include "khplumb/detection.hpp"
#include "khplumb/homology.hpp"

namespace khplumb {

std::vector<int> deplumb_circles(const State& z) {
  ZoneDecomposition zd = zone_decomposition(z);
  std::vector<int> out;
  for (int c : zd.cut_circles) out.push_back(z.circle_ids()[c]);
  return out;
}

namespace {

enum class Mode { Plumb, Left, Right };

EnhancedKey glue(const GluingMap& g, const EnhancedKey& X, const EnhancedKey& Y, Mode mode) {
  auto origins = circle_origins(g, X.s, Y.s);
  auto rx = resolve_smoothing(*g.dx, X.s);
  auto ry = resolve_smoothing(*g.dy, Y.s);
  LabelWord l = 0;
  for (std::size_t k = 0; k < origins.size(); ++k) {
    std::optional<int> lx, ly;
    if (origins[k].x) lx = (X.l >> rx->index_of(*origins[k].x)) & 1U;
    if (origins[k].y) ly = (Y.l >> ry->index_of(*origins[k].y)) & 1U;
    int v;
    if (lx && ly) {
      if (mode == Mode::Plumb && *lx != *ly)
        throw PlumbUndefined("labels on the shared circle differ");
      v = mode == Mode::Right ? *ly : *lx;
    } else {
      v = lx ? *lx : *ly;
    }
    if (v) l |= LabelWord{1} << k;
  }
  return {g.combine(X.s, Y.s), l};
}

void check_on(const EnhancedState& X, const DiagramPtr& d, const char* what) {
  if (X.state().diagram_ptr() != d && !(X.diagram() == *d))
    throw PreconditionError(std::string(what) + " does not live on the expected factor diagram");
}

}  // namespace

EnhancedState plumb(const EnhancedState& X, const EnhancedState& Y, const GluingMap& g) {
  check_on(X, g.dx, "first factor");
  check_on(Y, g.dy, "second factor");
  if (X.state().smoothing() != g.x || Y.state().smoothing() != g.y)
    throw PreconditionError("plumbing needs enhancements of the glued states");
  EnhancedKey k = glue(g, X.key(), Y.key(), Mode::Plumb);
  return EnhancedState(State(g.dz, k.s), k.l);
}

EnhancedState trump(const EnhancedState& X, const EnhancedState& Y, const GluingMap& g, Trump side) {
  check_on(X, g.dx, "first factor");
  check_on(Y, g.dy, "second factor");
  if (side == Trump::Left && Y.state().smoothing() != g.y)
    throw PreconditionError("left trump needs the second factor on the glued state y");
  if (side == Trump::Right && X.state().smoothing() != g.x)
    throw PreconditionError("right trump needs the first factor on the glued state x");
  EnhancedKey k = glue(g, X.key(), Y.key(), side == Trump::Left ? Mode::Left : Mode::Right);
  return EnhancedState(State(g.dz, k.s), k.l);
}

std::pair<EnhancedState, EnhancedState> unplumb(const EnhancedState& Z, const GluingMap& g) {
  if (Z.state().smoothing() != g.combine(g.x, g.y)) throw PreconditionError("enhancement is not on the glued state");
  auto origins = circle_origins(g, g.x, g.y);
  State xs = g.x_state(), ys = g.y_state();
  LabelWord lx = 0, ly = 0;
  for (std::size_t k = 0; k < origins.size(); ++k) {
    if (!Z.label(static_cast<int>(k))) continue;
    if (origins[k].x) lx |= LabelWord{1} << xs.circle_index(*origins[k].x);
    if (origins[k].y) ly |= LabelWord{1} << ys.circle_index(*origins[k].y);
  }
  return {EnhancedState(xs, lx), EnhancedState(ys, ly)};
}

Chain plumb_pairs(const std::vector<TermPair>& pairs, const GluingMap& g, Ring r) {
  Chain out(g.dz, r);
  for (const TermPair& p : pairs) out.add(plumb(p.x, p.y, g).key(), p.coeff);
  return out;
}

Chain plumb_chains(const Chain& cx, const Chain& cy, const GluingMap& g) {
  if (cx.ring() != cy.ring()) throw PreconditionError("factors over different rings");
  Chain out(g.dz, cx.ring());
  for (const auto& [kx, vx] : cx.terms()) {
    if (kx.s != g.x) throw PreconditionError("first factor has a term off the glued state");
    for (const auto& [ky, vy] : cy.terms()) {
      if (ky.s != g.y) throw PreconditionError("second factor has a term off the glued state");
      out.add(glue(g, kx, ky, Mode::Plumb), vx * vy);
    }
  }
  return out;
}

Chain trump_plumb(const Chain& cx, const Chain& cy, const GluingMap& g, Trump side) {
  if (cx.ring() != cy.ring()) throw PreconditionError("factors over different rings");
  Chain out(g.dz, cx.ring());
  for (const auto& [kx, vx] : cx.terms()) {
    if (side == Trump::Right && kx.s != g.x) throw PreconditionError("right trump needs the first factor on x");
    for (const auto& [ky, vy] : cy.terms()) {
      if (side == Trump::Left && ky.s != g.y) throw PreconditionError("left trump needs the second factor on y");
      out.add(glue(g, kx, ky, side == Trump::Left ? Mode::Left : Mode::Right), vx * vy);
    }
  }
  return out;
}

bool verify_leibniz(const EnhancedState& X, const EnhancedState& Y, const GluingMap& g, Ring r) {
  if (!g.x_first()) throw PreconditionError("Leibniz rule needs the crossings of x before those of y");
  Chain lhs = differential(Chain::of(plumb(X, Y, g), r));
  Chain dx = differential(Chain::of(X, r));
  Chain dy = differential(Chain::of(Y, r));
  const int sign = X.state().a_count() % 2 == 0 ? 1 : -1;
  Chain rhs = trump_plumb(dx, Chain::of(Y, r), g, Trump::Left) +
              trump_plumb(Chain::of(X, r), dy, g, Trump::Right) * sign;
  return lhs == rhs;
}

namespace {

int label_at(const LinkDiagram& d, const EnhancedKey& k, int circle_id) {
  auto r = resolve_smoothing(d, k.s);
  int idx = r->index_of(circle_id);
  if (idx < 0) throw PreconditionError("term has no circle " + std::to_string(circle_id));
  return (k.l >> idx) & 1U;
}

Chain split_by_label(const Chain& c, int circle_id, int label) {
  Chain out(c.diagram_ptr(), c.ring());
  for (const auto& [k, v] : c.terms())
    if (label_at(c.diagram(), k, circle_id) == label) out.add(k, v);
  return out;
}

Chain relabel_all(const Chain& c, int circle_id, int label) {
  Chain out(c.diagram_ptr(), c.ring());
  for (const auto& [k, v] : c.terms()) {
    auto r = resolve_smoothing(c.diagram(), k.s);
    int idx = r->index_of(circle_id);
    LabelWord l = k.l & ~(LabelWord{1} << idx);
    if (label) l |= LabelWord{1} << idx;
    out.add({k.s, l}, v);
  }
  return out;
}

}  // namespace

Chain plumb_cycle(const Chain& X, const Chain& Xp, const Chain& Ysum, const GluingMap& g) {
  if (X.ring() != Xp.ring() || X.ring() != Ysum.ring()) throw PreconditionError("chains over different rings");
  if (!split_by_label(X, g.r0, 0).is_zero()) throw PreconditionError("X must label the shared circle 1");
  if (!split_by_label(Xp, g.r0, 1).is_zero()) throw PreconditionError("X' must label the shared circle 0");
  if (!(relabel_all(X, g.r0, 0) == Xp)) throw PreconditionError("X and X' differ away from the shared circle");
  if (!is_cycle(X) || !is_cycle(Xp)) throw PreconditionError("X and X' must be cycles");
  if (!is_cycle(Ysum)) throw PreconditionError("Y + Y' must be a cycle");
  Chain y1 = split_by_label(Ysum, g.s0, 1);
  Chain y0 = split_by_label(Ysum, g.s0, 0);
  return plumb_chains(X, y1, g) + plumb_chains(Xp, y0, g);
}

Chain plumb_trace_cycle(const EnhancedState& X, const EnhancedState& Y, const GluingMap& g, Ring r) {
  ZoneDecomposition zx = zone_decomposition(X.state());
  ZoneDecomposition zy = zone_decomposition(Y.state());
  const bool y_side = zy.zone_of(ArcKind::A, Y.state().circle_index(g.s0)) < 0;
  const bool x_side = zx.zone_of(ArcKind::A, X.state().circle_index(g.r0)) < 0;
  if (!x_side && !y_side) throw PreconditionError("the shared circle lies in A-zones of both factors");
  Chain tx = a_trace(X, r), ty = a_trace(Y, r);
  if (!is_cycle(tx) || !is_cycle(ty)) throw PreconditionError("factor traces must be cycles");
  EnhancedState Z = plumb(X, Y, g);

  Chain route(g.dz, r);
  if (y_side) {
    const int ys = Y.state().circle_index(g.s0);
    for (int label : {0, 1})
      route += plumb_chains(split_by_label(tx, g.r0, label), a_trace(Y.with_label(ys, label), r), g);
  } else {
    const int xs = X.state().circle_index(g.r0);
    for (int label : {0, 1})
      route += plumb_chains(a_trace(X.with_label(xs, label), r), split_by_label(ty, g.s0, label), g);
  }
  Chain direct = a_trace(Z, r);
  if (!(route == direct)) throw std::logic_error("plumbed trace disagrees with the trace taken in the glued diagram");
  return direct;
}

Transfer2R transfer_2r(const EnhancedState& X, const EnhancedState& Y, const GluingMap& g, Ring r) {
  if (!check_2r_image(X, r) || !check_2r_image(Y, r))
    throw PreconditionError("factor enhancements do not have the 2R property");
  ZoneDecomposition zx = zone_decomposition(X.state());
  ZoneDecomposition zy = zone_decomposition(Y.state());
  const int xi = X.state().circle_index(g.r0), yi = Y.state().circle_index(g.s0);
  const int bx = zx.zone_of(ArcKind::B, xi), by = zy.zone_of(ArcKind::B, yi);
  auto has_one = [](const Zone& z, const EnhancedState& E) {
    for (int c : z.circles)
      if (E.label(c)) return true;
    return false;
  };
  Transfer2R out{X, Y, X, true, false};
  if (bx >= 0 && by >= 0 && has_one(zx.b_zones[bx], X) && has_one(zy.b_zones[by], Y)) {
    auto pick = [](const EnhancedState& E, int circle) {
      EquivalenceClass cls = equivalence_class(E, ArcKind::B);
      for (const auto& k : cls.members)
        if ((k.l >> circle) & 1U) return EnhancedState(E.state(), k.l);
      throw std::logic_error("B-class has no member with a 1 on the shared circle");
    };
    out.x = pick(X, xi);
    out.y = pick(Y, yi);
    out.kept = out.x == X && out.y == Y;
  }
  try {
    out.z = plumb(out.x, out.y, g);
  } catch (const PlumbUndefined&) {
    throw PreconditionError("X*Y is undefined and no representatives repair it");
  }
  out.verified = check_2r_image(out.z, r);
  return out;
}

}  // namespace khplumb
