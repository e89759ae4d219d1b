#include "khplumb/chain.hpp"

#include <sstream>
#include <stdexcept>

namespace khplumb {

Chain::Chain(DiagramPtr d, Ring r) : diagram_(std::move(d)), ring_(r) {
  if (!diagram_) throw std::invalid_argument("chain needs a diagram");
}

Chain Chain::of(const EnhancedState& X, Ring r, const Scalar& c) {
  Chain out(X.state().diagram_ptr(), r);
  out.add(X.key(), c);
  return out;
}

void Chain::add(const EnhancedKey& k, const Scalar& c) {
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    Scalar v = normalize(ring_, c);
    if (v != 0) terms_.emplace(k, v);
    return;
  }
  Scalar v = normalize(ring_, it->second + c);
  if (v == 0) terms_.erase(it);
  else it->second = v;
}

void Chain::add(const EnhancedState& X, const Scalar& c) {
  if (X.state().diagram_ptr() != diagram_ && !(X.diagram() == *diagram_))
    throw std::invalid_argument("enhanced state belongs to another diagram");
  add(X.key(), c);
}

Scalar Chain::coefficient(const EnhancedKey& k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? Scalar(0) : it->second;
}

EnhancedState Chain::state_of(const EnhancedKey& k) const { return EnhancedState(State(diagram_, k.s), k.l); }

std::optional<BiGrading> Chain::grading() const {
  std::optional<BiGrading> g;
  for (const auto& [k, c] : terms_) {
    BiGrading h = bigrading(*diagram_, k);
    if (g && !(*g == h)) return std::nullopt;
    g = h;
  }
  return g;
}

void Chain::check_compatible(const Chain& o) const {
  if (o.ring_ != ring_) throw std::invalid_argument("chains over different rings");
  if (o.diagram_ != diagram_ && o.diagram_->uid() != diagram_->uid() && !(*o.diagram_ == *diagram_))
    throw std::invalid_argument("mixed-diagram chain");
}

Chain& Chain::operator+=(const Chain& o) {
  check_compatible(o);
  for (const auto& [k, c] : o.terms_) add(k, c);
  return *this;
}

Chain& Chain::operator-=(const Chain& o) {
  check_compatible(o);
  for (const auto& [k, c] : o.terms_) add(k, -c);
  return *this;
}

Chain Chain::operator+(const Chain& o) const {
  Chain out = *this;
  out += o;
  return out;
}

Chain Chain::operator-(const Chain& o) const {
  Chain out = *this;
  out -= o;
  return out;
}

Chain Chain::operator*(const Scalar& c) const {
  Chain out(diagram_, ring_);
  for (const auto& [k, v] : terms_) out.add(k, v * c);
  return out;
}

bool Chain::operator==(const Chain& o) const {
  return ring_ == o.ring_ && (diagram_ == o.diagram_ || *diagram_ == *o.diagram_) && terms_ == o.terms_;
}

std::string Chain::serialize() const {
  std::ostringstream out;
  const int n = diagram_->crossing_count();
  for (const auto& [k, c] : terms_) {
    int circles = resolve_smoothing(*diagram_, k.s)->size();
    std::string labels(circles, '0');
    for (int r = 0; r < circles; ++r)
      if ((k.l >> r) & 1U) labels[r] = '1';
    out << c.get_str() << " : " << smoothing_word(k.s, n) << " : " << labels << '\n';
  }
  return out.str();
}

void for_each_boundary_term(const LinkDiagram& d, const EnhancedKey& X,
                            const std::function<void(int, const EnhancedKey&, int)>& f) {
  const auto res = resolve_smoothing(d, X.s);
  const Resolution& r = *res;
  int a_before = 0;
  for (int t = 0; t < d.crossing_count(); ++t) {
    if ((X.s >> t) & 1U) continue;
    const int sign = (a_before & 1) ? -1 : 1;
    ++a_before;
    const Smoothing s2 = X.s | (Smoothing{1} << t);
    const auto res2 = resolve_smoothing(d, s2);
    const Resolution& r2 = *res2;
    const int e0 = d.edge_at(t, 0), e1 = d.edge_at(t, 1), e2 = d.edge_at(t, 2);
    const int c1 = r.edge_circle[e0], c2 = r.edge_circle[e1];
    // carry over labels of circles untouched by the flip
    LabelWord base = 0;
    for (int k = 0; k < r2.size(); ++k) {
      int old = r2.rep_edge[k] < 0 ? k : r.edge_circle[r2.rep_edge[k]];
      if (old == c1 || old == c2) continue;
      if ((X.l >> old) & 1U) base |= LabelWord{1} << k;
    }
    const int l1 = (X.l >> c1) & 1U, l2 = (X.l >> c2) & 1U;
    if (c1 != c2) {
      if (l1 && l2) continue;
      const int m = r2.edge_circle[e0];
      LabelWord l = base;
      if (l1 || l2) l |= LabelWord{1} << m;
      f(t, {s2, l}, sign);
    } else {
      const int a = r2.edge_circle[e0], b = r2.edge_circle[e2];
      if (a == b) throw std::logic_error("flip neither merges nor splits");
      const LabelWord ba = LabelWord{1} << a, bb = LabelWord{1} << b;
      if (l1) {
        f(t, {s2, base | ba | bb}, sign);
      } else {
        f(t, {s2, base | ba}, sign);
        f(t, {s2, base | bb}, sign);
      }
    }
  }
}

Chain d_at_crossing(const EnhancedState& X, int t, Ring r) {
  const LinkDiagram& d = X.diagram();
  if (t < 0 || t >= d.crossing_count()) throw std::out_of_range("crossing index out of range");
  Chain out(X.state().diagram_ptr(), r);
  for_each_boundary_term(d, X.key(), [&](int s, const EnhancedKey& k, int) {
    if (s == t) out.add(k, 1);
  });
  return out;
}

Chain differential(const Chain& c) {
  Chain out(c.diagram_ptr(), c.ring());
  for (const auto& [k, v] : c.terms())
    for_each_boundary_term(c.diagram(), k, [&](int, const EnhancedKey& y, int sign) { out.add(y, v * sign); });
  return out;
}

Scalar augmentation(const Chain& c) {
  Scalar s = 0;
  for (const auto& [k, v] : c.terms()) s += v;
  return normalize(c.ring(), s);
}

Chain project(const Chain& c, const std::set<EnhancedKey, KeyLess>& basis) {
  Chain out(c.diagram_ptr(), c.ring());
  for (const auto& [k, v] : c.terms())
    if (basis.count(k)) out.add(k, v);
  return out;
}

namespace {

int label_at_basepoint(const LinkDiagram& d, const EnhancedKey& k, int basepoint) {
  auto r = resolve_smoothing(d, k.s);
  int idx = basepoint < 0 ? r->index_of(basepoint) : r->edge_circle[d.edge_index(basepoint)];
  if (idx < 0) throw std::invalid_argument("basepoint " + std::to_string(basepoint) + " not on the diagram");
  return (k.l >> idx) & 1U;
}

}  // namespace

Chain normalized_differential(const Chain& c, int basepoint, int side) {
  if (side != 0 && side != 1) throw std::invalid_argument("side must be 0 or 1");
  for (const auto& [k, v] : c.terms())
    if (label_at_basepoint(c.diagram(), k, basepoint) != side)
      throw std::invalid_argument("term does not carry label " + std::to_string(side) + " at the basepoint");
  Chain full = differential(c);
  Chain out(c.diagram_ptr(), c.ring());
  for (const auto& [k, v] : full.terms())
    if (label_at_basepoint(c.diagram(), k, basepoint) == side) out.add(k, v);
  return out;
}

int normalized_j(const EnhancedState& X, int side) { return gradings_of_enhancement(X).j + (side ? 1 : -1); }

}  // namespace khplumb
