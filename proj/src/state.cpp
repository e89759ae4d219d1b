#include "khplumb/state.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace khplumb {

namespace {

Resolution compute_resolution(const LinkDiagram& d, Smoothing s) {
  const int n = d.edge_count();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
  for (int t = 0; t < d.crossing_count(); ++t) {
    int e0 = d.edge_at(t, 0), e1 = d.edge_at(t, 1), e2 = d.edge_at(t, 2), e3 = d.edge_at(t, 3);
    if ((s >> t) & 1U) {
      unite(e0, e1);
      unite(e2, e3);
    } else {
      unite(e0, e3);
      unite(e1, e2);
    }
  }
  // dense edges are in label order, so the first edge met in a root is its least
  std::vector<int> root_circle(n, -1);
  Resolution r;
  r.free_loops = d.free_loops();
  for (int k = 0; k < r.free_loops; ++k) {
    r.ids.push_back(-(r.free_loops - k));
    r.rep_edge.push_back(-1);
  }
  std::vector<int> order;
  for (int e = 0; e < n; ++e) {
    int root = find(e);
    if (root_circle[root] < 0) {
      root_circle[root] = r.size();
      r.ids.push_back(d.edge_label(e));
      r.rep_edge.push_back(e);
    }
  }
  r.edge_circle.resize(n);
  for (int e = 0; e < n; ++e) r.edge_circle[e] = root_circle[find(e)];
  return r;
}

struct CacheKey {
  std::uint64_t uid;
  Smoothing s;
  bool operator==(const CacheKey&) const = default;
};
struct CacheHash {
  std::size_t operator()(const CacheKey& k) const {
    return std::hash<std::uint64_t>()(k.uid * 0x9E3779B97F4A7C15ULL ^ k.s);
  }
};

}  // namespace

int Resolution::index_of(int id) const {
  auto it = std::lower_bound(ids.begin(), ids.end(), id);
  if (it == ids.end() || *it != id) return -1;
  return static_cast<int>(it - ids.begin());
}

std::shared_ptr<const Resolution> resolve_smoothing(const LinkDiagram& d, Smoothing s) {
  thread_local std::unordered_map<CacheKey, std::shared_ptr<const Resolution>, CacheHash> cache;
  CacheKey key{d.uid(), s};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  if (cache.size() > (1U << 18)) cache.clear();
  auto r = std::make_shared<const Resolution>(compute_resolution(d, s));
  cache.emplace(key, r);
  return r;
}

State::State(DiagramPtr d, Smoothing s) : diagram_(std::move(d)), smoothing_(s) {
  const int n = diagram_->crossing_count();
  if (n < 64 && (s >> n) != 0) throw std::invalid_argument("smoothing has bits beyond the crossing count");
  res_ = resolve_smoothing(*diagram_, s);
  if (res_->size() > 64) throw CapExceeded("state has more than 64 circles");
}

int State::a_count() const { return diagram_->crossing_count() - b_count(); }
int State::b_count() const { return __builtin_popcountll(smoothing_); }

int State::circle_index(int id) const {
  int k = res_->index_of(id);
  if (k < 0) throw std::invalid_argument("state " + word() + " has no circle " + std::to_string(id));
  return k;
}

int State::circle_of(int edge_or_loop) const {
  if (edge_or_loop < 0) {
    if (res_->index_of(edge_or_loop) < 0) throw std::invalid_argument("no free loop " + std::to_string(edge_or_loop));
    return edge_or_loop;
  }
  return res_->ids[res_->edge_circle[diagram_->edge_index(edge_or_loop)]];
}

std::string State::word() const { return smoothing_word(smoothing_, diagram_->crossing_count()); }

State resolve(DiagramPtr d, Smoothing s) { return State(std::move(d), s); }

State resolve(DiagramPtr d, std::string_view word) {
  Smoothing s = parse_smoothing(word, d->crossing_count());
  return State(std::move(d), s);
}

Smoothing parse_smoothing(std::string_view word, int crossings) {
  if (static_cast<int>(word.size()) != crossings)
    throw std::invalid_argument("state word '" + std::string(word) + "' has length " + std::to_string(word.size()) +
                                ", diagram has " + std::to_string(crossings) + " crossings");
  Smoothing s = 0;
  for (int t = 0; t < crossings; ++t) {
    char c = word[t];
    if (c == 'B' || c == 'b') s |= Smoothing{1} << t;
    else if (c != 'A' && c != 'a') throw std::invalid_argument("state word may contain only A and B");
  }
  return s;
}

std::string smoothing_word(Smoothing s, int crossings) {
  std::string w(crossings, 'A');
  for (int t = 0; t < crossings; ++t)
    if ((s >> t) & 1U) w[t] = 'B';
  return w;
}

StateGradings gradings_of_state(const State& x) {
  StateGradings g;
  g.sigma = x.a_count() - x.b_count();
  g.i = (x.diagram().writhe() - g.sigma) / 2;
  return g;
}

EnhancedState::EnhancedState(State x, LabelWord labels) : state_(std::move(x)), labels_(labels) {
  int c = state_.circle_count();
  if (c < 64 && (labels_ >> c) != 0) throw std::invalid_argument("label word has bits beyond the circle count");
}

std::string EnhancedState::label_word() const {
  std::string w(state_.circle_count(), '0');
  for (int r = 0; r < state_.circle_count(); ++r)
    if (label(r)) w[r] = '1';
  return w;
}

EnhancedState EnhancedState::with_label(int circle_index, int value) const {
  LabelWord l = labels_ & ~(LabelWord{1} << circle_index);
  if (value) l |= LabelWord{1} << circle_index;
  return EnhancedState(state_, l);
}

EnhancedState enhance(const State& x, std::string_view label_word) {
  if (static_cast<int>(label_word.size()) != x.circle_count())
    throw std::invalid_argument("label word '" + std::string(label_word) + "' has length " +
                                std::to_string(label_word.size()) + ", state has " +
                                std::to_string(x.circle_count()) + " circles");
  LabelWord l = 0;
  for (std::size_t r = 0; r < label_word.size(); ++r) {
    if (label_word[r] == '1') l |= LabelWord{1} << r;
    else if (label_word[r] != '0') throw std::invalid_argument("label word may contain only 0 and 1");
  }
  return EnhancedState(x, l);
}

EnhancementGradings gradings_of_enhancement(const EnhancedState& X) {
  EnhancementGradings g;
  int ones = __builtin_popcountll(X.labels());
  g.tau = 2 * ones - X.state().circle_count();
  g.j = X.diagram().writhe() + gradings_of_state(X.state()).i - g.tau;
  return g;
}

BiGrading bigrading(const EnhancedState& X) {
  return {gradings_of_state(X.state()).i, gradings_of_enhancement(X).j};
}

BiGrading bigrading(const LinkDiagram& d, const EnhancedKey& k) {
  const int n = d.crossing_count();
  const int w = d.writhe();
  const int b = __builtin_popcountll(k.s);
  const int i = (w - (n - 2 * b)) / 2;
  const int circles = resolve_smoothing(d, k.s)->size();
  const int tau = 2 * __builtin_popcountll(k.l) - circles;
  return {i, w + i - tau};
}

std::vector<State> enumerate_states(const DiagramPtr& d, int cap) {
  const int n = d->crossing_count();
  if (n > cap) throw CapExceeded(std::to_string(n) + " crossings exceed the cap of " + std::to_string(cap));
  std::vector<Smoothing> words(std::size_t{1} << n);
  std::iota(words.begin(), words.end(), Smoothing{0});
  std::sort(words.begin(), words.end(), lex_less);
  std::vector<State> out;
  out.reserve(words.size());
  for (Smoothing s : words) out.emplace_back(d, s);
  return out;
}

std::vector<EnhancedState> enumerate_enhancements(const State& x, int cap) {
  const int c = x.circle_count();
  if (c > cap) throw CapExceeded(std::to_string(c) + " circles exceed the cap of " + std::to_string(cap));
  std::vector<LabelWord> words(std::size_t{1} << c);
  std::iota(words.begin(), words.end(), LabelWord{0});
  std::sort(words.begin(), words.end(), lex_less);
  std::vector<EnhancedState> out;
  out.reserve(words.size());
  for (LabelWord l : words) out.emplace_back(x, l);
  return out;
}

}  // namespace khplumb
