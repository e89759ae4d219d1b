#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "khplumb/diagram.hpp"

namespace khplumb {

// Bit t set means a B-smoothing at crossing t.
using Smoothing = std::uint64_t;
// Bit r is the label of circle r in canonical circle order.
using LabelWord = std::uint64_t;

inline constexpr int kDefaultCap = 20;

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Circles of a smoothing. Free loops come first, then edge circles ordered by
// least edge label; a circle's id is its least edge label and free loops
// take the ids -k..-1.
struct Resolution {
  std::vector<int> edge_circle;  // dense edge -> circle index
  std::vector<int> ids;          // circle index -> id
  std::vector<int> rep_edge;     // circle index -> a dense edge, -1 for free loops
  int free_loops = 0;
  int size() const { return static_cast<int>(ids.size()); }
  int index_of(int id) const;  // -1 if absent
};

std::shared_ptr<const Resolution> resolve_smoothing(const LinkDiagram& d, Smoothing s);

struct BiGrading {
  int i = 0;
  int j = 0;
  auto operator<=>(const BiGrading&) const = default;
};

class State {
 public:
  State(DiagramPtr d, Smoothing s);

  const LinkDiagram& diagram() const { return *diagram_; }
  const DiagramPtr& diagram_ptr() const { return diagram_; }
  Smoothing smoothing() const { return smoothing_; }
  bool is_b(int t) const { return (smoothing_ >> t) & 1U; }
  int a_count() const;
  int b_count() const;
  const Resolution& resolution() const { return *res_; }
  int circle_count() const { return res_->size(); }
  const std::vector<int>& circle_ids() const { return res_->ids; }
  int circle_index(int id) const;  // throws if absent
  // Circle id containing the given edge label (or a free loop id).
  int circle_of(int edge_or_loop) const;
  std::string word() const;
  bool operator==(const State& o) const { return diagram_ == o.diagram_ && smoothing_ == o.smoothing_; }

 private:
  DiagramPtr diagram_;
  Smoothing smoothing_;
  std::shared_ptr<const Resolution> res_;
};

State resolve(DiagramPtr d, Smoothing s);
State resolve(DiagramPtr d, std::string_view word);
Smoothing parse_smoothing(std::string_view word, int crossings);
std::string smoothing_word(Smoothing s, int crossings);

struct StateGradings {
  int sigma = 0;
  int i = 0;
};
StateGradings gradings_of_state(const State& x);

// Ordering key of an enhanced state: lexicographic on the A/B word (crossing 0
// most significant, A < B), then on the label word (circle 0 first, 0 < 1).
struct EnhancedKey {
  Smoothing s = 0;
  LabelWord l = 0;
  bool operator==(const EnhancedKey&) const = default;
};

inline bool lex_less(std::uint64_t a, std::uint64_t b) {
  std::uint64_t x = a ^ b;
  if (x == 0) return false;
  return ((a >> __builtin_ctzll(x)) & 1U) == 0;
}

struct KeyLess {
  bool operator()(const EnhancedKey& a, const EnhancedKey& b) const {
    if (a.s != b.s) return lex_less(a.s, b.s);
    return lex_less(a.l, b.l);
  }
};

struct KeyHash {
  std::size_t operator()(const EnhancedKey& k) const {
    return std::hash<std::uint64_t>()(k.s * 0x9E3779B97F4A7C15ULL ^ k.l);
  }
};

class EnhancedState {
 public:
  EnhancedState(State x, LabelWord labels);

  const State& state() const { return state_; }
  const LinkDiagram& diagram() const { return state_.diagram(); }
  LabelWord labels() const { return labels_; }
  int label(int circle_index) const { return (labels_ >> circle_index) & 1U; }
  int label_of(int circle_id) const { return label(state_.circle_index(circle_id)); }
  EnhancedKey key() const { return {state_.smoothing(), labels_}; }
  std::string label_word() const;
  EnhancedState with_label(int circle_index, int value) const;
  bool operator==(const EnhancedState& o) const { return state_ == o.state_ && labels_ == o.labels_; }

 private:
  State state_;
  LabelWord labels_;
};

EnhancedState enhance(const State& x, std::string_view label_word);

struct EnhancementGradings {
  int tau = 0;
  int j = 0;
};
EnhancementGradings gradings_of_enhancement(const EnhancedState& X);
BiGrading bigrading(const EnhancedState& X);
BiGrading bigrading(const LinkDiagram& d, const EnhancedKey& k);

std::vector<State> enumerate_states(const DiagramPtr& d, int cap = kDefaultCap);
std::vector<EnhancedState> enumerate_enhancements(const State& x, int cap = kDefaultCap);

}  // namespace khplumb
