#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace khplumb {

class DiagramError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Slots are edge labels listed counterclockwise, starting at the incoming
// under-strand. The under-strand runs slot 0 -> slot 2.
struct Crossing {
  std::array<int, 4> slots{};
  bool operator==(const Crossing&) const = default;
};

struct SlotRef {
  int crossing = -1;
  int slot = -1;
  bool operator==(const SlotRef&) const = default;
};

class LinkDiagram {
 public:
  // reversed[k] flips the default direction of component k (components are
  // ordered by their least edge label).
  explicit LinkDiagram(std::vector<Crossing> crossings, int free_loops = 0,
                       std::vector<bool> reversed = {});

  const std::vector<Crossing>& crossings() const { return crossings_; }
  int crossing_count() const { return static_cast<int>(crossings_.size()); }
  int free_loops() const { return free_loops_; }

  // Edges are addressed by a dense index 0..edge_count()-1 in label order.
  int edge_count() const { return static_cast<int>(labels_.size()); }
  int edge_label(int e) const { return labels_[e]; }
  int edge_index(int label) const;  // throws DiagramError if absent
  bool has_edge(int label) const;
  const std::array<SlotRef, 2>& edge_ends(int e) const { return ends_[e]; }
  int edge_at(int crossing, int slot) const { return slot_edge_[crossing][slot]; }
  SlotRef other_end(int e, SlotRef at) const;

  // Orientation: each edge runs from its tail endpoint to its head endpoint.
  int component_count() const { return static_cast<int>(components_.size()); }
  const std::vector<int>& component(int k) const { return components_[k]; }
  int component_of_edge(int e) const { return edge_component_[e]; }
  const std::vector<bool>& reversed() const { return reversed_; }
  SlotRef edge_head(int e) const;
  SlotRef edge_tail(int e) const;
  int crossing_sign(int t) const;
  int writhe() const { return writhe_; }

  // Stable identifier of the content; equal diagrams built separately differ.
  std::uint64_t uid() const { return uid_; }

  bool operator==(const LinkDiagram& o) const {
    return crossings_ == o.crossings_ && free_loops_ == o.free_loops_ &&
           reversed_ == o.reversed_;
  }

 private:
  void build_edges();
  void build_components();
  void check_planar() const;

  std::vector<Crossing> crossings_;
  int free_loops_ = 0;
  std::vector<bool> reversed_;

  std::vector<int> labels_;
  std::vector<std::array<SlotRef, 2>> ends_;
  std::vector<std::array<int, 4>> slot_edge_;
  std::vector<std::vector<int>> components_;
  std::vector<int> edge_component_;
  std::vector<int> default_head_;  // index into ends_[e] of the default head
  std::uint64_t uid_ = 0;
  int writhe_ = 0;
};

using DiagramPtr = std::shared_ptr<const LinkDiagram>;

LinkDiagram parse_pd(std::string_view text);
LinkDiagram load_pd(const std::string& path);
std::string serialize_pd(const LinkDiagram& d);
int writhe(const LinkDiagram& d);
LinkDiagram mirror(const LinkDiagram& d);
LinkDiagram reverse_orientation(const LinkDiagram& d);

// Closure of a braid on `strands` strands; +k / -k is sigma_k / its inverse
// (1-based). Strands run upward and are oriented that way. Untouched strands
// become free loops.
LinkDiagram braid_closure(int strands, const std::vector<int>& word);

// Builds a diagram whose component directions follow desired_head wherever it
// gives an answer (keyed by edge label). Sets *consistent to false if some
// component receives contradicting requests; those components keep the
// default direction.
LinkDiagram orient_by_heads(
    std::vector<Crossing> crossings, int free_loops,
    const std::function<std::optional<SlotRef>(int label)>& desired_head,
    bool* consistent = nullptr);

}  // namespace khplumb
