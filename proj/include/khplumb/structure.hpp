#pragma once

#include <cstddef>
#include <vector>

#include "khplumb/chain.hpp"

namespace khplumb {

enum class ArcKind { A, B };

// Crossing arc of a state: joins the circles on either side of crossing t.
struct GraphEdge {
  int crossing = 0;
  int u = 0;  // circle indices
  int v = 0;
  ArcKind kind = ArcKind::A;
  bool is_loop() const { return u == v; }
};

struct StateGraph {
  int vertex_count = 0;
  std::vector<GraphEdge> edges;
};

StateGraph state_graph(const State& x);

struct Zone {
  ArcKind kind = ArcKind::A;
  std::vector<int> circles;    // circle indices, ascending
  std::vector<int> crossings;  // ascending
  bool bipartite = true;
  std::vector<int> color;      // parallel to circles (0/1), meaningful when bipartite
};

class SignUndefined : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ZoneDecomposition {
  StateGraph graph;
  std::vector<std::vector<int>> blocks;  // crossing indices per block
  std::vector<int> cut_circles;          // circle indices lying in two or more blocks
  std::vector<Zone> a_zones;
  std::vector<Zone> b_zones;
  bool adequate = true;
  bool homogeneous = true;
  bool connected = true;

  bool homogeneously_adequate() const { return adequate && homogeneous; }
  bool a_zones_bipartite() const;
  // Zone containing the circle, or -1.
  int zone_of(ArcKind kind, int circle) const;
};

ZoneDecomposition zone_decomposition(const State& x);

struct EquivalenceClass {
  ArcKind kind = ArcKind::A;
  EnhancedKey base;
  std::vector<EnhancedKey> members;  // canonical order
  bool contains(const EnhancedKey& k) const;
};

inline constexpr std::size_t kOrbitCap = 1000000;

EquivalenceClass equivalence_class(const EnhancedState& X, ArcKind kind, std::size_t cap = kOrbitCap);

// Sign of the move sequence X -> Y across A-arcs. Throws SignUndefined when a
// non-bipartite A-zone of X carries a 0 or when Y is not A-equivalent to X.
int a_sign(const EnhancedState& X, const EnhancedState& Y);

Chain a_trace(const EnhancedState& X, Ring r);
bool trace_cycle_check(const EnhancedState& X, Ring r);

}  // namespace khplumb
