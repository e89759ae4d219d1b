#pragma once

#include <optional>
#include <string>
#include <vector>

#include "khplumb/state.hpp"

namespace khplumb {

enum class Side { X, Y, Shared };

// Where a free loop of the glued diagram came from (ids are factor loop ids).
struct LoopOrigin {
  Side side = Side::X;
  int x_loop = 0;
  int y_loop = 0;
};

// Records how D_x and D_y sit inside D_z. Factor crossings map to crossings of
// D_z with the same slot numbering, so circles are matched through slots.
struct GluingMap {
  DiagramPtr dx, dy, dz;
  Smoothing x = 0;
  Smoothing y = 0;
  int r0 = 0;  // shared circle id in x
  int s0 = 0;  // shared circle id in y
  int t0 = 0;  // shared circle id in z
  std::vector<int> x_crossings;  // factor crossing -> crossing of D_z
  std::vector<int> y_crossings;
  std::vector<LoopOrigin> z_loops;  // z free loop -(f+1) -> origin
  std::string interleave;
  bool y_reversed = false;
  bool orientation_respected = false;

  bool x_first() const;
  Smoothing combine(Smoothing xs, Smoothing ys) const;
  State x_state() const { return State(dx, x); }
  State y_state() const { return State(dy, y); }
  State z_state() const { return State(dz, combine(x, y)); }
  // Circle ids of z in display order: x circles first, the shared circle at
  // position |x|-1 (0-based), then the remaining y circles.
  std::vector<int> display_order() const;
};

// Factor circles (ids) feeding each circle of the glued state, indexed by
// circle index of combine(xs, ys). Missing sides are nullopt.
struct CircleOrigin {
  std::optional<int> x;
  std::optional<int> y;
};
std::vector<CircleOrigin> circle_origins(const GluingMap& g, Smoothing xs, Smoothing ys);

class GluingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PlumbResult {
  DiagramPtr dz;
  State z;
  GluingMap map;
};

// Glues x (a state of dx) and y (a state of dy) along circles r0 and s0.
// interleave is a cyclic word in {x,y} giving the order of attachment points
// around the shared circle; empty means all x then all y.
PlumbResult plumb_diagrams(const DiagramPtr& dx, Smoothing x, int r0, const DiagramPtr& dy, Smoothing y, int s0,
                           const std::string& interleave = "");

// Splits a state along one of its circles: x keeps the crossings in
// x_crossings, y the rest. Factor diagrams are partial smoothings of D_z.
GluingMap deplumb(const State& z, int circle_id, const std::vector<int>& x_crossings);

}  // namespace khplumb
