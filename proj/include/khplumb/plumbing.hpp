#pragma once

#include <vector>

#include "khplumb/chain.hpp"
#include "khplumb/gluing.hpp"
#include "khplumb/structure.hpp"

namespace khplumb {

class PlumbUndefined : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Trump { Left, Right };

// Circle ids of z at which it can be de-plumbed (cut vertices of G_z).
std::vector<int> deplumb_circles(const State& z);

// X*Y; X enhances g.x and Y enhances g.y. Throws PlumbUndefined when the
// labels on the shared circle differ.
EnhancedState plumb(const EnhancedState& X, const EnhancedState& Y, const GluingMap& g);

// Left: X' may enhance any state of D_x, Y enhances g.y, and X' wins on the
// shared circle. Right: X enhances g.x, Y' any state of D_y, and Y' wins.
EnhancedState trump(const EnhancedState& X, const EnhancedState& Y, const GluingMap& g, Trump side);

// Inverse of plumb on enhancements of g.z_state().
std::pair<EnhancedState, EnhancedState> unplumb(const EnhancedState& Z, const GluingMap& g);

struct TermPair {
  EnhancedState x;
  EnhancedState y;
  Scalar coeff;
};

Chain plumb_pairs(const std::vector<TermPair>& pairs, const GluingMap& g, Ring r);
// Bilinear product over all term pairs; every pair must agree on the shared circle.
Chain plumb_chains(const Chain& cx, const Chain& cy, const GluingMap& g);
Chain trump_plumb(const Chain& cx, const Chain& cy, const GluingMap& g, Trump side);

// d(X*Y) == dX <>* Y + (-1)^{|A|_x} X *<> dY. Needs x-first crossing order.
bool verify_leibniz(const EnhancedState& X, const EnhancedState& Y, const GluingMap& g, Ring r = Ring::Z);

// X*Y + X'*Y' where Ysum = Y + Y' is split by the label on the shared circle.
Chain plumb_cycle(const Chain& X, const Chain& Xp, const Chain& Ysum, const GluingMap& g);

// tr(X*Y), assembled from the factor traces and checked against the trace
// taken directly in D_z.
Chain plumb_trace_cycle(const EnhancedState& X, const EnhancedState& Y, const GluingMap& g, Ring r);

struct Transfer2R {
  EnhancedState x;
  EnhancedState y;
  EnhancedState z;
  bool kept = true;       // false when new class representatives were chosen
  bool verified = false;  // the 2R property of z, checked directly
};

Transfer2R transfer_2r(const EnhancedState& X, const EnhancedState& Y, const GluingMap& g, Ring r);

}  // namespace khplumb
