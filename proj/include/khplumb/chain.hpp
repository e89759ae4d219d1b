#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "khplumb/ring.hpp"
#include "khplumb/state.hpp"

namespace khplumb {

using Terms = std::map<EnhancedKey, Scalar, KeyLess>;

// A finite linear combination of enhanced states of one diagram.
class Chain {
 public:
  Chain(DiagramPtr d, Ring r);
  static Chain of(const EnhancedState& X, Ring r, const Scalar& c = 1);

  Ring ring() const { return ring_; }
  const LinkDiagram& diagram() const { return *diagram_; }
  const DiagramPtr& diagram_ptr() const { return diagram_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add(const EnhancedKey& k, const Scalar& c);
  void add(const EnhancedState& X, const Scalar& c);
  Scalar coefficient(const EnhancedKey& k) const;
  EnhancedState state_of(const EnhancedKey& k) const;
  // Common bigrading of all terms; nullopt for the zero chain or mixed terms.
  std::optional<BiGrading> grading() const;

  Chain& operator+=(const Chain& o);
  Chain& operator-=(const Chain& o);
  Chain operator+(const Chain& o) const;
  Chain operator-(const Chain& o) const;
  Chain operator*(const Scalar& c) const;
  bool operator==(const Chain& o) const;

  std::string serialize() const;

 private:
  void check_compatible(const Chain& o) const;

  DiagramPtr diagram_;
  Ring ring_;
  Terms terms_;
};

// Calls f(t, key, sign) for every term of the signed differential of one
// enhanced state; sign is (-1)^(number of A-smoothings before t).
void for_each_boundary_term(const LinkDiagram& d, const EnhancedKey& X,
                            const std::function<void(int t, const EnhancedKey&, int sign)>& f);

// Unsigned edge map of the cube at crossing t.
Chain d_at_crossing(const EnhancedState& X, int t, Ring r);
Chain differential(const Chain& c);
Scalar augmentation(const Chain& c);
Chain project(const Chain& c, const std::set<EnhancedKey, KeyLess>& basis);

// Basepoint sides: the p-circle label is kept equal to side (1: subcomplex,
// 0: quotient complex). The reported quantum grading shifts by +1 for side 1
// and by -1 for side 0.
Chain normalized_differential(const Chain& c, int basepoint, int side);
int normalized_j(const EnhancedState& X, int side);

}  // namespace khplumb
