#pragma once

#include <optional>
#include <string>
#include <vector>

#include "khplumb/chain.hpp"
#include "khplumb/structure.hpp"

namespace khplumb {

class DetectionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct XPair {
  EnhancedState minus;  // basepoint circle labelled 1
  EnhancedState plus;   // basepoint circle labelled 0
};

// Labels every circle by zone propagation from the basepoint circle p (an id).
// Components of G_x away from p are rooted at their smallest circle.
XPair construct_xpm(const State& x, int p);

// j_x with j(X-) = j_x - 1 and j(X+) = j_x + 1. When G_x is disconnected the
// components not containing p contribute their root labels; without p the
// component of the first circle is taken.
int j_target(const State& x, std::optional<int> p = std::nullopt);

// True iff eps(pi_[X]_B(dW)) lies in 2R for every W of bigrading (i_X - 1, j_X).
// Only states one A->B flip below x can reach [X]_B, so only those are scanned.
bool check_2r_image(const EnhancedState& X, Ring r);
// Same test over the whole chain group C^{i-1,j}; slow, for cross-checking.
bool check_2r_image_exhaustive(const EnhancedState& X, Ring r, int cap = kDefaultCap);

// |[X]_A intersect [X]_B| == 1
bool prop1_singleton(const EnhancedState& X);

enum class Verdict { Certified, HypothesisFailed, CheckFailed };
std::string verdict_name(Verdict v);

struct SideReport {
  EnhancedState x;
  BiGrading grading;
  Chain trace;             // over the certificate ring
  bool prop1 = false;
  bool cycle = false;
  bool two_r = false;
  bool nonboundary_f2 = false;
  std::optional<bool> nonboundary_z;  // set when the Z gate passes
};

struct DetectionCertificate {
  State state;
  int basepoint = 0;
  Ring ring = Ring::F2;
  int i_x = 0;
  int j_x = 0;
  bool homogeneously_adequate = false;
  bool a_zones_bipartite = false;
  bool connected = false;
  std::optional<SideReport> minus;
  std::optional<SideReport> plus;
  Verdict verdict = Verdict::CheckFailed;
  std::string method = "direct";
  std::vector<std::string> diagnostics;
  std::vector<std::string> steps;  // inductive route only

  bool certified() const { return verdict == Verdict::Certified; }
};

// Builds X+-, their traces, and runs every check. Hypothesis failures are
// reported in the certificate rather than thrown. Q is rejected.
DetectionCertificate certify(const State& x, int p, Ring r);

// Same conclusions reached by de-plumbing along cut circles and rebuilding the
// traces with the plumbing identities.
DetectionCertificate inductive_certify(const State& x, int p, Ring r);

}  // namespace khplumb
