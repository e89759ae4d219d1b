#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <vector>

#include "khplumb/chain.hpp"
#include "khplumb/laurent.hpp"
#include "khplumb/linalg.hpp"

namespace khplumb {

// Canonical basis of C^{i,j}.
std::vector<EnhancedKey> chain_basis(const LinkDiagram& d, BiGrading g, int cap = kDefaultCap);

// Every nonzero chain group, keyed by bigrading.
std::map<BiGrading, std::vector<EnhancedKey>> chain_bases(const LinkDiagram& d, int cap = kDefaultCap);

// Matrix of d : C^{i,j} -> C^{i+1,j}. Rows index C^{i+1,j}, columns C^{i,j}.
struct BoundaryMatrix {
  BiGrading grading;
  Ring ring = Ring::Z;
  std::vector<EnhancedKey> rows;
  std::vector<EnhancedKey> cols;
  IntMatrix matrix;
};

BoundaryMatrix boundary_matrix(const LinkDiagram& d, BiGrading g, Ring r, int cap = kDefaultCap);

struct HomologyGroup {
  int rank = 0;
  std::vector<mpz_class> torsion;  // only over Z
};

using HomologyTable = std::map<BiGrading, HomologyGroup>;

HomologyTable homology(const LinkDiagram& d, Ring r, int cap = kDefaultCap);

bool is_cycle(const Chain& c);

struct BoundaryCheck {
  bool exact = false;
  std::optional<Chain> witness;
};

// Solves dY = c in C^{i-1,j}. Throws on a non-homogeneous chain.
BoundaryCheck is_boundary(const Chain& c);

// Sum of (-1)^i q^j rk C^{i,j}.
Laurent jones_polynomial(const LinkDiagram& d, int cap = kDefaultCap);
// Sum over states of (-1)^{i_x} q^{(3w - sigma_x)/2} (q + q^-1)^{circles}.
Laurent state_sum_jones(const LinkDiagram& d, int cap = kDefaultCap);
// Sum of (-1)^i q^j rank Kh^{i,j}.
Laurent euler_characteristic(const HomologyTable& h);
// Graded Euler characteristic of the basepointed complex on one side.
Laurent normalized_euler_characteristic(const LinkDiagram& d, int basepoint, int side, int cap = kDefaultCap);

}  // namespace khplumb
