#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace khplumb {

enum class Ring { F2, Z, Q };

// All coefficients are stored as rationals; normalize() keeps them in the
// image of the chosen ring (F2 -> {0,1}, Z -> integers).
using Scalar = mpq_class;

Scalar normalize(Ring r, const Scalar& v);
bool in_two_r(Ring r, const Scalar& v);
std::string ring_name(Ring r);
Ring parse_ring(std::string_view s);
std::string scalar_string(const Scalar& v);

}  // namespace khplumb
