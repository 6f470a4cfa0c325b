#pragma once

#include <string>

#include "polyadic/polycomb.hpp"

namespace polyadic {

// Shortest round-trip decimal form of x.
std::string format_real(double x);

// Fixed-point decimal expansion of v, truncated toward zero after
// `fraction_digits` digits. Never uses exponent notation.
std::string decimal_string(const BigRational& v, int fraction_digits = 6);

}  // namespace polyadic
