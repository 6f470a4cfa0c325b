#pragma once

// Batch kernels for grid evaluation of the reparametrization map and its
// first parameter derivative: decode each x under one measure, re-encode the
// digits with first-order jets of another. One lane per grid point.
//
// Every variant performs the same floating-point operations in the same order
// (no contraction into FMA), so all variants agree bit for bit.

#include <span>
#include <vector>

namespace polyadic::kernels {

struct SlopeCoding {
  int alphabet_size = 0;
  int depth = 0;
  // Decoding measure: cumulative weights (size r + 1) and weights (size r).
  std::vector<double> cumulative;
  std::vector<double> weight;
  // Re-encoding jets (value, first derivative) per letter.
  std::vector<double> cum_value, cum_slope;
  std::vector<double> weight_value, weight_slope;
};

enum class Isa { Scalar, Avx2 };

const char* to_string(Isa isa);
bool isa_available(Isa isa);
// Widest available ISA; the environment variable POLYADIC_ISA=scalar forces
// the reference path.
Isa preferred_isa();

// value[i] = re-encoded x[i], slope[i] = its derivative. Spans must have
// equal sizes; every x must lie in [0, 1].
void encode_slope(Isa isa, const SlopeCoding& coding, std::span<const double> x, std::span<double> value,
                  std::span<double> slope);

inline void encode_slope(const SlopeCoding& coding, std::span<const double> x, std::span<double> value,
                         std::span<double> slope) {
  encode_slope(preferred_isa(), coding, x, value, slope);
}

void encode_slope_scalar(const SlopeCoding& coding, std::span<const double> x, std::span<double> value,
                         std::span<double> slope);
// Only callable when isa_available(Isa::Avx2).
void encode_slope_avx2(const SlopeCoding& coding, std::span<const double> x, std::span<double> value,
                       std::span<double> slope);

}  // namespace polyadic::kernels
