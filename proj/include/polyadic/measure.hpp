#pragma once

// Invariant Bernoulli measures mu_q of the polynomial adic system and the
// order-preserving coding theta_q of paths by points of [0, 1].

#include <cstdint>
#include <vector>

#include "polyadic/adic.hpp"

namespace polyadic {

// Root t_q in (0,1) of a_0 q^d + a_1 q^{d-1} t + ... + a_d t^d = q^{d-1}.
// Bisection to width 1e-8, then Newton polish. Requires d >= 1 and
// 0 < q < 1/a_0; throws NoRoot otherwise.
double solve_t(const GenPolynomial& p, double q);

// |a_0 q^d + a_1 q^{d-1} t + ... + a_d t^d - q^{d-1}|
double t_residual(const GenPolynomial& p, double q, double t);

class MeasureParams {
 public:
  // For d = 0 the only invariant measure is uniform and q must be 1/a_0.
  MeasureParams(GenPolynomial poly, double q);

  const GenPolynomial& poly() const noexcept { return poly_; }
  const LetterTable& letters() const noexcept { return letters_; }
  double q() const noexcept { return q_; }
  double t() const noexcept { return t_; }
  int alphabet_size() const noexcept { return letters_.size(); }

  // weight(c) = t^s / q^{s-1} for a letter of kstep s.
  double weight(Letter c) const { return weights_.at(static_cast<std::size_t>(c)); }
  const std::vector<double>& weights() const noexcept { return weights_; }
  // cumulative()[c] = sum of weights of letters below c; size r + 1.
  const std::vector<double>& cumulative() const noexcept { return cumulative_; }
  double max_weight() const noexcept;
  double residual() const;

 private:
  GenPolynomial poly_;
  LetterTable letters_;
  double q_;
  double t_;
  std::vector<double> weights_;
  std::vector<double> cumulative_;
};

std::vector<double> letter_weights(const MeasureParams& mp);

// Weight vectors of the two invariant measures that are not fully supported:
// uniform on the kstep-0 letters (limit q -> 1/a_0) and uniform on the
// kstep-d letters (limit q -> 0).
std::vector<double> boundary_weights_low(const GenPolynomial& p);
std::vector<double> boundary_weights_high(const GenPolynomial& p);

// Product of letter weights; equals q^n (t/q)^kappa(w).
double cylinder_measure(const MeasureParams& mp, const Word& w);

// n i.i.d. letters from the weight vector, reproducible from the seed.
Word sample_word(const MeasureParams& mp, int n, std::uint64_t seed);

// Endless letter stream with the same law (and the same first letters) as
// sample_word(mp, n, seed).
PathPrefix::Source sampling_source(const MeasureParams& mp, std::uint64_t seed);

// Deterministic path whose letter counts track the weights: block j holds
// round((j+1) L w_c) - round(j L w_c) copies of each letter c, highest label
// first, so every block ends on its smallest letters and the running kappa_n
// stays within O(1) of its mean.
PathPrefix::Source balanced_source(const MeasureParams& mp, int block = 8);

struct CodingParams {
  MeasureParams measure;
  int max_depth = 64;  // M_max
};

// Nested-interval coding, first letter most significant; empty word -> 0.
double encode_theta(const MeasureParams& mp, const Word& w);
inline double encode_theta(const CodingParams& cp, const Word& w) { return encode_theta(cp.measure, w); }

// First m digits of the q-r-adic expansion of x in [0,1]. Intervals are
// half-open; the point 1 takes the top letter at every depth.
Word decode_digits(const CodingParams& cp, double x, int m);

// Sorted, deduplicated left endpoints of all rank-m intervals.
std::vector<double> stationary_points(const CodingParams& cp, int m, std::size_t budget = std::size_t{1} << 22);

namespace detail {

// One decoding step, shared with the batch kernels so that both make the same
// floating-point decisions.
inline Letter decode_step(const std::vector<double>& cumulative, int r, double x, double lo, double width) {
  Letter c = 0;
  for (Letter b = 1; b < r; ++b) {
    if (lo + width * cumulative[static_cast<std::size_t>(b)] <= x || x >= 1.0) c = b;
  }
  return c;
}

}  // namespace detail

}  // namespace polyadic
