#pragma once

// Reparametrization maps S_{q1,q2}: decode x under mu_{q1}, re-encode the
// digits under mu_{q2}. Their q2-derivatives at q2 = q1 are the generalized
// Takagi functions T^k_{p,q}; they are computed by re-encoding with truncated
// Taylor jets of the letter weights.

#include <optional>
#include <span>
#include <vector>

#include "polyadic/jet.hpp"
#include "polyadic/kernels.hpp"
#include "polyadic/measure.hpp"

namespace polyadic {

// Taylor coefficients of q2 -> t_{q2} at q2 = q, to order K.
Jet t_jet(const GenPolynomial& p, double q, int K);

// Jets of the letter weights t^s q^{1-s} and of their cumulative sums
// (size r + 1) as functions of q2 around q.
std::vector<Jet> weight_jets(const GenPolynomial& p, double q, int K);
std::vector<Jet> cumulative_jets(const std::vector<Jet>& weights);

// Smallest M with p_max^{0.99 M} < tol; 60 when no tolerance is given.
int auto_depth(double p_max, std::optional<double> tol = std::nullopt);

double s_map(const MeasureParams& from, const MeasureParams& to, double x, int M);
double s_map(const GenPolynomial& p, double q1, double q2, double x, int M);

struct TakagiParams {
  GenPolynomial poly;
  double q = 0.5;
  int k = 1;
  int depth = 60;
  int grid = 1024;
};

// Evaluates x -> T^j_{p,q}(x) for all j <= order from one decoding pass.
class TakagiEvaluator {
 public:
  TakagiEvaluator(const GenPolynomial& p, double q, int order, int depth);

  const MeasureParams& measure() const noexcept { return measure_; }
  int order() const noexcept { return order_; }
  int depth() const noexcept { return depth_; }

  // Jet of q2 -> S_{q,q2}(x) (raw Taylor coefficients).
  Jet s_jet(double x) const;
  // k! times the k-th coefficient; k = 0 gives S_{q,q}(x), i.e. x up to the tail.
  double derivative(int k, double x) const;

  // Coefficients for the first-order batch kernel.
  kernels::SlopeCoding slope_coding() const;

 private:
  MeasureParams measure_;
  int order_;
  int depth_;
  std::vector<Jet> weights_;
  std::vector<Jet> cumulative_;
};

// T^k_{p,q}(x); k = 0 returns x itself.
double takagi_derivative(const GenPolynomial& p, double q, int k, double x, int M = 60);

// T^1_{p,q} on a batch of points through the dispatched kernel.
std::vector<double> T1_grid(const GenPolynomial& p, double q, std::span<const double> xs, int M = 60);
std::vector<double> T1_grid(const GenPolynomial& p, double q, std::span<const double> xs, int M, kernels::Isa isa);

// x_i = i / grid, i = 0..grid.
std::vector<double> uniform_grid(int grid);

struct ParabolaRow {
  double x;
  double value;      // -T^1(x) / (d + 1) for p = 1 + z + ... + z^d at q = 1/(d+1)
  double parabola;   // x (1 - x)
  double deviation;  // |value - parabola|
};

std::vector<ParabolaRow> parabola_profile(int d, int grid, int M = 60);
// a (1 - a) (d + 1) / d at a = i / (d + 1).
double parabola_boundary_value(int d, int i);

// |S(x0 + r1 x) - S(x0) - r2 S(x)| with x0 = theta_{q1}(w0) and r_q the
// q-measure of the cylinder w0.
double self_affinity_residual(const GenPolynomial& p, double q1, double q2, const Word& w0, double x, int M = 60);

}  // namespace polyadic
