#include "polyadic/takagi.hpp"

#include <algorithm>
#include <cmath>

#include "polyadic/error.hpp"

namespace polyadic {

Jet t_jet(const GenPolynomial& p, double q, int K) {
  const double t0 = solve_t(p, q);
  if (K == 0) return Jet(0, t0);
  const int d = p.degree();
  const Jet Q = Jet::variable(K, q);
  Jet T(K, t0);
  // Newton on Phi(Q, T) = sum a_j T^j Q^{d-j} - Q^{d-1}; each step fixes at
  // least one more coefficient.
  for (int iter = 0; iter < 2 * K + 2; ++iter) {
    Jet phi(K), dphi(K);
    for (int j = 0; j <= d; ++j) {
      phi += p.coeff(j) * (T.pow(j) * Q.pow(d - j));
      if (j >= 1) dphi += (j * p.coeff(j)) * (T.pow(j - 1) * Q.pow(d - j));
    }
    phi -= Q.pow(d - 1);
    // The constant term is already a root; only the perturbation is updated.
    phi[0] = 0.0;
    const Jet next = T - phi / dphi;
    if (next.coeffs() == T.coeffs()) break;
    T = next;
  }
  return T;
}

std::vector<Jet> weight_jets(const GenPolynomial& p, double q, int K) {
  const LetterTable letters(p);
  const Jet Q = Jet::variable(K, q);
  const Jet T = t_jet(p, q, K);
  std::vector<Jet> out;
  out.reserve(static_cast<std::size_t>(letters.size()));
  for (Letter c = 0; c < letters.size(); ++c) {
    const int s = letters.kstep(c);
    out.push_back(T.pow(s) * Q.pow(1 - s));
  }
  return out;
}

std::vector<Jet> cumulative_jets(const std::vector<Jet>& weights) {
  if (weights.empty()) throw Error(ErrorKind::InvalidArgument, "no letter weights");
  std::vector<Jet> cum(weights.size() + 1, Jet(weights.front().order()));
  for (std::size_t c = 0; c < weights.size(); ++c) cum[c + 1] = cum[c] + weights[c];
  return cum;
}

int auto_depth(double p_max, std::optional<double> tol) {
  if (!tol) return 60;
  if (!(*tol > 0.0) || !(p_max > 0.0 && p_max < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "auto_depth needs 0 < p_max < 1 and tol > 0");
  }
  const double m = std::log(*tol) / (0.99 * std::log(p_max));
  int M = static_cast<int>(std::floor(m)) + 1;
  if (M < 1) M = 1;
  return M;
}

double s_map(const MeasureParams& from, const MeasureParams& to, double x, int M) {
  if (from.poly() != to.poly()) throw Error(ErrorKind::InvalidArgument, "s_map needs one polynomial");
  const Word digits = decode_digits(CodingParams{from, M}, x, M);
  return encode_theta(to, digits);
}

double s_map(const GenPolynomial& p, double q1, double q2, double x, int M) {
  return s_map(MeasureParams(p, q1), MeasureParams(p, q2), x, M);
}

TakagiEvaluator::TakagiEvaluator(const GenPolynomial& p, double q, int order, int depth)
    : measure_(p, q), order_(order), depth_(depth) {
  if (order < 0) throw Error(ErrorKind::InvalidArgument, "derivative order must be non-negative");
  if (depth < 1) throw Error(ErrorKind::InvalidArgument, "series depth must be positive");
  weights_ = weight_jets(p, q, order);
  cumulative_ = cumulative_jets(weights_);
}

Jet TakagiEvaluator::s_jet(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorKind::InvalidArgument, "x must lie in [0,1]");
  const auto& cum = measure_.cumulative();
  const int r = measure_.alphabet_size();
  double lo = 0.0, width = 1.0;
  Jet value(order_), scale(order_, 1.0);
  for (int depth = 0; depth < depth_; ++depth) {
    const Letter c = detail::decode_step(cum, r, x, lo, width);
    const std::size_t k = static_cast<std::size_t>(c);
    lo = lo + width * cum[k];
    width = width * measure_.weights()[k];
    value += scale * cumulative_[k];
    scale = scale * weights_[k];
  }
  return value;
}

double TakagiEvaluator::derivative(int k, double x) const {
  if (k < 0 || k > order_) throw Error(ErrorKind::InvalidArgument, "derivative order out of range");
  double factorial = 1.0;
  for (int i = 2; i <= k; ++i) factorial *= i;
  return factorial * s_jet(x)[k];
}

kernels::SlopeCoding TakagiEvaluator::slope_coding() const {
  if (order_ < 1) throw Error(ErrorKind::InvalidArgument, "slope coding needs first-order jets");
  kernels::SlopeCoding sc;
  sc.alphabet_size = measure_.alphabet_size();
  sc.depth = depth_;
  sc.cumulative = measure_.cumulative();
  sc.weight = measure_.weights();
  for (std::size_t c = 0; c < weights_.size(); ++c) {
    sc.cum_value.push_back(cumulative_[c][0]);
    sc.cum_slope.push_back(cumulative_[c][1]);
    sc.weight_value.push_back(weights_[c][0]);
    sc.weight_slope.push_back(weights_[c][1]);
  }
  return sc;
}

double takagi_derivative(const GenPolynomial& p, double q, int k, double x, int M) {
  if (k == 0) return x;
  return TakagiEvaluator(p, q, k, M).derivative(k, x);
}

std::vector<double> T1_grid(const GenPolynomial& p, double q, std::span<const double> xs, int M, kernels::Isa isa) {
  for (double x : xs) {
    if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorKind::InvalidArgument, "x must lie in [0,1]");
  }
  const auto coding = TakagiEvaluator(p, q, 1, M).slope_coding();
  std::vector<double> value(xs.size()), slope(xs.size());
  kernels::encode_slope(isa, coding, xs, value, slope);
  return slope;
}

std::vector<double> T1_grid(const GenPolynomial& p, double q, std::span<const double> xs, int M) {
  return T1_grid(p, q, xs, M, kernels::preferred_isa());
}

std::vector<double> uniform_grid(int grid) {
  if (grid < 1) throw Error(ErrorKind::InvalidArgument, "grid must be positive");
  std::vector<double> xs(static_cast<std::size_t>(grid) + 1);
  for (int i = 0; i <= grid; ++i) xs[static_cast<std::size_t>(i)] = static_cast<double>(i) / grid;
  return xs;
}

std::vector<ParabolaRow> parabola_profile(int d, int grid, int M) {
  if (d < 1) throw Error(ErrorKind::InvalidArgument, "parabola profile needs d >= 1");
  const GenPolynomial p(std::vector<int>(static_cast<std::size_t>(d) + 1, 1));
  const double q = 1.0 / (d + 1);
  const auto xs = uniform_grid(grid);
  const auto t1 = T1_grid(p, q, xs, M);
  std::vector<ParabolaRow> rows;
  rows.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    const double value = -t1[i] / (d + 1);
    const double parabola = x * (1.0 - x);
    rows.push_back({x, value, parabola, std::abs(value - parabola)});
  }
  return rows;
}

double parabola_boundary_value(int d, int i) {
  const double a = static_cast<double>(i) / (d + 1);
  return a * (1.0 - a) * (d + 1) / d;
}

namespace {

// S_{from,to} at an exact point: the digits come from rational nested
// intervals over the (double) weights, so the decoding of x0 + r1 x really is
// w0 followed by the digits of x. Floating decoding loses this once the
// rounding error is blown up by 1/width.
double s_map_exact(const MeasureParams& from, const MeasureParams& to, const BigRational& x, int M) {
  const auto& cum = from.cumulative();
  const int r = from.alphabet_size();
  Word digits;
  digits.reserve(static_cast<std::size_t>(M));
  BigRational rel = x;
  for (int depth = 0; depth < M; ++depth) {
    Letter c = r - 1;
    for (Letter b = 1; b < r; ++b) {
      if (rel < BigRational(cum[static_cast<std::size_t>(b)])) {
        c = b - 1;
        break;
      }
    }
    digits.push_back(c);
    rel = (rel - BigRational(cum[static_cast<std::size_t>(c)])) / BigRational(from.weight(c));
    rel.canonicalize();
  }
  return encode_theta(to, digits);
}

}  // namespace

double self_affinity_residual(const GenPolynomial& p, double q1, double q2, const Word& w0, double x, int M) {
  if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorKind::InvalidArgument, "x must lie in [0,1]");
  if (w0.empty()) return 0.0;
  const MeasureParams from(p, q1), to(p, q2);
  BigRational x0 = 0, r1 = 1;
  for (Letter c : w0) {
    x0 += r1 * BigRational(from.cumulative()[static_cast<std::size_t>(c)]);
    r1 *= BigRational(from.weight(c));
  }
  const double r2 = cylinder_measure(to, w0);
  BigRational shifted = x0 + r1 * BigRational(x);
  if (shifted > 1) shifted = 1;
  return std::abs(s_map_exact(from, to, shifted, M) - s_map_exact(from, to, x0, M) - r2 * s_map_exact(from, to, BigRational(x), M));
}

}  // namespace polyadic
