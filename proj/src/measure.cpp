#include "polyadic/measure.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "polyadic/error.hpp"

namespace polyadic {

namespace {

// Phi(t) = sum_j a_j t^j q^{d-j} - q^{d-1} and its t-derivative. Evaluated in
// long double so the final Newton steps resolve the last bit of a double.
struct RootEquation {
  const GenPolynomial& p;
  long double q;

  long double value(long double t) const {
    const int d = p.degree();
    long double sum = 0.0L;
    for (int j = 0; j <= d; ++j) sum += p.coeff(j) * std::pow(t, j) * std::pow(q, d - j);
    return sum - std::pow(q, d - 1);
  }
  long double slope(long double t) const {
    const int d = p.degree();
    long double sum = 0.0L;
    for (int j = 1; j <= d; ++j) sum += j * p.coeff(j) * std::pow(t, j - 1) * std::pow(q, d - j);
    return sum;
  }
};

}  // namespace

double t_residual(const GenPolynomial& p, double q, double t) {
  return static_cast<double>(std::abs(RootEquation{p, q}.value(t)));
}

double solve_t(const GenPolynomial& p, double q) {
  if (p.degree() < 1) throw Error(ErrorKind::NoRoot, "root equation is degenerate for degree 0");
  if (!(q > 0.0) || !(q < 1.0 / p.coeff(0))) {
    throw Error(ErrorKind::NoRoot, "q=" + std::to_string(q) + " outside (0, 1/a_0)");
  }
  const RootEquation f{p, q};
  double lo = 0.0, hi = 1.0;
  if (!(f.value(lo) < 0.0) || !(f.value(hi) > 0.0)) {
    throw Error(ErrorKind::NoRoot, "no sign change on (0,1) for q=" + std::to_string(q));
  }
  while (hi - lo > 1e-8) {
    const double mid = 0.5 * (lo + hi);
    (f.value(mid) < 0.0 ? lo : hi) = mid;
  }
  long double tl = 0.5L * (lo + hi);
  for (int iter = 0; iter < 20; ++iter) {
    const long double step = f.value(tl) / f.slope(tl);
    tl -= step;
    if (std::abs(step) <= 1e-20L * tl) break;
  }
  const double t = static_cast<double>(tl);
  if (!(t > 0.0 && t < 1.0)) throw Error(ErrorKind::NoRoot, "Newton polish left (0,1)");
  return t;
}

MeasureParams::MeasureParams(GenPolynomial poly, double q)
    : poly_(std::move(poly)), letters_(poly_), q_(q), t_(0.0) {
  const int d = poly_.degree();
  if (d == 0) {
    if (std::abs(q * poly_.coeff(0) - 1.0) > 1e-12) {
      throw Error(ErrorKind::NoRoot, "odometer measure requires q = 1/a_0");
    }
    t_ = q_;
  } else {
    t_ = solve_t(poly_, q_);
  }
  weights_.resize(static_cast<std::size_t>(letters_.size()));
  for (Letter c = 0; c < letters_.size(); ++c) {
    const int s = letters_.kstep(c);
    weights_[static_cast<std::size_t>(c)] = std::pow(t_, s) / std::pow(q_, s - 1);
  }
  cumulative_.assign(weights_.size() + 1, 0.0);
  for (std::size_t c = 0; c < weights_.size(); ++c) cumulative_[c + 1] = cumulative_[c] + weights_[c];
}

double MeasureParams::max_weight() const noexcept {
  return *std::max_element(weights_.begin(), weights_.end());
}

double MeasureParams::residual() const {
  return poly_.degree() == 0 ? std::abs(poly_.coeff(0) * q_ - 1.0) : t_residual(poly_, q_, t_);
}

std::vector<double> letter_weights(const MeasureParams& mp) { return mp.weights(); }

namespace {

std::vector<double> uniform_on_kstep(const GenPolynomial& p, int s) {
  const LetterTable letters(p);
  std::vector<double> w(static_cast<std::size_t>(letters.size()), 0.0);
  for (Letter c = 0; c < letters.size(); ++c) {
    if (letters.kstep(c) == s) w[static_cast<std::size_t>(c)] = 1.0 / p.coeff(s);
  }
  return w;
}

}  // namespace

std::vector<double> boundary_weights_low(const GenPolynomial& p) { return uniform_on_kstep(p, 0); }
std::vector<double> boundary_weights_high(const GenPolynomial& p) { return uniform_on_kstep(p, p.degree()); }

double cylinder_measure(const MeasureParams& mp, const Word& w) {
  double width = 1.0;
  for (Letter c : w) width *= mp.weight(c);
  return width;
}

namespace {

Letter draw_letter(const MeasureParams& mp, std::mt19937_64& engine) {
  // 53 random bits; std::uniform_real_distribution is not reproducible across
  // standard libraries.
  const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
  const auto& cum = mp.cumulative();
  const int r = mp.alphabet_size();
  for (Letter c = 0; c + 1 < r; ++c) {
    if (u < cum[static_cast<std::size_t>(c + 1)]) return c;
  }
  return r - 1;
}

}  // namespace

Word sample_word(const MeasureParams& mp, int n, std::uint64_t seed) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "sample length must be non-negative");
  std::mt19937_64 engine(seed);
  Word w(static_cast<std::size_t>(n));
  for (auto& c : w) c = draw_letter(mp, engine);
  return w;
}

PathPrefix::Source sampling_source(const MeasureParams& mp, std::uint64_t seed) {
  return [mp, engine = std::mt19937_64(seed)]() mutable { return draw_letter(mp, engine); };
}

PathPrefix::Source balanced_source(const MeasureParams& mp, int block) {
  if (block < 1) throw Error(ErrorKind::InvalidArgument, "block length must be positive");
  return [w = mp.weights(), block, j = 0L, buf = Word{}, pos = std::size_t{0}]() mutable {
    while (pos == buf.size()) {
      buf.clear();
      pos = 0;
      for (Letter c = static_cast<Letter>(w.size()) - 1; c >= 0; --c) {
        const double wc = w[static_cast<std::size_t>(c)];
        const long count = std::lround((j + 1) * block * wc) - std::lround(j * block * wc);
        buf.insert(buf.end(), static_cast<std::size_t>(count), c);
      }
      ++j;
    }
    return buf[pos++];
  };
}

double encode_theta(const MeasureParams& mp, const Word& w) {
  const auto& cum = mp.cumulative();
  double lo = 0.0, width = 1.0;
  for (Letter c : w) {
    lo += width * cum.at(static_cast<std::size_t>(c));
    width *= mp.weight(c);
  }
  return lo;
}

Word decode_digits(const CodingParams& cp, double x, int m) {
  if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorKind::InvalidArgument, "decode needs x in [0,1]");
  if (m < 0) throw Error(ErrorKind::InvalidArgument, "decode depth must be non-negative");
  const auto& mp = cp.measure;
  const auto& cum = mp.cumulative();
  const int r = mp.alphabet_size();
  Word w(static_cast<std::size_t>(m));
  double lo = 0.0, width = 1.0;
  for (auto& digit : w) {
    digit = detail::decode_step(cum, r, x, lo, width);
    lo += width * cum[static_cast<std::size_t>(digit)];
    width *= mp.weight(digit);
  }
  return w;
}

std::vector<double> stationary_points(const CodingParams& cp, int m, std::size_t budget) {
  const auto& mp = cp.measure;
  const std::size_t r = static_cast<std::size_t>(mp.alphabet_size());
  std::size_t count = 1;
  for (int i = 0; i < m; ++i) {
    if (count > budget / r) throw Error(ErrorKind::Capacity, "r^m stationary points exceed budget");
    count *= r;
  }
  // Breadth-first over words so each point is produced by the same
  // floating-point sequence as encode_theta.
  std::vector<double> lo{0.0}, width{1.0};
  const auto& cum = mp.cumulative();
  for (int depth = 0; depth < m; ++depth) {
    std::vector<double> next_lo, next_width;
    next_lo.reserve(lo.size() * r);
    next_width.reserve(lo.size() * r);
    for (std::size_t i = 0; i < lo.size(); ++i) {
      for (std::size_t c = 0; c < r; ++c) {
        next_lo.push_back(lo[i] + width[i] * cum[c]);
        next_width.push_back(width[i] * mp.weights()[c]);
      }
    }
    lo.swap(next_lo);
    width.swap(next_width);
  }
  std::sort(lo.begin(), lo.end());
  lo.erase(std::unique(lo.begin(), lo.end()), lo.end());
  return lo;
}

}  // namespace polyadic
