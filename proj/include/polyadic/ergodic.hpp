#pragma once

// Ergodic sums of cylindric functions along the towers of B_p, normalized
// fluctuation curves, limiting-curve extraction and the boundedness test for
// the normalizing coefficients.
//
// All tower sums are exact: g-values are read as exact binary rationals,
// counts are exact big integers, and each reported real is one rounding of an
// exact rational.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "polyadic/adic.hpp"
#include "polyadic/error.hpp"
#include "polyadic/measure.hpp"

namespace polyadic {

// A function of the first N letters of a path; missing words mean 0.
class CylFunction {
 public:
  static constexpr std::size_t kWordBudget = std::size_t{1} << 24;

  CylFunction(GenPolynomial poly, int rank);

  const GenPolynomial& poly() const noexcept { return poly_; }
  int rank() const noexcept { return rank_; }
  const std::map<Word, double>& values() const noexcept { return values_; }

  void set(const Word& key, double value);
  // Value on the cylinder of w's first N letters. Requires |w| >= N.
  double operator()(const Word& w) const;

  static CylFunction constant(GenPolynomial poly, int rank, double c);
  // Tabulates rule(v) over all r^N words v.
  template <class Rule>
  static CylFunction tabulate(GenPolynomial poly, int rank, Rule rule);

  // {"poly": [a_0,...], "N": int, "values": {"word": real, ...}}
  std::string to_json() const;
  static CylFunction from_json(const std::string& text);
  static CylFunction load(const std::string& path);

 private:
  GenPolynomial poly_;
  int rank_;
  std::map<Word, double> values_;
};

// All r^N words of length N in lexicographic order (first letter slowest).
std::vector<Word> all_words(int alphabet_size, int length, std::size_t budget = CylFunction::kWordBudget);

template <class Rule>
CylFunction CylFunction::tabulate(GenPolynomial poly, int rank, Rule rule) {
  CylFunction g(poly, rank);
  for (const Word& v : all_words(poly.alphabet_size(), rank)) {
    const double value = rule(v);
    if (value != 0.0) g.set(v, value);
  }
  return g;
}

// h_l = sum of g(v) over words v of length N into vertex (N, l).
struct HCoeffs {
  std::vector<BigRational> exact;  // length Nd + 1
  std::vector<double> values() const;
};

HCoeffs h_coeffs(const CylFunction& g, const Diagram& diagram);

// F(H_{n,kappa}) = sum_l h_l C_p(n - N, kappa - l).
BigRational tower_total_exact(const HCoeffs& h, int rank, int n, long kappa, const Diagram& diagram);
double tower_total(const HCoeffs& h, int rank, int n, long kappa, const Diagram& diagram);

// Sum of g over the words u into (n, kappa(w)) with rank(u) <= rank(w).
BigRational partial_sum_exact(const CylFunction& g, const Word& w, const Diagram& diagram);
double partial_sum(const CylFunction& g, const Word& w, const Diagram& diagram);

// Reference: all partial sums of the tower, walked with the adic successor
// from the minimal word. Requires dim(n, kappa) <= limit.
std::vector<double> brute_tower_sums(const CylFunction& g, int n, long kappa, const Diagram& diagram,
                                     std::size_t limit = 1'000'000);

struct GridNode {
  Word top;    // letters at levels n-m+1..n
  BigInt rank; // L(u), rank of the minimal completion
  Word word;   // minimal completion of `top`
};

// One node per reachable top word of length m, sorted by rank.
std::vector<GridNode> node_grid(int n, long kappa, int m, const Diagram& diagram,
                                std::size_t budget = std::size_t{1} << 22);

struct CurvePoint {
  double x;
  double y;
};

struct PolygonalCurve {
  std::vector<CurvePoint> nodes;  // x strictly increasing, from (0,0) to (1,0)
  BigRational normalizer;         // R
  int n = 0;
  long kappa = 0;
  int depth = 0;

  double operator()(double x) const;  // linear interpolation
};

// phi_{n,kappa} on the depth-m node grid: nodes (L/H, (F(L) - (L/H) F(H)) / R)
// with R the largest |numerator|. Throws DegenerateCurve if R = 0.
PolygonalCurve fluctuation_curve(const CylFunction& g, int n, long kappa, int m, const Diagram& diagram);

// Largest |numerator| over the depth-m grid (zero allowed).
BigRational grid_normalizer(const CylFunction& g, int n, long kappa, int m, const Diagram& diagram);

// sup over the union of node abscissae of |c1 - c2|.
double sup_distance(const PolygonalCurve& c1, const PolygonalCurve& c2);

// Levels n <= n_max with rank(x_1..n)/dim(n, kappa_n) < eps (exact) and
// delta <= kappa_n / (nd) <= 1 - delta. eps = 1 admits every level.
std::vector<int> stabilizing_candidates(PathPrefix& x, double eps, double delta, int n_max, const Diagram& diagram);

struct ExtractionOptions {
  double eps = 0.1;
  double delta = 0.0;
  int depth = 6;
  double tol = 0.05;
  int n_max = 300;
  int min_level = 0;  // candidates below this level are skipped
};

struct ExtractionStep {
  int n;
  long kappa;
  double distance;  // to the previous candidate curve; NaN for the first
};

struct ExtractionResult {
  PolygonalCurve curve;
  std::vector<ExtractionStep> steps;
};

class NoConvergenceError : public Error {
 public:
  NoConvergenceError(const std::string& what, std::vector<ExtractionStep> steps)
      : Error(ErrorKind::NoConvergence, what), steps_(std::move(steps)) {}
  const std::vector<ExtractionStep>& steps() const noexcept { return steps_; }

 private:
  std::vector<ExtractionStep> steps_;
};

// Walks the stabilizing candidates of x and returns the first candidate curve
// within `tol` of its predecessor.
ExtractionResult extract_limiting_curve(const CylFunction& g, PathPrefix& x, const ExtractionOptions& options,
                                        const Diagram& diagram);

enum class Verdict { Bounded, Unbounded, Inconclusive };
const char* to_string(Verdict v);

struct RPoint {
  int n;
  long kappa;
  BigRational value;
};

struct CohomologyReport {
  Verdict verdict;
  std::vector<RPoint> series;
};

// Normalizing coefficients along the central ridge for N <= n <= n_max at
// depth min(m, n - N).
CohomologyReport cohomology_verdict(const CylFunction& g, int n_max, const Diagram& diagram, int depth = 6);

// Largest |F(j) - polygon(j)| over all ranks j of tower (n, kappa), where the
// polygon interpolates F at the depth-(n-N) node grid and the endpoints.
BigRational node_interpolation_gap(const CylFunction& g, int n, long kappa, const Diagram& diagram);

// For gamma_{n,k} = (1/R) sum_l alpha_l C_p(n-N, k-l) over the vertices
// below A = (nbar, kbar) (0 <= k <= kbar, nd - k <= nbar d - kbar), with R the
// largest |sum|: entry n-N holds log max_k |gamma_{n,k}| (NaN when all vanish).
std::vector<double> flattening_profile(const DimTable& table, int rank, const std::vector<double>& alpha,
                                       int nbar, long kbar);

// Least-squares slope of ys against xs, ignoring NaN entries.
double least_squares_slope(const std::vector<double>& xs, const std::vector<double>& ys);

// CSV "x,y" with header.
void write_curve_csv(std::ostream& out, const PolygonalCurve& curve);

}  // namespace polyadic
