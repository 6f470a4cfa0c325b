#include "polyadic/ergodic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "polyadic/format.hpp"

namespace polyadic {

// ---- CylFunction ---------------------------------------------------------

CylFunction::CylFunction(GenPolynomial poly, int rank) : poly_(std::move(poly)), rank_(rank) {
  if (rank_ < 1) throw Error(ErrorKind::InvalidArgument, "cylindric function rank must be >= 1");
  std::size_t count = 1;
  for (int i = 0; i < rank_; ++i) {
    count *= static_cast<std::size_t>(poly_.alphabet_size());
    if (count > kWordBudget) throw Error(ErrorKind::Capacity, "r^N exceeds the word budget");
  }
}

void CylFunction::set(const Word& key, double value) {
  if (static_cast<int>(key.size()) != rank_) {
    throw Error(ErrorKind::InvalidArgument, "cylinder key length differs from rank");
  }
  for (Letter c : key) {
    if (c < 0 || c >= poly_.alphabet_size()) throw Error(ErrorKind::InvalidArgument, "letter outside alphabet");
  }
  if (!std::isfinite(value)) throw Error(ErrorKind::InvalidArgument, "cylindric function values must be finite");
  if (value == 0.0) {
    values_.erase(key);
  } else {
    values_[key] = value;
  }
}

double CylFunction::operator()(const Word& w) const {
  if (static_cast<int>(w.size()) < rank_) throw Error(ErrorKind::InvalidArgument, "word shorter than rank");
  const Word key(w.begin(), w.begin() + rank_);
  auto it = values_.find(key);
  return it == values_.end() ? 0.0 : it->second;
}

CylFunction CylFunction::constant(GenPolynomial poly, int rank, double c) {
  return tabulate(std::move(poly), rank, [c](const Word&) { return c; });
}

std::string CylFunction::to_json() const {
  nlohmann::ordered_json doc;
  doc["poly"] = poly_.coeffs();
  doc["N"] = rank_;
  nlohmann::ordered_json values = nlohmann::ordered_json::object();
  for (const auto& [word, value] : values_) values[format_word(word, poly_.alphabet_size())] = value;
  doc["values"] = values;
  return doc.dump(2);
}

CylFunction CylFunction::from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
    CylFunction g(GenPolynomial(doc.at("poly").get<std::vector<int>>()), doc.at("N").get<int>());
    for (const auto& [key, value] : doc.at("values").items()) {
      g.set(parse_word(key, g.poly().alphabet_size()), value.get<double>());
    }
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("cylindric function JSON: ") + e.what());
  }
}

CylFunction CylFunction::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return from_json(buffer.str());
}

std::vector<Word> all_words(int alphabet_size, int length, std::size_t budget) {
  std::size_t count = 1;
  for (int i = 0; i < length; ++i) {
    if (count > budget / static_cast<std::size_t>(alphabet_size)) {
      throw Error(ErrorKind::Capacity, "r^m words exceed budget");
    }
    count *= static_cast<std::size_t>(alphabet_size);
  }
  std::vector<Word> words;
  words.reserve(count);
  Word w(static_cast<std::size_t>(length), 0);
  for (std::size_t i = 0; i < count; ++i) {
    words.push_back(w);
    for (int pos = length - 1; pos >= 0; --pos) {
      if (++w[static_cast<std::size_t>(pos)] < alphabet_size) break;
      w[static_cast<std::size_t>(pos)] = 0;
    }
  }
  return words;
}

// ---- exact tower sums ----------------------------------------------------

std::vector<double> HCoeffs::values() const {
  std::vector<double> out;
  out.reserve(exact.size());
  for (const auto& h : exact) out.push_back(h.get_d());
  return out;
}

HCoeffs h_coeffs(const CylFunction& g, const Diagram& diagram) {
  const LetterTable& letters = diagram.letters();
  HCoeffs h;
  h.exact.assign(static_cast<std::size_t>(g.rank() * letters.degree() + 1), BigRational(0));
  for (const auto& [word, value] : g.values()) {
    h.exact[static_cast<std::size_t>(letters.vertex_index(word))] += BigRational(value);
  }
  return h;
}

BigRational tower_total_exact(const HCoeffs& h, int rank, int n, long kappa, const Diagram& diagram) {
  if (n < rank) throw Error(ErrorKind::InvalidArgument, "tower level below the function rank");
  BigRational total = 0;
  for (std::size_t l = 0; l < h.exact.size(); ++l) {
    const BigInt& count = diagram.table().dim(n - rank, kappa - static_cast<long>(l));
    if (sgn(count) != 0 && sgn(h.exact[l]) != 0) total += h.exact[l] * count;
  }
  return total;
}

double tower_total(const HCoeffs& h, int rank, int n, long kappa, const Diagram& diagram) {
  return tower_total_exact(h, rank, n, kappa, diagram).get_d();
}

namespace {

// Block-decomposition evaluator of tower partial sums for one g.
class SumEngine {
 public:
  SumEngine(const CylFunction& g, const Diagram& diagram)
      : g_(g), diagram_(diagram), h_(h_coeffs(g, diagram)) {
    if (!(g.poly() == diagram.poly())) {
      throw Error(ErrorKind::InvalidArgument, "cylindric function and diagram use different polynomials");
    }
  }

  const HCoeffs& h() const noexcept { return h_; }

  BigRational total(int n, long kappa) const { return tower_total_exact(h_, g_.rank(), n, kappa, diagram_); }

  BigRational partial(const Word& w) const {
    const int n = static_cast<int>(w.size());
    const int rank = g_.rank();
    if (n < rank) throw Error(ErrorKind::InvalidArgument, "partial sums need |w| >= N");
    if (n > diagram_.n_max()) throw Error(ErrorKind::Capacity, "word longer than the dimension table");
    const LetterTable& letters = diagram_.letters();
    const DimTable& table = diagram_.table();

    std::vector<BigInt> through(h_.exact.size());  // paths counted per vertex (N, l)
    BigRational small = exact_value(w);            // w itself
    long kappa = 0;
    for (int j = 1; j <= n; ++j) {
      const Letter wj = w[static_cast<std::size_t>(j - 1)];
      kappa += letters.kstep(wj);
      for (Letter c = 0; c < wj; ++c) {
        const long block_kappa = kappa - letters.kstep(c);
        if (sgn(table.dim(j - 1, block_kappa)) == 0) continue;
        if (j - 1 >= rank) {
          for (std::size_t l = 0; l < through.size(); ++l) {
            through[l] += table.dim(j - 1 - rank, block_kappa - static_cast<long>(l));
          }
        } else {
          small += enumerate_block(w, j, c, block_kappa);
        }
      }
    }
    BigRational total = small;
    for (std::size_t l = 0; l < through.size(); ++l) {
      if (sgn(through[l]) != 0 && sgn(h_.exact[l]) != 0) total += h_.exact[l] * through[l];
    }
    return total;
  }

 private:
  BigRational exact_value(const Word& w) const { return BigRational(g_(w)); }

  // Words agreeing with w above level j, letter c at level j, any prefix of
  // length j-1 into block_kappa. Only reached when j <= N.
  BigRational enumerate_block(const Word& w, int j, Letter c, long block_kappa) const {
    const LetterTable& letters = diagram_.letters();
    const int rank = g_.rank();
    BigRational sum = 0;
    Word key(w.begin(), w.begin() + rank);
    key[static_cast<std::size_t>(j - 1)] = c;
    for (const Word& prefix : all_words(letters.size(), j - 1)) {
      if (letters.vertex_index(prefix) != block_kappa) continue;
      std::copy(prefix.begin(), prefix.end(), key.begin());
      sum += exact_value(key);
    }
    return sum;
  }

  const CylFunction& g_;
  const Diagram& diagram_;
  HCoeffs h_;
};

struct GridNumerators {
  std::vector<GridNode> nodes;
  std::vector<BigRational> numerators;
  BigInt height;
  BigRational normalizer;
};

GridNumerators grid_numerators(const CylFunction& g, int n, long kappa, int m, const Diagram& diagram) {
  if (m < 0 || n - m < g.rank()) throw Error(ErrorKind::InvalidArgument, "fluctuation grid needs N <= n - m");
  const SumEngine engine(g, diagram);
  GridNumerators out;
  out.nodes = node_grid(n, kappa, m, diagram);
  out.height = diagram.table().dim(n, kappa);
  const BigRational full = engine.total(n, kappa);
  out.numerators.reserve(out.nodes.size());
  out.normalizer = 0;
  for (const GridNode& node : out.nodes) {
    BigRational fraction(node.rank, out.height);
    fraction.canonicalize();
    BigRational numerator = engine.partial(node.word) - fraction * full;
    out.normalizer = std::max(out.normalizer, BigRational(abs(numerator)));
    out.numerators.push_back(std::move(numerator));
  }
  return out;
}

}  // namespace

BigRational partial_sum_exact(const CylFunction& g, const Word& w, const Diagram& diagram) {
  return SumEngine(g, diagram).partial(w);
}

double partial_sum(const CylFunction& g, const Word& w, const Diagram& diagram) {
  return partial_sum_exact(g, w, diagram).get_d();
}

std::vector<double> brute_tower_sums(const CylFunction& g, int n, long kappa, const Diagram& diagram,
                                     std::size_t limit) {
  const BigInt& height = diagram.table().dim(n, kappa);
  if (height > limit) throw Error(ErrorKind::Capacity, "tower too tall for enumeration");
  const std::size_t count = height.get_ui();
  std::vector<double> sums;
  sums.reserve(count);
  PathPrefix x(minimal_word(diagram, n, kappa), {}, n);
  double running = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    if (i) x = successor(std::move(x), diagram);
    running += g(x.letters());
    sums.push_back(running);
  }
  return sums;
}

std::vector<GridNode> node_grid(int n, long kappa, int m, const Diagram& diagram, std::size_t budget) {
  if (m < 0 || m > n) throw Error(ErrorKind::InvalidArgument, "grid depth outside [0, n]");
  const LetterTable& letters = diagram.letters();
  const long lower_reach = static_cast<long>(n - m) * letters.degree();
  std::vector<GridNode> nodes;
  for (Word& top : all_words(letters.size(), m, budget)) {
    const long rest = kappa - letters.vertex_index(top);
    if (rest < 0 || rest > lower_reach) continue;
    Word word = minimal_word(diagram, n - m, rest);
    word.insert(word.end(), top.begin(), top.end());
    BigInt r = rank(diagram, word);
    nodes.push_back(GridNode{std::move(top), std::move(r), std::move(word)});
  }
  std::sort(nodes.begin(), nodes.end(), [](const GridNode& a, const GridNode& b) { return a.rank < b.rank; });
  return nodes;
}

double PolygonalCurve::operator()(double x) const {
  if (nodes.empty()) return 0.0;
  if (x <= nodes.front().x) return nodes.front().y;
  if (x >= nodes.back().x) return nodes.back().y;
  auto hi = std::upper_bound(nodes.begin(), nodes.end(), x,
                             [](double v, const CurvePoint& p) { return v < p.x; });
  auto lo = hi - 1;
  const double s = (x - lo->x) / (hi->x - lo->x);
  return lo->y + s * (hi->y - lo->y);
}

PolygonalCurve fluctuation_curve(const CylFunction& g, int n, long kappa, int m, const Diagram& diagram) {
  GridNumerators grid = grid_numerators(g, n, kappa, m, diagram);
  if (sgn(grid.normalizer) == 0) {
    throw Error(ErrorKind::DegenerateCurve, "fluctuation numerator vanishes on the grid at n=" +
                                                std::to_string(n) + ", k=" + std::to_string(kappa));
  }
  PolygonalCurve curve;
  curve.normalizer = grid.normalizer;
  curve.n = n;
  curve.kappa = kappa;
  curve.depth = m;
  curve.nodes.push_back({0.0, 0.0});
  for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
    if (grid.nodes[i].rank >= grid.height) continue;  // coincides with the endpoint (1, 0)
    BigRational x(grid.nodes[i].rank, grid.height);
    x.canonicalize();
    BigRational y = grid.numerators[i] / grid.normalizer;
    curve.nodes.push_back({x.get_d(), y.get_d()});
  }
  curve.nodes.push_back({1.0, 0.0});
  return curve;
}

BigRational grid_normalizer(const CylFunction& g, int n, long kappa, int m, const Diagram& diagram) {
  return grid_numerators(g, n, kappa, m, diagram).normalizer;
}

double sup_distance(const PolygonalCurve& c1, const PolygonalCurve& c2) {
  double best = 0.0;
  for (const auto* c : {&c1, &c2}) {
    for (const CurvePoint& p : c->nodes) best = std::max(best, std::abs(c1(p.x) - c2(p.x)));
  }
  return best;
}

std::vector<int> stabilizing_candidates(PathPrefix& x, double eps, double delta, int n_max, const Diagram& diagram) {
  if (!(eps > 0.0 && eps <= 1.0)) throw Error(ErrorKind::InvalidArgument, "eps must lie in (0, 1]");
  if (!(delta >= 0.0 && delta < 0.25)) throw Error(ErrorKind::InvalidArgument, "delta must lie in [0, 1/4)");
  if (n_max > diagram.n_max()) throw Error(ErrorKind::Capacity, "n_max exceeds the dimension table");
  if (!x.extend_to(n_max)) throw Error(ErrorKind::HorizonExhausted, "path prefix shorter than n_max");

  const LetterTable& letters = diagram.letters();
  const DimTable& table = diagram.table();
  const BigRational threshold(eps);
  const int d = letters.degree();
  std::vector<int> levels;
  BigInt r = 1;
  long kappa = 0;
  for (int n = 1; n <= n_max; ++n) {
    const Letter c = x.letters()[static_cast<std::size_t>(n - 1)];
    kappa += letters.kstep(c);
    for (Letter b = 0; b < c; ++b) r += table.dim(n - 1, kappa - letters.kstep(b));
    // rank/dim < eps  <=>  rank * den < num * dim; eps = 1 admits every level
    const bool low = eps == 1.0 || r * threshold.get_den() < threshold.get_num() * table.dim(n, kappa);
    bool interior = true;
    if (d > 0) {
      const double share = static_cast<double>(kappa) / (static_cast<double>(n) * d);
      interior = share >= delta && share <= 1.0 - delta;
    }
    if (low && interior) levels.push_back(n);
  }
  return levels;
}

ExtractionResult extract_limiting_curve(const CylFunction& g, PathPrefix& x, const ExtractionOptions& options,
                                        const Diagram& diagram) {
  const std::vector<int> candidates =
      stabilizing_candidates(x, options.eps, options.delta, options.n_max, diagram);
  const int start = std::max(g.rank() + options.depth, options.min_level);
  const LetterTable& letters = diagram.letters();

  std::vector<ExtractionStep> steps;
  std::optional<PolygonalCurve> previous;
  for (int n : candidates) {
    if (n < start) continue;
    const Word head(x.letters().begin(), x.letters().begin() + n);
    const long kappa = letters.vertex_index(head);
    PolygonalCurve curve = fluctuation_curve(g, n, kappa, options.depth, diagram);
    const double distance =
        previous ? sup_distance(*previous, curve) : std::numeric_limits<double>::quiet_NaN();
    steps.push_back({n, kappa, distance});
    if (previous && distance < options.tol) return {std::move(curve), std::move(steps)};
    previous = std::move(curve);
  }
  throw NoConvergenceError("no consecutive candidate curves within tol=" + format_real(options.tol) +
                               " up to n=" + std::to_string(options.n_max),
                           std::move(steps));
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Bounded: return "BOUNDED";
    case Verdict::Unbounded: return "UNBOUNDED";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

CohomologyReport cohomology_verdict(const CylFunction& g, int n_max, const Diagram& diagram, int depth) {
  if (n_max < g.rank()) throw Error(ErrorKind::InvalidArgument, "n_max below the function rank");
  CohomologyReport report{Verdict::Inconclusive, {}};
  for (int n = g.rank(); n <= n_max; ++n) {
    const long kappa = diagram.table().central_index(n);
    const int m = std::min(depth, n - g.rank());
    report.series.push_back({n, kappa, grid_normalizer(g, n, kappa, m, diagram)});
  }

  const auto& s = report.series;
  BigRational peak = 0;
  for (const auto& p : s) peak = std::max(peak, p.value);
  const std::size_t tail = static_cast<std::size_t>(std::max(0, n_max / 2 - g.rank()));
  BigRational lo = s[tail].value, hi = s[tail].value;
  bool nondecreasing = true;
  for (std::size_t i = tail; i < s.size(); ++i) {
    lo = std::min(lo, s[i].value);
    hi = std::max(hi, s[i].value);
    if (i > tail && s[i].value < s[i - 1].value) nondecreasing = false;
  }
  const BigRational spread_limit = peak * BigRational(1, 1'000'000'000);
  if (hi - lo <= spread_limit) {
    report.verdict = Verdict::Bounded;
  } else if (nondecreasing && s.back().value > s[tail].value) {
    report.verdict = Verdict::Unbounded;
  }
  return report;
}

BigRational node_interpolation_gap(const CylFunction& g, int n, long kappa, const Diagram& diagram) {
  const int m = n - g.rank();
  const BigInt& height = diagram.table().dim(n, kappa);
  if (height > 1'000'000) throw Error(ErrorKind::Capacity, "tower too tall for enumeration");
  const std::size_t count = height.get_ui();

  // Exact prefix sums F(0..H).
  std::vector<BigRational> prefix(count + 1);
  prefix[0] = 0;
  PathPrefix x(minimal_word(diagram, n, kappa), {}, n);
  for (std::size_t i = 1; i <= count; ++i) {
    if (i > 1) x = successor(std::move(x), diagram);
    prefix[i] = prefix[i - 1] + BigRational(g(x.letters()));
  }

  std::vector<std::size_t> knots{0};
  for (const GridNode& node : node_grid(n, kappa, m, diagram)) knots.push_back(node.rank.get_ui());
  if (knots.back() != count) knots.push_back(count);

  BigRational gap = 0;
  for (std::size_t s = 0; s + 1 < knots.size(); ++s) {
    const std::size_t a = knots[s], b = knots[s + 1];
    const BigRational slope = (prefix[b] - prefix[a]) / BigRational(static_cast<long>(b - a));
    for (std::size_t j = a + 1; j < b; ++j) {
      BigRational interp = prefix[a] + slope * BigRational(static_cast<long>(j - a));
      gap = std::max(gap, BigRational(abs(prefix[j] - interp)));
    }
  }
  return gap;
}

std::vector<double> flattening_profile(const DimTable& table, int rank, const std::vector<double>& alpha,
                                       int nbar, long kbar) {
  const int d = table.degree();
  if (alpha.size() != static_cast<std::size_t>(rank * d + 1)) {
    throw Error(ErrorKind::InvalidArgument, "alpha must have N*d + 1 entries");
  }
  std::vector<BigRational> coef;
  for (double a : alpha) coef.emplace_back(a);
  const long co_bar = static_cast<long>(nbar) * d - kbar;

  std::vector<BigRational> level_max;
  BigRational overall = 0;
  for (int n = rank; n <= nbar; ++n) {
    BigRational best = 0;
    const long k_lo = std::max(0L, static_cast<long>(n) * d - co_bar);
    const long k_hi = std::min(kbar, static_cast<long>(n) * d);
    for (long k = k_lo; k <= k_hi; ++k) {
      BigRational sum = 0;
      for (std::size_t l = 0; l < coef.size(); ++l) {
        const BigInt& c = table.dim(n - rank, k - static_cast<long>(l));
        if (sgn(c) != 0) sum += coef[l] * c;
      }
      best = std::max(best, BigRational(abs(sum)));
    }
    overall = std::max(overall, best);
    level_max.push_back(best);
  }
  std::vector<double> logs;
  for (const auto& v : level_max) {
    if (sgn(v) == 0 || sgn(overall) == 0) {
      logs.push_back(std::numeric_limits<double>::quiet_NaN());
    } else {
      logs.push_back(std::log(BigRational(v / overall).get_d()));
    }
  }
  return logs;
}

double least_squares_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (std::size_t i = 0; i < xs.size() && i < ys.size(); ++i) {
    if (std::isnan(xs[i]) || std::isnan(ys[i])) continue;
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
    ++count;
  }
  const double denom = count * sxx - sx * sx;
  if (count < 2 || denom == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return (count * sxy - sx * sy) / denom;
}

void write_curve_csv(std::ostream& out, const PolygonalCurve& curve) {
  out << "x,y\n";
  for (const CurvePoint& p : curve.nodes) out << format_real(p.x) << ',' << format_real(p.y) << '\n';
}

}  // namespace polyadic
