// polyadic: command-line access to the diagram, measure, ergodic-sum and
// Takagi layers. CSV with headers on stdout (or --out), metadata as a JSON
// sidecar next to --out (or at --meta).
//
// Exit codes: 0 ok, 1 runtime error, 2 usage (including parameters outside a
// module's domain), 3 no convergence or degenerate curve.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "polyadic/ergodic.hpp"
#include "polyadic/format.hpp"
#include "polyadic/takagi.hpp"

using namespace polyadic;
using json = nlohmann::ordered_json;

namespace {

constexpr int kRuntime = 1;
constexpr int kUsage = 2;
constexpr int kDegenerate = 3;

struct Output {
  std::string out;
  std::string meta;

  // Runs body against the chosen stream, then writes the sidecar if asked.
  template <class Body>
  void csv(Body body) const {
    if (out.empty()) {
      body(std::cout);
      std::cout.flush();
    } else {
      std::ofstream file(out);
      if (!file) throw Error(ErrorKind::InvalidArgument, "cannot write " + out);
      body(file);
    }
  }

  void sidecar(const json& doc) const {
    const std::string path = !meta.empty() ? meta : (out.empty() ? "" : out + ".json");
    if (path.empty()) return;
    std::ofstream file(path);
    if (!file) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
    file << doc.dump(2) << '\n';
  }
};

void add_output(CLI::App* cmd, Output& o) {
  cmd->add_option("--out", o.out, "CSV output file (default stdout)");
  cmd->add_option("--meta", o.meta, "JSON sidecar path (default <out>.json when --out is set)");
}

std::string big(const BigInt& v) { return v.get_str(); }

json poly_json(const GenPolynomial& p) { return p.coeffs(); }

CylFunction load_function(const std::string& path, const GenPolynomial& p) {
  CylFunction g = CylFunction::load(path);
  if (!(g.poly() == p)) throw Error(ErrorKind::InvalidArgument, "function file is for polynomial " + g.poly().to_string());
  return g;
}

// Indicator of the first letter, for quick runs without a file.
CylFunction indicator(const GenPolynomial& p, int letter) {
  if (letter < 0 || letter >= p.alphabet_size()) throw Error(ErrorKind::InvalidArgument, "indicator letter outside alphabet");
  return CylFunction::tabulate(p, 1, [letter](const Word& v) { return v[0] == letter ? 1.0 : 0.0; });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polynomial adic systems: towers, invariant measures, ergodic sums, Takagi curves"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  std::string poly_text;
  double q = 0.5;
  std::uint64_t seed = 0;
  Output output;
  std::function<void()> action;

  auto poly = [&] { return GenPolynomial::parse(poly_text); };

  // dims
  int nmax = 10;
  bool long_form = false;
  auto* dims = app.add_subcommand("dims", "Generalized binomial coefficients, one row per level");
  dims->add_option("--poly", poly_text, "Coefficients a_0,...,a_d")->required();
  dims->add_option("--nmax", nmax, "Largest level")->check(CLI::NonNegativeNumber);
  dims->add_flag("--long", long_form, "One row per (n, k) instead of one per level");
  add_output(dims, output);
  dims->callback([&] {
    action = [&] {
      const DimTable t(poly(), nmax);
      const long width = static_cast<long>(nmax) * t.degree();
      output.csv([&](std::ostream& os) {
        if (long_form) {
          os << "n,k,dim\n";
          for (int n = 0; n <= nmax; ++n)
            for (long k = 0; k <= static_cast<long>(n) * t.degree(); ++k) os << n << ',' << k << ',' << big(t.dim(n, k)) << '\n';
          return;
        }
        os << 'n';
        for (long k = 0; k <= width; ++k) os << ",k" << k;
        os << '\n';
        for (int n = 0; n <= nmax; ++n) {
          os << n;
          for (long k = 0; k <= width; ++k) os << ',' << big(t.dim(n, k));
          os << '\n';
        }
      });
      output.sidecar({{"command", "dims"}, {"poly", poly_json(t.poly())}, {"nmax", nmax}});
    };
  });

  // tq
  auto* tq = app.add_subcommand("tq", "Root t_q, residual and letter weights");
  tq->add_option("--poly", poly_text, "Coefficients a_0,...,a_d")->required();
  tq->add_option("--q", q, "Measure parameter in (0, 1/a_0)")->required();
  add_output(tq, output);
  tq->callback([&] {
    action = [&] {
      const MeasureParams mp(poly(), q);
      output.csv([&](std::ostream& os) {
        os << "q,t,residual,letter,kstep,k1step,weight\n";
        for (Letter c = 0; c < mp.alphabet_size(); ++c) {
          os << format_real(mp.q()) << ',' << format_real(mp.t()) << ',' << format_real(mp.residual()) << ',' << c << ','
             << mp.letters().kstep(c) << ',' << mp.letters().k1step(c) << ',' << format_real(mp.weight(c)) << '\n';
        }
      });
      output.sidecar({{"command", "tq"}, {"poly", poly_json(mp.poly())}, {"q", q}, {"t", mp.t()}, {"residual", mp.residual()}});
    };
  });

  // rank
  std::string word_text;
  auto* rank_cmd = app.add_subcommand("rank", "Position of a word in its tower");
  rank_cmd->add_option("--poly", poly_text, "Coefficients a_0,...,a_d")->required();
  rank_cmd->add_option("--word", word_text, "Word, level-1 letter first")->required();
  add_output(rank_cmd, output);
  rank_cmd->callback([&] {
    action = [&] {
      const GenPolynomial p = poly();
      const Word w = parse_word(word_text, p.alphabet_size());
      const Diagram d(p, static_cast<int>(w.size()));
      const long kappa = d.letters().vertex_index(w);
      output.csv([&](std::ostream& os) {
        os << "word,n,kappa,rank,dim\n"
           << format_word(w, p.alphabet_size()) << ',' << w.size() << ',' << kappa << ',' << big(rank(d, w)) << ','
           << big(d.table().dim(static_cast<int>(w.size()), kappa)) << '\n';
      });
      output.sidecar({{"command", "rank"}, {"poly", poly_json(p)}, {"word", word_text}});
    };
  });

  // unrank
  int level = 0;
  long kappa_arg = 0;
  std::string rank_text;
  auto* unrank_cmd = app.add_subcommand("unrank", "Word with a given rank in tower (n, kappa)");
  unrank_cmd->add_option("--poly", poly_text, "Coefficients a_0,...,a_d")->required();
  unrank_cmd->add_option("--n", level, "Level")->required()->check(CLI::NonNegativeNumber);
  unrank_cmd->add_option("--kappa", kappa_arg, "Vertex index")->required();
  unrank_cmd->add_option("--rank", rank_text, "1-based rank (decimal)")->required();
  add_output(unrank_cmd, output);
  unrank_cmd->callback([&] {
    action = [&] {
      const GenPolynomial p = poly();
      BigInt j;
      if (j.set_str(rank_text, 10) != 0) throw Error(ErrorKind::InvalidArgument, "rank must be a decimal integer");
      const Diagram d(p, level);
      const Word w = unrank(d, level, kappa_arg, j);
      output.csv([&](std::ostream& os) {
        os << "word,n,kappa,rank\n" << format_word(w, p.alphabet_size()) << ',' << level << ',' << kappa_arg << ',' << big(j) << '\n';
      });
      output.sidecar({{"command", "unrank"}, {"poly", poly_json(p)}, {"n", level}, {"kappa", kappa_arg}, {"rank", rank_text}});
    };
  });

  // succ
  bool backwards = false;
  auto* succ = app.add_subcommand("succ", "Adic successor (or predecessor) of a finite word");
  succ->add_option("--poly", poly_text, "Coefficients a_0,...,a_d")->required();
  succ->add_option("--word", word_text, "Word, level-1 letter first")->required();
  succ->add_flag("--pred", backwards, "Apply the predecessor instead");
  add_output(succ, output);
  succ->callback([&] {
    action = [&] {
      const GenPolynomial p = poly();
      const Word w = parse_word(word_text, p.alphabet_size());
      const int n = static_cast<int>(w.size());
      const Diagram d(p, n);
      PathPrefix x(w, {}, n);
      const int acted = backwards ? predecessor_level(x, d) : successor_level(x, d);
      const PathPrefix y = backwards ? predecessor(x, d) : successor(x, d);
      output.csv([&](std::ostream& os) {
        os << (backwards ? "input,predecessor,level\n" : "input,successor,level\n")
           << format_word(w, p.alphabet_size()) << ',' << format_word(y.letters(), p.alphabet_size()) << ',' << acted << '\n';
      });
      output.sidecar({{"command", "succ"}, {"poly", poly_json(p)}, {"word", word_text}, {"predecessor", backwards}});
    };
  });

  // orbit
  int steps = 10;
  int length = 20;
  int horizon = 64;
  auto* orbit = app.add_subcommand("orbit", "Iterate the adic map and report coded points");
  orbit->add_option("--poly", poly_text, "Coefficients a_0,...,a_d")->required();
  orbit->add_option("--q", q, "Measure parameter for coding and sampling")->required();
  orbit->add_option("--word", word_text, "Starting prefix (default: sampled)");
  orbit->add_option("--length", length, "Sampled prefix length")->check(CLI::NonNegativeNumber);
  orbit->add_option("--seed", seed, "Sampling seed");
  orbit->add_option("--steps", steps, "Number of successor steps")->check(CLI::NonNegativeNumber);
  orbit->add_option("--nmax", horizon, "Largest level the prefix may grow to")->check(CLI::PositiveNumber);
  add_output(orbit, output);
  orbit->callback([&] {
    action = [&] {
      const GenPolynomial p = poly();
      const MeasureParams mp(p, q);
      const Diagram d(p, horizon);
      PathPrefix x = word_text.empty() ? PathPrefix(sample_word(mp, length, seed), sampling_source(mp, seed ^ 0x9e3779b97f4a7c15ULL), horizon)
                                       : PathPrefix(parse_word(word_text, p.alphabet_size()), {}, horizon);
      output.csv([&](std::ostream& os) {
        os << "step,word,level,theta\n";
        os << 0 << ',' << format_word(x.letters(), p.alphabet_size()) << ",0," << format_real(encode_theta(mp, x.letters())) << '\n';
        for (int s = 1; s <= steps; ++s) {
          const int acted = successor_level(x, d);
          x = successor(x, d);
          os << s << ',' << format_word(x.letters(), p.alphabet_size()) << ',' << acted << ','
             << format_real(encode_theta(mp, x.letters())) << '\n';
        }
      });
      output.sidecar({{"command", "orbit"}, {"poly", poly_json(p)}, {"q", q}, {"seed", seed}, {"steps", steps}, {"nmax", horizon}});
    };
  });

  // curve
  std::string g_path;
  int g_letter = -1;
  std::string path_kind = "random";
  ExtractionOptions opt;
  auto* curve = app.add_subcommand("curve", "Extract a limiting fluctuation curve along a path");
  curve->add_option("--poly", poly_text, "Coefficients a_0,...,a_d")->required();
  curve->add_option("--q", q, "Measure parameter")->required();
  auto* gfile = curve->add_option("--g", g_path, "Cylindric function JSON file");
  auto* gind = curve->add_option("--indicator", g_letter, "Use g = 1{w_1 = letter}");
  gfile->excludes(gind);
  curve->add_option("--path", path_kind, "random (sampled from mu_q) or balanced")->check(CLI::IsMember({"random", "balanced"}));
  curve->add_option("--seed", seed, "Sampling seed");
  curve->add_option("--eps", opt.eps, "Rank-fraction threshold");
  curve->add_option("--delta", opt.delta, "Vertex-index margin");
  curve->add_option("--depth", opt.depth, "Node-grid depth m")->check(CLI::NonNegativeNumber);
  curve->add_option("--tol", opt.tol, "Consecutive sup-distance tolerance");
  curve->add_option("--nmax", opt.n_max, "Largest level")->check(CLI::PositiveNumber);
  curve->add_option("--min-level", opt.min_level, "Skip candidate levels below this")->check(CLI::NonNegativeNumber);
  add_output(curve, output);
  curve->callback([&] {
    action = [&] {
      const GenPolynomial p = poly();
      if (g_path.empty() && g_letter < 0) throw CLI::RequiredError("--g or --indicator");
      const CylFunction g = g_path.empty() ? indicator(p, g_letter) : load_function(g_path, p);
      const MeasureParams mp(p, q);
      const Diagram d(p, opt.n_max);
      PathPrefix x(Word{}, path_kind == "balanced" ? balanced_source(mp) : sampling_source(mp, seed), opt.n_max);
      json meta = {{"command", "curve"}, {"poly", poly_json(p)}, {"q", q}, {"seed", seed}, {"path", path_kind},
                   {"eps", opt.eps}, {"delta", opt.delta}, {"depth", opt.depth}, {"tol", opt.tol}, {"nmax", opt.n_max},
                   {"min_level", opt.min_level}};
      auto step_json = [](const std::vector<ExtractionStep>& s) {
        json arr = json::array();
        for (const auto& e : s) arr.push_back({{"n", e.n}, {"kappa", e.kappa}, {"distance", std::isnan(e.distance) ? json() : json(e.distance)}});
        return arr;
      };
      try {
        const auto res = extract_limiting_curve(g, x, opt, d);
        output.csv([&](std::ostream& os) { write_curve_csv(os, res.curve); });
        meta["converged"] = true;
        meta["n"] = res.curve.n;
        meta["kappa"] = res.curve.kappa;
        meta["m"] = res.curve.depth;
        meta["R"] = decimal_string(res.curve.normalizer);
        meta["steps"] = step_json(res.steps);
        output.sidecar(meta);
      } catch (const NoConvergenceError& e) {
        meta["converged"] = false;
        meta["steps"] = step_json(e.steps());
        output.sidecar(meta);
        throw;
      }
    };
  });

  // cohom
  int cohom_depth = 6;
  auto* cohom = app.add_subcommand("cohom", "Normalizing coefficients R_n along the central ridge");
  cohom->add_option("--poly", poly_text, "Coefficients a_0,...,a_d")->required();
  auto* cgfile = cohom->add_option("--g", g_path, "Cylindric function JSON file");
  auto* cgind = cohom->add_option("--indicator", g_letter, "Use g = 1{w_1 = letter}");
  cgfile->excludes(cgind);
  cohom->add_option("--nmax", nmax, "Largest level")->check(CLI::PositiveNumber);
  cohom->add_option("--depth", cohom_depth, "Node-grid depth m")->check(CLI::NonNegativeNumber);
  add_output(cohom, output);
  cohom->callback([&] {
    action = [&] {
      const GenPolynomial p = poly();
      if (g_path.empty() && g_letter < 0) throw CLI::RequiredError("--g or --indicator");
      const CylFunction g = g_path.empty() ? indicator(p, g_letter) : load_function(g_path, p);
      const Diagram d(p, nmax);
      const auto rep = cohomology_verdict(g, nmax, d, cohom_depth);
      output.csv([&](std::ostream& os) {
        os << "n,kappa,R\n";
        for (const auto& pt : rep.series) os << pt.n << ',' << pt.kappa << ',' << decimal_string(pt.value) << '\n';
      });
      std::cerr << "verdict: " << to_string(rep.verdict) << '\n';
      output.sidecar({{"command", "cohom"}, {"poly", poly_json(p)}, {"nmax", nmax}, {"depth", cohom_depth},
                      {"verdict", to_string(rep.verdict)}});
    };
  });

  // takagi
  int order = 1;
  int grid = 1024;
  int series_depth = 0;
  double tol = 0.0;
  auto* takagi = app.add_subcommand("takagi", "Generalized Takagi function T^k_{p,q} on a uniform grid");
  takagi->add_option("--poly", poly_text, "Coefficients a_0,...,a_d")->required();
  takagi->add_option("--q", q, "Measure parameter")->required();
  takagi->add_option("--k", order, "Derivative order")->check(CLI::NonNegativeNumber);
  takagi->add_option("--grid", grid, "Grid intervals; points i/grid")->check(CLI::PositiveNumber);
  takagi->add_option("--depth", series_depth, "Series depth M (default from --tol, else 60)")->check(CLI::PositiveNumber);
  takagi->add_option("--tol", tol, "Tail tolerance used to pick M")->check(CLI::PositiveNumber);
  add_output(takagi, output);
  takagi->callback([&] {
    action = [&] {
      const GenPolynomial p = poly();
      const MeasureParams mp(p, q);
      const int M = series_depth > 0 ? series_depth
                                     : auto_depth(mp.max_weight(), tol > 0.0 ? std::optional<double>(tol) : std::nullopt);
      const auto xs = uniform_grid(grid);
      std::vector<double> values;
      if (order == 1) {
        values = T1_grid(p, q, xs, M);
      } else if (order == 0) {
        values = xs;
      } else {
        const TakagiEvaluator ev(p, q, order, M);
        for (double x : xs) values.push_back(ev.derivative(order, x));
      }
      output.csv([&](std::ostream& os) {
        os << "x,value\n";
        for (std::size_t i = 0; i < xs.size(); ++i) os << format_real(xs[i]) << ',' << format_real(values[i]) << '\n';
      });
      output.sidecar({{"command", "takagi"}, {"poly", poly_json(p)}, {"q", q}, {"t", mp.t()}, {"k", order},
                      {"grid", grid}, {"depth", M}, {"isa", kernels::to_string(kernels::preferred_isa())}});
    };
  });

  // parabola
  int degree = 2;
  auto* parabola = app.add_subcommand("parabola", "Normalized first derivative for p = 1 + x + ... + x^d at q = 1/(d+1)");
  parabola->add_option("--d", degree, "Degree")->required()->check(CLI::PositiveNumber);
  parabola->add_option("--grid", grid, "Grid intervals; points i/grid")->check(CLI::PositiveNumber);
  parabola->add_option("--depth", series_depth, "Series depth M (default 60)")->check(CLI::PositiveNumber);
  add_output(parabola, output);
  parabola->callback([&] {
    action = [&] {
      const int M = series_depth > 0 ? series_depth : 60;
      const auto rows = parabola_profile(degree, grid, M);
      double worst = 0.0;
      output.csv([&](std::ostream& os) {
        os << "x,value,parabola,deviation\n";
        for (const auto& r : rows) {
          os << format_real(r.x) << ',' << format_real(r.value) << ',' << format_real(r.parabola) << ',' << format_real(r.deviation) << '\n';
          worst = std::max(worst, r.deviation);
        }
      });
      output.sidecar({{"command", "parabola"}, {"d", degree}, {"q", 1.0 / (degree + 1)}, {"grid", grid}, {"depth", M},
                      {"max_deviation", worst}});
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    action();
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::InvalidArgument:
      case ErrorKind::NoRoot:  // q outside (0, 1/a_0): a bad flag value
        return kUsage;
      case ErrorKind::NoConvergence:
      case ErrorKind::DegenerateCurve:
        return kDegenerate;
      default:
        return kRuntime;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntime;
  }
  return 0;
}
