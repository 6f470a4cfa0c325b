#include "polyadic/adic.hpp"

#include <algorithm>
#include <sstream>

#include "polyadic/error.hpp"

namespace polyadic {

LetterTable::LetterTable(const GenPolynomial& poly) : degree_(poly.degree()) {
  for (int s = degree_; s >= 0; --s) {
    for (int i = 0; i < poly.coeff(s); ++i) {
      kstep_.push_back(s);
      offset_.push_back(i);
    }
  }
}

Letter LetterTable::first_with_kstep(int s) const {
  for (int c = 0; c < size(); ++c) {
    if (kstep_[static_cast<std::size_t>(c)] == s) return c;
  }
  throw Error(ErrorKind::InvalidArgument, "no letter with kstep " + std::to_string(s));
}

long LetterTable::vertex_index(const Word& w) const {
  long kappa = 0;
  for (Letter c : w) kappa += kstep(c);
  return kappa;
}

long LetterTable::co_index(const Word& w) const {
  return static_cast<long>(w.size()) * degree_ - vertex_index(w);
}

bool LetterTable::valid(const Word& w) const noexcept {
  for (Letter c : w) {
    if (c < 0 || c >= size()) return false;
  }
  return true;
}

Diagram::Diagram(GenPolynomial poly, int n_max) : table_(poly, n_max), letters_(poly) {}

namespace {

void require_word(const Diagram& diagram, const Word& w) {
  if (!diagram.letters().valid(w)) throw Error(ErrorKind::InvalidArgument, "letter outside alphabet");
  if (static_cast<int>(w.size()) > diagram.n_max()) {
    throw Error(ErrorKind::Capacity, "word longer than the dimension table");
  }
}

// Number of words into (level-1, kappa_level - kstep(c)) summed over c < upto.
void add_block_counts(BigInt& acc, const Diagram& diagram, int level, long kappa_level, Letter upto) {
  const auto& letters = diagram.letters();
  for (Letter c = 0; c < upto; ++c) {
    acc += diagram.table().dim(level - 1, kappa_level - letters.kstep(c));
  }
}

}  // namespace

BigInt rank(const Diagram& diagram, const Word& w) {
  require_word(diagram, w);
  BigInt result = 1;
  long kappa = 0;
  for (std::size_t j = 1; j <= w.size(); ++j) {
    const Letter c = w[j - 1];
    kappa += diagram.letters().kstep(c);
    add_block_counts(result, diagram, static_cast<int>(j), kappa, c);
  }
  return result;
}

Word unrank(const Diagram& diagram, int n, long kappa, const BigInt& j) {
  if (n < 0 || n > diagram.n_max()) throw Error(ErrorKind::Capacity, "level outside the dimension table");
  const auto& table = diagram.table();
  const auto& letters = diagram.letters();
  if (j < 1 || j > table.dim(n, kappa)) {
    throw Error(ErrorKind::RankOutOfRange, "rank " + j.get_str() + " outside [1, dim(" +
                                               std::to_string(n) + "," + std::to_string(kappa) + ")]");
  }
  Word w(static_cast<std::size_t>(n));
  BigInt remaining = j;
  for (int level = n; level >= 1; --level) {
    Letter chosen = -1;
    for (Letter c = 0; c < letters.size(); ++c) {
      const BigInt& block = table.dim(level - 1, kappa - letters.kstep(c));
      if (remaining <= block) {
        chosen = c;
        break;
      }
      remaining -= block;
    }
    // Unreachable when j <= dim(n, kappa): the blocks partition the tower.
    if (chosen < 0) throw Error(ErrorKind::RankOutOfRange, "rank exceeds tower size");
    w[static_cast<std::size_t>(level - 1)] = chosen;
    kappa -= letters.kstep(chosen);
  }
  return w;
}

Word minimal_word(const Diagram& diagram, int n, long kappa) {
  return unrank(diagram, n, kappa, BigInt(1));
}

bool is_maximal(const Diagram& diagram, const Word& w) {
  const long kappa = diagram.letters().vertex_index(w);
  return rank(diagram, w) == diagram.table().dim(static_cast<int>(w.size()), kappa);
}

bool is_minimal(const Diagram& diagram, const Word& w) { return rank(diagram, w) == 1; }

bool PathPrefix::extend_to(int n) {
  while (length() < n) {
    if (!source_) return false;
    letters_.push_back(source_());
  }
  return true;
}

namespace {

enum class Direction { Forward, Backward };

int acting_level(PathPrefix& x, const Diagram& diagram, Direction dir, BigInt* rank_out, long* kappa_out) {
  const int horizon = x.max_level() < 0 ? diagram.n_max() : std::min(x.max_level(), diagram.n_max());
  const auto& letters = diagram.letters();
  const auto& table = diagram.table();
  BigInt r = 1;
  long kappa = 0;
  for (int n = 1;; ++n) {
    if (n > horizon) {
      throw Error(dir == Direction::Forward ? ErrorKind::MaximalPath : ErrorKind::MinimalPath,
                  "every level up to " + std::to_string(horizon) + " is extremal");
    }
    if (!x.extend_to(n)) {
      throw Error(ErrorKind::HorizonExhausted,
                  "prefix of length " + std::to_string(x.length()) + " is extremal and cannot be extended");
    }
    const Letter c = x.letters()[static_cast<std::size_t>(n - 1)];
    if (c < 0 || c >= letters.size()) throw Error(ErrorKind::InvalidArgument, "letter outside alphabet");
    kappa += letters.kstep(c);
    add_block_counts(r, diagram, n, kappa, c);
    const bool acts = dir == Direction::Forward ? r < table.dim(n, kappa) : r > 1;
    if (acts) {
      if (rank_out) *rank_out = r;
      if (kappa_out) *kappa_out = kappa;
      return n;
    }
  }
}

PathPrefix apply(PathPrefix x, const Diagram& diagram, Direction dir) {
  BigInt r;
  long kappa = 0;
  const int n = acting_level(x, diagram, dir, &r, &kappa);
  if (dir == Direction::Forward) {
    ++r;
  } else {
    --r;
  }
  const Word head = unrank(diagram, n, kappa, r);
  std::copy(head.begin(), head.end(), x.letters().begin());
  return x;
}

}  // namespace

PathPrefix successor(PathPrefix x, const Diagram& diagram) {
  return apply(std::move(x), diagram, Direction::Forward);
}

PathPrefix predecessor(PathPrefix x, const Diagram& diagram) {
  return apply(std::move(x), diagram, Direction::Backward);
}

int successor_level(PathPrefix& x, const Diagram& diagram) {
  return acting_level(x, diagram, Direction::Forward, nullptr, nullptr);
}

int predecessor_level(PathPrefix& x, const Diagram& diagram) {
  return acting_level(x, diagram, Direction::Backward, nullptr, nullptr);
}

std::string format_word(const Word& w, int alphabet_size) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (alphabet_size <= 10) {
      out.push_back(static_cast<char>('0' + w[i]));
    } else {
      if (i) out.push_back(',');
      out += std::to_string(w[i]);
    }
  }
  return out;
}

Word parse_word(const std::string& text, int alphabet_size) {
  Word w;
  auto check = [&](int c) {
    if (c < 0 || c >= alphabet_size) {
      throw Error(ErrorKind::InvalidArgument, "letter " + std::to_string(c) + " outside alphabet of size " +
                                                  std::to_string(alphabet_size));
    }
    w.push_back(c);
  };
  if (alphabet_size <= 10) {
    for (char ch : text) {
      if (ch < '0' || ch > '9') throw Error(ErrorKind::InvalidArgument, std::string("bad letter '") + ch + "'");
      check(ch - '0');
    }
    return w;
  }
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      check(std::stoi(item));
    } catch (const std::invalid_argument&) {
      throw Error(ErrorKind::InvalidArgument, "bad letter '" + item + "'");
    }
  }
  return w;
}

}  // namespace polyadic
