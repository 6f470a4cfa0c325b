#pragma once

// Words over the edge alphabet of B_p, the tail-lexicographic order on
// towers, exact rank/unrank, and the adic successor/predecessor maps.
//
// Order convention: two words into the same vertex are compared at the
// LARGEST index where they differ, letters by label. Label groups follow the
// canonical order: letters 0..a_d-1 step the vertex index by d, the next a_{d-1}
// letters by d-1, ..., the last a_0 letters by 0.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "polyadic/polycomb.hpp"

namespace polyadic {

using Letter = int;
using Word = std::vector<Letter>;

class LetterTable {
 public:
  explicit LetterTable(const GenPolynomial& poly);

  int size() const noexcept { return static_cast<int>(kstep_.size()); }
  int degree() const noexcept { return degree_; }
  // Vertex-index increment of letter c.
  int kstep(Letter c) const { return kstep_.at(static_cast<std::size_t>(c)); }
  int k1step(Letter c) const { return degree_ - kstep(c); }
  // Position of c's group in label order (group g has kstep d - g).
  int group(Letter c) const { return degree_ - kstep(c); }
  int offset(Letter c) const { return offset_.at(static_cast<std::size_t>(c)); }
  // Smallest label with the given kstep.
  Letter first_with_kstep(int s) const;

  long vertex_index(const Word& w) const;    // kappa(w) = sum kstep
  long co_index(const Word& w) const;        // kappa1(w) = nd - kappa(w)
  bool valid(const Word& w) const noexcept;  // every letter in range

 private:
  int degree_;
  std::vector<int> kstep_;
  std::vector<int> offset_;
};

// Dimension table plus alphabet; everything rank-related runs through this.
class Diagram {
 public:
  Diagram(GenPolynomial poly, int n_max);

  const GenPolynomial& poly() const noexcept { return table_.poly(); }
  const DimTable& table() const noexcept { return table_; }
  const LetterTable& letters() const noexcept { return letters_; }
  int n_max() const noexcept { return table_.n_max(); }
  int alphabet_size() const noexcept { return letters_.size(); }

 private:
  DimTable table_;
  LetterTable letters_;
};

// 1-based position of w in the tail order on pi_{n, kappa(w)}.
BigInt rank(const Diagram& diagram, const Word& w);

// Inverse of rank: the j-th word into vertex (n, kappa). Throws RankOutOfRange.
Word unrank(const Diagram& diagram, int n, long kappa, const BigInt& j);

bool is_maximal(const Diagram& diagram, const Word& w);
bool is_minimal(const Diagram& diagram, const Word& w);

// Minimal (rank-1) word into (n, kappa). Throws RankOutOfRange when the
// vertex is unreachable.
Word minimal_word(const Diagram& diagram, int n, long kappa);

// Known prefix of an infinite path plus an optional stream that supplies
// further letters on demand. The prefix only grows; the adic maps rewrite an
// initial segment in place.
class PathPrefix {
 public:
  using Source = std::function<Letter()>;

  PathPrefix() = default;
  explicit PathPrefix(Word prefix, Source source = {}, int max_level = -1)
      : letters_(std::move(prefix)), source_(std::move(source)), max_level_(max_level) {}

  const Word& letters() const noexcept { return letters_; }
  Word& letters() noexcept { return letters_; }
  int length() const noexcept { return static_cast<int>(letters_.size()); }
  // -1 means "bounded only by the diagram".
  int max_level() const noexcept { return max_level_; }
  bool can_extend() const noexcept { return static_cast<bool>(source_); }

  // Appends letters from the source until length() >= n. Returns false when
  // the source is absent.
  bool extend_to(int n);

 private:
  Word letters_;
  Source source_;
  int max_level_ = -1;
};

// Adic map: rewrites the shortest non-maximal initial segment to its
// successor in the tower. Throws MaximalPath when every level up to the
// horizon is maximal, HorizonExhausted when the prefix runs out first.
PathPrefix successor(PathPrefix x, const Diagram& diagram);
PathPrefix predecessor(PathPrefix x, const Diagram& diagram);

// Level at which successor/predecessor would act (without modifying x).
int successor_level(PathPrefix& x, const Diagram& diagram);
int predecessor_level(PathPrefix& x, const Diagram& diagram);

// Serialization: digit strings when r <= 10 ("01120"), comma-separated
// integers otherwise. Position 1 is the leftmost character.
std::string format_word(const Word& w, int alphabet_size);
Word parse_word(const std::string& text, int alphabet_size);

}  // namespace polyadic
