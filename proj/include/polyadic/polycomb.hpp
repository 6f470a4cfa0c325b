#pragma once

// Exact combinatorics of the polynomial Bratteli diagram B_p: the generating
// polynomial and the table of generalized binomial coefficients C_p(n, k),
// i.e. the coefficient of x^k in p(x)^n (the number of paths from the root
// to vertex (n, k)).

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace polyadic {

using BigInt = mpz_class;
using BigRational = mpq_class;

// p(x) = a_0 + a_1 x + ... + a_d x^d with every a_j >= 1. Degree 0 is the
// stationary odometer with a_0 edges per level.
class GenPolynomial {
 public:
  explicit GenPolynomial(std::vector<int> coeffs);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  int coeff(int j) const { return coeffs_.at(static_cast<std::size_t>(j)); }
  const std::vector<int>& coeffs() const noexcept { return coeffs_; }
  // r = p(1), the number of edges entering every vertex.
  int alphabet_size() const noexcept { return alphabet_size_; }
  int max_coeff() const noexcept;

  std::string to_string() const;  // "1,1,3"
  static GenPolynomial parse(const std::string& text);

  friend bool operator==(const GenPolynomial&, const GenPolynomial&) = default;

 private:
  std::vector<int> coeffs_;
  int alphabet_size_ = 0;
};

// Dense, append-only table of C_p(n, k) for 0 <= n <= n_max, 0 <= k <= nd.
// Immutable once built; concurrent readers are safe.
class DimTable {
 public:
  static constexpr std::size_t kDefaultEntryBudget = std::size_t{1} << 24;

  // Throws Error{Capacity} when the number of stored entries would exceed
  // `entry_budget`.
  DimTable(GenPolynomial poly, int n_max, std::size_t entry_budget = kDefaultEntryBudget);

  const GenPolynomial& poly() const noexcept { return poly_; }
  int n_max() const noexcept { return static_cast<int>(rows_.size()) - 1; }
  int degree() const noexcept { return poly_.degree(); }

  // C_p(n, k); zero for k outside [0, nd]. Requires 0 <= n <= n_max.
  const BigInt& dim(int n, long k) const;
  // C_p(n, nd - k1) = C_P(n, k1) for the reversed polynomial P(x) = x^d p(1/x).
  const BigInt& reflected_dim(int n, long k1) const;

  std::span<const BigInt> row(int n) const;

  // Vertex index with the largest dimension at level n (smallest such index
  // on ties).
  int central_index(int n) const;

 private:
  void check_level(int n) const;

  GenPolynomial poly_;
  std::vector<std::vector<BigInt>> rows_;
  BigInt zero_{0};
};

// ---- Properties of the coefficient rows ---------------------------------

// Row n weakly increases and then weakly decreases.
bool is_unimodal_row(const DimTable& table, int n);

// Smallest n1 <= search_limit such that every row n1..n_max is unimodal.
std::optional<int> first_unimodal_level(const DimTable& table, int search_limit = 64);

// max_k max{C(n,k+1)/C(n,k), C(n,k)/C(n,k+1)}, computed exactly and rounded
// once. Zero for rows of length one.
double max_adjacent_ratio(const DimTable& table, int n);

// Sum_{l} C_p(N, l) C_p(n - N, k - l), evaluated exactly.
BigInt vandermonde_sum(const DimTable& table, int n, int split, long k);

// n * Sum_{i=1}^{d} a_i i C_p(n-1, k-i); equals k C_p(n, k).
BigInt weighted_predecessor_sum(const DimTable& table, int n, long k);

}  // namespace polyadic
