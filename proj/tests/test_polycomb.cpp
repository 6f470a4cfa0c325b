#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "polyadic/error.hpp"
#include "polyadic/polycomb.hpp"

using namespace polyadic;

TEST_SUITE("polycomb") {

TEST_CASE("generating polynomial validation and parsing") {
  const GenPolynomial p = GenPolynomial::parse("1,1,3");
  CHECK(p.degree() == 2);
  CHECK(p.alphabet_size() == 5);
  CHECK(p.max_coeff() == 3);
  CHECK(p.to_string() == "1,1,3");
  CHECK(GenPolynomial::parse("3").degree() == 0);
  CHECK_THROWS_AS(GenPolynomial({1, 0, 2}), Error);
  CHECK_THROWS_AS(GenPolynomial({}), Error);
  CHECK_THROWS_AS(GenPolynomial::parse("1,,2"), Error);
  CHECK_THROWS_AS(GenPolynomial::parse("a"), Error);
}

TEST_CASE("small rows") {
  DimTable pascal(GenPolynomial({1, 1}), 4);
  const auto row = pascal.row(4);
  CHECK(std::vector<BigInt>(row.begin(), row.end()) == std::vector<BigInt>{1, 4, 6, 4, 1});
  CHECK(pascal.dim(4, 2) == 6);

  DimTable t113(GenPolynomial({1, 1, 3}), 3);
  CHECK(t113.dim(2, 2) == 7);
  CHECK(t113.dim(2, 4) == 9);
  CHECK(t113.dim(3, 0) == 1);
  CHECK(t113.dim(3, -1) == 0);
  CHECK(t113.dim(3, 7) == 0);

  DimTable t21(GenPolynomial({2, 1}), 2);
  CHECK(t21.dim(2, 0) == 4);
}

TEST_CASE("reflection") {
  DimTable t113(GenPolynomial({1, 1, 3}), 2);
  CHECK(t113.reflected_dim(2, 0) == 9);
  CHECK(t113.reflected_dim(0, 0) == 1);
  DimTable pascal(GenPolynomial({1, 1}), 4);
  CHECK(pascal.reflected_dim(4, 1) == 4);
}

TEST_CASE("rows match schoolbook expansion") {
  for (auto coeffs : std::vector<std::vector<int>>{{1, 1}, {2, 1}, {1, 1, 3}, {3}, {1, 2, 1, 4}}) {
    DimTable t{GenPolynomial(coeffs), 12};
    for (int n = 0; n <= 12; ++n) {
      const auto expected = oracle::poly_power(coeffs, n);
      const auto row = t.row(n);
      REQUIRE(row.size() == expected.size());
      for (std::size_t k = 0; k < row.size(); ++k) CHECK(row[k] == expected[k]);
    }
  }
}

TEST_CASE("recursion and row sums") {
  const GenPolynomial p({1, 1, 3});
  DimTable t(p, 40);
  BigInt rn = 1;
  for (int n = 0; n <= 40; ++n) {
    BigInt sum = 0;
    for (long k = 0; k <= 2L * n; ++k) {
      sum += t.dim(n, k);
      if (n > 0) {
        BigInt rec = 0;
        for (int j = 0; j <= 2; ++j) rec += p.coeff(j) * t.dim(n - 1, k - j);
        CHECK(rec == t.dim(n, k));
      }
    }
    CHECK(sum == rn);
    rn *= 5;
  }
}

TEST_CASE("capacity and level errors") {
  CHECK_THROWS_AS(DimTable(GenPolynomial({1, 1}), 1000, 100), Error);
  try {
    DimTable(GenPolynomial({1, 1}), 1000, 100);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Capacity);
  }
  DimTable t(GenPolynomial({1, 1}), 5);
  CHECK_THROWS_AS(t.dim(6, 0), Error);
  CHECK_THROWS_AS(DimTable(GenPolynomial({1, 1}), -1), Error);
}

TEST_CASE("Vandermonde convolution") {
  std::mt19937_64 rng(7);
  for (auto coeffs : std::vector<std::vector<int>>{{1, 1}, {2, 1}, {1, 1, 3}, {1, 3, 2, 1}}) {
    const GenPolynomial p(coeffs);
    DimTable t(p, 30);
    for (int trial = 0; trial < 40; ++trial) {
      const int n = static_cast<int>(rng() % 31);
      const int split = static_cast<int>(rng() % static_cast<unsigned>(n + 1));
      const long k = static_cast<long>(rng() % static_cast<unsigned>(n * p.degree() + 3)) - 1;
      CHECK(vandermonde_sum(t, n, split, k) == t.dim(n, k));
    }
  }
}

TEST_CASE("weighted predecessor identity") {
  for (auto coeffs : std::vector<std::vector<int>>{{1, 1}, {2, 1}, {1, 1, 3}, {1, 3, 2, 1}, {4}}) {
    const GenPolynomial p(coeffs);
    DimTable t(p, 25);
    for (int n = 1; n <= 25; ++n) {
      for (long k = 0; k <= static_cast<long>(n) * p.degree(); ++k) {
        CHECK(weighted_predecessor_sum(t, n, k) == k * t.dim(n, k));
        // Each i >= 1 term is bounded by (k/n) C(n, k).
        for (int i = 1; i <= p.degree(); ++i) {
          CHECK(BigInt(n * p.coeff(i) * i * t.dim(n - 1, k - i)) <= k * t.dim(n, k));
        }
      }
    }
  }
}

TEST_CASE("eventual unimodality and the ratio bound") {
  for (auto coeffs : std::vector<std::vector<int>>{{1, 1}, {2, 1}, {1, 1, 3}, {5, 1, 5}, {1, 3, 2, 1}}) {
    DimTable t(GenPolynomial(coeffs), 120);
    const auto n1 = first_unimodal_level(t, 64);
    REQUIRE(n1.has_value());
    for (int n = *n1; n <= 120; ++n) CHECK(is_unimodal_row(t, n));
    // Constant fitted at the first unimodal level past 10, with slack for rounding.
    const int fit = std::max(*n1, 10);
    const double c1 = max_adjacent_ratio(t, fit) / fit * (1.0 + 1e-12);
    for (int n = fit; n <= 120; ++n) CHECK(max_adjacent_ratio(t, n) <= c1 * n);
  }
  DimTable odd(GenPolynomial({5, 1, 5}), 3);
  CHECK_FALSE(is_unimodal_row(odd, 1));  // 5,1,5
}

TEST_CASE("central index") {
  DimTable t(GenPolynomial({1, 1}), 6);
  CHECK(t.central_index(4) == 2);
  CHECK(t.central_index(5) == 2);  // smallest argmax
  DimTable od(GenPolynomial({3}), 4);
  CHECK(od.central_index(4) == 0);
}

}
