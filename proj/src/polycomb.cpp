#include "polyadic/polycomb.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "polyadic/error.hpp"

namespace polyadic {

GenPolynomial::GenPolynomial(std::vector<int> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) {
    throw Error(ErrorKind::InvalidArgument, "generating polynomial needs at least one coefficient");
  }
  for (int a : coeffs_) {
    if (a < 1) {
      throw Error(ErrorKind::InvalidArgument, "polynomial coefficients must be positive integers");
    }
  }
  alphabet_size_ = std::accumulate(coeffs_.begin(), coeffs_.end(), 0);
}

int GenPolynomial::max_coeff() const noexcept {
  return *std::max_element(coeffs_.begin(), coeffs_.end());
}

std::string GenPolynomial::to_string() const {
  std::ostringstream out;
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    if (j) out << ',';
    out << coeffs_[j];
  }
  return out.str();
}

GenPolynomial GenPolynomial::parse(const std::string& text) {
  std::vector<int> coeffs;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      int value = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      coeffs.push_back(value);
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidArgument, "bad polynomial coefficient '" + item + "'");
    }
  }
  return GenPolynomial(std::move(coeffs));
}

DimTable::DimTable(GenPolynomial poly, int n_max, std::size_t entry_budget)
    : poly_(std::move(poly)) {
  if (n_max < 0) throw Error(ErrorKind::InvalidArgument, "n_max must be non-negative");
  const std::size_t d = static_cast<std::size_t>(poly_.degree());
  const std::size_t levels = static_cast<std::size_t>(n_max) + 1;
  // sum_{n<=n_max} (nd + 1)
  const std::size_t entries = levels + d * (levels * (levels - 1) / 2);
  if (entries > entry_budget) {
    throw Error(ErrorKind::Capacity, "dimension table with n_max=" + std::to_string(n_max) +
                                         " needs " + std::to_string(entries) + " entries");
  }

  rows_.reserve(levels);
  rows_.push_back({BigInt(1)});
  for (int n = 1; n <= n_max; ++n) {
    const auto& prev = rows_.back();
    std::vector<BigInt> row(static_cast<std::size_t>(n) * d + 1);
    for (std::size_t k = 0; k < prev.size(); ++k) {
      for (std::size_t j = 0; j <= d; ++j) {
        mpz_addmul_ui(row[k + j].get_mpz_t(), prev[k].get_mpz_t(),
                      static_cast<unsigned long>(poly_.coeff(static_cast<int>(j))));
      }
    }
    rows_.push_back(std::move(row));
  }
}

void DimTable::check_level(int n) const {
  if (n < 0 || n > n_max()) {
    throw Error(ErrorKind::Capacity, "level " + std::to_string(n) + " outside table (n_max=" +
                                         std::to_string(n_max()) + ")");
  }
}

const BigInt& DimTable::dim(int n, long k) const {
  check_level(n);
  const auto& row = rows_[static_cast<std::size_t>(n)];
  if (k < 0 || k >= static_cast<long>(row.size())) return zero_;
  return row[static_cast<std::size_t>(k)];
}

const BigInt& DimTable::reflected_dim(int n, long k1) const {
  return dim(n, static_cast<long>(n) * degree() - k1);
}

std::span<const BigInt> DimTable::row(int n) const {
  check_level(n);
  return rows_[static_cast<std::size_t>(n)];
}

int DimTable::central_index(int n) const {
  auto r = row(n);
  return static_cast<int>(std::max_element(r.begin(), r.end()) - r.begin());
}

bool is_unimodal_row(const DimTable& table, int n) {
  auto r = table.row(n);
  bool descending = false;
  for (std::size_t k = 1; k < r.size(); ++k) {
    const int c = cmp(r[k], r[k - 1]);
    if (c < 0) descending = true;
    if (c > 0 && descending) return false;
  }
  return true;
}

std::optional<int> first_unimodal_level(const DimTable& table, int search_limit) {
  // Scan downward from the top: the answer is one past the last failing row.
  int last_bad = -1;
  for (int n = table.n_max(); n >= 0; --n) {
    if (!is_unimodal_row(table, n)) {
      last_bad = n;
      break;
    }
  }
  const int n1 = last_bad + 1;
  if (n1 > search_limit || n1 > table.n_max()) return std::nullopt;
  return n1;
}

double max_adjacent_ratio(const DimTable& table, int n) {
  auto r = table.row(n);
  BigRational best = 0;
  for (std::size_t k = 0; k + 1 < r.size(); ++k) {
    BigRational up(r[k + 1], r[k]);
    up.canonicalize();
    BigRational down(r[k], r[k + 1]);
    down.canonicalize();
    best = std::max({best, up, down});
  }
  return best.get_d();
}

BigInt vandermonde_sum(const DimTable& table, int n, int split, long k) {
  if (split < 0 || split > n) throw Error(ErrorKind::InvalidArgument, "split level outside [0, n]");
  BigInt total = 0;
  const long top = static_cast<long>(split) * table.degree();
  for (long l = 0; l <= top; ++l) {
    total += table.dim(split, l) * table.dim(n - split, k - l);
  }
  return total;
}

BigInt weighted_predecessor_sum(const DimTable& table, int n, long k) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "weighted identity needs n >= 1");
  BigInt total = 0;
  const auto& p = table.poly();
  for (int i = 1; i <= p.degree(); ++i) {
    mpz_addmul_ui(total.get_mpz_t(), table.dim(n - 1, k - i).get_mpz_t(),
                  static_cast<unsigned long>(p.coeff(i) * i));
  }
  return total * n;
}

}  // namespace polyadic
