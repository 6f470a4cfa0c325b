#include "polyadic/format.hpp"

#include <array>
#include <charconv>

namespace polyadic {

std::string format_real(double x) {
  if (x == 0.0) x = 0.0;  // no "-0" in CSV
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), end);
}

std::string decimal_string(const BigRational& v, int fraction_digits) {
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(fraction_digits));
  BigInt scaled;
  BigInt numerator = v.get_num() * scale;
  mpz_tdiv_q(scaled.get_mpz_t(), numerator.get_mpz_t(), v.get_den().get_mpz_t());
  const bool negative = sgn(scaled) < 0;
  std::string digits = BigInt(abs(scaled)).get_str();
  if (static_cast<int>(digits.size()) <= fraction_digits) {
    digits.insert(0, static_cast<std::size_t>(fraction_digits + 1) - digits.size(), '0');
  }
  std::string out = negative ? "-" : "";
  out += digits.substr(0, digits.size() - static_cast<std::size_t>(fraction_digits));
  if (fraction_digits > 0) out += "." + digits.substr(digits.size() - static_cast<std::size_t>(fraction_digits));
  return out;
}

}  // namespace polyadic
