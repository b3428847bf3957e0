#include "branchcalc/bigint.hpp"

#include <cctype>

#include "branchcalc/errors.hpp"

namespace branchcalc {

BigInt floor_mod(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  if (r < 0) r += m;
  return r;
}

BigInt symmetric_mod(const BigInt& a, const BigInt& m) {
  BigInt r = floor_mod(a, m);
  if (2 * r > m) r -= m;
  return r;
}

BigInt child_index(const BigInt& a, const BigInt& m) {
  return floor_mod(a - 1, m) + 1;
}

BigInt ipow(const BigInt& base, std::uint64_t exponent) {
  BigInt result = 1;
  BigInt b = base;
  while (exponent > 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent > 0) b *= b;
  }
  return result;
}

std::uint64_t decimal_digits(const BigInt& a) {
  if (a == 0) return 1;
  // log10(2) ~= 0.30103; msb is exact so this is off by at most one.
  const auto bits = boost::multiprecision::msb(abs(a)) + 1;
  return static_cast<std::uint64_t>(static_cast<double>(bits) * 0.30102999566) + 1;
}

std::string to_decimal(const BigInt& a) { return a.str(); }

BigInt parse_decimal(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negative = text[i] == '-';
    ++i;
  }
  if (i == text.size()) throw ParseError("expected decimal digits", i);
  BigInt value = 0;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw ParseError(std::string("unexpected character '") + c + "' in integer", i);
    }
    value *= 10;
    value += c - '0';
  }
  return negative ? BigInt(-value) : value;
}

BigInt mod_inverse(const BigInt& a, const BigInt& m) {
  BigInt old_r = floor_mod(a, m);
  BigInt r = m;
  BigInt old_s = 1;
  BigInt s = 0;
  while (r != 0) {
    BigInt q = old_r / r;
    BigInt tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) return 0;
  return floor_mod(old_s, m);
}

}  // namespace branchcalc
