#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace branchcalc {

// Arbitrary-precision signed integer. cpp_int keeps small values inline, so
// the common case of word exponents and small valencies does not allocate.
using BigInt = boost::multiprecision::cpp_int;

// Representative of a modulo m in [0, m). Requires m > 0.
BigInt floor_mod(const BigInt& a, const BigInt& m);

// Representative of a modulo m in (-m/2, m/2]. Requires m > 0.
BigInt symmetric_mod(const BigInt& a, const BigInt& m);

// Maps an integer to the 1-based child index in [1, m] (m stands for 0).
BigInt child_index(const BigInt& a, const BigInt& m);

BigInt ipow(const BigInt& base, std::uint64_t exponent);

// Approximate number of decimal digits of |a| (exact up to +-1).
std::uint64_t decimal_digits(const BigInt& a);

std::string to_decimal(const BigInt& a);

// Parses an optionally signed decimal integer; throws ParseError otherwise.
BigInt parse_decimal(std::string_view text);

// Modular inverse of a mod m, or 0 when gcd(a, m) != 1.
BigInt mod_inverse(const BigInt& a, const BigInt& m);

}  // namespace branchcalc
