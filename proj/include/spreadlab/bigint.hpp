#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace spreadlab {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt big_pow(std::uint64_t base, unsigned exponent) {
  return boost::multiprecision::pow(BigInt(base), exponent);
}

// Floor division for possibly negative numerators; divisor must be positive.
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt quot = a / b;
  if (a % b != 0 && a < 0) --quot;
  return quot;
}

inline BigInt ceil_div(const BigInt& a, const BigInt& b) {
  BigInt quot = a / b;
  if (a % b != 0 && a > 0) ++quot;
  return quot;
}

inline std::string to_decimal(const BigInt& v) { return v.str(); }

}  // namespace spreadlab
