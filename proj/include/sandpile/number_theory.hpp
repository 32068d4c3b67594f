#pragma once

#include "sandpile/matrix.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace sandpile {

using Prime = std::uint64_t;

constexpr bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline void require_prime(std::uint64_t p, const char* where) {
  if (!is_prime(p)) {
    throw std::invalid_argument(std::string(where) + ": " + std::to_string(p) + " is not prime");
  }
}

/// Largest i with p^i dividing m. Undefined (throws) for m = 0.
inline int valuation(const BigInt& m, Prime p) {
  if (m == 0) throw std::domain_error("valuation: v_p(0) is undefined");
  require_prime(p, "valuation");
  BigInt rest = abs(m);
  const BigInt base(p);
  int i = 0;
  while (rest % base == 0) {
    rest /= base;
    ++i;
  }
  return i;
}

inline int valuation(long long m, Prime p) { return valuation(BigInt(m), p); }

/// Distinct prime divisors of |m| in ascending order; empty for 0 and 1.
inline std::vector<Prime> prime_divisors(std::uint64_t m) {
  std::vector<Prime> out;
  for (std::uint64_t d = 2; d * d <= m; ++d) {
    if (m % d != 0) continue;
    out.push_back(d);
    while (m % d == 0) m /= d;
  }
  if (m > 1) out.push_back(m);
  return out;
}

inline BigInt ipow(const BigInt& base, long long exponent) {
  if (exponent < 0) throw std::domain_error("ipow: negative exponent");
  return boost::multiprecision::pow(base, static_cast<unsigned>(exponent));
}

}  // namespace sandpile
