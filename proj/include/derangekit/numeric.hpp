#pragma once

#include <cstdint>
#include <vector>

#include "derangekit/bigint.hpp"

namespace derangekit {

/// n! by iterated product.
inline BigInt factorial(std::uint64_t n) {
  BigInt r = 1;
  for (std::uint64_t i = 2; i <= n; ++i) r *= i;
  return r;
}

/// C(n,k) via the multiplicative formula; each intermediate division is
/// exact because the first i+1 factors form a binomial coefficient
/// themselves. Returns 0 when k > n.
inline BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    r *= n - i;
    r /= i + 1;
  }
  return r;
}

/// Falling factorial n(n-1)...(n-m+1). Empty product (= 1) for m = 0; a
/// zero factor appears as soon as m > n, so the result is 0 there.
inline BigInt falling_factorial(std::uint64_t n, std::uint64_t m) {
  if (m > n) return 0;
  BigInt r = 1;
  for (std::uint64_t i = 0; i < m; ++i) r *= n - i;
  return r;
}

/// base^exponent by binary exponentiation, with 0^0 = 1 (empty product:
/// there is exactly one function from the empty set).
inline BigInt power(const BigInt& base, std::uint64_t exponent) {
  BigInt r = 1;
  BigInt b = base;
  while (exponent > 0) {
    if (exponent & 1) r *= b;
    exponent >>= 1;
    if (exponent > 0) b *= b;
  }
  return r;
}

/// Stirling number of the second kind S(m,n): partitions of an m-set into
/// exactly n nonempty blocks. Single-row dynamic programming over the
/// triangle recurrence S(m,n) = n*S(m-1,n) + S(m-1,n-1); no shared state,
/// safe to call concurrently.
inline BigInt stirling2(std::uint64_t m, std::uint64_t n) {
  if (n > m) return 0;
  if (n == 0) return m == 0 ? 1 : 0;
  std::vector<BigInt> row(n + 1);
  row[0] = 1;  // S(0,0)
  for (std::uint64_t i = 1; i <= m; ++i) {
    std::uint64_t hi = i < n ? i : n;
    for (std::uint64_t j = hi; j >= 1; --j) {
      row[j] = j * row[j] + row[j - 1];
    }
    row[0] = 0;  // S(i,0) = 0 once the set is nonempty
  }
  return row[n];
}

}  // namespace derangekit
