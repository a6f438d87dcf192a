#pragma once

#include <cstddef>
#include <vector>

#include "pzeta/error.hpp"

namespace pzeta {

// mu(n) for 0 <= n <= limit (mu(0) = 0), by a linear sieve.
inline std::vector<int> mobius_table(std::size_t limit) {
  std::vector<int> mu(limit + 1, 0);
  if (limit >= 1) mu[1] = 1;
  std::vector<std::size_t> primes;
  std::vector<bool> composite(limit + 1, false);
  for (std::size_t i = 2; i <= limit; ++i) {
    if (!composite[i]) {
      primes.push_back(i);
      mu[i] = -1;
    }
    for (std::size_t p : primes) {
      if (i * p > limit) break;
      composite[i * p] = true;
      if (i % p == 0) {
        mu[i * p] = 0;
        break;
      }
      mu[i * p] = -mu[i];
    }
  }
  return mu;
}

// d(n), the number of divisors, for 0 <= n <= limit (d(0) = 0).
inline std::vector<long> divisor_count_table(std::size_t limit) {
  std::vector<long> d(limit + 1, 0);
  for (std::size_t i = 1; i <= limit; ++i)
    for (std::size_t j = i; j <= limit; j += i) ++d[j];
  return d;
}

}  // namespace pzeta
