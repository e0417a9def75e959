// primes.hpp
// Independent prime oracle: a segmented sieve of Eratosthenes with a
// process-wide cache. Shares no code with the pattern machinery, since it
// referees the Eratosthenes-window checks.
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sievelab/integer.hpp"

namespace sievelab {

// All primes <= limit, ascending. Empty for limit < 2.
std::vector<std::uint64_t> primes_oracle(std::uint64_t limit);

// p_index with p_1 = 2. index must be >= 1.
std::uint64_t nth_prime(std::size_t index);

// 1-based index of p in the prime sequence, or 0 when p is not prime.
std::size_t prime_index(std::uint64_t p);

bool is_prime(std::uint64_t n);
bool is_prime(const Integer& n);

// p_count# = product of the first `count` primes; primorial(0) == 1.
Integer primorial(std::size_t count);

}  // namespace sievelab
