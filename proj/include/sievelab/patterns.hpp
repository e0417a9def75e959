// patterns.hpp
// Sieving patterns P_n (1 = unsieved), their fundamental period and exact
// average density, the (alpha, kappa)-regular closed forms, and the
// Eratosthenes pattern with its primality window.
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sievelab/integer.hpp"
#include "sievelab/residues.hpp"

namespace sievelab {

using DensityValue = Rational;

// Default cap on positions materialized for one period.
inline constexpr std::uint64_t kDefaultPeriodCap = 100'000'000;

class Pattern {
public:
    struct PrimeGroup {
        std::uint64_t prime;
        std::vector<std::uint64_t> residues;
    };

    Pattern() = default;
    // Uses the first `depth` classes; throws IndexOutOfRange if depth > prefix.size().
    Pattern(const SievingPrefix& prefix, std::size_t depth);
    explicit Pattern(const SievingPrefix& prefix) : Pattern(prefix, prefix.size()) {}

    std::size_t depth() const noexcept { return active_.size(); }
    const SievingPrefix& active_prefix() const noexcept { return active_; }
    const std::vector<PrimeGroup>& groups() const noexcept { return groups_; }

private:
    SievingPrefix active_;
    std::vector<PrimeGroup> groups_;
};

// 1 - [z in M_depth].
int pattern_eval(const Pattern& pattern, const Integer& z);
int pattern_eval(const Pattern& pattern, std::int64_t z);

// Product of the distinct primes among the active classes.
Integer fundamental_period(const Pattern& pattern);

// Product over distinct primes p of (p - c_p) / p, c_p = active classes mod p.
DensityValue average_density(const Pattern& pattern);

// Regular closed forms: period p_{alpha+ceil(n/kappa)-1}# / p_{alpha-1}#,
// density (1 - (n - kappa*floor(n/kappa)) / p_{alpha+floor(n/kappa)})
//           * prod_{i<floor(n/kappa)} (1 - kappa / p_{alpha+i}).
Integer regular_period(const RegularParams& params, std::size_t n);
DensityValue regular_density(const RegularParams& params, std::size_t n);
// prod_{i < n/kappa} (1 - kappa / p_{alpha+i}); requires kappa | n.
DensityValue regular_density_divisible(const RegularParams& params, std::size_t n);

SievingPrefix eratosthenes_prefix(std::size_t n);
Pattern eratosthenes_pattern(std::size_t n);

// 1 iff z is divisible by none of p_1..p_n. Evaluated directly, not through Pattern.
int eratosthenes_eval(std::size_t n, const Integer& z);

struct EratosthenesWindow {
    std::size_t n;
    Integer lo;  // always 2
    Integer hi;  // p_{n+1}^2 - 1
};

EratosthenesWindow eratosthenes_window(std::size_t n);

// Pattern values at z = 1 .. T (index i holds z = i + 1). Throws CapExceeded when T > cap.
std::vector<std::uint8_t> materialize_period(const Pattern& pattern,
                                             std::uint64_t cap = kDefaultPeriodCap);

// Unsieved positions in [lo, lo + length). Sharded over worker_count().
std::uint64_t count_unsieved(const Pattern& pattern, const Integer& lo, std::uint64_t length);

}  // namespace sievelab
