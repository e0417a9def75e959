#include "sievelab/residues.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <random>
#include <string>

#include "sievelab/primes.hpp"

namespace sievelab {

SievingPrefix SievingPrefix::truncated(std::size_t n) const {
    if (n > classes_.size()) {
        throw SieveError(ErrorKind::IndexOutOfRange,
                         "truncate to " + std::to_string(n) + " of " + std::to_string(classes_.size()));
    }
    SievingPrefix out;
    out.classes_.assign(classes_.begin(), classes_.begin() + static_cast<std::ptrdiff_t>(n));
    return out;
}

SievingPrefix validate_prefix(std::span<const std::int64_t> primes,
                              std::span<const std::int64_t> residues) {
    if (primes.size() != residues.size()) {
        throw SieveError(ErrorKind::LengthMismatch,
                         std::to_string(primes.size()) + " primes vs " +
                             std::to_string(residues.size()) + " residues");
    }
    SievingPrefix out;
    out.classes_.reserve(primes.size());
    // Classes seen so far for the current prime; primes arrive grouped.
    std::vector<std::uint64_t> group;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const std::int64_t p = primes[i];
        const std::int64_t r = residues[i];
        if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) {
            throw SieveError(ErrorKind::NonPrimeModulus,
                             "modulus " + std::to_string(p) + " at index " + std::to_string(i), i);
        }
        const auto up = static_cast<std::uint64_t>(p);
        if (i > 0 && up < out.classes_.back().modulus) {
            throw SieveError(ErrorKind::NotNonDecreasing,
                             "prime " + std::to_string(p) + " after " +
                                 std::to_string(out.classes_.back().modulus) + " at index " +
                                 std::to_string(i),
                             i);
        }
        if (r < 0 || r >= p) {
            throw SieveError(ErrorKind::ResidueOutOfRange,
                             "residue " + std::to_string(r) + " for prime " + std::to_string(p) +
                                 " at index " + std::to_string(i),
                             i);
        }
        if (i == 0 || up != out.classes_.back().modulus) group.clear();
        if (group.size() + 1 >= up) {
            throw SieveError(ErrorKind::TooManyClassesForPrime,
                             std::to_string(group.size() + 1) + " classes for prime " +
                                 std::to_string(p) + " at index " + std::to_string(i),
                             i);
        }
        const auto ur = static_cast<std::uint64_t>(r);
        if (std::find(group.begin(), group.end(), ur) != group.end()) {
            throw SieveError(ErrorKind::DuplicateClass,
                             "[" + std::to_string(r) + "]_" + std::to_string(p) +
                                 " repeated at index " + std::to_string(i),
                             i);
        }
        group.push_back(ur);
        out.classes_.push_back({ur, up});
    }
    return out;
}

SievingPrefix validate_prefix(std::span<const ResidueClass> classes) {
    std::vector<std::int64_t> primes, residues;
    primes.reserve(classes.size());
    residues.reserve(classes.size());
    for (const auto& c : classes) {
        primes.push_back(static_cast<std::int64_t>(c.modulus));
        residues.push_back(static_cast<std::int64_t>(c.residue));
    }
    return validate_prefix(primes, residues);
}

namespace {

void check_depth(const SievingPrefix& prefix, std::size_t n) {
    if (n > prefix.size()) {
        throw SieveError(ErrorKind::IndexOutOfRange,
                         "n = " + std::to_string(n) + " exceeds prefix length " +
                             std::to_string(prefix.size()));
    }
}

}  // namespace

bool model_contains(const SievingPrefix& prefix, std::size_t n, const Integer& z) {
    check_depth(prefix, n);
    const auto& cls = prefix.classes();
    std::uint64_t last_p = 0, zr = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (cls[i].modulus != last_p) {
            last_p = cls[i].modulus;
            zr = mod_u64(z, last_p);
        }
        if (zr == cls[i].residue) return true;
    }
    return false;
}

bool model_contains(const SievingPrefix& prefix, std::size_t n, std::int64_t z) {
    check_depth(prefix, n);
    const auto& cls = prefix.classes();
    for (std::size_t i = 0; i < n; ++i) {
        if (cls[i].contains(z)) return true;
    }
    return false;
}

RegularParams::RegularParams(std::size_t alpha, std::size_t kappa) : alpha_(alpha), kappa_(kappa) {
    if (alpha == 0) throw SieveError(ErrorKind::InvalidRegularParams, "alpha must be >= 1");
    if (kappa == 0) throw SieveError(ErrorKind::InvalidRegularParams, "kappa must be >= 1");
    if (kappa >= nth_prime(alpha)) {
        throw SieveError(ErrorKind::InvalidRegularParams,
                         "kappa = " + std::to_string(kappa) + " must be below p_alpha = " +
                             std::to_string(nth_prime(alpha)));
    }
}

std::uint64_t regular_prime_at(const RegularParams& params, std::size_t i) {
    if (i == 0) throw SieveError(ErrorKind::IndexOutOfRange, "regular_prime_at is 1-based");
    const std::size_t ceil_div = (i + params.kappa() - 1) / params.kappa();
    return nth_prime(params.alpha() + ceil_div - 1);
}

SievingPrefix regular_prefix(const RegularParams& params, std::span<const std::int64_t> residues) {
    std::vector<std::int64_t> primes(residues.size());
    for (std::size_t i = 0; i < residues.size(); ++i) {
        primes[i] = static_cast<std::int64_t>(regular_prime_at(params, i + 1));
    }
    return validate_prefix(primes, residues);
}

namespace {

// Uniform index in [0, bound) from raw generator output.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = max - (max % bound + 1) % bound;
    for (;;) {
        const std::uint64_t x = rng();
        if (x <= limit) return x % bound;
    }
}

}  // namespace

SievingPrefix random_regular_prefix(const RegularParams& params, std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::int64_t> residues;
    residues.reserve(n);
    std::vector<std::uint64_t> unused;
    std::uint64_t current = 0;
    for (std::size_t i = 1; i <= n; ++i) {
        const std::uint64_t p = regular_prime_at(params, i);
        if (p != current) {
            current = p;
            unused.resize(p);
            for (std::uint64_t r = 0; r < p; ++r) unused[r] = r;
        }
        const std::uint64_t k = draw_below(rng, unused.size());
        residues.push_back(static_cast<std::int64_t>(unused[k]));
        // Order-preserving removal keeps the draw sequence well defined.
        unused.erase(unused.begin() + static_cast<std::ptrdiff_t>(k));
    }
    return regular_prefix(params, residues);
}

std::optional<RegularParams> infer_regular_params(const SievingPrefix& prefix) {
    if (prefix.empty()) return std::nullopt;
    const std::size_t alpha = prime_index(prefix.prime(0));
    std::size_t kappa = 0;
    while (kappa < prefix.size() && prefix.prime(kappa) == prefix.prime(0)) ++kappa;
    if (alpha == 0 || kappa >= prefix.prime(0)) return std::nullopt;
    const RegularParams params(alpha, kappa);
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        if (regular_prime_at(params, i + 1) != prefix.prime(i)) return std::nullopt;
    }
    return params;
}

}  // namespace sievelab
