// residues.hpp
// Residue classes, validated sieving prefixes, and membership in the
// ordered sieving model M_n = [r_1]_{p_1} u ... u [r_n]_{p_n}.
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sievelab/errors.hpp"
#include "sievelab/integer.hpp"

namespace sievelab {

struct ResidueClass {
    std::uint64_t residue = 0;
    std::uint64_t modulus = 2;

    bool contains(std::int64_t z) const { return mod_i64(z, modulus) == residue; }
    bool contains(const Integer& z) const { return mod_u64(z, modulus) == residue; }

    friend bool operator==(const ResidueClass&, const ResidueClass&) = default;
};

// A finite prefix of a sieving sequence satisfying all four constraints:
// non-decreasing primes, r_i < p_i, fewer than p classes per prime p, and
// pairwise distinct residues for equal primes. Only validate_prefix builds
// non-empty ones.
class SievingPrefix {
public:
    SievingPrefix() = default;

    std::size_t size() const noexcept { return classes_.size(); }
    bool empty() const noexcept { return classes_.empty(); }
    const std::vector<ResidueClass>& classes() const noexcept { return classes_; }
    // 0-based accessors.
    std::uint64_t prime(std::size_t i) const { return classes_.at(i).modulus; }
    std::uint64_t residue(std::size_t i) const { return classes_.at(i).residue; }

    // First n classes as a new (still valid) prefix.
    SievingPrefix truncated(std::size_t n) const;

    friend bool operator==(const SievingPrefix&, const SievingPrefix&) = default;

private:
    friend SievingPrefix validate_prefix(std::span<const std::int64_t>,
                                         std::span<const std::int64_t>);
    std::vector<ResidueClass> classes_;
};

// Throws SieveError naming the first violated constraint and its 0-based index.
SievingPrefix validate_prefix(std::span<const std::int64_t> primes,
                              std::span<const std::int64_t> residues);
SievingPrefix validate_prefix(std::span<const ResidueClass> classes);

// z in M_n. Throws IndexOutOfRange when n > prefix.size().
bool model_contains(const SievingPrefix& prefix, std::size_t n, const Integer& z);
bool model_contains(const SievingPrefix& prefix, std::size_t n, std::int64_t z);

// (alpha, kappa) of a regular prime sieving sequence p_i = p_{alpha+ceil(i/kappa)-1}.
class RegularParams {
public:
    // Throws InvalidRegularParams unless alpha >= 1 and 1 <= kappa < p_alpha.
    RegularParams(std::size_t alpha, std::size_t kappa);

    std::size_t alpha() const noexcept { return alpha_; }
    std::size_t kappa() const noexcept { return kappa_; }

    friend bool operator==(const RegularParams&, const RegularParams&) = default;

private:
    std::size_t alpha_;
    std::size_t kappa_;
};

// p_{alpha + ceil(i/kappa) - 1}; i is 1-based.
std::uint64_t regular_prime_at(const RegularParams& params, std::size_t i);

// Prefix whose primes follow `params` and whose residues are given.
SievingPrefix regular_prefix(const RegularParams& params,
                             std::span<const std::int64_t> residues);

// Residues drawn from a seeded generator: each r_i is uniform over the
// residues of p_i not yet used. Generator: std::mt19937_64(seed), index
// chosen by rejection sampling of raw 64-bit outputs (no distribution
// objects, so the stream is identical across standard libraries).
SievingPrefix random_regular_prefix(const RegularParams& params, std::size_t n,
                                    std::uint64_t seed);

// Params reproducing the prefix's prime sequence, if any. kappa is the
// multiplicity of the first prime; a prefix with a single prime yields that
// multiplicity even though larger kappa would also fit.
std::optional<RegularParams> infer_regular_params(const SievingPrefix& prefix);

}  // namespace sievelab
