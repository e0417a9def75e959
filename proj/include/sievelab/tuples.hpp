// tuples.hpp
// Admissible k-tuples, matching against patterns, tuple-primorial patterns
// and their reduction to (alpha, kappa)-regular residue classes.
//
// Given a tuple T = (a_1..a_k), an anchor (d, m) with p_d > a_k - a_1 and T
// matching the Eratosthenes pattern P_{d-1} at m, the tuple-primorial
// pattern with g primes is
//
//   tp(z) = 0  iff  m + a_u + (z-1) p_{d-1}# == 0 (mod p_v)
//                   for some u in 1..k, v in d..d+g-1,
//
// i.e. it tracks which instances T at mu(z) = m + (z-1) p_{d-1}# survive
// sieving by p_d..p_{d+g-1}. Solving for z gives k classes per prime:
//
//   r_{u,v} = (1 - (m + a_u) * inv(p_{d-1}# mod p_v)) mod p_v,
//
// which form a valid regular prefix with alpha = d, kappa = k.
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "sievelab/integer.hpp"
#include "sievelab/patterns.hpp"
#include "sievelab/residues.hpp"

namespace sievelab {

class KTuple {
public:
    // Throws InvalidTuple unless offsets are non-empty and strictly increasing.
    explicit KTuple(std::vector<std::int64_t> offsets);

    std::size_t k() const noexcept { return offsets_.size(); }
    const std::vector<std::int64_t>& offsets() const noexcept { return offsets_; }
    std::int64_t diameter() const noexcept { return offsets_.back() - offsets_.front(); }

    friend bool operator==(const KTuple&, const KTuple&) = default;

private:
    std::vector<std::int64_t> offsets_;
};

// Parses "0,2,6".
KTuple parse_tuple(std::string_view text);

bool is_admissible(const KTuple& tuple);

// All m in [lo, hi] with pattern_eval(m + a_i) == 1 for every i. Sharded over
// worker_count(); hi - lo must fit in 63 bits.
std::vector<Integer> matching_positions(const KTuple& tuple, const Pattern& pattern,
                                        const Integer& lo, const Integer& hi);

class TupleAnchor {
public:
    const KTuple& tuple() const noexcept { return tuple_; }
    std::size_t d() const noexcept { return d_; }
    const Integer& m() const noexcept { return m_; }
    // p_{d-1}#
    const Integer& primorial() const noexcept { return primorial_; }

private:
    friend TupleAnchor choose_anchor(const KTuple&, std::optional<std::size_t>,
                                     std::optional<Integer>, std::uint64_t);
    TupleAnchor(KTuple tuple, std::size_t d, Integer m, Integer primorial);

    KTuple tuple_;
    std::size_t d_;
    Integer m_;
    Integer primorial_;
};

inline constexpr std::uint64_t kDefaultAnchorSearchCap = 100'000'000;

// d defaults to the smallest d >= 2 with p_d > diameter; m defaults to the
// smallest matching position of the tuple in P_{d-1} within [1, p_{d-1}# - 1].
// Errors: NotAdmissible, InvalidAnchor (bad explicit d, or k >= p_d),
// InvalidExplicitM, NoMatchingPosition, CapExceeded (search cap).
TupleAnchor choose_anchor(const KTuple& tuple, std::optional<std::size_t> d = std::nullopt,
                          std::optional<Integer> m = std::nullopt,
                          std::uint64_t search_cap = kDefaultAnchorSearchCap);

// Direct evaluation of the defining congruences.
int tuple_primorial_eval(const TupleAnchor& anchor, std::size_t g, const Integer& z);

struct ReducedClasses {
    std::size_t alpha = 0;  // d
    std::size_t kappa = 0;  // k
    // v-major, u-minor: classes[(v-d)*k + (u-1)] = [r_{u,v}]_{p_v}
    std::vector<ResidueClass> classes;

    SievingPrefix to_prefix() const;
    RegularParams params() const { return RegularParams(alpha, kappa); }
};

ReducedClasses reduce_to_regular(const TupleAnchor& anchor, std::size_t g);

// {"alpha":d,"kappa":k,"classes":[{"r":..,"p":..},...]}
nlohmann::ordered_json reduced_classes_json(const ReducedClasses& reduced);

// mu(z) = m + (z-1) p_{d-1}#
Integer mu_map(const TupleAnchor& anchor, const Integer& z);
// Throws NotInResidueClass unless position == m (mod p_{d-1}#).
Integer mu_inverse(const TupleAnchor& anchor, const Integer& position);

struct IntegerInterval {
    Integer lo;
    Integer hi;
};

// [z_start, floor((p_{d+n}^2 - m) / p_{d-1}#)], or nullopt when empty.
std::optional<IntegerInterval> z_window(const TupleAnchor& anchor, std::size_t n,
                                        const Integer& z_start = Integer(1));

struct SurvivorRow {
    Integer z;
    Integer position;
    bool all_prime;

    friend bool operator==(const SurvivorRow&, const SurvivorRow&) = default;
};

// z in z_window(anchor, n, 1) with tp_n(z) = 1 whose whole instance lies in
// the Eratosthenes window [2, p_{d+n}^2 - 1]; all_prime is checked with the
// prime oracle. Evaluated through the reduced regular pattern.
std::vector<SurvivorRow> survivors(const TupleAnchor& anchor, std::size_t n);

}  // namespace sievelab
