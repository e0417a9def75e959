// total_sieve.hpp
// Total sieves S_n(z) (maximal runs of sieved positions around z), the
// incremental expanding total sieve, the growth bounds gamma_n and beta*_n,
// and crossing statistics of #S_n(z) against a bound.
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "sievelab/integer.hpp"
#include "sievelab/patterns.hpp"
#include "sievelab/residues.hpp"

namespace sievelab {

// Positions examined per scan before giving up with CapExceeded.
inline constexpr std::uint64_t kDefaultScanCap = 1'000'000'000;

class SieveInterval {
public:
    SieveInterval() = default;  // empty
    SieveInterval(Integer lo, Integer hi);

    bool empty() const noexcept { return empty_; }
    const Integer& lo() const { return lo_; }
    const Integer& hi() const { return hi_; }
    Integer size() const;
    bool contains(const Integer& z) const;
    bool contains(const SieveInterval& other) const;
    std::string to_string() const;

    friend bool operator==(const SieveInterval& a, const SieveInterval& b);

private:
    bool empty_ = true;
    Integer lo_;
    Integer hi_;
};

SieveInterval total_sieve_around(const Pattern& pattern, const Integer& z,
                                 std::uint64_t scan_cap = kDefaultScanCap);

enum class BoundKind { gamma, beta_star };

std::string_view bound_name(BoundKind kind);

struct GrowthRow {
    std::size_t n = 0;
    SieveInterval interval;
    Integer size;
    Rational beta_star;
    Rational gamma;
    bool crossed = false;
};

struct GrowthSeries {
    Integer z;
    BoundKind crossing_bound = BoundKind::gamma;
    std::vector<GrowthRow> rows;
};

struct ExpandOptions {
    std::uint64_t scan_cap = kDefaultScanCap;
    BoundKind crossing_bound = BoundKind::gamma;
};

using RowSink = std::function<void(const GrowthRow&)>;

// Rows for n = 1..n_max, each grown from the previous interval by scanning
// outward only. Every row is passed to `sink` as soon as it is final. Throws
// IndexOutOfRange if n_max > prefix.size() and CapExceeded if one scan
// exceeds options.scan_cap (rows already emitted stay emitted).
GrowthSeries expand_total_sieve(const SievingPrefix& prefix, const Integer& z, std::size_t n_max,
                                const ExpandOptions& options = {}, const RowSink& sink = {});

// gamma_n = 2n p_{a+q} / (p_{a+q} - n + kappa q) * prod_{i<q} p_{a+i} / (p_{a+i} - kappa),
// q = floor(n / kappa). Equals 2n / D_n.
Rational gamma_bound(const RegularParams& params, std::size_t n);
// Same formula without RegularParams validation; throws DegenerateDenominator
// when a factor's denominator is not positive.
Rational gamma_bound_raw(std::size_t alpha, std::size_t kappa, std::size_t n);

// beta*_n = 2 * sum_{i=1..n} 1 / D_i.
Rational beta_star(const RegularParams& params, std::size_t n);

// gamma_n and beta*_n for successive depths of any valid prefix, from the
// general density (coincides with the regular closed forms).
class BoundSequence {
public:
    explicit BoundSequence(const SievingPrefix& prefix);

    // Moves to depth n + 1. Requires n < prefix.size().
    void advance();

    std::size_t n() const noexcept { return n_; }
    const Rational& density() const noexcept { return density_; }
    const Rational& gamma() const noexcept { return gamma_; }
    const Rational& beta_star() const noexcept { return beta_star_; }

private:
    std::vector<std::uint64_t> primes_;
    std::size_t n_ = 0;
    std::size_t same_prime_ = 0;
    Rational density_ = 1;
    Rational gamma_ = 0;
    Rational beta_star_ = 0;
};

struct CrossingStats {
    std::size_t crossings = 0;
    std::size_t last_crossing_n = 0;  // 0 when there was no crossing
    std::vector<int> sign_profile;    // sign(size_n - bound_n) per row
};

// Strict sign alternation: a crossing at n is a nonzero sign that differs
// from the last nonzero sign. Zero signs never count and never reset.
class CrossingTracker {
public:
    bool push(std::size_t n, const Integer& size, const Rational& bound);
    const CrossingStats& stats() const noexcept { return stats_; }

private:
    CrossingStats stats_;
    int last_sign_ = 0;
};

CrossingStats crossing_stats(const GrowthSeries& series, BoundKind bound);
CrossingStats crossing_stats(std::span<const Integer> sizes, std::span<const Rational> bounds);

// CSV: header `n,size,beta_star,gamma,crossed`, rationals as p/q, crossed as 0/1.
void write_growth_csv_header(std::ostream& out);
void write_growth_csv_row(std::ostream& out, const GrowthRow& row);
nlohmann::ordered_json growth_row_json(const GrowthRow& row);
nlohmann::ordered_json growth_series_json(const GrowthSeries& series);

}  // namespace sievelab
