#include "sievelab/total_sieve.hpp"

#include <algorithm>
#include <ostream>
#include <string>

#include "sievelab/primes.hpp"
#include "sievelab/simd/kernels.hpp"
#include "sievelab/window.hpp"

namespace sievelab {

SieveInterval::SieveInterval(Integer lo, Integer hi) : empty_(false), lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_ > hi_) throw std::invalid_argument("SieveInterval: lo > hi");
}

Integer SieveInterval::size() const { return empty_ ? Integer(0) : Integer(hi_ - lo_ + 1); }

bool SieveInterval::contains(const Integer& z) const { return !empty_ && lo_ <= z && z <= hi_; }

bool SieveInterval::contains(const SieveInterval& other) const {
    if (other.empty_) return true;
    return !empty_ && lo_ <= other.lo_ && other.hi_ <= hi_;
}

std::string SieveInterval::to_string() const {
    if (empty_) return "empty";
    return "[" + sievelab::to_string(lo_) + "," + sievelab::to_string(hi_) + "]";
}

bool operator==(const SieveInterval& a, const SieveInterval& b) {
    if (a.empty_ || b.empty_) return a.empty_ == b.empty_;
    return a.lo_ == b.lo_ && a.hi_ == b.hi_;
}

std::string_view bound_name(BoundKind kind) { return kind == BoundKind::gamma ? "gamma" : "beta_star"; }

namespace {

// Outward scans over a fixed pattern, in offsets relative to the evaluator's anchor.
class Scanner {
public:
    Scanner(const Pattern& pattern, const Integer& anchor, std::uint64_t cap)
        : eval_(pattern, anchor), cap_(cap) {}

    // Largest offset t >= start such that [start, t] is all sieved; start must be sieved.
    std::int64_t right_end(std::int64_t start) {
        std::int64_t pos = start;
        std::size_t block = kFirstBlock;
        for (;;) {
            block = consume(block);
            buf_.resize(block);
            eval_.evaluate(pos, buf_);
            const std::size_t hit = simd::kernels().find_nonzero(buf_.data(), block);
            if (hit != block) return pos + static_cast<std::int64_t>(hit) - 1;
            pos += static_cast<std::int64_t>(block);
            block = std::min(block * 2, kMaxBlock);
        }
    }

    // Smallest offset t <= start such that [t, start] is all sieved.
    std::int64_t left_end(std::int64_t start) {
        std::int64_t end = start;  // inclusive right edge of the next block
        std::size_t block = kFirstBlock;
        for (;;) {
            block = consume(block);
            buf_.resize(block);
            const std::int64_t lo = end - static_cast<std::int64_t>(block) + 1;
            eval_.evaluate(lo, buf_);
            const std::size_t hit = simd::kernels().rfind_nonzero(buf_.data(), block);
            if (hit != block) return lo + static_cast<std::int64_t>(hit) + 1;
            end = lo - 1;
            block = std::min(block * 2, kMaxBlock);
        }
    }

private:
    static constexpr std::size_t kFirstBlock = 64;
    static constexpr std::size_t kMaxBlock = 1 << 16;

    // Block size actually granted, never past the cap.
    std::size_t consume(std::size_t want) {
        if (scanned_ >= cap_) {
            throw SieveError(ErrorKind::CapExceeded,
                             "no boundary within " + std::to_string(cap_) + " scanned positions");
        }
        const auto granted = static_cast<std::size_t>(std::min<std::uint64_t>(want, cap_ - scanned_));
        scanned_ += granted;
        return granted;
    }

    WindowEvaluator eval_;
    std::uint64_t cap_;
    std::uint64_t scanned_ = 0;
    std::vector<std::uint8_t> buf_;
};

}  // namespace

SieveInterval total_sieve_around(const Pattern& pattern, const Integer& z, std::uint64_t scan_cap) {
    if (pattern_eval(pattern, z) == 1) return {};
    Scanner scan(pattern, z, scan_cap);
    const std::int64_t lo = scan.left_end(0);
    const std::int64_t hi = scan.right_end(0);
    return {z + make_integer(lo), z + make_integer(hi)};
}

GrowthSeries expand_total_sieve(const SievingPrefix& prefix, const Integer& z, std::size_t n_max,
                                const ExpandOptions& options, const RowSink& sink) {
    if (n_max > prefix.size()) {
        throw SieveError(ErrorKind::IndexOutOfRange,
                         "n_max = " + std::to_string(n_max) + " exceeds prefix length " +
                             std::to_string(prefix.size()));
    }
    GrowthSeries series{z, options.crossing_bound, {}};
    series.rows.reserve(n_max);
    BoundSequence bounds(prefix);
    CrossingTracker tracker;

    bool nonempty = false;
    std::int64_t lo = 0, hi = 0;  // offsets from z
    std::uint64_t z_mod = 0, z_mod_prime = 0;

    for (std::size_t n = 1; n <= n_max; ++n) {
        const ResidueClass& added = prefix.classes()[n - 1];
        if (added.modulus != z_mod_prime) {
            z_mod_prime = added.modulus;
            z_mod = mod_u64(z, z_mod_prime);
        }
        // Only the new class can sieve a position that was unsieved at depth n - 1.
        auto newly_sieved = [&](std::int64_t off) {
            return (z_mod + mod_i64(off, added.modulus)) % added.modulus == added.residue;
        };
        const bool grow_left = nonempty ? newly_sieved(lo - 1) : newly_sieved(0);
        const bool grow_right = nonempty ? newly_sieved(hi + 1) : grow_left;
        if (grow_left || grow_right) {
            Scanner scan(Pattern(prefix, n), z, options.scan_cap);
            if (!nonempty) {
                lo = scan.left_end(0);
                hi = scan.right_end(0);
                nonempty = true;
            } else {
                if (grow_left) lo = scan.left_end(lo - 1);
                if (grow_right) hi = scan.right_end(hi + 1);
            }
        }

        bounds.advance();
        GrowthRow row;
        row.n = n;
        if (nonempty) {
            row.interval = SieveInterval(z + make_integer(lo), z + make_integer(hi));
            row.size = make_integer(hi - lo + 1);
        } else {
            row.size = 0;
        }
        row.beta_star = bounds.beta_star();
        row.gamma = bounds.gamma();
        const Rational& bound = options.crossing_bound == BoundKind::gamma ? row.gamma : row.beta_star;
        row.crossed = tracker.push(n, row.size, bound);
        if (sink) sink(row);
        series.rows.push_back(std::move(row));
    }
    return series;
}

Rational gamma_bound_raw(std::size_t alpha, std::size_t kappa, std::size_t n) {
    if (n == 0) return 0;
    if (alpha == 0 || kappa == 0) {
        throw SieveError(ErrorKind::DegenerateDenominator, "alpha and kappa must be positive");
    }
    const std::size_t full = n / kappa;
    const Integer p_next = make_integer_u(nth_prime(alpha + full));
    const Integer lead_den = p_next - make_integer_u(n) + make_integer_u(kappa * full);
    if (lead_den <= 0) {
        throw SieveError(ErrorKind::DegenerateDenominator,
                         "p_{alpha+floor(n/kappa)} - n + kappa*floor(n/kappa) = " + to_string(lead_den));
    }
    Rational g(2 * make_integer_u(n) * p_next, lead_den);
    for (std::size_t i = 0; i < full; ++i) {
        const Integer p = make_integer_u(nth_prime(alpha + i));
        const Integer den = p - make_integer_u(kappa);
        if (den <= 0) {
            throw SieveError(ErrorKind::DegenerateDenominator,
                             "p_" + std::to_string(alpha + i) + " - kappa = " + to_string(den));
        }
        g *= Rational(p, den);
    }
    g.canonicalize();
    return g;
}

Rational gamma_bound(const RegularParams& params, std::size_t n) {
    return gamma_bound_raw(params.alpha(), params.kappa(), n);
}

Rational beta_star(const RegularParams& params, std::size_t n) {
    Rational sum = 0;
    for (std::size_t i = 1; i <= n; ++i) sum += 1 / regular_density(params, i);
    Rational out = 2 * sum;
    out.canonicalize();
    return out;
}

BoundSequence::BoundSequence(const SievingPrefix& prefix) {
    primes_.reserve(prefix.size());
    for (const auto& c : prefix.classes()) primes_.push_back(c.modulus);
}

void BoundSequence::advance() {
    if (n_ >= primes_.size()) {
        throw SieveError(ErrorKind::IndexOutOfRange, "BoundSequence advanced past prefix end");
    }
    const std::uint64_t p = primes_[n_];
    same_prime_ = (n_ > 0 && primes_[n_ - 1] == p) ? same_prime_ + 1 : 1;
    // D_n / D_{n-1} = (p - c) / (p - c + 1), c = classes mod p so far.
    density_ *= Rational(make_integer_u(p - same_prime_), make_integer_u(p - same_prime_ + 1));
    density_.canonicalize();
    ++n_;
    const Rational inv = 1 / density_;
    beta_star_ += 2 * inv;
    gamma_ = 2 * make_integer_u(n_) * inv;
    beta_star_.canonicalize();
    gamma_.canonicalize();
}

bool CrossingTracker::push(std::size_t n, const Integer& size, const Rational& bound) {
    const int c = cmp(Rational(size), bound);
    const int sign = (c > 0) - (c < 0);
    stats_.sign_profile.push_back(sign);
    if (sign == 0) return false;
    const bool crossed = last_sign_ != 0 && sign != last_sign_;
    last_sign_ = sign;
    if (crossed) {
        ++stats_.crossings;
        stats_.last_crossing_n = n;
    }
    return crossed;
}

CrossingStats crossing_stats(const GrowthSeries& series, BoundKind bound) {
    CrossingTracker tracker;
    for (const auto& row : series.rows) {
        tracker.push(row.n, row.size, bound == BoundKind::gamma ? row.gamma : row.beta_star);
    }
    return tracker.stats();
}

CrossingStats crossing_stats(std::span<const Integer> sizes, std::span<const Rational> bounds) {
    if (sizes.size() != bounds.size()) throw std::invalid_argument("crossing_stats: length mismatch");
    CrossingTracker tracker;
    for (std::size_t i = 0; i < sizes.size(); ++i) tracker.push(i + 1, sizes[i], bounds[i]);
    return tracker.stats();
}

void write_growth_csv_header(std::ostream& out) { out << "n,size,beta_star,gamma,crossed\n"; }

void write_growth_csv_row(std::ostream& out, const GrowthRow& row) {
    out << row.n << ',' << to_string(row.size) << ',' << to_string(row.beta_star) << ','
        << to_string(row.gamma) << ',' << (row.crossed ? 1 : 0) << '\n';
}

nlohmann::ordered_json growth_row_json(const GrowthRow& row) {
    nlohmann::ordered_json j;
    j["n"] = row.n;
    if (auto s = to_int64(row.size)) {
        j["size"] = *s;
    } else {
        j["size"] = to_string(row.size);
    }
    j["beta_star"] = to_string(row.beta_star);
    j["gamma"] = to_string(row.gamma);
    j["crossed"] = row.crossed;
    return j;
}

nlohmann::ordered_json growth_series_json(const GrowthSeries& series) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : series.rows) rows.push_back(growth_row_json(r));
    nlohmann::ordered_json j;
    j["z"] = to_string(series.z);
    j["bound"] = bound_name(series.crossing_bound);
    j["rows"] = std::move(rows);
    return j;
}

}  // namespace sievelab
