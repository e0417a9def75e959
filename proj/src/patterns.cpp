#include "sievelab/patterns.hpp"

#include <algorithm>
#include <string>

#include "sievelab/parallel.hpp"
#include "sievelab/primes.hpp"
#include "sievelab/simd/kernels.hpp"
#include "sievelab/window.hpp"

namespace sievelab {

Pattern::Pattern(const SievingPrefix& prefix, std::size_t depth) : active_(prefix.truncated(depth)) {
    for (const auto& c : active_.classes()) {
        if (groups_.empty() || groups_.back().prime != c.modulus) groups_.push_back({c.modulus, {}});
        groups_.back().residues.push_back(c.residue);
    }
}

namespace {

int eval_groups(const Pattern& pattern, auto&& residue_of) {
    for (const auto& g : pattern.groups()) {
        const std::uint64_t zr = residue_of(g.prime);
        for (std::uint64_t r : g.residues) {
            if (r == zr) return 0;
        }
    }
    return 1;
}

}  // namespace

int pattern_eval(const Pattern& pattern, const Integer& z) {
    return eval_groups(pattern, [&](std::uint64_t p) { return mod_u64(z, p); });
}

int pattern_eval(const Pattern& pattern, std::int64_t z) {
    return eval_groups(pattern, [&](std::uint64_t p) { return mod_i64(z, p); });
}

Integer fundamental_period(const Pattern& pattern) {
    Integer t = 1;
    for (const auto& g : pattern.groups()) t *= make_integer_u(g.prime);
    return t;
}

DensityValue average_density(const Pattern& pattern) {
    Integer num = 1, den = 1;
    for (const auto& g : pattern.groups()) {
        num *= make_integer_u(g.prime - g.residues.size());
        den *= make_integer_u(g.prime);
    }
    DensityValue d(num, den);
    d.canonicalize();
    return d;
}

Integer regular_period(const RegularParams& params, std::size_t n) {
    const std::size_t blocks = (n + params.kappa() - 1) / params.kappa();
    Integer t = 1;
    for (std::size_t i = 0; i < blocks; ++i) t *= make_integer_u(nth_prime(params.alpha() + i));
    return t;
}

DensityValue regular_density(const RegularParams& params, std::size_t n) {
    const std::size_t kappa = params.kappa();
    const std::size_t full = n / kappa;
    const std::size_t partial = n - kappa * full;
    const Integer p_next = make_integer_u(nth_prime(params.alpha() + full));
    DensityValue d(p_next - make_integer_u(partial), p_next);
    for (std::size_t i = 0; i < full; ++i) {
        const Integer p = make_integer_u(nth_prime(params.alpha() + i));
        d *= DensityValue(p - make_integer_u(kappa), p);
    }
    d.canonicalize();
    return d;
}

DensityValue regular_density_divisible(const RegularParams& params, std::size_t n) {
    if (n % params.kappa() != 0) {
        throw SieveError(ErrorKind::InvalidRegularParams,
                         "kappa = " + std::to_string(params.kappa()) + " does not divide n = " +
                             std::to_string(n));
    }
    DensityValue d = 1;
    for (std::size_t i = 0; i < n / params.kappa(); ++i) {
        const Integer p = make_integer_u(nth_prime(params.alpha() + i));
        d *= DensityValue(p - make_integer_u(params.kappa()), p);
    }
    d.canonicalize();
    return d;
}

SievingPrefix eratosthenes_prefix(std::size_t n) {
    std::vector<std::int64_t> primes(n), residues(n, 0);
    for (std::size_t i = 0; i < n; ++i) primes[i] = static_cast<std::int64_t>(nth_prime(i + 1));
    return validate_prefix(primes, residues);
}

Pattern eratosthenes_pattern(std::size_t n) { return Pattern(eratosthenes_prefix(n)); }

int eratosthenes_eval(std::size_t n, const Integer& z) {
    for (std::size_t i = 1; i <= n; ++i) {
        if (mpz_divisible_ui_p(z.get_mpz_t(), static_cast<unsigned long>(nth_prime(i)))) return 0;
    }
    return 1;
}

EratosthenesWindow eratosthenes_window(std::size_t n) {
    const Integer p = make_integer_u(nth_prime(n + 1));
    return {n, Integer(2), p * p - 1};
}

std::vector<std::uint8_t> materialize_period(const Pattern& pattern, std::uint64_t cap) {
    const Integer period = fundamental_period(pattern);
    if (period > make_integer_u(cap)) {
        throw SieveError(ErrorKind::CapExceeded,
                         "period " + to_string(period) + " exceeds materialization cap " +
                             std::to_string(cap));
    }
    const std::uint64_t t = period.get_ui();
    std::vector<std::uint8_t> bits(t);
    const WindowEvaluator eval(pattern, Integer(1));
    constexpr std::uint64_t kShard = 1 << 20;
    const std::size_t shards = static_cast<std::size_t>((t + kShard - 1) / kShard);
    map_shards(shards, [&](std::size_t s) {
        const std::uint64_t lo = s * kShard;
        const std::uint64_t len = std::min(kShard, t - lo);
        eval.evaluate(static_cast<std::int64_t>(lo), {bits.data() + lo, static_cast<std::size_t>(len)});
        return 0;
    });
    return bits;
}

std::uint64_t count_unsieved(const Pattern& pattern, const Integer& lo, std::uint64_t length) {
    const WindowEvaluator eval(pattern, lo);
    constexpr std::uint64_t kShard = 1 << 20;
    const std::size_t shards = static_cast<std::size_t>((length + kShard - 1) / kShard);
    const auto counts = map_shards(shards, [&](std::size_t s) -> std::uint64_t {
        const std::uint64_t off = s * kShard;
        const std::uint64_t len = std::min(kShard, length - off);
        std::vector<std::uint8_t> buf(len);
        eval.evaluate(static_cast<std::int64_t>(off), buf);
        return simd::kernels().count_nonzero(buf.data(), buf.size());
    });
    std::uint64_t total = 0;
    for (auto c : counts) total += c;
    return total;
}

}  // namespace sievelab
