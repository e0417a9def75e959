#include "sievelab/modular.hpp"

namespace sievelab {

BezoutTriple extended_gcd(std::int64_t a, std::int64_t b) {
    std::int64_t old_r = a, r = b;
    std::int64_t old_s = 1, s = 0;
    std::int64_t old_t = 0, t = 1;
    while (r != 0) {
        const std::int64_t q = old_r / r;
        std::int64_t tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) return {-old_r, -old_s, -old_t};
    return {old_r, old_s, old_t};
}

std::optional<std::uint64_t> mod_inverse(std::uint64_t a, std::uint64_t m) {
    if (m == 0) return std::nullopt;
    if (m == 1) return 0;
    // Moduli here are primes far below 2^62, so the signed Euclid cannot overflow.
    const auto sm = static_cast<std::int64_t>(m);
    const auto sa = static_cast<std::int64_t>(a % m);
    const BezoutTriple e = extended_gcd(sa, sm);
    if (e.gcd != 1) return std::nullopt;
    std::int64_t x = e.x % sm;
    if (x < 0) x += sm;
    return static_cast<std::uint64_t>(x);
}

}  // namespace sievelab
