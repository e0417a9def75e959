// modular.hpp
// Extended Euclid and modular inverses on machine words.
#pragma once

#include <cstdint>
#include <optional>

namespace sievelab {

struct BezoutTriple {
    std::int64_t gcd;
    std::int64_t x;  // a*x + b*y == gcd
    std::int64_t y;
};

BezoutTriple extended_gcd(std::int64_t a, std::int64_t b);

// Inverse of a modulo m in [0, m), or nullopt when gcd(a, m) != 1.
std::optional<std::uint64_t> mod_inverse(std::uint64_t a, std::uint64_t m);

}  // namespace sievelab
