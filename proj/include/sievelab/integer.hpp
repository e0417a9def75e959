// integer.hpp
// Arbitrary-precision integers and exact rationals (GMP), plus the small
// conversions the rest of the library needs to stay on machine words in
// hot loops.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace sievelab {

using Integer = mpz_class;
using Rational = mpq_class;

Integer make_integer(std::int64_t v);
Integer make_integer_u(std::uint64_t v);
Integer parse_integer(std::string_view text);

// Exact "p/q" form; the denominator is always written, even when it is 1.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);
Rational parse_rational(std::string_view text);

// Floor remainder in [0, p).
std::uint64_t mod_u64(const Integer& z, std::uint64_t p);

inline std::uint64_t mod_i64(std::int64_t z, std::uint64_t p) {
    const auto sp = static_cast<std::int64_t>(p);
    std::int64_t r = z % sp;
    return static_cast<std::uint64_t>(r < 0 ? r + sp : r);
}

std::optional<std::int64_t> to_int64(const Integer& z);

}  // namespace sievelab
