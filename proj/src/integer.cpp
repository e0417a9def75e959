#include "sievelab/integer.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace sievelab {

Integer make_integer(std::int64_t v) {
    // long is 64-bit on the supported targets; go through the string path otherwise.
    if constexpr (sizeof(long) == sizeof(std::int64_t)) {
        return Integer(static_cast<long>(v));
    } else {
        return Integer(std::to_string(v));
    }
}

Integer make_integer_u(std::uint64_t v) {
    if constexpr (sizeof(unsigned long) == sizeof(std::uint64_t)) {
        return Integer(static_cast<unsigned long>(v));
    } else {
        return Integer(std::to_string(v));
    }
}

Integer parse_integer(std::string_view text) {
    std::string s(text);
    if (!s.empty() && s.front() == '+') s.erase(0, 1);
    Integer z;
    if (s.empty() || z.set_str(s, 10) != 0) {
        throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
    }
    return z;
}

std::string to_string(const Integer& z) { return z.get_str(10); }

std::string to_string(const Rational& q) {
    return q.get_num().get_str(10) + "/" + q.get_den().get_str(10);
}

Rational parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(text));
    Integer num = parse_integer(text.substr(0, slash));
    Integer den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

std::uint64_t mod_u64(const Integer& z, std::uint64_t p) {
    if (p <= std::numeric_limits<unsigned long>::max()) {
        return mpz_fdiv_ui(z.get_mpz_t(), static_cast<unsigned long>(p));
    }
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), z.get_mpz_t(), make_integer_u(p).get_mpz_t());
    return r.get_ui();
}

std::optional<std::int64_t> to_int64(const Integer& z) {
    if constexpr (sizeof(long) == sizeof(std::int64_t)) {
        if (z.fits_slong_p()) return static_cast<std::int64_t>(z.get_si());
        return std::nullopt;
    } else {
        static const Integer lo = parse_integer(std::to_string(std::numeric_limits<std::int64_t>::min()));
        static const Integer hi = parse_integer(std::to_string(std::numeric_limits<std::int64_t>::max()));
        if (z < lo || z > hi) return std::nullopt;
        return std::stoll(z.get_str());
    }
}

}  // namespace sievelab
