#include "sievelab/tuples.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "sievelab/modular.hpp"
#include "sievelab/parallel.hpp"
#include "sievelab/primes.hpp"
#include "sievelab/simd/kernels.hpp"
#include "sievelab/window.hpp"

namespace sievelab {

KTuple::KTuple(std::vector<std::int64_t> offsets) : offsets_(std::move(offsets)) {
    if (offsets_.empty()) throw SieveError(ErrorKind::InvalidTuple, "tuple needs at least one offset");
    for (std::size_t i = 1; i < offsets_.size(); ++i) {
        if (offsets_[i] <= offsets_[i - 1]) {
            throw SieveError(ErrorKind::InvalidTuple, "offsets must be strictly increasing", i);
        }
    }
}

KTuple parse_tuple(std::string_view text) {
    std::vector<std::int64_t> offsets;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        std::string item(text.substr(pos, comma - pos));
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        try {
            std::size_t used = 0;
            offsets.push_back(std::stoll(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw SieveError(ErrorKind::InvalidTuple, "bad offset '" + item + "'");
        }
        pos = comma + 1;
    }
    return KTuple(std::move(offsets));
}

bool is_admissible(const KTuple& tuple) {
    // k classes cannot cover Z/p for p > k.
    for (std::uint64_t p : primes_oracle(tuple.k())) {
        std::set<std::uint64_t> seen;
        for (std::int64_t a : tuple.offsets()) seen.insert(mod_i64(a, p));
        if (seen.size() == p) return false;
    }
    return true;
}

namespace {

constexpr std::size_t kMatchShard = 1 << 16;

// mask[i] = 1 iff the tuple matches at base + i, for i < len; evaluator anchored at base + a_1.
void match_block(const KTuple& tuple, const WindowEvaluator& eval, std::int64_t offset,
                 std::size_t len, std::vector<std::uint8_t>& buf, std::vector<std::uint8_t>& mask) {
    const auto& a = tuple.offsets();
    const auto span = static_cast<std::size_t>(tuple.diameter());
    buf.resize(len + span);
    eval.evaluate(offset, buf);
    mask.assign(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(len));
    const auto& k = simd::kernels();
    for (std::size_t u = 1; u < a.size(); ++u) {
        k.and_into(mask.data(), buf.data() + (a[u] - a[0]), len);
    }
}

}  // namespace

std::vector<Integer> matching_positions(const KTuple& tuple, const Pattern& pattern, const Integer& lo,
                                        const Integer& hi) {
    if (hi < lo) return {};
    const auto width = to_int64(hi - lo + 1);
    if (!width) throw SieveError(ErrorKind::CapExceeded, "matching window too wide");
    const auto total = static_cast<std::uint64_t>(*width);
    const WindowEvaluator eval(pattern, lo + make_integer(tuple.offsets().front()));
    const std::size_t shards = static_cast<std::size_t>((total + kMatchShard - 1) / kMatchShard);
    auto parts = map_shards(shards, [&](std::size_t s) {
        const std::uint64_t off = s * kMatchShard;
        const auto len = static_cast<std::size_t>(std::min<std::uint64_t>(kMatchShard, total - off));
        std::vector<std::uint8_t> buf, mask;
        match_block(tuple, eval, static_cast<std::int64_t>(off), len, buf, mask);
        std::vector<Integer> found;
        for (std::size_t i = 0; i < len; ++i) {
            if (mask[i]) found.push_back(lo + make_integer_u(off + i));
        }
        return found;
    });
    std::vector<Integer> out;
    for (auto& p : parts) {
        for (auto& v : p) out.push_back(std::move(v));
    }
    return out;
}

TupleAnchor::TupleAnchor(KTuple tuple, std::size_t d, Integer m, Integer primorial)
    : tuple_(std::move(tuple)), d_(d), m_(std::move(m)), primorial_(std::move(primorial)) {}

namespace {

bool matches_at(const KTuple& tuple, const Pattern& pattern, const Integer& m) {
    for (std::int64_t a : tuple.offsets()) {
        if (pattern_eval(pattern, m + make_integer(a)) == 0) return false;
    }
    return true;
}

}  // namespace

TupleAnchor choose_anchor(const KTuple& tuple, std::optional<std::size_t> d, std::optional<Integer> m,
                          std::uint64_t search_cap) {
    if (!is_admissible(tuple)) {
        throw SieveError(ErrorKind::NotAdmissible, "tuple covers every residue class of some prime");
    }
    const auto diameter = static_cast<std::uint64_t>(tuple.diameter());
    std::size_t dd = 2;
    if (d) {
        dd = *d;
        if (dd < 2 || nth_prime(dd) <= diameter) {
            throw SieveError(ErrorKind::InvalidAnchor,
                             "d = " + std::to_string(dd) + " needs d >= 2 and p_d > " + std::to_string(diameter));
        }
    } else {
        while (nth_prime(dd) <= diameter) ++dd;
    }
    if (tuple.k() >= nth_prime(dd)) {
        throw SieveError(ErrorKind::InvalidAnchor,
                         "k = " + std::to_string(tuple.k()) + " must be below p_d = " +
                             std::to_string(nth_prime(dd)));
    }
    Integer primorial_d1 = primorial(dd - 1);
    const Pattern base = eratosthenes_pattern(dd - 1);

    if (m) {
        if (*m <= 0 || *m >= primorial_d1 || !matches_at(tuple, base, *m)) {
            throw SieveError(ErrorKind::InvalidExplicitM,
                             "m = " + to_string(*m) + " is not a matching position in [1, " +
                                 to_string(Integer(primorial_d1 - 1)) + "]");
        }
        return TupleAnchor(tuple, dd, *m, std::move(primorial_d1));
    }

    const Integer last = primorial_d1 - 1;
    Integer lo = 1;
    std::uint64_t searched = 0;
    const std::uint64_t step = 1 << 16;
    while (lo <= last) {
        if (searched >= search_cap) {
            throw SieveError(ErrorKind::CapExceeded,
                             "no matching position among the first " + std::to_string(search_cap));
        }
        Integer hi = lo + make_integer_u(step - 1);
        if (hi > last) hi = last;
        const auto found = matching_positions(tuple, base, lo, hi);
        if (!found.empty()) return TupleAnchor(tuple, dd, found.front(), std::move(primorial_d1));
        searched += step;
        lo = hi + 1;
    }
    throw SieveError(ErrorKind::NoMatchingPosition,
                     "tuple does not match P_" + std::to_string(dd - 1) + " in [1, " + to_string(last) + "]");
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

}  // namespace

int tuple_primorial_eval(const TupleAnchor& anchor, std::size_t g, const Integer& z) {
    const Integer zm1 = z - 1;
    for (std::size_t v = anchor.d(); v < anchor.d() + g; ++v) {
        const std::uint64_t p = nth_prime(v);
        const std::uint64_t step = mulmod(mod_u64(anchor.primorial(), p), mod_u64(zm1, p), p);
        const std::uint64_t m_mod = mod_u64(anchor.m(), p);
        for (std::int64_t a : anchor.tuple().offsets()) {
            if ((m_mod + mod_i64(a, p) + step) % p == 0) return 0;
        }
    }
    return 1;
}

SievingPrefix ReducedClasses::to_prefix() const { return validate_prefix(classes); }

ReducedClasses reduce_to_regular(const TupleAnchor& anchor, std::size_t g) {
    ReducedClasses out;
    out.alpha = anchor.d();
    out.kappa = anchor.tuple().k();
    out.classes.reserve(g * out.kappa);
    for (std::size_t v = anchor.d(); v < anchor.d() + g; ++v) {
        const std::uint64_t p = nth_prime(v);
        // p_v does not divide p_{d-1}#, so the inverse exists.
        const std::uint64_t inv = *mod_inverse(mod_u64(anchor.primorial(), p), p);
        const std::uint64_t m_mod = mod_u64(anchor.m(), p);
        for (std::int64_t a : anchor.tuple().offsets()) {
            const std::uint64_t shifted = (m_mod + mod_i64(a, p)) % p;
            const std::uint64_t r = (1 + p - mulmod(shifted, inv, p)) % p;
            out.classes.push_back({r, p});
        }
    }
    return out;
}

nlohmann::ordered_json reduced_classes_json(const ReducedClasses& reduced) {
    nlohmann::ordered_json classes = nlohmann::ordered_json::array();
    for (const auto& c : reduced.classes) {
        nlohmann::ordered_json item;
        item["r"] = c.residue;
        item["p"] = c.modulus;
        classes.push_back(std::move(item));
    }
    nlohmann::ordered_json j;
    j["alpha"] = reduced.alpha;
    j["kappa"] = reduced.kappa;
    j["classes"] = std::move(classes);
    return j;
}

Integer mu_map(const TupleAnchor& anchor, const Integer& z) {
    return anchor.m() + (z - 1) * anchor.primorial();
}

Integer mu_inverse(const TupleAnchor& anchor, const Integer& position) {
    Integer diff = position - anchor.m();
    Integer q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), diff.get_mpz_t(), anchor.primorial().get_mpz_t());
    if (r != 0) {
        throw SieveError(ErrorKind::NotInResidueClass,
                         to_string(position) + " is not in [" + to_string(anchor.m()) + "]_" +
                             to_string(anchor.primorial()));
    }
    return q + 1;
}

std::optional<IntegerInterval> z_window(const TupleAnchor& anchor, std::size_t n, const Integer& z_start) {
    const Integer p = make_integer_u(nth_prime(anchor.d() + n));
    Integer numer = p * p - anchor.m();
    Integer upper;
    mpz_fdiv_q(upper.get_mpz_t(), numer.get_mpz_t(), anchor.primorial().get_mpz_t());
    if (upper < z_start) return std::nullopt;
    return IntegerInterval{z_start, upper};
}

std::vector<SurvivorRow> survivors(const TupleAnchor& anchor, std::size_t n) {
    const auto window = z_window(anchor, n);
    if (!window) return {};
    const Pattern reduced(reduce_to_regular(anchor, n).to_prefix());
    const auto count = to_int64(window->hi - window->lo + 1);
    if (!count) throw SieveError(ErrorKind::CapExceeded, "survivor window too wide");
    const auto total = static_cast<std::uint64_t>(*count);

    const Integer p = make_integer_u(nth_prime(anchor.d() + n));
    const Integer top = p * p - 1;
    const auto& a = anchor.tuple().offsets();
    const WindowEvaluator eval(reduced, window->lo);
    const std::size_t shards = static_cast<std::size_t>((total + kMatchShard - 1) / kMatchShard);
    auto parts = map_shards(shards, [&](std::size_t s) {
        const std::uint64_t off = s * kMatchShard;
        const auto len = static_cast<std::size_t>(std::min<std::uint64_t>(kMatchShard, total - off));
        std::vector<std::uint8_t> bits(len);
        eval.evaluate(static_cast<std::int64_t>(off), bits);
        std::vector<SurvivorRow> rows;
        for (std::size_t i = 0; i < len; ++i) {
            if (!bits[i]) continue;
            Integer z = window->lo + make_integer_u(off + i);
            Integer pos = mu_map(anchor, z);
            if (pos + make_integer(a.front()) < 2 || pos + make_integer(a.back()) > top) continue;
            bool all_prime = true;
            for (std::int64_t off_a : a) all_prime = all_prime && is_prime(Integer(pos + make_integer(off_a)));
            rows.push_back({std::move(z), std::move(pos), all_prime});
        }
        return rows;
    });
    std::vector<SurvivorRow> out;
    for (auto& part : parts) {
        for (auto& r : part) out.push_back(std::move(r));
    }
    return out;
}

}  // namespace sievelab
