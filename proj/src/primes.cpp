#include "sievelab/primes.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace sievelab {
namespace {

constexpr std::uint64_t kSegmentSize = 1u << 15;
// Above this, primality falls back to trial division by cached primes.
constexpr std::uint64_t kMaxTableLimit = 1ull << 31;

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// Simple sieve for the base primes of a segmented run.
std::vector<std::uint64_t> base_primes(std::uint64_t limit) {
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
}

class PrimeTable {
public:
    static PrimeTable& instance() {
        static PrimeTable table;
        return table;
    }

    std::vector<std::uint64_t> up_to(std::uint64_t limit) {
        std::lock_guard lock(mutex_);
        extend_locked(limit);
        auto end = std::upper_bound(primes_.begin(), primes_.end(), limit);
        return {primes_.begin(), end};
    }

    std::uint64_t nth(std::size_t index) {
        std::lock_guard lock(mutex_);
        while (primes_.size() < index) extend_locked(std::max<std::uint64_t>(limit_ * 2, 1024));
        return primes_[index - 1];
    }

    std::size_t index_of(std::uint64_t p) {
        std::lock_guard lock(mutex_);
        extend_locked(p);
        auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
        if (it == primes_.end() || *it != p) return 0;
        return static_cast<std::size_t>(it - primes_.begin()) + 1;
    }

    bool contains(std::uint64_t n) {
        std::lock_guard lock(mutex_);
        extend_locked(n);
        return std::binary_search(primes_.begin(), primes_.end(), n);
    }

private:
    void extend_locked(std::uint64_t limit) {
        if (limit <= limit_) return;
        if (limit > kMaxTableLimit) throw std::out_of_range("prime table limit exceeded");
        const std::uint64_t lo = limit_ + 1;
        const auto base = base_primes(isqrt(limit));
        std::vector<unsigned char> seg(kSegmentSize);
        for (std::uint64_t seg_lo = lo; seg_lo <= limit; seg_lo += kSegmentSize) {
            const std::uint64_t seg_hi = std::min(limit, seg_lo + kSegmentSize - 1);
            const std::uint64_t len = seg_hi - seg_lo + 1;
            std::fill(seg.begin(), seg.begin() + static_cast<std::ptrdiff_t>(len), 1);
            for (std::uint64_t p : base) {
                if (p * p > seg_hi) break;
                std::uint64_t start = std::max(p * p, (seg_lo + p - 1) / p * p);
                for (std::uint64_t j = start; j <= seg_hi; j += p) seg[j - seg_lo] = 0;
            }
            for (std::uint64_t i = 0; i < len; ++i) {
                const std::uint64_t v = seg_lo + i;
                if (seg[i] && v >= 2) primes_.push_back(v);
            }
        }
        limit_ = limit;
    }

    std::mutex mutex_;
    std::vector<std::uint64_t> primes_;
    std::uint64_t limit_ = 1;
};

}  // namespace

std::vector<std::uint64_t> primes_oracle(std::uint64_t limit) {
    if (limit < 2) return {};
    return PrimeTable::instance().up_to(limit);
}

std::uint64_t nth_prime(std::size_t index) {
    if (index == 0) throw std::invalid_argument("nth_prime: index is 1-based");
    return PrimeTable::instance().nth(index);
}

std::size_t prime_index(std::uint64_t p) {
    if (p < 2 || p > kMaxTableLimit) return 0;
    return PrimeTable::instance().index_of(p);
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n <= kMaxTableLimit) return PrimeTable::instance().contains(n);
    const std::uint64_t root = isqrt(n);
    for (std::uint64_t p : PrimeTable::instance().up_to(root)) {
        if (n % p == 0) return false;
    }
    return true;
}

bool is_prime(const Integer& n) {
    if (n < 2) return false;
    if (n.fits_ulong_p()) return is_prime(static_cast<std::uint64_t>(n.get_ui()));
    // Beyond a machine word the check is probabilistic (40 Miller-Rabin rounds).
    return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

Integer primorial(std::size_t count) {
    Integer out = 1;
    for (std::size_t i = 1; i <= count; ++i) out *= make_integer_u(nth_prime(i));
    return out;
}

}  // namespace sievelab
