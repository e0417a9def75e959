// Compiled with -mavx2; only reached after a runtime CPU check.
#include <immintrin.h>

#include "sievelab/simd/kernels.hpp"

namespace sievelab::simd::avx2 {

namespace {
inline __m256i load(const std::uint8_t* p) {
    return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}
}  // namespace

void and_into(std::uint8_t* dst, const std::uint8_t* src, std::size_t n) {
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        const __m256i v = _mm256_and_si256(load(dst + i), load(src + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), v);
    }
    for (; i < n; ++i) dst[i] &= src[i];
}

std::size_t count_nonzero(const std::uint8_t* data, std::size_t n) {
    const __m256i zero = _mm256_setzero_si256();
    std::size_t c = 0;
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        const __m256i eq = _mm256_cmpeq_epi8(load(data + i), zero);
        const auto zero_bits = static_cast<std::uint32_t>(_mm256_movemask_epi8(eq));
        c += 32 - static_cast<std::size_t>(__builtin_popcount(zero_bits));
    }
    for (; i < n; ++i) c += data[i] != 0;
    return c;
}

std::size_t find_nonzero(const std::uint8_t* data, std::size_t n) {
    const __m256i zero = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        const __m256i eq = _mm256_cmpeq_epi8(load(data + i), zero);
        const auto nz = ~static_cast<std::uint32_t>(_mm256_movemask_epi8(eq));
        if (nz != 0) return i + static_cast<std::size_t>(__builtin_ctz(nz));
    }
    for (; i < n; ++i) {
        if (data[i] != 0) return i;
    }
    return n;
}

std::size_t rfind_nonzero(const std::uint8_t* data, std::size_t n) {
    const __m256i zero = _mm256_setzero_si256();
    std::size_t i = n;
    for (; i >= 32; i -= 32) {
        const __m256i eq = _mm256_cmpeq_epi8(load(data + i - 32), zero);
        const auto nz = ~static_cast<std::uint32_t>(_mm256_movemask_epi8(eq));
        if (nz != 0) return i - 32 + 31 - static_cast<std::size_t>(__builtin_clz(nz));
    }
    for (; i > 0; --i) {
        if (data[i - 1] != 0) return i - 1;
    }
    return n;
}

}  // namespace sievelab::simd::avx2
