#include "sievelab/simd/kernels.hpp"

namespace sievelab::simd::scalar {

void and_into(std::uint8_t* dst, const std::uint8_t* src, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] &= src[i];
}

std::size_t count_nonzero(const std::uint8_t* data, std::size_t n) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < n; ++i) c += data[i] != 0;
    return c;
}

std::size_t find_nonzero(const std::uint8_t* data, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        if (data[i] != 0) return i;
    }
    return n;
}

std::size_t rfind_nonzero(const std::uint8_t* data, std::size_t n) {
    for (std::size_t i = n; i > 0; --i) {
        if (data[i - 1] != 0) return i - 1;
    }
    return n;
}

}  // namespace sievelab::simd::scalar
