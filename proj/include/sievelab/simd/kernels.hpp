// kernels.hpp
// Byte-mask kernels behind window evaluation. A mask holds one byte per
// integer position: 1 = unsieved, 0 = sieved. Every kernel has a scalar
// reference and, on x86-64, an AVX2 variant; kernels() picks one at runtime.
#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace sievelab::simd {

enum class Isa { scalar, avx2 };

struct KernelTable {
    Isa isa;
    // dst[i] &= src[i]
    void (*and_into)(std::uint8_t* dst, const std::uint8_t* src, std::size_t n);
    // number of nonzero bytes
    std::size_t (*count_nonzero)(const std::uint8_t* data, std::size_t n);
    // index of first nonzero byte, or n
    std::size_t (*find_nonzero)(const std::uint8_t* data, std::size_t n);
    // index of last nonzero byte, or n
    std::size_t (*rfind_nonzero)(const std::uint8_t* data, std::size_t n);
};

namespace scalar {
void and_into(std::uint8_t* dst, const std::uint8_t* src, std::size_t n);
std::size_t count_nonzero(const std::uint8_t* data, std::size_t n);
std::size_t find_nonzero(const std::uint8_t* data, std::size_t n);
std::size_t rfind_nonzero(const std::uint8_t* data, std::size_t n);
}  // namespace scalar

#if defined(SIEVELAB_HAVE_AVX2)
namespace avx2 {
void and_into(std::uint8_t* dst, const std::uint8_t* src, std::size_t n);
std::size_t count_nonzero(const std::uint8_t* data, std::size_t n);
std::size_t find_nonzero(const std::uint8_t* data, std::size_t n);
std::size_t rfind_nonzero(const std::uint8_t* data, std::size_t n);
}  // namespace avx2
#endif

bool isa_available(Isa isa);
const KernelTable& kernels_for(Isa isa);

// Best available table. SIEVELAB_SIMD=scalar in the environment forces the
// reference kernels.
const KernelTable& kernels();

std::string_view isa_name(Isa isa);

}  // namespace sievelab::simd
