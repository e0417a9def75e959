#include <cstdlib>
#include <string_view>

#include "sievelab/simd/kernels.hpp"

namespace sievelab::simd {
namespace {

constexpr KernelTable kScalar{Isa::scalar, scalar::and_into, scalar::count_nonzero,
                              scalar::find_nonzero, scalar::rfind_nonzero};
#if defined(SIEVELAB_HAVE_AVX2)
constexpr KernelTable kAvx2{Isa::avx2, avx2::and_into, avx2::count_nonzero, avx2::find_nonzero,
                            avx2::rfind_nonzero};
#endif

const KernelTable& select() {
    if (const char* env = std::getenv("SIEVELAB_SIMD"); env && std::string_view(env) == "scalar") {
        return kScalar;
    }
    if (isa_available(Isa::avx2)) return kernels_for(Isa::avx2);
    return kScalar;
}

}  // namespace

bool isa_available(Isa isa) {
    switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2:
#if defined(SIEVELAB_HAVE_AVX2)
        return __builtin_cpu_supports("avx2");
#else
        return false;
#endif
    }
    return false;
}

const KernelTable& kernels_for(Isa isa) {
#if defined(SIEVELAB_HAVE_AVX2)
    if (isa == Isa::avx2 && isa_available(Isa::avx2)) return kAvx2;
#endif
    (void)isa;
    return kScalar;
}

const KernelTable& kernels() {
    static const KernelTable& table = select();
    return table;
}

std::string_view isa_name(Isa isa) {
    return isa == Isa::avx2 ? "avx2" : "scalar";
}

}  // namespace sievelab::simd
