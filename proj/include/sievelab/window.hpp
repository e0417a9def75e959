// window.hpp
// Block evaluation of a pattern over contiguous positions anchor + offset + i.
// Small primes are applied by AND-ing a pre-built periodic row (SIMD kernel);
// larger primes clear their residues with a stride.
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sievelab/integer.hpp"
#include "sievelab/patterns.hpp"

namespace sievelab {

class WindowEvaluator {
public:
    static constexpr std::uint64_t kSmallPrimeLimit = 128;
    static constexpr std::size_t kChunk = 4096;

    WindowEvaluator(const Pattern& pattern, const Integer& anchor);

    // out[i] = pattern_eval(anchor + offset + i). Thread-safe.
    void evaluate(std::int64_t offset, std::span<std::uint8_t> out) const;

    const Integer& anchor() const noexcept { return anchor_; }

private:
    struct Row {
        std::uint64_t prime;
        std::uint64_t anchor_mod;
        std::vector<std::uint8_t> mask;  // mask[j] = unsieved(j mod prime), length prime + kChunk
    };
    struct Strided {
        std::uint64_t prime;
        std::uint64_t anchor_mod;
        std::vector<std::uint64_t> residues;
    };

    void evaluate_chunk(std::int64_t offset, std::uint8_t* out, std::size_t len) const;

    Integer anchor_;
    std::vector<Row> rows_;
    std::vector<Strided> strided_;
};

}  // namespace sievelab
