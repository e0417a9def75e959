#include "sievelab/window.hpp"

#include <algorithm>

#include "sievelab/simd/kernels.hpp"

namespace sievelab {

WindowEvaluator::WindowEvaluator(const Pattern& pattern, const Integer& anchor) : anchor_(anchor) {
    for (const auto& g : pattern.groups()) {
        const std::uint64_t anchor_mod = mod_u64(anchor_, g.prime);
        if (g.prime < kSmallPrimeLimit) {
            Row row{g.prime, anchor_mod, std::vector<std::uint8_t>(g.prime + kChunk, 1)};
            for (std::size_t j = 0; j < row.mask.size(); ++j) {
                const std::uint64_t r = j % g.prime;
                if (std::find(g.residues.begin(), g.residues.end(), r) != g.residues.end()) {
                    row.mask[j] = 0;
                }
            }
            rows_.push_back(std::move(row));
        } else {
            strided_.push_back({g.prime, anchor_mod, g.residues});
        }
    }
}

void WindowEvaluator::evaluate(std::int64_t offset, std::span<std::uint8_t> out) const {
    for (std::size_t done = 0; done < out.size(); done += kChunk) {
        const std::size_t len = std::min(kChunk, out.size() - done);
        evaluate_chunk(offset + static_cast<std::int64_t>(done), out.data() + done, len);
    }
}

void WindowEvaluator::evaluate_chunk(std::int64_t offset, std::uint8_t* out, std::size_t len) const {
    std::fill(out, out + len, std::uint8_t{1});
    const auto& k = simd::kernels();
    for (const auto& row : rows_) {
        // Residue of the first position in the chunk.
        const std::uint64_t start = (row.anchor_mod + mod_i64(offset, row.prime)) % row.prime;
        k.and_into(out, row.mask.data() + start, len);
    }
    for (const auto& s : strided_) {
        const std::uint64_t start = (s.anchor_mod + mod_i64(offset, s.prime)) % s.prime;
        for (std::uint64_t r : s.residues) {
            // First i >= 0 with start + i == r (mod prime).
            std::uint64_t i = (r + s.prime - start) % s.prime;
            for (; i < len; i += s.prime) out[i] = 0;
        }
    }
}

}  // namespace sievelab
