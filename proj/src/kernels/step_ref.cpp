#include "thcp/kernels.hpp"
#include "thcp/rng.hpp"

namespace thcp::kernels {

void step_scalar(std::uint32_t n, const std::uint32_t* row_ptr, const std::uint32_t* cols,
                 const std::uint8_t* prev, std::uint8_t* next, std::uint32_t theta,
                 std::uint64_t seed, std::uint64_t t, std::uint64_t thresh,
                 std::uint8_t* /*scratch*/) {
    for (std::uint32_t v = 0; v < n; ++v) {
        std::uint32_t c = 0;
        for (std::uint32_t e = row_ptr[v]; e < row_ptr[v + 1]; ++e) c += prev[cols[e]];
        std::uint64_t bits = draw_bits(seed, t, v);
        next[v] = (c >= theta && (bits >> 11) < thresh) ? 1 : 0;
    }
}

}  // namespace thcp::kernels
