// AVX2 variant of the step kernel. Three passes: an 8-wide gather of the
// previous state over the CSR entries, a per-row threshold reduction, and a
// 4-lane counter-based Bernoulli pass. Must stay bit-identical to
// step_scalar; the equivalence suite enforces it.

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

#include "thcp/kernels.hpp"
#include "thcp/rng.hpp"

namespace thcp::kernels {

namespace {

// 64x64 -> low 64 multiply from 32-bit pieces (AVX2 has no mullo_epi64).
inline __m256i mullo64(__m256i a, __m256i b) {
    __m256i b_swap = _mm256_shuffle_epi32(b, 0xB1);     // [b_hi, b_lo] per lane
    __m256i cross = _mm256_mullo_epi32(a, b_swap);      // a_lo*b_hi, a_hi*b_lo
    __m256i cross_hi = _mm256_srli_epi64(cross, 32);
    __m256i cross_sum = _mm256_add_epi32(cross, cross_hi);
    cross_sum = _mm256_and_si256(cross_sum, _mm256_set1_epi64x(0xFFFFFFFFLL));
    __m256i lo = _mm256_mul_epu32(a, b);                // a_lo * b_lo, full 64
    return _mm256_add_epi64(lo, _mm256_slli_epi64(cross_sum, 32));
}

inline __m256i mix64_vec(__m256i z) {
    z = _mm256_xor_si256(z, _mm256_srli_epi64(z, 30));
    z = mullo64(z, _mm256_set1_epi64x(static_cast<long long>(0xbf58476d1ce4e5b9ULL)));
    z = _mm256_xor_si256(z, _mm256_srli_epi64(z, 27));
    z = mullo64(z, _mm256_set1_epi64x(static_cast<long long>(0x94d049bb133111ebULL)));
    z = _mm256_xor_si256(z, _mm256_srli_epi64(z, 31));
    return z;
}

}  // namespace

void step_avx2(std::uint32_t n, const std::uint32_t* row_ptr, const std::uint32_t* cols,
               const std::uint8_t* prev, std::uint8_t* next, std::uint32_t theta,
               std::uint64_t seed, std::uint64_t t, std::uint64_t thresh,
               std::uint8_t* scratch) {
    // pass 1: scratch[e] = prev[cols[e]]
    const std::uint32_t nnz = row_ptr[n];
    const __m256i byte_mask = _mm256_set1_epi32(0xFF);
    std::uint32_t e = 0;
    for (; e + 8 <= nnz; e += 8) {
        __m256i idx = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(cols + e));
        __m256i g = _mm256_i32gather_epi32(reinterpret_cast<const int*>(prev), idx, 1);
        g = _mm256_and_si256(g, byte_mask);
        __m128i w16 = _mm_packus_epi32(_mm256_castsi256_si128(g),
                                       _mm256_extracti128_si256(g, 1));
        __m128i b8 = _mm_packus_epi16(w16, _mm_setzero_si128());
        _mm_storel_epi64(reinterpret_cast<__m128i*>(scratch + e), b8);
    }
    for (; e < nnz; ++e) scratch[e] = prev[cols[e]];

    // pass 2: eligibility by row reduction
    for (std::uint32_t v = 0; v < n; ++v) {
        std::uint32_t c = 0;
        for (std::uint32_t i = row_ptr[v]; i < row_ptr[v + 1]; ++i) c += scratch[i];
        next[v] = c >= theta ? 1 : 0;
    }

    // pass 3: next[v] &= (draw_bits(seed, t, v) >> 11) < thresh, 4 lanes at a time
    constexpr std::uint64_t kC2 = 0xc2b2ae3d27d4eb4fULL;
    const std::uint64_t z1 = mix64(seed + (t + 1) * kGolden64);
    const __m256i z1v = _mm256_set1_epi64x(static_cast<long long>(z1));
    const __m256i thr = _mm256_set1_epi64x(static_cast<long long>(thresh));
    __m256i vk = _mm256_set_epi64x(static_cast<long long>(4 * kC2), static_cast<long long>(3 * kC2),
                                   static_cast<long long>(2 * kC2), static_cast<long long>(kC2));
    const __m256i step4 = _mm256_set1_epi64x(static_cast<long long>(4 * kC2));
    std::uint32_t v = 0;
    for (; v + 4 <= n; v += 4) {
        __m256i bits = mix64_vec(_mm256_add_epi64(z1v, vk));
        __m256i shifted = _mm256_srli_epi64(bits, 11);
        __m256i lt = _mm256_cmpgt_epi64(thr, shifted);  // both operands < 2^63
        int m = _mm256_movemask_pd(_mm256_castsi256_pd(lt));
        next[v] &= static_cast<std::uint8_t>(m & 1);
        next[v + 1] &= static_cast<std::uint8_t>((m >> 1) & 1);
        next[v + 2] &= static_cast<std::uint8_t>((m >> 2) & 1);
        next[v + 3] &= static_cast<std::uint8_t>((m >> 3) & 1);
        vk = _mm256_add_epi64(vk, step4);
    }
    for (; v < n; ++v) {
        std::uint64_t bits = draw_bits(seed, t, v);
        next[v] &= static_cast<std::uint8_t>((bits >> 11) < thresh ? 1 : 0);
    }
}

}  // namespace thcp::kernels

#endif
