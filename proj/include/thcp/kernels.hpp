#pragma once

#include <cstdint>
#include <string>

namespace thcp::kernels {

// One synchronous update of the threshold contact process over a CSR row
// structure:
//
//   next[v] = (sum_{e in [row_ptr[v], row_ptr[v+1])} prev[cols[e]] >= theta)
//             && ((draw_bits(seed, t, v) >> 11) < thresh)
//
// prev/next hold 0/1 bytes. The multiplicity and distinct counting modes
// differ only in which (row_ptr, cols) pair is passed in.
//
// Contract for SIMD backends: prev must be readable through prev[n + 7]
// (gathers load 4 bytes at a time) and scratch must hold at least
// row_ptr[n] bytes. All backends produce bit-identical next arrays; the
// per-vertex uniforms are counter-based, so lane order cannot change the
// draws.

using StepFn = void (*)(std::uint32_t n, const std::uint32_t* row_ptr,
                        const std::uint32_t* cols, const std::uint8_t* prev,
                        std::uint8_t* next, std::uint32_t theta, std::uint64_t seed,
                        std::uint64_t t, std::uint64_t thresh, std::uint8_t* scratch);

void step_scalar(std::uint32_t n, const std::uint32_t* row_ptr, const std::uint32_t* cols,
                 const std::uint8_t* prev, std::uint8_t* next, std::uint32_t theta,
                 std::uint64_t seed, std::uint64_t t, std::uint64_t thresh,
                 std::uint8_t* scratch);

#if defined(__x86_64__) || defined(__i386__)
void step_avx2(std::uint32_t n, const std::uint32_t* row_ptr, const std::uint32_t* cols,
               const std::uint8_t* prev, std::uint8_t* next, std::uint32_t theta,
               std::uint64_t seed, std::uint64_t t, std::uint64_t thresh,
               std::uint8_t* scratch);
#endif

enum class Backend { scalar, avx2 };

Backend active_backend();
bool backend_available(Backend b);
void set_backend(Backend b);  // throws if unavailable on this CPU
std::string backend_name(Backend b);

// Dispatches to the active backend.
void step(std::uint32_t n, const std::uint32_t* row_ptr, const std::uint32_t* cols,
          const std::uint8_t* prev, std::uint8_t* next, std::uint32_t theta,
          std::uint64_t seed, std::uint64_t t, std::uint64_t thresh, std::uint8_t* scratch);

}  // namespace thcp::kernels
