#include <atomic>
#include <stdexcept>

#include "thcp/kernels.hpp"

namespace thcp::kernels {

namespace {

Backend detect_backend() {
#if defined(__x86_64__) || defined(__i386__)
    if (__builtin_cpu_supports("avx2")) return Backend::avx2;
#endif
    return Backend::scalar;
}

std::atomic<Backend> g_backend{detect_backend()};

}  // namespace

Backend active_backend() { return g_backend.load(std::memory_order_relaxed); }

bool backend_available(Backend b) {
    if (b == Backend::scalar) return true;
#if defined(__x86_64__) || defined(__i386__)
    if (b == Backend::avx2) return __builtin_cpu_supports("avx2");
#endif
    return false;
}

void set_backend(Backend b) {
    if (!backend_available(b))
        throw std::runtime_error("kernel backend not available on this CPU: " + backend_name(b));
    g_backend.store(b, std::memory_order_relaxed);
}

std::string backend_name(Backend b) {
    switch (b) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
    }
    return "?";
}

void step(std::uint32_t n, const std::uint32_t* row_ptr, const std::uint32_t* cols,
          const std::uint8_t* prev, std::uint8_t* next, std::uint32_t theta,
          std::uint64_t seed, std::uint64_t t, std::uint64_t thresh, std::uint8_t* scratch) {
    switch (active_backend()) {
#if defined(__x86_64__) || defined(__i386__)
        case Backend::avx2:
            step_avx2(n, row_ptr, cols, prev, next, theta, seed, t, thresh, scratch);
            return;
#endif
        default:
            step_scalar(n, row_ptr, cols, prev, next, theta, seed, t, thresh, scratch);
            return;
    }
}

}  // namespace thcp::kernels
