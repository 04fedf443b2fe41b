#include "phibound/kernels.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>

namespace phibound {

#if !PHIBOUND_HAVE_AVX2_TU
namespace kernels {

bool avx2_compiled() noexcept { return false; }

void eval_many_avx2(BoundKind kind, const double* xs, double* out,
                    std::size_t n) {
    eval_many_scalar(kind, xs, out, n);
}

void exp_many_avx2(const double* xs, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = std::exp(xs[i]);
}

void expm1_many_avx2(const double* xs, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = std::expm1(xs[i]);
}

}  // namespace kernels
#endif

namespace {

std::atomic<SimdLevel>& active_slot() {
    static std::atomic<SimdLevel> slot{detected_simd_level()};
    return slot;
}

}  // namespace

std::string_view simd_level_name(SimdLevel level) {
    return level == SimdLevel::avx2 ? "avx2" : "scalar";
}

SimdLevel detected_simd_level() noexcept {
    static const SimdLevel detected = [] {
        if (!kernels::avx2_compiled()) return SimdLevel::scalar;
#if defined(__x86_64__) || defined(_M_X64)
        if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
            return SimdLevel::avx2;
        }
#endif
        return SimdLevel::scalar;
    }();
    return detected;
}

SimdLevel active_simd_level() noexcept {
    return active_slot().load(std::memory_order_relaxed);
}

void set_simd_level(SimdLevel level) {
    if (level == SimdLevel::avx2 && detected_simd_level() != SimdLevel::avx2) {
        level = SimdLevel::scalar;
    }
    active_slot().store(level, std::memory_order_relaxed);
}

void eval_bound_many(BoundKind kind, std::span<const double> xs,
                     std::span<double> out) {
    if (out.size() < xs.size()) {
        throw std::invalid_argument("eval_bound_many: output span too small");
    }
    if (active_simd_level() == SimdLevel::avx2) {
        kernels::eval_many_avx2(kind, xs.data(), out.data(), xs.size());
    } else {
        kernels::eval_many_scalar(kind, xs.data(), out.data(), xs.size());
    }
}

}  // namespace phibound
