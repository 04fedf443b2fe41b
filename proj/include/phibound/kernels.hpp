#pragma once

#include <cstddef>
#include <span>
#include <string_view>

#include "phibound/bounds.hpp"

// Batch evaluation of the bound formulas. One scalar reference kernel per
// bound plus AVX2 variants selected at runtime; the two paths are
// equivalence-tested to stay within a few ulp of each other.

namespace phibound {

enum class SimdLevel { scalar, avx2 };

std::string_view simd_level_name(SimdLevel level);

/// Best level supported by this build and CPU.
SimdLevel detected_simd_level() noexcept;

/// Level used by eval_bound_many. Defaults to detected_simd_level().
SimdLevel active_simd_level() noexcept;

/// Force a level (clamped to detected_simd_level()). Mainly for tests.
void set_simd_level(SimdLevel level);

/// Evaluate kind at xs[i] into out[i] using the active level.
/// Precondition: all xs finite and >= 0 (Grid construction guarantees this);
/// out must be at least as long as xs.
void eval_bound_many(BoundKind kind, std::span<const double> xs,
                     std::span<double> out);

namespace kernels {

void eval_many_scalar(BoundKind kind, const double* xs, double* out,
                      std::size_t n);

/// True when the AVX2 translation unit is part of this build. When false,
/// the *_avx2 entry points below forward to scalar/libm implementations.
bool avx2_compiled() noexcept;

void eval_many_avx2(BoundKind kind, const double* xs, double* out,
                    std::size_t n);

// Vector math primitives behind the AVX2 kernels, exposed for equivalence
// testing against libm.
void exp_many_avx2(const double* xs, double* out, std::size_t n);
void expm1_many_avx2(const double* xs, double* out, std::size_t n);

}  // namespace kernels
}  // namespace phibound
