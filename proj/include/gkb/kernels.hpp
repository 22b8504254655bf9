// Data-parallel inner loops with a scalar reference and an AVX2 variant.
#pragma once

#include <cstddef>
#include <cstdint>

namespace gkb::kernels {

// acc[(i + shift) mod m] += sign * src[i] for 0 <= i < len, len <= m, 0 <= shift < m.
using RotateAddFn = void (*)(int64_t* acc, int m, const int64_t* src, int len, int shift,
                             int sign);

// hist[(base + a[i] + b[idx[i]]) mod m] += 1, with 0 <= base, a[i], b[j] < m.
using ExponentHistogramFn = void (*)(int64_t* hist, int m, int32_t base, const int32_t* a,
                                     const int32_t* b, const int32_t* idx, size_t n);

struct KernelTable {
  const char* name;
  RotateAddFn rotate_add;
  ExponentHistogramFn exponent_histogram;
};

const KernelTable& scalar_kernels();
// Null when the binary or the CPU lacks AVX2.
const KernelTable* avx2_kernels();
// AVX2 when available unless GKB_FORCE_SCALAR is set to a non-empty value other than "0".
const KernelTable& active_kernels();

}  // namespace gkb::kernels
