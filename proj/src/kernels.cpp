#include "gkb/kernels.hpp"

#include <cstdlib>
#include <cstring>

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define GKB_HAVE_X86 1
#endif

namespace gkb::kernels {
namespace {

void rotate_add_scalar(int64_t* acc, int m, const int64_t* src, int len, int shift, int sign) {
  int first = m - shift < len ? m - shift : len;
  if (sign >= 0) {
    for (int i = 0; i < first; ++i) acc[shift + i] += src[i];
    for (int i = first; i < len; ++i) acc[i - first] += src[i];
  } else {
    for (int i = 0; i < first; ++i) acc[shift + i] -= src[i];
    for (int i = first; i < len; ++i) acc[i - first] -= src[i];
  }
}

void exponent_histogram_scalar(int64_t* hist, int m, int32_t base, const int32_t* a,
                               const int32_t* b, const int32_t* idx, size_t n) {
  for (size_t i = 0; i < n; ++i) {
    int32_t e = base + a[i] + b[idx[i]];
    if (e >= m) e -= m;
    if (e >= m) e -= m;
    hist[e] += 1;
  }
}

#ifdef GKB_HAVE_X86

__attribute__((target("avx2"))) void add_span_avx2(int64_t* dst, const int64_t* src, int len,
                                                   int sign) {
  int i = 0;
  if (sign >= 0) {
    for (; i + 4 <= len; i += 4) {
      __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
      __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_add_epi64(d, s));
    }
    for (; i < len; ++i) dst[i] += src[i];
  } else {
    for (; i + 4 <= len; i += 4) {
      __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
      __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_sub_epi64(d, s));
    }
    for (; i < len; ++i) dst[i] -= src[i];
  }
}

__attribute__((target("avx2"))) void rotate_add_avx2(int64_t* acc, int m, const int64_t* src,
                                                     int len, int shift, int sign) {
  int first = m - shift < len ? m - shift : len;
  add_span_avx2(acc + shift, src, first, sign);
  if (first < len) add_span_avx2(acc, src + first, len - first, sign);
}

__attribute__((target("avx2"))) void exponent_histogram_avx2(int64_t* hist, int m,
                                                             int32_t base, const int32_t* a,
                                                             const int32_t* b,
                                                             const int32_t* idx, size_t n) {
  const __m256i vbase = _mm256_set1_epi32(base);
  const __m256i vm = _mm256_set1_epi32(m);
  const __m256i vm1 = _mm256_set1_epi32(m - 1);
  alignas(32) int32_t lane[8];
  size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vi = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(idx + i));
    __m256i vb = _mm256_i32gather_epi32(b, vi, 4);
    __m256i e = _mm256_add_epi32(_mm256_add_epi32(vbase, va), vb);
    e = _mm256_sub_epi32(e, _mm256_and_si256(_mm256_cmpgt_epi32(e, vm1), vm));
    e = _mm256_sub_epi32(e, _mm256_and_si256(_mm256_cmpgt_epi32(e, vm1), vm));
    _mm256_store_si256(reinterpret_cast<__m256i*>(lane), e);
    for (int l = 0; l < 8; ++l) hist[lane[l]] += 1;
  }
  exponent_histogram_scalar(hist, m, base, a + i, b, idx + i, n - i);
}

#endif

const KernelTable kScalar{"scalar", rotate_add_scalar, exponent_histogram_scalar};
#ifdef GKB_HAVE_X86
const KernelTable kAvx2{"avx2", rotate_add_avx2, exponent_histogram_avx2};
#endif

}  // namespace

const KernelTable& scalar_kernels() { return kScalar; }

const KernelTable* avx2_kernels() {
#ifdef GKB_HAVE_X86
  static const bool ok = __builtin_cpu_supports("avx2");
  return ok ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active_kernels() {
  static const KernelTable* chosen = [] {
    const char* force = std::getenv("GKB_FORCE_SCALAR");
    bool scalar_only = force && *force && std::strcmp(force, "0") != 0;
    const KernelTable* v = avx2_kernels();
    return (!scalar_only && v) ? v : &kScalar;
  }();
  return *chosen;
}

}  // namespace gkb::kernels
