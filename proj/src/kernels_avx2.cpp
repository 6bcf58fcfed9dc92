// AVX2 variant of the lane-accumulate kernel. Compiled with -mavx2 in its own
// translation unit; callers reach it only after a runtime cpuid check.

#include <immintrin.h>

#include <cstddef>
#include <cstdint>

namespace subsum::kernels::detail {

void acc_u64_avx2(uint64_t* dst, const uint64_t* src, size_t n) {
    size_t i = 0;
    for (; i + 16 <= n; i += 16) {
        __m256i d0 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
        __m256i d1 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i + 4));
        __m256i d2 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i + 8));
        __m256i d3 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i + 12));
        __m256i s0 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        __m256i s1 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i + 4));
        __m256i s2 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i + 8));
        __m256i s3 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i + 12));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_add_epi64(d0, s0));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i + 4), _mm256_add_epi64(d1, s1));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i + 8), _mm256_add_epi64(d2, s2));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i + 12), _mm256_add_epi64(d3, s3));
    }
    for (; i + 4 <= n; i += 4) {
        __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
        __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_add_epi64(d, s));
    }
    for (; i < n; ++i) dst[i] += src[i];
}

}  // namespace subsum::kernels::detail
