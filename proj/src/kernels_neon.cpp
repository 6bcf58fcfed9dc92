// NEON variant of the lane-accumulate kernel (aarch64 baseline).

#include <arm_neon.h>

#include <cstddef>
#include <cstdint>

namespace subsum::kernels::detail {

void acc_u64_neon(uint64_t* dst, const uint64_t* src, size_t n) {
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        uint64x2_t d0 = vld1q_u64(dst + i);
        uint64x2_t d1 = vld1q_u64(dst + i + 2);
        uint64x2_t d2 = vld1q_u64(dst + i + 4);
        uint64x2_t d3 = vld1q_u64(dst + i + 6);
        d0 = vaddq_u64(d0, vld1q_u64(src + i));
        d1 = vaddq_u64(d1, vld1q_u64(src + i + 2));
        d2 = vaddq_u64(d2, vld1q_u64(src + i + 4));
        d3 = vaddq_u64(d3, vld1q_u64(src + i + 6));
        vst1q_u64(dst + i, d0);
        vst1q_u64(dst + i + 2, d1);
        vst1q_u64(dst + i + 4, d2);
        vst1q_u64(dst + i + 6, d3);
    }
    for (; i + 2 <= n; i += 2)
        vst1q_u64(dst + i, vaddq_u64(vld1q_u64(dst + i), vld1q_u64(src + i)));
    for (; i < n; ++i) dst[i] += src[i];
}

}  // namespace subsum::kernels::detail
