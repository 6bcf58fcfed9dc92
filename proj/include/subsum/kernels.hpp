#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace subsum::kernels {

// 64-bit lane accumulation kernels behind a runtime-selected implementation.
// The convolution core stores counts as packed 32-bit limbs in 64-bit lanes,
// so one distribution step is a long vertical add with no carry chains.

enum class Impl { scalar, avx2, neon };

const char* impl_name(Impl impl);

// Implementation in use. Resolved once: SUBGROUPSUMS_SIMD (scalar|avx2|neon|auto)
// if set, otherwise the best the CPU supports.
Impl active();

// Force an implementation; returns false (and leaves the selection unchanged)
// if it is not available on this CPU/build.
bool select(Impl impl);
bool select(std::string_view name);

bool available(Impl impl);

// dst[i] += src[i] for i in [0, n)
void acc_u64(uint64_t* dst, const uint64_t* src, size_t n);

// Reference implementation, always available (equivalence baseline).
void acc_u64_scalar(uint64_t* dst, const uint64_t* src, size_t n);

}  // namespace subsum::kernels
