#include "subsum/kernels.hpp"

#include <atomic>
#include <cstdlib>

namespace subsum::kernels {

#if defined(SUBSUM_HAVE_AVX2)
namespace detail {
void acc_u64_avx2(uint64_t* dst, const uint64_t* src, size_t n);
}
#endif
#if defined(SUBSUM_HAVE_NEON)
namespace detail {
void acc_u64_neon(uint64_t* dst, const uint64_t* src, size_t n);
}
#endif

void acc_u64_scalar(uint64_t* dst, const uint64_t* src, size_t n) {
    for (size_t i = 0; i < n; ++i) dst[i] += src[i];
}

namespace {

using AccFn = void (*)(uint64_t*, const uint64_t*, size_t);

struct Selection {
    Impl impl = Impl::scalar;
    AccFn acc = &acc_u64_scalar;
};

bool cpu_has(Impl impl) {
    switch (impl) {
        case Impl::scalar:
            return true;
        case Impl::avx2:
#if defined(SUBSUM_HAVE_AVX2)
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
        case Impl::neon:
#if defined(SUBSUM_HAVE_NEON)
            return true;
#else
            return false;
#endif
    }
    return false;
}

Selection make_selection(Impl impl) {
    Selection s;
    s.impl = impl;
    switch (impl) {
        case Impl::scalar:
            s.acc = &acc_u64_scalar;
            break;
        case Impl::avx2:
#if defined(SUBSUM_HAVE_AVX2)
            s.acc = &detail::acc_u64_avx2;
#endif
            break;
        case Impl::neon:
#if defined(SUBSUM_HAVE_NEON)
            s.acc = &detail::acc_u64_neon;
#endif
            break;
    }
    return s;
}

Impl best_available() {
    if (cpu_has(Impl::avx2)) return Impl::avx2;
    if (cpu_has(Impl::neon)) return Impl::neon;
    return Impl::scalar;
}

Selection initial_selection() {
    if (const char* env = std::getenv("SUBGROUPSUMS_SIMD")) {
        std::string_view v(env);
        if (v == "scalar") return make_selection(Impl::scalar);
        if (v == "avx2" && cpu_has(Impl::avx2)) return make_selection(Impl::avx2);
        if (v == "neon" && cpu_has(Impl::neon)) return make_selection(Impl::neon);
        // "auto" or unrecognized/unsupported values fall through
    }
    return make_selection(best_available());
}

std::atomic<const Selection*>& selection_slot() {
    static std::atomic<const Selection*> slot{nullptr};
    return slot;
}

const Selection& current() {
    auto& slot = selection_slot();
    const Selection* s = slot.load(std::memory_order_acquire);
    if (!s) {
        static Selection init = initial_selection();
        const Selection* expected = nullptr;
        slot.compare_exchange_strong(expected, &init, std::memory_order_acq_rel);
        s = slot.load(std::memory_order_acquire);
    }
    return *s;
}

}  // namespace

const char* impl_name(Impl impl) {
    switch (impl) {
        case Impl::scalar: return "scalar";
        case Impl::avx2: return "avx2";
        case Impl::neon: return "neon";
    }
    return "?";
}

Impl active() { return current().impl; }

bool available(Impl impl) { return cpu_has(impl); }

bool select(Impl impl) {
    if (!cpu_has(impl)) return false;
    static Selection forced;            // tests switch implementations serially
    forced = make_selection(impl);
    selection_slot().store(&forced, std::memory_order_release);
    return true;
}

bool select(std::string_view name) {
    if (name == "scalar") return select(Impl::scalar);
    if (name == "avx2") return select(Impl::avx2);
    if (name == "neon") return select(Impl::neon);
    return false;
}

void acc_u64(uint64_t* dst, const uint64_t* src, size_t n) {
    current().acc(dst, src, n);
}

}  // namespace subsum::kernels
