#include "subsum/dist.hpp"

#include "subsum/kernels.hpp"

#include <bit>
#include <stdexcept>

namespace subsum {

namespace {
constexpr uint64_t limb_mask = 0xffffffffull;
}

PackedDist PackedDist::unit(uint32_t q) {
    PackedDist d;
    d.q_ = q;
    d.limbs_ = 1;
    d.total_bits_ = 1;
    d.lanes_.assign(q, 0);
    d.lanes_[0] = 1;
    return d;
}

Bigint PackedDist::at(uint32_t v) const {
    if (v >= q_) throw std::out_of_range("PackedDist::at");
    Bigint out = 0;
    const uint64_t* r = row(v);
    for (uint32_t i = limbs_; i-- > 0;) {
        out <<= 32;
        out += r[i];
    }
    return out;
}

std::vector<Bigint> PackedDist::to_bigints() const {
    std::vector<Bigint> out(q_);
    for (uint32_t v = 0; v < q_; ++v) out[v] = at(v);
    return out;
}

Bigint PackedDist::total() const {
    Bigint t = 0;
    for (uint32_t v = 0; v < q_; ++v) t += at(v);
    return t;
}

PackedDist PackedDist::convolved(const FiniteField& field, std::span<const uint32_t> support) const {
    if (field.q() != q_) throw std::invalid_argument("PackedDist::convolved: field size mismatch");
    PackedDist out;
    out.q_ = q_;
    out.total_bits_ = total_bits_ + std::bit_width(support.size());
    out.limbs_ = static_cast<uint32_t>((out.total_bits_ + 31) / 32);
    const uint32_t L = out.limbs_;
    out.lanes_.assign(static_cast<size_t>(q_) * L, 0);

    // widen the source to the output stride so row adds line up
    std::vector<uint64_t> src(static_cast<size_t>(q_) * L, 0);
    for (uint32_t v = 0; v < q_; ++v)
        for (uint32_t i = 0; i < limbs_; ++i) src[static_cast<size_t>(v) * L + i] = row(v)[i];

    if (field.r() == 1) {
        // prime field: adding h rotates the index space; two contiguous spans
        const uint32_t p = field.p();
        for (uint32_t h : support) {
            kernels::acc_u64(out.lanes_.data() + static_cast<size_t>(h) * L, src.data(),
                             static_cast<size_t>(p - h) * L);
            kernels::acc_u64(out.lanes_.data(), src.data() + static_cast<size_t>(p - h) * L,
                             static_cast<size_t>(h) * L);
        }
    } else {
        std::vector<uint32_t> perm(q_);
        for (uint32_t h : support) {
            for (uint32_t v = 0; v < q_; ++v) perm[v] = field.add({v}, {h}).v;
            for (uint32_t v = 0; v < q_; ++v)
                kernels::acc_u64(out.lanes_.data() + static_cast<size_t>(perm[v]) * L,
                                 src.data() + static_cast<size_t>(v) * L, L);
        }
    }

    // propagate the deferred carries back to canonical 32-bit limbs
    for (uint32_t v = 0; v < q_; ++v) {
        uint64_t* r = out.row(v);
        uint64_t carry = 0;
        for (uint32_t i = 0; i < L; ++i) {
            const uint64_t t = r[i] + carry;
            r[i] = t & limb_mask;
            carry = t >> 32;
        }
        if (carry != 0) throw std::logic_error("PackedDist: limb bound overflow");
    }
    return out;
}

}  // namespace subsum
