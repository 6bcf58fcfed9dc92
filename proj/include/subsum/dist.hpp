#pragma once

#include "subsum/bigint.hpp"
#include "subsum/field.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace subsum {

// Length-q vector of nonnegative exact integers, stored as packed 32-bit
// limbs in 64-bit lanes (row-major, one row per field element). A
// convolution step accumulates whole rows with no carry chains: every lane
// receives at most q values < 2^32, which cannot overflow 64 bits under the
// field size cap; carries are propagated once at the end of the step.
class PackedDist {
public:
    PackedDist() = default;

    // Point mass: count 1 at element 0 (the empty-sum distribution).
    static PackedDist unit(uint32_t q);

    uint32_t size() const { return q_; }
    uint32_t limbs() const { return limbs_; }
    uint64_t total_bits() const { return total_bits_; }
    bool empty() const { return q_ == 0; }

    Bigint at(uint32_t v) const;
    std::vector<Bigint> to_bigints() const;
    Bigint total() const;

    // Additive convolution with the uniform counting measure on `support`
    // (distinct nonzero field elements): out[v + h] += in[v] for each h.
    PackedDist convolved(const FiniteField& field, std::span<const uint32_t> support) const;

private:
    uint32_t q_ = 0;
    uint32_t limbs_ = 0;
    uint64_t total_bits_ = 0;  // total mass < 2^total_bits
    std::vector<uint64_t> lanes_;

    const uint64_t* row(uint32_t v) const { return lanes_.data() + static_cast<size_t>(v) * limbs_; }
    uint64_t* row(uint32_t v) { return lanes_.data() + static_cast<size_t>(v) * limbs_; }
};

}  // namespace subsum
