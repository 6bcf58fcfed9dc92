#pragma once

#include <cstdint>
#include <stdexcept>

namespace subsum {

// Work caps for the exhaustive paths. `enum_ops` bounds brute-force
// enumeration work (subsets visited), `sum_ops` bounds direct character
// summation terms, `conv_ops` bounds sieve convolution work in 64-bit lane
// operations. The CLI scales these from SUBGROUPSUMS_BUDGET.
struct Budget {
    uint64_t enum_ops = 10'000'000;
    uint64_t sum_ops = 50'000'000;
    uint64_t conv_ops = 50'000'000'000;

    void require_enum(uint64_t need) const {
        if (need > enum_ops) fail("enumeration", need, enum_ops);
    }
    void require_sum(uint64_t need) const {
        if (need > sum_ops) fail("summation", need, sum_ops);
    }
    void require_conv(uint64_t need) const {
        if (need > conv_ops) fail("convolution", need, conv_ops);
    }

private:
    [[noreturn]] static void fail(const char* kind, uint64_t need, uint64_t cap);
};

class budget_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Field tabulation cap: p^r above this is rejected by make_field.
inline constexpr uint64_t default_field_cap = uint64_t{1} << 20;

}  // namespace subsum
