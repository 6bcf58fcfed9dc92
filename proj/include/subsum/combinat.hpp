#pragma once

#include "subsum/bigint.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace subsum {

// Cycle type (c_1,...,c_k) of a permutation in S_k: c[i-1] cycles of
// length i, with sum i*c_i = k.
struct PartitionType {
    std::vector<uint32_t> c;

    uint32_t k() const {
        uint64_t s = 0;
        for (size_t i = 0; i < c.size(); ++i) s += (i + 1) * static_cast<uint64_t>(c[i]);
        return static_cast<uint32_t>(s);
    }
    uint32_t cycle_count() const {
        uint32_t l = 0;
        for (uint32_t ci : c) l += ci;
        return l;
    }
    // (-1)^(k - l)
    int sign() const { return (k() - cycle_count()) % 2 ? -1 : 1; }
};

// Number of permutations of this cycle type: k! / prod_i i^{c_i} c_i!.
Bigint cycle_type_count(const PartitionType& t);

// Every cycle type of S_k exactly once, ascending lexicographic on c.
void for_each_partition(uint32_t k, const std::function<void(const PartitionType&)>& fn);
std::vector<PartitionType> partitions(uint32_t k);

// p(k) via the Euler recurrence (fits u64 through k = 120 and beyond).
uint64_t partition_count(uint32_t k);

// C_k(t_1,...,t_k) = sum over cycle types of N(c) * prod t_i^{c_i}.
Bigint gen_func_C(uint32_t k, std::span<const Bigint> t);

// Closed form for C_k(q,...,q): (q+k-1)_k.
Bigint gen_func_C_uniform_closed(uint32_t k, const Bigint& q);

// Closed form for the d-periodic substitution t_i = q when d|i, else s:
// k! * sum_i C((q-s)/d + i - 1, i) * C(s+k-di-1, s-1). Requires d | (q-s),
// q >= s >= 1.
Bigint gen_func_C_periodic_closed(uint32_t k, uint32_t d, uint32_t q, uint32_t s);

// The t-vector of that substitution.
std::vector<Bigint> periodic_substitution(uint32_t k, uint32_t d, uint32_t q, uint32_t s);

double falling_factorial(double t, uint32_t k);
double real_binomial(double t, uint32_t k);

struct IneqCheck {
    Bigint lhs, rhs;
    bool holds = false;
};

// sum_{i>=0} C(l+i,n) C(q-i,m) <= C(l+q+1, m+n+1), all arguments positive.
IneqCheck check_binomial_sum_inequality(uint32_t l, uint32_t n, uint32_t q, uint32_t m);

// C_k(periodic substitution) <= (s + k + (q-s)/d - 1)_k, with q >= s, d|(q-s).
IneqCheck check_gen_func_bound(uint32_t s, uint32_t d, uint32_t k, uint32_t q);

}  // namespace subsum
