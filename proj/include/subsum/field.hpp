#pragma once

#include "subsum/budget.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace subsum {

// Element of F_{p^r}, encoded as an integer in [0, q): the base-p digits of
// the encoding are the polynomial coefficients, low digit = constant term.
// Encoding 0 is the additive identity, encoding 1 the multiplicative one.
struct FieldElement {
    uint32_t v = 0;
    friend bool operator==(FieldElement, FieldElement) = default;
    friend auto operator<=>(FieldElement, FieldElement) = default;
};

// Fully tabulated F_{p^r}: generator, exp/dlog tables, trace table.
// Immutable once constructed; all operations are pure reads.
class FiniteField {
public:
    // Modulus policy: the monic irreducible of degree r with the smallest
    // coefficient encoding; generator policy: the nonzero element of smallest
    // encoding whose order is q-1. Both make runs bit-reproducible.
    FiniteField(uint32_t p, uint32_t r, uint64_t size_cap = default_field_cap);

    uint32_t p() const { return p_; }
    uint32_t r() const { return r_; }
    uint32_t q() const { return q_; }

    // Monic modulus, r+1 coefficients low-to-high (for r = 1: x, i.e. {0,1}).
    const std::vector<uint32_t>& modulus() const { return modulus_; }

    FieldElement generator() const { return {exp_[std::min<uint32_t>(1, q_ - 2)]}; }

    FieldElement zero() const { return {0}; }
    FieldElement one() const { return {1}; }
    bool valid(FieldElement x) const { return x.v < q_; }

    FieldElement add(FieldElement x, FieldElement y) const;
    FieldElement neg(FieldElement x) const;
    FieldElement sub(FieldElement x, FieldElement y) const { return add(x, neg(y)); }
    FieldElement mul(FieldElement x, FieldElement y) const;
    FieldElement inv(FieldElement x) const;
    FieldElement pow(FieldElement x, uint64_t e) const;

    // Integer embedding n -> n * 1 (reduces mod p).
    FieldElement from_int(uint64_t n) const { return {static_cast<uint32_t>(n % p_)}; }

    // Tr(x) = x + x^p + ... + x^{p^{r-1}}; lands in the prime subfield,
    // returned as an integer in [0, p).
    uint32_t trace(FieldElement x) const { return trace_[x.v]; }

    // dlog(generator^t) = t; throws std::domain_error on x = 0.
    uint32_t dlog(FieldElement x) const;

    // generator^t for any t (reduced mod q-1).
    FieldElement exp(uint64_t t) const { return {exp_[t % (q_ - 1)]}; }

    std::span<const uint32_t> exp_table() const { return exp_; }

private:
    uint32_t p_, r_, q_;
    std::vector<uint32_t> modulus_;
    std::vector<uint32_t> exp_;    // size q-1
    std::vector<uint32_t> dlog_;   // size q, dlog_[0] unused
    std::vector<uint32_t> trace_;  // size q
};

// Construction entry point matching the CLI surface; validates p prime,
// r >= 1, p^r <= size_cap.
FiniteField make_field(uint32_t p, uint32_t r, uint64_t size_cap = default_field_cap);

// The index-m subgroup H = {x^m : x in F_q*} with its coset decomposition.
// coset(j) lists the elements x with dlog(x) = j (mod m), ascending dlog.
class SubgroupSpec {
public:
    SubgroupSpec(const FiniteField& field, uint32_t m);

    const FiniteField& field() const { return *field_; }
    uint32_t m() const { return m_; }
    uint32_t subgroup_size() const { return size_; }

    uint32_t coset_index(FieldElement x) const { return field_->dlog(x) % m_; }
    std::span<const uint32_t> coset(uint32_t j) const { return cosets_[j]; }
    std::span<const uint32_t> elements() const { return cosets_[0]; }  // H itself
    bool contains(FieldElement x) const { return x.v != 0 && coset_index(x) == 0; }

    // sigma_H = sum of the elements of H (field sum).
    FieldElement subgroup_sum() const { return sum_; }

private:
    const FiniteField* field_;
    uint32_t m_, size_;
    std::vector<std::vector<uint32_t>> cosets_;
    FieldElement sum_;
};

SubgroupSpec subgroup(const FiniteField& field, uint32_t m);

bool is_prime_u64(uint64_t n);

// Divisors of n in ascending order.
std::vector<uint32_t> divisors(uint32_t n);

}  // namespace subsum
