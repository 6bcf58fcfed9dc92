#pragma once

#include "subsum/bigint.hpp"
#include "subsum/counting.hpp"

#include <cstdint>
#include <span>
#include <string>

namespace subsum {

// Which error-bound statement to evaluate. The subset-sum b=0 case exists in
// two printed forms (upper argument k vs k-1); both are exposed and the
// verifier reports both.
enum class BoundId {
    subset_sum,           // M_H: (2/sqrt(q)) C(sqrt(q)+k+q/(mp), k), b=0 without the factor
    subset_sum_zero_alt,  // M_H, b=0 variant with upper argument k-1
    subset_sum_ordered,   // N_H: (2/sqrt(q)) (sqrt(q)+k+q/(mp))_k, b=0 without the factor
    diagonal,             // N_m*: (2/sqrt(q)) (m sqrt(q)+k+q/p)_k, b=0 without the factor
};

const char* bound_name(BoundId id, bool b_is_zero);

// RHS of the subset-sum bound. Requires 1 <= k <= (q-1)/m.
double bound_subset_sum(uint32_t q, uint32_t p, uint32_t m, uint32_t k, bool b_is_zero);

// RHS of the distinct-coordinate diagonal bound. Requires 0 <= k <= q-1.
double bound_diagonal(uint32_t q, uint32_t p, uint32_t m, uint32_t k, bool b_is_zero);

struct BoundReport {
    uint32_t q = 0, p = 0, m = 0, k = 0, b = 0;
    Bigint exact;
    Bigint main_num;   // main term = main_num / q
    double lhs = 0.0;  // |exact - main_num/q|
    double rhs = 0.0;
    bool holds = false;  // lhs <= rhs + 1e-9 * max(1, rhs)
    std::string theorem_id;
};

// Evaluates one bound statement against the exact sieve count.
BoundReport check_bounds(SieveContext& ctx, uint32_t k, FieldElement b, BoundId id);
BoundReport report_for(SieveContext& ctx, uint32_t k, FieldElement b, BoundId id,
                       const Bigint& exact);

enum class PositivityTarget { subset, diagonal };

struct PositivityReport {
    bool guaranteed = false;   // main term clears both bound variants
    double main_term = 0.0;    // (1/q) C((q-1)/m, k)  resp. (q-1)_k / q
    double bound_nonzero = 0.0;
    double bound_zero = 0.0;
    // both advertised k-thresholds, reported side by side
    double threshold_3ln4q = 0.0;
    double threshold_6lnq = 0.0;
    bool k_above_3ln4q = false;
    bool k_above_6lnq = false;
};

// The explicit sufficient inequality from the positivity proofs: main term
// >= bound RHS for both the b != 0 and b = 0 statements. Requires p > 2 and
// k within the statement range ((q-1)/(2m) for subset, (q-1)/2 for diagonal).
PositivityReport positivity_sufficient(uint32_t q, uint32_t p, uint32_t m, uint32_t k,
                                       PositivityTarget target);

// RHS of the general weighted-diagonal estimate for b != 0:
// sum_{e<n} sum_{subsets} prod (d_i - 1) sqrt(q)^{n-e-1}.
double diagonal_mixed_rhs_nonzero(uint32_t q, std::span<const uint32_t> ds);

// RHS of the b = 0 analogue: (q-1)/q + sum over character combinations with
// integral exponent sum of (q-1) q^{(n-e)/2 - 1}.
double diagonal_mixed_rhs_zero(uint32_t q, std::span<const uint32_t> ds);

// Equal-exponent specializations (all d_i = m).
double diagonal_power_rhs_nonzero(uint32_t q, uint32_t m, uint32_t n);
double diagonal_power_rhs_zero(uint32_t q, uint32_t m, uint32_t n);

}  // namespace subsum
