#include "subsum/bounds.hpp"

#include "subsum/combinat.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace subsum {

const char* bound_name(BoundId id, bool b_is_zero) {
    switch (id) {
        case BoundId::subset_sum: return b_is_zero ? "subset-bound(b=0)" : "subset-bound(b!=0)";
        case BoundId::subset_sum_zero_alt: return "subset-bound-alt(b=0)";
        case BoundId::subset_sum_ordered: return b_is_zero ? "ordered-subset-bound(b=0)" : "ordered-subset-bound(b!=0)";
        case BoundId::diagonal: return b_is_zero ? "diagonal-bound(b=0)" : "diagonal-bound(b!=0)";
    }
    return "?";
}

namespace {

void check_positive_factors(double upper, uint32_t k, const char* what) {
    // every falling-factorial factor upper - j, j < k, must stay positive
    if (k > 0 && upper - (static_cast<double>(k) - 1.0) <= 0.0)
        throw std::logic_error(std::string(what) + ": nonpositive falling-factorial factor");
}

}  // namespace

double bound_subset_sum(uint32_t q, uint32_t p, uint32_t m, uint32_t k, bool b_is_zero) {
    if (k < 1 || static_cast<uint64_t>(k) * m > q - 1)
        throw std::invalid_argument("bound_subset_sum: need 1 <= k <= (q-1)/m");
    const double sq = std::sqrt(static_cast<double>(q));
    const double upper = sq + k + static_cast<double>(q) / (static_cast<double>(m) * p);
    check_positive_factors(upper, k, "bound_subset_sum");
    const double core = real_binomial(upper, k);
    return b_is_zero ? core : (2.0 / sq) * core;
}

double bound_diagonal(uint32_t q, uint32_t p, uint32_t m, uint32_t k, bool b_is_zero) {
    if (k > q - 1) throw std::invalid_argument("bound_diagonal: need 0 <= k <= q-1");
    const double sq = std::sqrt(static_cast<double>(q));
    const double upper = m * sq + k + static_cast<double>(q) / p;
    check_positive_factors(upper, k, "bound_diagonal");
    const double core = falling_factorial(upper, k);
    return b_is_zero ? core : (2.0 / sq) * core;
}

namespace {

double subset_sum_zero_alt_rhs(uint32_t q, uint32_t p, uint32_t m, uint32_t k) {
    const double sq = std::sqrt(static_cast<double>(q));
    const double upper = sq + static_cast<double>(k) - 1.0 +
                         static_cast<double>(q) / (static_cast<double>(m) * p);
    check_positive_factors(upper, k, "subset-bound-alt");
    return real_binomial(upper, k);
}

}  // namespace

BoundReport report_for(SieveContext& ctx, uint32_t k, FieldElement b, BoundId id,
                       const Bigint& exact) {
    const FiniteField& f = ctx.field();
    const SubgroupSpec& sub = ctx.sub();
    const bool zero = (b.v == 0);

    BoundReport rep;
    rep.q = f.q();
    rep.p = f.p();
    rep.m = sub.m();
    rep.k = k;
    rep.b = b.v;
    rep.exact = exact;
    rep.theorem_id = bound_name(id, zero);

    switch (id) {
        case BoundId::subset_sum:
            rep.main_num = binomial_uint(sub.subgroup_size(), k);
            rep.rhs = bound_subset_sum(rep.q, rep.p, rep.m, k, zero);
            break;
        case BoundId::subset_sum_zero_alt:
            if (!zero)
                throw std::invalid_argument("the alternative zero bound applies to b = 0 only");
            rep.main_num = binomial_uint(sub.subgroup_size(), k);
            rep.rhs = subset_sum_zero_alt_rhs(rep.q, rep.p, rep.m, k);
            break;
        case BoundId::subset_sum_ordered: {
            if (k < 1 || static_cast<uint64_t>(k) * rep.m > rep.q - 1)
                throw std::invalid_argument("ordered subset bound: need 1 <= k <= (q-1)/m");
            rep.main_num = falling_factorial_int(Bigint(sub.subgroup_size()), k);
            const double sq = std::sqrt(static_cast<double>(rep.q));
            const double upper =
                sq + k + static_cast<double>(rep.q) / (static_cast<double>(rep.m) * rep.p);
            check_positive_factors(upper, k, "ordered-subset-bound");
            const double core = falling_factorial(upper, k);
            rep.rhs = zero ? core : (2.0 / sq) * core;
            break;
        }
        case BoundId::diagonal:
            rep.main_num = falling_factorial_int(Bigint(rep.q) - 1, k);
            rep.rhs = bound_diagonal(rep.q, rep.p, rep.m, k, zero);
            break;
    }
    // lhs = |q * exact - main_num| / q, formed exactly before rounding
    Bigint diff = Bigint(rep.q) * rep.exact - rep.main_num;
    if (diff < 0) diff = -diff;
    rep.lhs = diff.convert_to<double>() / rep.q;
    rep.holds = rep.lhs <= rep.rhs + 1e-9 * std::max(1.0, rep.rhs);
    return rep;
}

BoundReport check_bounds(SieveContext& ctx, uint32_t k, FieldElement b, BoundId id) {
    Target target = Target::MH;
    if (id == BoundId::diagonal) target = Target::NmStar;
    if (id == BoundId::subset_sum_ordered) target = Target::NH;
    return report_for(ctx, k, b, id, ctx.count(k, b, target));
}

PositivityReport positivity_sufficient(uint32_t q, uint32_t p, uint32_t m, uint32_t k,
                                       PositivityTarget target) {
    if (p <= 2) throw std::invalid_argument("positivity statements assume p > 2");
    PositivityReport rep;
    const double qd = q;
    rep.threshold_3ln4q = 3.0 * std::log(4.0 * qd);
    rep.threshold_6lnq = 6.0 * std::log(qd);
    rep.k_above_3ln4q = k > rep.threshold_3ln4q;
    rep.k_above_6lnq = k > rep.threshold_6lnq;

    if (target == PositivityTarget::subset) {
        if (k < 1 || 2.0 * k * m > qd - 1)
            throw std::invalid_argument("positivity(subset): need 1 <= k <= (q-1)/(2m)");
        rep.main_term =
            binomial_uint((q - 1) / m, k).convert_to<double>() / qd;
        rep.bound_nonzero = bound_subset_sum(q, p, m, k, false);
        rep.bound_zero = bound_subset_sum(q, p, m, k, true);
    } else {
        if (2.0 * k > qd - 1)
            throw std::invalid_argument("positivity(diagonal): need 0 <= k <= (q-1)/2");
        rep.main_term =
            falling_factorial_int(Bigint(q) - 1, k).convert_to<double>() / qd;
        rep.bound_nonzero = bound_diagonal(q, p, m, k, false);
        rep.bound_zero = bound_diagonal(q, p, m, k, true);
    }
    rep.guaranteed = rep.main_term >= rep.bound_nonzero && rep.main_term >= rep.bound_zero;
    return rep;
}

double diagonal_mixed_rhs_nonzero(uint32_t q, std::span<const uint32_t> ds) {
    const uint32_t n = static_cast<uint32_t>(ds.size());
    const double sq = std::sqrt(static_cast<double>(q));
    double total = 0.0;
    // subsets of positions forming the nontrivial block i_{e+1} < ... < i_n
    for (uint32_t mask = 1; mask < (1u << n); ++mask) {
        double prod = 1.0;
        uint32_t sz = 0;
        for (uint32_t i = 0; i < n; ++i)
            if (mask & (1u << i)) {
                prod *= static_cast<double>(ds[i]) - 1.0;
                ++sz;
            }
        total += prod * std::pow(sq, static_cast<double>(sz) - 1.0);
    }
    return total;
}

double diagonal_mixed_rhs_zero(uint32_t q, std::span<const uint32_t> ds) {
    const uint32_t n = static_cast<uint32_t>(ds.size());
    const double qd = q;
    double total = (qd - 1.0) / qd;
    for (uint32_t mask = 1; mask < (1u << n); ++mask) {
        std::vector<uint32_t> pos;
        for (uint32_t i = 0; i < n; ++i)
            if (mask & (1u << i)) pos.push_back(i);
        // count exponent tuples 1 <= l_j <= d_j - 1 with sum l_j / d_j integral
        uint64_t lcm = 1;
        for (uint32_t i : pos) lcm = std::lcm<uint64_t>(lcm, ds[i]);
        uint64_t count = 0;
        std::vector<uint32_t> l(pos.size(), 1);
        if (!pos.empty()) {
            bool any = true;
            for (uint32_t i : pos)
                if (ds[i] < 2) any = false;  // no admissible l_j
            while (any) {
                uint64_t s = 0;
                for (size_t i = 0; i < pos.size(); ++i) s += lcm / ds[pos[i]] * l[i];
                if (s % lcm == 0) ++count;
                size_t j = pos.size();
                while (j > 0 && l[j - 1] == ds[pos[j - 1]] - 1) l[--j] = 1;
                if (j == 0) break;
                ++l[j - 1];
            }
        }
        const uint32_t e = n - static_cast<uint32_t>(pos.size());
        total += static_cast<double>(count) * (qd - 1.0) *
                 std::pow(qd, (static_cast<double>(n) - e) / 2.0 - 1.0);
    }
    return total;
}

double diagonal_power_rhs_nonzero(uint32_t q, uint32_t m, uint32_t n) {
    const double sq = std::sqrt(static_cast<double>(q));
    return std::pow(1.0 + (static_cast<double>(m) - 1.0) * sq, static_cast<double>(n)) / sq;
}

double diagonal_power_rhs_zero(uint32_t q, uint32_t m, uint32_t n) {
    const double qd = q;
    const double sq = std::sqrt(qd);
    return (qd - 1.0) / qd *
           std::pow(1.0 + (static_cast<double>(m) - 1.0) * sq, static_cast<double>(n));
}

}  // namespace subsum
