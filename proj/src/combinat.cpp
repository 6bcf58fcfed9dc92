#include "subsum/combinat.hpp"

#include <stdexcept>

namespace subsum {

Bigint cycle_type_count(const PartitionType& t) {
    const uint32_t k = t.k();
    Bigint den = 1;
    for (size_t i = 0; i < t.c.size(); ++i) {
        const uint32_t ci = t.c[i];
        if (ci == 0) continue;
        Bigint len = i + 1;
        for (uint32_t rep = 0; rep < ci; ++rep) den *= len;
        den *= factorial(ci);
    }
    return exact_div(factorial(k), den, "cycle_type_count");
}

namespace {

void partition_rec(uint32_t i, uint32_t rem, PartitionType& t,
                   const std::function<void(const PartitionType&)>& fn) {
    const uint32_t k = static_cast<uint32_t>(t.c.size());
    if (rem == 0) {
        for (uint32_t j = i; j < k; ++j) t.c[j] = 0;
        fn(t);
        return;
    }
    if (i >= k) return;
    const uint32_t part = i + 1;
    for (uint32_t ci = 0; ci <= rem / part; ++ci) {
        const uint32_t left = rem - ci * part;
        // the remainder must be expressible with parts of size > part
        if (left == 0 || left > part) {
            t.c[i] = ci;
            partition_rec(i + 1, left, t, fn);
        }
    }
    t.c[i] = 0;
}

}  // namespace

void for_each_partition(uint32_t k, const std::function<void(const PartitionType&)>& fn) {
    PartitionType t;
    t.c.assign(k, 0);
    if (k == 0) {
        fn(t);
        return;
    }
    partition_rec(0, k, t, fn);
}

std::vector<PartitionType> partitions(uint32_t k) {
    std::vector<PartitionType> out;
    out.reserve(partition_count(k));
    for_each_partition(k, [&](const PartitionType& t) { out.push_back(t); });
    return out;
}

uint64_t partition_count(uint32_t k) {
    std::vector<uint64_t> p(k + 1, 0);
    p[0] = 1;
    for (uint32_t part = 1; part <= k; ++part)
        for (uint32_t n = part; n <= k; ++n) p[n] += p[n - part];
    return p[k];
}

Bigint gen_func_C(uint32_t k, std::span<const Bigint> t) {
    if (t.size() < k) throw std::invalid_argument("gen_func_C: need k values");
    Bigint total = 0;
    for_each_partition(k, [&](const PartitionType& c) {
        Bigint term = cycle_type_count(c);
        for (size_t i = 0; i < c.c.size(); ++i)
            for (uint32_t rep = 0; rep < c.c[i]; ++rep) term *= t[i];
        total += term;
    });
    return total;
}

Bigint gen_func_C_uniform_closed(uint32_t k, const Bigint& q) {
    return falling_factorial_int(q + k - 1, k);
}

Bigint gen_func_C_periodic_closed(uint32_t k, uint32_t d, uint32_t q, uint32_t s) {
    if (s < 1 || q < s || d < 1 || (q - s) % d != 0)
        throw std::invalid_argument("gen_func_C_periodic_closed: need q >= s >= 1 and d | (q-s)");
    const int64_t z = (q - s) / d;
    Bigint sum = 0;
    for (uint32_t i = 0; i <= k / d; ++i)
        sum += binomial_int(Bigint(z + i - 1), i) *
               binomial_int(Bigint(int64_t(s) + k - int64_t(d) * i - 1), int64_t(s) - 1);
    return factorial(k) * sum;
}

std::vector<Bigint> periodic_substitution(uint32_t k, uint32_t d, uint32_t q, uint32_t s) {
    std::vector<Bigint> t(k);
    for (uint32_t i = 1; i <= k; ++i) t[i - 1] = (i % d == 0) ? q : s;
    return t;
}

double falling_factorial(double t, uint32_t k) {
    double r = 1.0;
    for (uint32_t j = 0; j < k; ++j) r *= (t - j);
    return r;
}

double real_binomial(double t, uint32_t k) {
    double r = 1.0;
    for (uint32_t j = 0; j < k; ++j) r *= (t - j) / (j + 1);
    return r;
}

IneqCheck check_binomial_sum_inequality(uint32_t l, uint32_t n, uint32_t q, uint32_t m) {
    if (l < 1 || n < 1 || q < 1 || m < 1)
        throw std::invalid_argument("check_binomial_sum_inequality: all arguments must be positive");
    IneqCheck out;
    out.lhs = 0;
    for (uint32_t i = 0; i + m <= q; ++i)
        out.lhs += binomial_uint(l + i, n) * binomial_uint(q - i, m);
    out.rhs = binomial_uint(static_cast<uint64_t>(l) + q + 1, static_cast<uint64_t>(m) + n + 1);
    out.holds = out.lhs <= out.rhs;
    return out;
}

IneqCheck check_gen_func_bound(uint32_t s, uint32_t d, uint32_t k, uint32_t q) {
    if (s < 1 || d < 1 || k < 1 || q < s || (q - s) % d != 0)
        throw std::invalid_argument("check_gen_func_bound: need positive arguments, q >= s, d | (q-s)");
    IneqCheck out;
    auto t = periodic_substitution(k, d, q, s);
    out.lhs = gen_func_C(k, t);
    out.rhs = falling_factorial_int(Bigint(int64_t(s) + k + int64_t(q - s) / d - 1), k);
    out.holds = out.lhs <= out.rhs;
    return out;
}

}  // namespace subsum
