#include "subsum/bigint.hpp"

#include <algorithm>

namespace subsum {

Bigint factorial(uint32_t k) {
    Bigint r = 1;
    for (uint32_t i = 2; i <= k; ++i) r *= i;
    return r;
}

Bigint falling_factorial_int(const Bigint& t, uint32_t k) {
    Bigint r = 1;
    for (uint32_t j = 0; j < k; ++j) r *= (t - j);
    return r;
}

Bigint binomial_int(const Bigint& t, int64_t k) {
    if (k < 0) return 0;
    return exact_div(falling_factorial_int(t, static_cast<uint32_t>(k)),
                     factorial(static_cast<uint32_t>(k)), "binomial_int");
}

Bigint binomial_uint(uint64_t n, uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    Bigint r = 1;
    for (uint64_t i = 1; i <= k; ++i) {
        r *= (n - k + i);
        r /= i;  // exact at every step: r is C(n-k+i, i)
    }
    return r;
}

Bigint exact_div(const Bigint& num, const Bigint& den, const char* what) {
    Bigint q, r;
    boost::multiprecision::divide_qr(num, den, q, r);
    if (r != 0) throw std::logic_error(std::string(what) + ": division not exact");
    return q;
}

std::string to_decimal(const Bigint& v) { return v.str(); }

std::string rational_string(const Bigint& num, const Bigint& den) {
    if (den == 0) throw std::invalid_argument("rational_string: zero denominator");
    Bigint g = boost::multiprecision::gcd(num, den);
    if (g == 0) g = 1;
    Bigint n = num / g, d = den / g;
    if (d < 0) { n = -n; d = -d; }
    if (d == 1) return n.str();
    return n.str() + "/" + d.str();
}

}  // namespace subsum
