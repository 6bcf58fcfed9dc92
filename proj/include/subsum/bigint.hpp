#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace subsum {

// Exact integer type for all counts and combinatorial quantities.
// Values routinely exceed 64 bits (k! alone does at k = 21).
using Bigint = boost::multiprecision::cpp_int;

Bigint factorial(uint32_t k);

// (t)_k = t(t-1)...(t-k+1), (t)_0 = 1. Defined for any integer t.
Bigint falling_factorial_int(const Bigint& t, uint32_t k);

// Binomial via the falling factorial: C(t,k) = (t)_k / k!, any integer t.
// The division is always exact; C(t,k) = 0 for k < 0.
Bigint binomial_int(const Bigint& t, int64_t k);

// Combinatorial binomial: 0 whenever k > n.
Bigint binomial_uint(uint64_t n, uint64_t k);

// Exact division with a loud failure on nonzero remainder.
Bigint exact_div(const Bigint& num, const Bigint& den, const char* what);

std::string to_decimal(const Bigint& v);

// Reduced fraction as "p/q" ("p" when the reduced denominator is 1).
std::string rational_string(const Bigint& num, const Bigint& den);

}  // namespace subsum
