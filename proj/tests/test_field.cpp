#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "subsum/field.hpp"

#include <algorithm>
#include <random>
#include <set>

using namespace subsum;

namespace {

std::vector<std::pair<uint32_t, uint32_t>> prime_powers(uint32_t n) {
    std::vector<std::pair<uint32_t, uint32_t>> out;
    for (uint32_t p = 2; p <= n; ++p) {
        if (!is_prime_u64(p)) continue;
        uint64_t q = p;
        uint32_t r = 1;
        while (q <= n) {
            out.push_back({p, r});
            q *= p;
            ++r;
        }
    }
    return out;
}

}  // namespace

TEST_CASE("construction policies") {
    FiniteField f7 = make_field(7, 1);
    CHECK(f7.q() == 7);
    CHECK(f7.generator().v == 3);  // smallest primitive root mod 7

    FiniteField f2 = make_field(2, 1);
    CHECK(f2.generator().v == 1);

    FiniteField f9 = make_field(3, 2);
    CHECK(f9.q() == 9);
    CHECK(f9.modulus() == std::vector<uint32_t>{1, 0, 1});  // x^2 + 1

    CHECK_THROWS_AS(make_field(6, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_field(1, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_field(7, 0), std::invalid_argument);
    CHECK_THROWS_AS(make_field(2, 21), std::invalid_argument);  // 2^21 over the cap
    CHECK_NOTHROW(make_field(2, 21, uint64_t{1} << 22));
}

TEST_CASE("discrete log and generator enumeration") {
    FiniteField f = make_field(7, 1);
    CHECK(f.dlog({3}) == 1);
    CHECK(f.dlog({2}) == 2);  // 3^2 = 2 mod 7
    CHECK(f.dlog({1}) == 0);
    CHECK_THROWS_AS(f.dlog({0}), std::domain_error);
    std::set<uint32_t> seen;
    for (uint32_t t = 0; t < f.q() - 1; ++t) seen.insert(f.exp(t).v);
    CHECK(seen.size() == f.q() - 1);
    for (uint32_t t = 0; t < f.q() - 1; ++t) CHECK(f.dlog(f.exp(t)) == t);
}

TEST_CASE("trace values and fibers") {
    FiniteField f9 = make_field(3, 2);
    CHECK(f9.trace({3}) == 0);  // root of x^2+1: Tr(x) = x + x^3 = 0
    CHECK(f9.trace({1}) == 2);  // r * 1 = 2 mod 3
    CHECK(f9.trace({0}) == 0);

    for (auto [p, r] : prime_powers(81)) {
        FiniteField f = make_field(p, r);
        // linearity and fiber sizes
        std::vector<uint32_t> fiber(p, 0);
        for (uint32_t x = 0; x < f.q(); ++x) fiber[f.trace({x})]++;
        for (uint32_t c = 0; c < p; ++c) CHECK(fiber[c] == f.q() / p);
        std::mt19937 gen(42);
        for (int i = 0; i < 50; ++i) {
            FieldElement x{static_cast<uint32_t>(gen() % f.q())};
            FieldElement y{static_cast<uint32_t>(gen() % f.q())};
            CHECK(f.trace(f.add(x, y)) == (f.trace(x) + f.trace(y)) % p);
        }
    }
}

TEST_CASE("field axioms, exhaustive for q <= 81") {
    for (auto [p, r] : prime_powers(81)) {
        FiniteField f = make_field(p, r);
        const uint32_t q = f.q();
        CAPTURE(q);
        for (uint32_t x = 0; x < q; ++x) {
            CHECK(f.add({x}, {0}).v == x);
            CHECK(f.mul({x}, {1}).v == x);
            CHECK(f.add({x}, f.neg({x})).v == 0);
            if (x) CHECK(f.mul({x}, f.inv({x})).v == 1);
        }
        for (uint32_t x = 0; x < q; ++x)
            for (uint32_t y = 0; y < q; ++y) {
                CHECK(f.add({x}, {y}) == f.add({y}, {x}));
                CHECK(f.mul({x}, {y}) == f.mul({y}, {x}));
                // Frobenius is additive
                CHECK(f.pow(f.add({x}, {y}), p) == f.add(f.pow({x}, p), f.pow({y}, p)));
            }
        std::mt19937 gen(7);
        for (int i = 0; i < 200; ++i) {
            FieldElement x{static_cast<uint32_t>(gen() % q)};
            FieldElement y{static_cast<uint32_t>(gen() % q)};
            FieldElement z{static_cast<uint32_t>(gen() % q)};
            CHECK(f.add(f.add(x, y), z) == f.add(x, f.add(y, z)));
            CHECK(f.mul(f.mul(x, y), z) == f.mul(x, f.mul(y, z)));
            CHECK(f.mul(x, f.add(y, z)) == f.add(f.mul(x, y), f.mul(x, z)));
        }
        // prime fields reduce to integers mod p
        if (r == 1)
            for (uint32_t x = 0; x < q; ++x)
                for (uint32_t y = 0; y < q; ++y) {
                    CHECK(f.add({x}, {y}).v == (x + y) % p);
                    CHECK(f.mul({x}, {y}).v == (x * y) % p);
                }
    }
}

TEST_CASE("subgroups and cosets") {
    FiniteField f = make_field(7, 1);
    SubgroupSpec sub = subgroup(f, 2);
    auto h = sub.elements();
    CHECK(std::set<uint32_t>(h.begin(), h.end()) == std::set<uint32_t>{1, 2, 4});
    CHECK(sub.coset_index({3}) == 1);
    CHECK(sub.subgroup_size() == 3);

    SubgroupSpec all = subgroup(f, 1);
    CHECK(all.subgroup_size() == 6);
    for (uint32_t x = 1; x < 7; ++x) CHECK(all.coset_index({x}) == 0);

    CHECK_THROWS_AS(subgroup(f, 4), std::invalid_argument);
}

TEST_CASE("H equals the m-th power image, q <= 343") {
    for (auto [p, r] : prime_powers(343)) {
        FiniteField f = make_field(p, r);
        const uint32_t q = f.q();
        for (uint32_t m : divisors(q - 1)) {
            SubgroupSpec sub = subgroup(f, m);
            std::set<uint32_t> powers;
            for (uint32_t x = 1; x < q; ++x) powers.insert(f.pow({x}, m).v);
            auto h = sub.elements();
            CHECK(std::set<uint32_t>(h.begin(), h.end()) == powers);
            CHECK(sub.subgroup_size() == (q - 1) / m);
            for (uint32_t j = 1; j < m; ++j)
                CHECK(sub.coset(j).size() == (q - 1) / m);
        }
    }
}
