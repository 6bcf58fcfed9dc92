#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "subsum/counting.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <thread>

using namespace subsum;

namespace {

SubgroupSpec sub_of(const FiniteField& f, uint32_t m) { return subgroup(f, m); }

}  // namespace

TEST_CASE("diagonal counts, frozen examples at q = 7") {
    FiniteField f = make_field(7, 1);
    DiagonalSpec spec;
    spec.coeffs = {f.one()};
    spec.exps = {2};
    spec.target = {2};
    CHECK(diagonal_count(f, spec) == 2);  // x in {3,4}

    spec.coeffs = {f.one(), f.one()};
    spec.exps = {2, 2};
    spec.target = {3};
    CHECK(diagonal_count(f, spec) == 8);
    spec.target = {0};
    CHECK(diagonal_count(f, spec) == 0);  // -1 is a non-residue mod 7

    Budget tiny;
    tiny.enum_ops = 3;
    CHECK_THROWS_AS(diagonal_count(f, spec, tiny), budget_error);
    DiagonalSpec bad = spec;
    bad.coeffs[0] = f.zero();
    CHECK_THROWS_AS(diagonal_count(f, bad), std::invalid_argument);

    // variables over the whole field: x = 0 becomes the only solution of x^2 = 0
    DiagonalSpec with_zero;
    with_zero.coeffs = {f.one()};
    with_zero.exps = {2};
    with_zero.target = {0};
    with_zero.zero_excluded = false;
    CHECK(diagonal_count(f, with_zero) == 1);
    with_zero.zero_excluded = true;
    CHECK(diagonal_count(f, with_zero) == 0);
}

TEST_CASE("diagonal count with unit exponents matches the J*(1,...,1) closed form") {
    for (uint32_t q : {5u, 7u, 9u, 11u, 13u}) {
        uint32_t p = q;
        for (uint32_t d = 2; d * d <= q; ++d)
            if (q % d == 0) { p = d; break; }
        uint32_t r = 0;
        for (uint64_t t = 1; t < q; t *= p) ++r;
        FiniteField f = make_field(p, r);
        for (uint32_t n = 1; n <= 3; ++n) {
            DiagonalSpec spec;
            spec.coeffs.assign(n, f.one());
            spec.exps.assign(n, 1);
            spec.target = f.one();
            Bigint pw = 1;
            for (uint32_t i = 0; i < n; ++i) pw *= (q - 1);
            Bigint expect = exact_div(pw - ((n % 2) ? Bigint(-1) : Bigint(1)), Bigint(q),
                                      "J* closed form");
            CHECK(diagonal_count(f, spec) == expect);
        }
    }
}

TEST_CASE("weight profiles") {
    FiniteField f7 = make_field(7, 1);
    SubgroupSpec sub7 = sub_of(f7, 2);
    WeightProfile pr = profile_of({{1, 1, 0}}, sub7);
    CHECK(pr.free_vars == 0);
    CHECK(pr.coset_vars == std::vector<uint32_t>{2, 0});  // 1 and 2 are squares mod 7

    pr = profile_of({{0, 0, 1}}, sub7);
    CHECK(pr.free_vars == 0);
    CHECK(pr.coset_vars == std::vector<uint32_t>{0, 1});  // 3 is a non-residue

    FiniteField f9 = make_field(3, 2);
    SubgroupSpec sub9 = sub_of(f9, 2);
    pr = profile_of({{0, 0, 1}}, sub9);
    CHECK(pr.free_vars == 1);  // weight 3 = 0 mod p
    CHECK(pr.coset_vars == std::vector<uint32_t>{0, 0});
}

TEST_CASE("profile counts, frozen examples at q = 7, m = 2") {
    FiniteField f = make_field(7, 1);
    SubgroupSpec sub = sub_of(f, 2);
    SieveContext ctx(sub);

    // single H-variable hits b exactly once when b is in H
    WeightProfile one_h{0, {1, 0}};
    CHECK(ctx.profile_count(one_h, {1}, Domain::subgroup) == 1);
    CHECK(ctx.profile_count(one_h, {3}, Domain::subgroup) == 0);

    // a free variable contributes |H| at the empty sum
    WeightProfile free_only{1, {0, 0}};
    CHECK(ctx.profile_count(free_only, {0}, Domain::subgroup) == 3);
    CHECK(ctx.profile_count(free_only, {2}, Domain::subgroup) == 0);

    // ordered pairs over H summing to 3: (1,2) and (2,1)
    WeightProfile two_h{0, {2, 0}};
    CHECK(ctx.profile_count(two_h, {3}, Domain::subgroup) == 2);

    // full_star scales by m^{free + bound}
    for (uint32_t b = 0; b < 7; ++b) {
        Bigint s = ctx.profile_count(two_h, {b}, Domain::subgroup);
        CHECK(ctx.profile_count(two_h, {b}, Domain::full_star) == s * 4);
    }
    WeightProfile mixed{1, {1, 1}};
    for (uint32_t b = 0; b < 7; ++b) {
        Bigint s = ctx.profile_count(mixed, {b}, Domain::subgroup);
        CHECK(ctx.profile_count(mixed, {b}, Domain::full_star) == s * 8);
    }
}

TEST_CASE("sieve counts, frozen examples at q = 7, m = 2") {
    FiniteField f = make_field(7, 1);
    SubgroupSpec sub = sub_of(f, 2);
    SieveContext ctx(sub);

    CHECK(ctx.count(2, {3}, Target::MH) == 1);       // {1,2}
    CHECK(ctx.count(2, {3}, Target::NmStar) == 8);   // all 8 ordered solutions distinct
    CHECK(ctx.count(3, {0}, Target::MH) == 1);       // 1+2+4 = 0 mod 7
    for (uint32_t b = 1; b < 7; ++b) CHECK(ctx.count(3, {b}, Target::MH) == 0);
    CHECK(ctx.count(2, {3}, Target::NH) == 2);

    CHECK_THROWS_AS(ctx.count(4, {0}, Target::MH), std::invalid_argument);   // k > |H|
    CHECK_THROWS_AS(ctx.count(7, {0}, Target::NmStar), std::invalid_argument);
    CHECK_THROWS_AS(ctx.count(2, {9}, Target::MH), std::invalid_argument);   // b out of range
}

TEST_CASE("brute force, frozen examples") {
    FiniteField f = make_field(7, 1);
    SubgroupSpec sub = sub_of(f, 2);
    CHECK(brute_force_count(sub, 2, {5}, Target::MH).value == 1);  // {1,4}
    CHECK(brute_force_count(sub, 2, {1}, Target::MH).value == 0);
    SubgroupSpec all = sub_of(f, 1);
    CHECK(brute_force_count(all, 0, {0}, Target::MH).value == 1);  // empty subset
    CHECK(brute_force_count(all, 0, {3}, Target::MH).value == 0);

    Budget tiny;
    tiny.enum_ops = 2;
    CHECK_THROWS_AS(brute_force_table(sub, 2, Target::MH, tiny), budget_error);
}

TEST_CASE("oracle equivalence on a small grid, both paths") {
    for (uint32_t q : {5u, 7u, 8u, 9u, 13u}) {
        uint32_t p = q;
        for (uint32_t d = 2; d * d <= q; ++d)
            if (q % d == 0) { p = d; break; }
        uint32_t r = 0;
        for (uint64_t t = 1; t < q; t *= p) ++r;
        FiniteField f = make_field(p, r);
        for (uint32_t m : divisors(q - 1)) {
            SubgroupSpec sub = sub_of(f, m);
            SieveContext ctx(sub);
            for (uint32_t k = 0; k <= std::min(sub.subgroup_size(), 4u); ++k) {
                auto brute = brute_force_table(sub, k, Target::MH);
                auto prof = ctx.table(k, Target::MH, SievePath::profile);
                auto rec = ctx.table(k, Target::MH, SievePath::recurrence);
                REQUIRE(prof == brute);
                REQUIRE(rec == brute);
            }
            for (uint32_t k = 0; k <= std::min(q - 1, 4u); ++k) {
                auto brute = brute_force_table(sub, k, Target::NmStar);
                auto prof = ctx.table(k, Target::NmStar, SievePath::profile);
                auto rec = ctx.table(k, Target::NmStar, SievePath::recurrence);
                REQUIRE(prof == brute);
                REQUIRE(rec == brute);
            }
        }
    }
}

TEST_CASE("row sums and divisibility") {
    FiniteField f = make_field(13, 1);
    for (uint32_t m : {1u, 2u, 3u, 4u}) {
        SubgroupSpec sub = sub_of(f, m);
        SieveContext ctx(sub);
        for (uint32_t k = 0; k <= std::min(sub.subgroup_size(), 5u); ++k) {
            auto mh = ctx.table(k, Target::MH);
            auto nh = ctx.table(k, Target::NH);
            Bigint sum = 0;
            for (uint32_t b = 0; b < 13; ++b) {
                sum += mh[b];
                CHECK(nh[b] == factorial(k) * mh[b]);
            }
            CHECK(sum == binomial_uint(sub.subgroup_size(), k));
        }
    }
}

TEST_CASE("profile and recurrence paths agree at q = 121") {
    FiniteField f = make_field(11, 2);
    for (uint32_t m : {2u, 5u}) {
        SubgroupSpec sub = subgroup(f, m);
        SieveContext ctx(sub);
        for (uint32_t k : {3u, 8u, 12u}) {
            auto prof = ctx.table(k, Target::NmStar, SievePath::profile);
            auto rec = ctx.table(k, Target::NmStar, SievePath::recurrence);
            REQUIRE(prof == rec);
            if (k <= sub.subgroup_size()) {
                auto prof_h = ctx.table(k, Target::MH, SievePath::profile);
                auto rec_h = ctx.table(k, Target::MH, SievePath::recurrence);
                REQUIRE(prof_h == rec_h);
            }
        }
    }
}

TEST_CASE("automatic path switches to the recurrence for huge k") {
    // p(k) above the enumeration threshold: the whole N_m* range at q = 121
    FiniteField f = make_field(11, 2);
    SubgroupSpec sub = subgroup(f, 5);
    SieveContext ctx(sub);
    CHECK(partition_count(110) > sieve_profile_path_limit());
    auto t = ctx.table(110, Target::NmStar);  // would be infeasible by enumeration
    Bigint rowsum = 0;
    for (const auto& v : t) rowsum += v;
    CHECK(rowsum == falling_factorial_int(Bigint(120), 110));
}

TEST_CASE("full-range edge cases") {
    FiniteField f = make_field(7, 1);
    SubgroupSpec sub = subgroup(f, 6);  // H = {1}
    SieveContext ctx(sub);
    CHECK(ctx.count(1, {1}, Target::MH) == 1);
    CHECK(ctx.count(1, {2}, Target::MH) == 0);
    CHECK(ctx.count(1, {1}, Target::NmStar) == 6);  // all of F_7* maps to 1

    // k = q-1 forces the full set: N_m*(6, b) = 6! at b = sum of all x^m
    SubgroupSpec all = subgroup(f, 1);
    SieveContext ctx1(all);
    auto t = ctx1.table(6, Target::NmStar);
    FieldElement total = f.zero();
    for (uint32_t x = 1; x < 7; ++x) total = f.add(total, {x});
    for (uint32_t b = 0; b < 7; ++b)
        CHECK(t[b] == (b == total.v ? factorial(6) : Bigint(0)));
}

TEST_CASE("counts never go through floating point") {
    // 2^60-scale counts survive exactly: C(60, 30) on the m = 1 subgroup of F_61
    FiniteField f = make_field(61, 1);
    SubgroupSpec sub = sub_of(f, 1);
    SieveContext ctx(sub);
    auto t = ctx.table(30, Target::MH);
    Bigint sum = 0;
    for (auto& v : t) sum += v;
    CHECK(sum == binomial_uint(60, 30));
    CHECK(sum == Bigint("118264581564861424"));
}

TEST_CASE("permutation-level sieve equals the cycle-type form") {
    // sum over all tau in S_k of sign(tau) |X_tau|, decomposing each
    // permutation into cycles explicitly, must reproduce the grouped sum
    FiniteField f = make_field(7, 1);
    SubgroupSpec sub = sub_of(f, 1);
    SieveContext ctx(sub);
    const uint32_t k = 4;

    std::vector<uint32_t> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<Bigint> total(f.q(), 0);
    do {
        PartitionType type;
        type.c.assign(k, 0);
        std::vector<bool> seen(k, false);
        for (uint32_t s = 0; s < k; ++s) {
            if (seen[s]) continue;
            uint32_t len = 0, cur = s;
            while (!seen[cur]) {
                seen[cur] = true;
                cur = perm[cur];
                ++len;
            }
            type.c[len - 1]++;
        }
        WeightProfile prof = profile_of(type, sub);
        for (uint32_t b = 0; b < f.q(); ++b) {
            Bigint v = ctx.profile_count(prof, {b}, Domain::subgroup);
            total[b] += type.sign() * v;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(total == ctx.table(k, Target::NH));
}

TEST_CASE("table and single-b count agree") {
    FiniteField f = make_field(13, 1);
    SubgroupSpec sub = sub_of(f, 3);
    SieveContext ctx(sub);
    for (Target t : {Target::MH, Target::NH, Target::NmStar}) {
        const uint32_t kmax = (t == Target::NmStar) ? 6u : sub.subgroup_size();
        for (uint32_t k = 0; k <= kmax; ++k) {
            auto tab = ctx.table(k, t);
            for (uint32_t b = 0; b < 13; ++b) CHECK(ctx.count(k, {b}, t) == tab[b]);
        }
    }
}

TEST_CASE("concurrent counts on one shared context") {
    FiniteField f = make_field(11, 2);
    SubgroupSpec sub = sub_of(f, 3);
    SieveContext serial_ctx(sub);
    std::vector<Bigint> expect;
    for (uint32_t k : {2u, 5u, 7u, 9u})
        for (uint32_t b : {0u, 1u, 17u, 60u})
            expect.push_back(serial_ctx.count(k, {b}, Target::MH));

    SieveContext shared(sub);
    std::vector<Bigint> got(expect.size());
    std::vector<std::thread> pool;
    std::atomic<size_t> next{0};
    const std::vector<std::pair<uint32_t, uint32_t>> jobs = {
        {2, 0},  {2, 1},  {2, 17},  {2, 60}, {5, 0}, {5, 1}, {5, 17}, {5, 60},
        {7, 0},  {7, 1},  {7, 17},  {7, 60}, {9, 0}, {9, 1}, {9, 17}, {9, 60},
    };
    for (int w = 0; w < 4; ++w)
        pool.emplace_back([&] {
            while (true) {
                const size_t i = next.fetch_add(1);
                if (i >= jobs.size()) break;
                got[i] = shared.count(jobs[i].first, {jobs[i].second}, Target::MH);
            }
        });
    for (auto& t : pool) t.join();
    CHECK(got == expect);
}
