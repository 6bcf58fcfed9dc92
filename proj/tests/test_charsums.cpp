#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "subsum/charsums.hpp"
#include "subsum/field.hpp"

#include <cmath>

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

TEST_CASE("zero conventions and pointwise values") {
    FiniteField f = make_field(7, 1);
    Character chi0 = character(f, 0);
    Character quad = character(f, 3);  // order 2
    CHECK(character_order(quad) == 2);
    CHECK(eval_char(chi0, {0}) == std::complex<double>(1.0, 0.0));
    CHECK(eval_char(quad, {0}) == std::complex<double>(0.0, 0.0));
    CHECK(eval_char(quad, {3}).real() == doctest::Approx(-1.0));  // 3 is a non-residue mod 7
    CHECK(eval_char(quad, {2}).real() == doctest::Approx(1.0));
}

TEST_CASE("multiplicativity and orthogonality, q <= 49") {
    for (auto [p, r] : prime_powers(49)) {
        FiniteField f = make_field(p, r);
        const uint32_t q = f.q();
        for (uint32_t j = 0; j < q - 1; ++j) {
            Character chi = character(f, j);
            std::complex<double> total{};
            for (uint32_t x = 1; x < q; ++x) total += eval_char(chi, {x});
            const double expect = (j == 0) ? q - 1.0 : 0.0;
            CHECK(std::abs(total - expect) < 1e-9 * q);
        }
        Character chi = character(f, q >= 3 ? 1u : 0u);
        for (uint32_t x = 1; x < q; ++x)
            for (uint32_t y = 1; y < q; ++y)
                CHECK(std::abs(eval_char(chi, f.mul({x}, {y})) -
                               eval_char(chi, {x}) * eval_char(chi, {y})) < 1e-12);
    }
}

TEST_CASE("gauss sums") {
    FiniteField f7 = make_field(7, 1);
    CHECK(std::abs(gauss_sum(f7, f7.one(), character(f7, 0))) < 1e-9);
    CHECK(std::abs(gauss_sum(f7, f7.zero(), character(f7, 0)) - 7.0) < 1e-9);
    for (uint32_t q : {7u, 9u, 25u, 27u, 49u}) {
        uint32_t p = q, r = 1;
        for (uint32_t d = 2; d * d <= q; ++d)
            if (q % d == 0) { p = d; break; }
        for (r = 0; std::pow((double)p, (double)r) < q; ++r) {}
        FiniteField f = make_field(p, r);
        for (uint32_t j = 1; j < f.q() - 1; ++j)
            CHECK(std::abs(gauss_sum(f, f.one(), character(f, j))) ==
                  doctest::Approx(std::sqrt((double)q)).epsilon(1e-9));
    }
}

TEST_CASE("jacobi sums, frozen small values") {
    FiniteField f = make_field(7, 1);
    std::vector<Character> triv = {character(f, 0), character(f, 0)};
    CHECK(jacobi(JacobiKind::J, triv).real() == doctest::Approx(7.0));
    CHECK(jacobi(JacobiKind::Jstar, triv).real() == doctest::Approx(5.0));
    std::vector<Character> quads = {character(f, 3), character(f, 3)};
    auto j0 = jacobi(JacobiKind::J0, quads);
    CHECK(j0.real() == doctest::Approx(-6.0));
    CHECK(std::abs(j0.imag()) < 1e-9);

    Budget tiny;
    tiny.sum_ops = 10;
    std::vector<Character> three = {character(f, 1), character(f, 2), character(f, 3)};
    CHECK_THROWS_AS(jacobi(JacobiKind::J, three, tiny), budget_error);
}

TEST_CASE("identity families by direct summation") {
    for (uint32_t q : {5u, 7u, 9u, 13u, 25u}) {
        uint32_t p = q;
        for (uint32_t d = 2; d * d <= q; ++d)
            if (q % d == 0) { p = d; break; }
        uint32_t r = 0;
        for (uint64_t t = 1; t < q; t *= p) ++r;
        FiniteField f = make_field(p, r);
        for (uint32_t n = 1; n <= 3; ++n)
            for (uint32_t d = 1; d <= 4; ++d) {
                IdentityReport rep = verify_charsum_identities(f, d, n);
                CAPTURE(q);
                CAPTURE(n);
                CAPTURE(d);
                CHECK(rep.pass);
                CHECK(rep.max_dev <= rep.tol);
            }
    }
}

TEST_CASE("identity families over the full character group, small q") {
    for (uint32_t q : {5u, 7u, 8u, 9u, 11u, 13u}) {
        uint32_t p = q;
        for (uint32_t d = 2; d * d <= q; ++d)
            if (q % d == 0) { p = d; break; }
        uint32_t r = 0;
        for (uint64_t t = 1; t < q; t *= p) ++r;
        FiniteField f = make_field(p, r);
        for (uint32_t n = 1; n <= 3; ++n) {
            IdentityReport rep = verify_charsum_identities(f, q - 1, n);
            CAPTURE(q);
            CAPTURE(n);
            CHECK(rep.pass);
        }
    }
}

TEST_CASE("point-count relation, q <= 121") {
    for (auto [p, r] : prime_powers(121)) {
        FiniteField f = make_field(p, r);
        CHECK(max_power_count_deviation(f) < 1e-9 * f.q());
    }
}

TEST_CASE("|g(chi)| = sqrt(q) sweep stays tight") {
    for (auto [p, r] : prime_powers(125)) {
        FiniteField f = make_field(p, r);
        CHECK(max_gauss_modulus_deviation(f) < 1e-9 * std::sqrt((double)f.q()));
    }
}
