#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "subsum/dist.hpp"
#include "subsum/field.hpp"
#include "subsum/kernels.hpp"

#include <random>

using namespace subsum;

namespace {

std::vector<uint64_t> random_lanes(size_t n, uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::vector<uint64_t> v(n);
    for (auto& x : v) x = gen();
    return v;
}

}  // namespace

TEST_CASE("every available implementation matches the scalar reference") {
    for (auto impl : {kernels::Impl::scalar, kernels::Impl::avx2, kernels::Impl::neon}) {
        if (!kernels::available(impl)) continue;
        CAPTURE(kernels::impl_name(impl));
        REQUIRE(kernels::select(impl));
        for (size_t n : {size_t{0}, size_t{1}, size_t{3}, size_t{4}, size_t{17}, size_t{1024},
                         size_t{4099}}) {
            auto dst = random_lanes(n, 7 * n + 1);
            auto src = random_lanes(n, 13 * n + 5);
            auto expect = dst;
            kernels::acc_u64_scalar(expect.data(), src.data(), n);
            kernels::acc_u64(dst.data(), src.data(), n);
            CHECK(dst == expect);
        }
    }
    kernels::select(kernels::Impl::scalar);
}

TEST_CASE("packed convolution equals direct bigint convolution") {
    for (auto [p, r] : {std::pair{13u, 1u}, {3u, 2u}, {2u, 4u}}) {
        FiniteField f = make_field(p, r);
        const uint32_t q = f.q();
        for (uint32_t m : {1u, 2u}) {
            if ((q - 1) % m) continue;
            SubgroupSpec sub = subgroup(f, m);
            PackedDist d = PackedDist::unit(q);
            std::vector<Bigint> ref(q, 0);
            ref[0] = 1;
            for (int step = 0; step < 5; ++step) {
                auto support = sub.coset(step % m);
                d = d.convolved(f, support);
                std::vector<Bigint> next(q, 0);
                for (uint32_t h : support)
                    for (uint32_t v = 0; v < q; ++v) next[f.add({v}, {h}).v] += ref[v];
                ref = std::move(next);
                CHECK(d.to_bigints() == ref);
            }
        }
    }
}

TEST_CASE("packed convolution is identical across kernel implementations") {
    FiniteField f = make_field(101, 1);
    SubgroupSpec sub = subgroup(f, 2);
    auto run = [&] {
        PackedDist d = PackedDist::unit(f.q());
        for (int step = 0; step < 8; ++step) d = d.convolved(f, sub.coset(step % 2));
        return d.to_bigints();
    };
    REQUIRE(kernels::select(kernels::Impl::scalar));
    auto scalar = run();
    for (auto impl : {kernels::Impl::avx2, kernels::Impl::neon}) {
        if (!kernels::available(impl)) continue;
        REQUIRE(kernels::select(impl));
        CHECK(run() == scalar);
    }
    kernels::select(kernels::Impl::scalar);
    // the totals grow exactly as |H|^steps
    Bigint expect = 1;
    for (int i = 0; i < 8; ++i) expect *= sub.subgroup_size();
    Bigint total = 0;
    for (const auto& v : scalar) total += v;
    CHECK(total == expect);
}
