#include <random>

#include "doctest.h"
#include "ibds/geometry.hpp"
#include "ibds/simd/kernels.hpp"

using namespace ibds;
using namespace ibds::simd;

namespace {

struct Restore {
    const KernelTable& saved = active_kernels();
    ~Restore() { select_kernels(saved.isa); }
};

std::vector<const KernelTable*> all_tables()
{
    std::vector<const KernelTable*> t{&scalar_kernels()};
    if (auto* a = avx2_kernels())
        t.push_back(a);
    return t;
}

} // namespace

TEST_CASE("dispatch")
{
    Restore restore;
    CHECK(scalar_kernels().isa == Isa::scalar);
    CHECK(select_kernels(Isa::scalar));
    CHECK(active_kernels().isa == Isa::scalar);
    if (avx2_kernels()) {
        CHECK(select_kernels(Isa::avx2));
        CHECK(active_kernels().name == "avx2");
    } else {
        CHECK_FALSE(select_kernels(Isa::avx2));
        CHECK(active_kernels().isa == Isa::scalar);
    }
    MESSAGE("kernel variants available: " << all_tables().size());
}

TEST_CASE("within_radius variants agree with the scalar reference")
{
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::size_t len = 0; len < 40; ++len) {
        std::vector<double> xs(len), ys(len);
        for (std::size_t i = 0; i < len; ++i) {
            // Every third point on a dyadic grid so exact boundary ties occur.
            if (i % 3 == 0) {
                xs[i] = 0.25 * static_cast<double>(rng() % 5);
                ys[i] = 0.25 * static_cast<double>(rng() % 5);
            } else {
                xs[i] = u(rng);
                ys[i] = u(rng);
            }
        }
        const Point2 p{0.5, 0.5};
        const double r2 = 0.0625;
        std::vector<std::uint8_t> ref(len), got(len);
        scalar_kernels().within_radius(xs, ys, p, r2, ref);
        for (std::size_t i = 0; i < len; ++i)
            REQUIRE(ref[i] == (distance_sq({xs[i], ys[i]}, p) <= r2 ? 1 : 0));
        for (const auto* t : all_tables()) {
            std::fill(got.begin(), got.end(), 7);
            t->within_radius(xs, ys, p, r2, got);
            CHECK_MESSAGE(got == ref, t->name << " len=" << len);
        }
    }
}

TEST_CASE("lune_witness variants agree with the scalar reference")
{
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t len = rng() % 23;
        std::vector<double> xs(len), ys(len);
        for (std::size_t i = 0; i < len; ++i) {
            xs[i] = u(rng);
            ys[i] = u(rng);
        }
        const Point2 a{u(rng), u(rng)}, b{u(rng), u(rng)};
        const double lim = distance_sq(a, b);
        const bool ref = scalar_kernels().lune_witness(xs, ys, a, b, lim);
        for (const auto* t : all_tables())
            REQUIRE(t->lune_witness(xs, ys, a, b, lim) == ref);
    }
    // Equal distances are not witnesses: strict comparison in every variant.
    const std::vector<double> xs{0.5, 0.5, 0.5, 0.5, 0.5}, ys{0.5, 0.5, 0.5, 0.5, 0.5};
    for (const auto* t : all_tables())
        CHECK_FALSE(t->lune_witness(xs, ys, {0.0, 0.5}, {1.0, 0.5}, 0.25));
}

TEST_CASE("topology pipeline is ISA independent")
{
    Restore restore;
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        select_kernels(Isa::scalar);
        const auto ref = make_network(300, seed);
        const auto ref_streams = build_stream_graph(ref, 2);
        for (const auto* t : all_tables()) {
            select_kernels(t->isa);
            CHECK(make_network(300, seed) == ref);
            CHECK(build_stream_graph(ref, 2).graph == ref_streams.graph);
        }
    }
}
