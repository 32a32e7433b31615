#include <doctest.h>

#include <cmath>
#include <set>

#include "reset_search/rng.hpp"

using namespace rsearch::rng;

TEST_CASE("philox4x64-10 reference vectors")
{
    // Reference blocks from an independent Philox4x64-10 implementation.
    Counter const a = philox4x64({1, 0, 0, 0}, {0, 0});
    CHECK(a[0] == 0x02f4ba6408e4d89bULL);
    CHECK(a[1] == 0x3dd62b0b9ca8c5b2ULL);
    Counter const b = philox4x64({2, 0, 0, 0}, {0, 0});
    CHECK(b == Counter{0x809bf322883987c3ULL, 0x471128b9e807f7ddULL, 0xf250ba0dbec065b7ULL,
                       0xfc6ed66767a457bcULL});
    Counter const c = philox4x64({0, 0, 0, 0}, {~0ULL, ~0ULL});
    CHECK(c == Counter{0x44b7493d1acfc229ULL, 0x6636af8e997921ddULL, 0x3f73e132b5b3780eULL,
                       0x605644dde03b01b1ULL});
}

TEST_CASE("stream layout")
{
    Stream s(11, 3, 5);
    Counter const first = philox4x64({5, 0, 0, 0}, {11, 3});
    Counter const second = philox4x64({5, 1, 0, 0}, {11, 3});
    for (int i = 0; i < 4; ++i)
        CHECK(s.next_u64() == first[i]);
    for (int i = 0; i < 4; ++i)
        CHECK(s.next_u64() == second[i]);
}

TEST_CASE("streams are reproducible and distinct")
{
    Stream a(1, 0, 0), b(1, 0, 0), c(1, 0, 1), d(2, 0, 0), e(1, 1, 0);
    std::set<std::uint64_t> firsts;
    for (int i = 0; i < 100; ++i)
    {
        auto const x = a.next_u64();
        CHECK(x == b.next_u64());
        firsts.insert(x);
    }
    CHECK(c.next_u64() != Stream(1, 0, 0).next_u64());
    CHECK(d.next_u64() != Stream(1, 0, 0).next_u64());
    CHECK(e.next_u64() != Stream(1, 0, 0).next_u64());
    CHECK(firsts.size() == 100);
}

TEST_CASE("uniform, normal and exponential moments")
{
    Stream s(42, 9, 0);
    int const n = 400000;
    double su = 0, su2 = 0, sn = 0, sn2 = 0, sn4 = 0, se = 0;
    double umin = 1, umax = 0;
    for (int i = 0; i < n; ++i)
    {
        double const u = s.uniform();
        umin = std::min(umin, u);
        umax = std::max(umax, u);
        su += u;
        su2 += u * u;
        double const z = s.normal();
        sn += z;
        sn2 += z * z;
        sn4 += z * z * z * z;
        se += s.exponential(2.5);
    }
    CHECK(umin > 0);
    CHECK(umax < 1);
    // 5-sigma bands.
    CHECK(std::fabs(su / n - 0.5) < 5 * std::sqrt(1.0 / 12 / n));
    CHECK(std::fabs(su2 / n - 1.0 / 3) < 5 * std::sqrt(4.0 / 45 / n));
    CHECK(std::fabs(sn / n) < 5 / std::sqrt(double(n)));
    CHECK(std::fabs(sn2 / n - 1) < 5 * std::sqrt(2.0 / n));
    CHECK(std::fabs(sn4 / n - 3) < 5 * std::sqrt(96.0 / n));
    CHECK(std::fabs(se / n - 0.4) < 5 * 0.4 / std::sqrt(double(n)));
}

TEST_CASE("uniform never returns the endpoints")
{
    Stream s(0, 0, 0);
    for (int i = 0; i < 100000; ++i)
    {
        double const u = s.uniform();
        REQUIRE(u > 0);
        REQUIRE(u < 1);
    }
}
