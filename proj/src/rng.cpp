#include "reset_search/rng.hpp"

#include <cmath>
#include <numbers>

namespace rsearch::rng {
namespace {

constexpr std::uint64_t kM0 = 0xD2E7470EE14C6C93ull;
constexpr std::uint64_t kM1 = 0xCA5A826395121157ull;
constexpr std::uint64_t kW0 = 0x9E3779B97F4A7C15ull;
constexpr std::uint64_t kW1 = 0xBB67AE8584CAA73Bull;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi,
                    std::uint64_t& lo)
{
    unsigned __int128 const p = static_cast<unsigned __int128>(a) * b;
    hi = static_cast<std::uint64_t>(p >> 64);
    lo = static_cast<std::uint64_t>(p);
}

}  // namespace

Counter philox4x64(Counter c, Key k)
{
    for (int round = 0; round < 10; ++round)
    {
        if (round > 0)
        {
            k[0] += kW0;
            k[1] += kW1;
        }
        std::uint64_t hi0, lo0, hi1, lo1;
        mulhilo(kM0, c[0], hi0, lo0);
        mulhilo(kM1, c[2], hi1, lo1);
        c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    }
    return c;
}

Stream::Stream(std::uint64_t seed, std::uint64_t tag, std::uint64_t id)
    : key_{seed, tag}, counter_{id, 0, 0, 0}
{
}

std::uint64_t Stream::next_u64()
{
    if (used_ == 4)
    {
        block_ = philox4x64(counter_, key_);
        ++counter_[1];
        used_ = 0;
    }
    return block_[used_++];
}

double Stream::uniform()
{
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

double Stream::normal()
{
    if (has_spare_)
    {
        has_spare_ = false;
        return spare_;
    }
    double const radius = std::sqrt(-2.0 * std::log(uniform()));
    double const angle = 2.0 * std::numbers::pi * uniform();
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

double Stream::exponential(double rate)
{
    return -std::log(uniform()) / rate;
}

}  // namespace rsearch::rng
