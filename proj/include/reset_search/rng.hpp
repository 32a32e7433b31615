#pragma once

#include <array>
#include <cstdint>

namespace rsearch::rng {

using Counter = std::array<std::uint64_t, 4>;
using Key = std::array<std::uint64_t, 2>;

/// Philox4x64 with 10 rounds (Salmon et al., SC'11).
Counter philox4x64(Counter counter, Key key);

/// Independent random stream addressed by (seed, stream id).
///
/// Draw i of the stream is word i % 4 of philox4x64({id, i / 4, 0, 0},
/// {seed, tag}), so any two streams with different (seed, tag, id) never
/// share a block.
class Stream
{
  public:
    Stream(std::uint64_t seed, std::uint64_t tag, std::uint64_t id);

    std::uint64_t next_u64();

    //! Uniform on the open interval (0, 1).
    double uniform();
    //! Standard normal by the Box–Muller transform.
    double normal();
    //! Exponential with the given rate.
    double exponential(double rate);

  private:
    Key key_;
    Counter counter_;
    Counter block_{};
    int used_ = 4;
    bool has_spare_ = false;
    double spare_ = 0;
};

}  // namespace rsearch::rng
