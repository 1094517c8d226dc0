#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <random>

namespace turnarcs {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). The output
// block is a pure function of (key, counter), which is what makes per-wave
// streams reproducible regardless of scheduling.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter generate(Counter counter, Key key) noexcept;
};

// A random stream keyed by (seed, stream id). Streams with distinct ids are
// statistically independent; a stream is never shared between threads.
//
// Satisfies UniformRandomBitGenerator, so it plugs into <random>
// distributions, but the helpers below are the ones the library relies on
// for bit-reproducible draws.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  RandomStream(std::uint64_t seed, std::uint64_t stream_id) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept;

  // Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform_open() noexcept;
  double normal();
  // Rademacher sign: -1 or +1 with probability 1/2 each.
  int sign() noexcept;
  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

 private:
  void refill() noexcept;

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace turnarcs
