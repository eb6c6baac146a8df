#pragma once

// Counter-based random streams. Each stream is addressed by (seed, stream id)
// and draws from consecutive Philox4x32-10 counter blocks, so the values of
// stream i never depend on how many other streams exist or who evaluates them.

#include <array>
#include <cstdint>

namespace symrmt {

/// Philox4x32 with 10 rounds (Salmon et al., SC'11).
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }
  std::uint64_t blocks_consumed() const { return block_; }

  std::uint32_t next_u32();

  /// Uniform on the open interval (0, 1) with 53 random bits.
  double uniform();

  /// Standard normal by inversion of the normal CDF at uniform().
  double gaussian();

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;
};

/// Inverse of the standard normal CDF.
double normal_quantile(double p);

}  // namespace symrmt
