#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace mocorr {

/// Philox4x32-10 block function (Salmon et al., "Parallel random numbers:
/// as easy as 1, 2, 3"). Maps a 128-bit counter and a 64-bit key to 128
/// pseudo-random bits.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key);

/// Sequential view onto a contiguous range of Philox counters.
///
/// Counter layout: words 0-1 hold the block index, words 2-3 the stream id.
/// Each block yields two 64-bit outputs.
class CounterEngine {
 public:
  using result_type = std::uint64_t;

  CounterEngine(std::uint64_t seed, std::uint64_t stream_id,
                std::uint64_t first_block);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()();

  /// Uniform on the open interval (0, 1) with 53-bit resolution.
  double uniform();
  /// Exp(rate) by inversion.
  double exponential(double rate);
  /// Standard normal (Box-Muller, cosine branch only).
  double normal();

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_id_;
  std::uint64_t block_;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;
};

/// Reproducible, splittable random stream identified by (seed, stream_id).
///
/// A stream is partitioned into slots; slot i always produces the same
/// draws regardless of which thread consumes it, which is what makes
/// chunked Monte Carlo loops independent of the worker count.
struct RngStream {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;

  /// Blocks reserved per slot (each block = two 64-bit draws).
  static constexpr std::uint64_t kBlocksPerSlot = 8;

  CounterEngine slot(std::uint64_t index) const {
    return CounterEngine(seed, stream_id, index * kBlocksPerSlot);
  }

  /// Child stream with a derived id; distinct tags give disjoint counter
  /// ranges.
  RngStream split(std::uint64_t tag) const;

  friend bool operator==(const RngStream&, const RngStream&) = default;
};

/// Default seed used by the CLI and the acceptance suite.
inline constexpr std::uint64_t kDefaultSeed = 20240917;

}  // namespace mocorr
