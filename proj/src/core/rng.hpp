#pragma once

#include <cstdint>

namespace dirac {

// Counter-based random numbers (Philox4x32-10, Salmon et al., SC'11).
//
// Every variate is a pure function of (master_seed, stream_index, draw
// position), so ensembles can be generated in any order and across any number
// of threads while remaining bit-identical. One simulation stream is assigned
// per trajectory index; bootstrap resampling uses streams keyed by its own
// seed.

struct PhiloxBlock {
  std::uint32_t w[4];
};

/// One Philox4x32-10 block; key = master seed, counter = (block, stream).
PhiloxBlock philox4x32(std::uint64_t key, std::uint64_t stream, std::uint64_t block);

/// SplitMix64 finalizer; used to derive decorrelated child seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

/// Sequential view of one (seed, stream) pair. Draw kinds advance the same
/// block counter; a stream is meant to be consumed by a single owner.
class NormalStream {
 public:
  NormalStream(std::uint64_t master_seed, std::uint64_t stream_index)
      : seed_(master_seed), stream_(stream_index) {}

  /// Standard normal variate (Box-Muller; pairs are cached).
  double next();

  /// Uniform in [0, 1).
  double next_uniform();

  /// Full-width uniform integer.
  std::uint64_t next_u64();

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  double cached_ = 0.0;
  bool have_cached_ = false;
};

}  // namespace dirac
