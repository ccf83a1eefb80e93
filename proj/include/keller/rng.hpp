#pragma once

#include <array>
#include <complex>
#include <cstdint>

namespace keller::rng {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Pure
/// function of (counter, key); no hidden state.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key);

/// Independent stream keyed by (seed, stream). Draw k of stream s is a pure
/// function of (seed, s, k), so any partition of streams over workers
/// produces identical values.
class CounterStream {
 public:
  CounterStream(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform point in the closed disk of the given radius centred at 0.
  std::complex<double> uniformDisk(double radius);
  /// Small integer in [lo, hi].
  int uniformInt(int lo, int hi);

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;
};

}  // namespace keller::rng
