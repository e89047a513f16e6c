#pragma once

// Seedable, platform-stable random streams.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. Uniform and Gaussian variates are derived here rather than through
// <random> distributions, whose algorithms are implementation-defined.
//
// Stream-split rule: the substream for (seed, index) is seeded with
//   splitmix64(splitmix64(seed) ^ splitmix64(index + 0x9E3779B97F4A7C15)).
// Sample k of a sweep always draws from substream (seed, k), so results do
// not depend on how samples are distributed over workers.

#include <complex>
#include <cstdint>
#include <random>

namespace renyimono {

std::uint64_t splitmix64(std::uint64_t x) noexcept;
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream_index) noexcept;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t seed, std::uint64_t stream_index) : engine_(derive_seed(seed, stream_index)) {}

  std::uint64_t next_u64() { return engine_(); }
  // Uniform on (0, 1]; 53 random mantissa bits.
  double uniform_open0();
  // Uniform on [0, 1).
  double uniform();
  // Standard normal via Box-Muller (both outputs used as real/imag parts).
  std::complex<double> complex_gaussian();
  double gaussian() { return complex_gaussian().real(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace renyimono
