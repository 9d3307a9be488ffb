#ifndef NPRSIM_RNG_HPP
#define NPRSIM_RNG_HPP

#include <cstdint>

namespace nprsim {

// All randomness in the library flows through this counter-derived generator.
// A generator is addressed by (master seed, stream, index); the mapping is a
// pure function, so replicates can be produced in any order, on any number of
// worker threads, and still yield identical draws.

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Mixes an extra word into a seed; used to derive per-model / per-replicate
/// sub-seeds from an experiment master seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t word) {
  std::uint64_t s = seed ^ (0xd1342543de82ef95ULL * (word + 0x632be59bd9b4e019ULL));
  return splitmix64(s);
}

/// xoshiro256++ with splitmix-derived state.
class Rng {
 public:
  Rng(std::uint64_t master, std::uint64_t stream, std::uint64_t index) {
    std::uint64_t st = master;
    (void)splitmix64(st);
    st ^= 0x9e3779b97f4a7c15ULL * (stream + 0x8cb92ba72f3d8dd7ULL);
    (void)splitmix64(st);
    st ^= 0xd1342543de82ef95ULL * (index + 0x2545f4914f6cdd1dULL);
    for (auto& w : s_) w = splitmix64(st);
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform on [0,1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Standard normal (Marsaglia polar, one spare cached).
  double normal();

  /// Exponential with the given rate.
  double exponential(double rate);

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t s_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Stream tags; keeping them centralized avoids accidental stream collisions.
namespace rng_stream {
inline constexpr std::uint64_t kSpectralGauss = 0x11;
inline constexpr std::uint64_t kJumps = 0x22;
inline constexpr std::uint64_t kPathBrownian = 0x33;
inline constexpr std::uint64_t kGeneric = 0x44;
}  // namespace rng_stream

}  // namespace nprsim

#endif
