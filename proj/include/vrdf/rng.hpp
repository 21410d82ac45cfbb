#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>

namespace vrdf {

/// splitmix64 step; used for seeding and for deriving per-trial streams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// xoshiro256++ with splitmix64 seeding.  Fully specified here so output is
/// identical across platforms and standard libraries; Gaussian draws use an
/// explicit Box-Muller transform for the same reason.
class Rng {
public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : s_) word = splitmix64(sm);
  }

  /// Stream for one trial: reseed from (seed, stream) through splitmix64 so
  /// trials are independent of scheduling and of each other.
  static Rng for_stream(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t sm = seed;
    std::uint64_t a = splitmix64(sm);
    sm = stream ^ 0xd1b54a32d192ed03ull;
    std::uint64_t b = splitmix64(sm);
    return Rng(a ^ (b * 0x9e3779b97f4a7c15ull));
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

  /// Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n); n > 0.  Simple rejection-free modulo is fine
  /// for the moderate n used here (bias < n / 2^64).
  std::int64_t below(std::int64_t n) {
    return static_cast<std::int64_t>(next_u64() % static_cast<std::uint64_t>(n));
  }

  /// Standard normal via Box-Muller; the second value of each pair is cached.
  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    double u2 = uniform01();
    double mag = std::sqrt(-2.0 * std::log(u1));
    double ang = 6.283185307179586476925286766559 * u2;
    cached_ = mag * std::sin(ang);
    have_cached_ = true;
    return mag * std::cos(ang);
  }

  /// Standard complex normal: real and imaginary parts N(0, 1/2).
  std::complex<double> complex_normal() {
    double re = normal(), im = normal();
    return {re * 0.70710678118654752440, im * 0.70710678118654752440};
  }

  /// Uniform on {+1, -1}.
  double sign() { return (next_u64() & 1) ? 1.0 : -1.0; }

  /// Human-readable generator identity recorded in experiment output.
  static const char* name() { return "xoshiro256++ seeded via splitmix64, Box-Muller normals"; }

private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::array<std::uint64_t, 4> s_{};
  double cached_ = 0.0;
  bool have_cached_ = false;
};

}  // namespace vrdf
