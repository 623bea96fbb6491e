// rng.hpp - counter-based random streams for reproducible Monte Carlo.
//
// Every random quantity in the simulator is drawn from a RandomStream that is
// addressed by (master seed, path of labels). Streams are pure functions of
// their address, so results are independent of thread count and evaluation
// order: partitioning trials across threads cannot change any drawn value.
//
// The core generator is Philox4x32-10 (Salmon et al., counter-based); the
// implementation below reproduces the Random123 known-answer vectors.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string_view>

namespace fhlink {

namespace detail {

// splitmix64 finalizer; good avalanche, used to mix path labels.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

constexpr std::uint64_t combine(std::uint64_t h, std::uint64_t v) {
  return mix64(h ^ (mix64(v) + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2)));
}

// FNV-1a over bytes; constexpr so tag constants can be precomputed.
constexpr std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ull;
  }
  return h;
}

struct Philox4x32 {
  // Round and key-schedule constants from the reference implementation.
  static constexpr std::uint32_t kW32A = 0x9E3779B9u;
  static constexpr std::uint32_t kW32B = 0xBB67AE85u;
  static constexpr std::uint32_t kM4x32A = 0xD2511F53u;
  static constexpr std::uint32_t kM4x32B = 0xCD9E8D57u;

  static inline void mul_hi_lo(std::uint32_t a, std::uint32_t b,
                               std::uint32_t* hi, std::uint32_t* lo) {
    std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    *hi = static_cast<std::uint32_t>(p >> 32);
    *lo = static_cast<std::uint32_t>(p);
  }

  static inline void round_once(std::uint32_t c[4], const std::uint32_t k[2]) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mul_hi_lo(kM4x32A, c[0], &hi0, &lo0);
    mul_hi_lo(kM4x32B, c[2], &hi1, &lo1);
    std::uint32_t r0 = hi1 ^ c[1] ^ k[0];
    std::uint32_t r1 = lo1;
    std::uint32_t r2 = hi0 ^ c[3] ^ k[1];
    std::uint32_t r3 = lo0;
    c[0] = r0; c[1] = r1; c[2] = r2; c[3] = r3;
  }

  // 10 rounds with the key raised between rounds.
  static inline void block(std::uint64_t key, std::uint64_t ctr_lo,
                           std::uint64_t ctr_hi, std::uint32_t out[4]) {
    std::uint32_t c[4] = {
        static_cast<std::uint32_t>(ctr_lo), static_cast<std::uint32_t>(ctr_lo >> 32),
        static_cast<std::uint32_t>(ctr_hi), static_cast<std::uint32_t>(ctr_hi >> 32)};
    std::uint32_t k[2] = {static_cast<std::uint32_t>(key),
                          static_cast<std::uint32_t>(key >> 32)};
    for (int i = 0; i < 9; ++i) {
      round_once(c, k);
      k[0] += kW32A;
      k[1] += kW32B;
    }
    round_once(c, k);
    out[0] = c[0]; out[1] = c[1]; out[2] = c[2]; out[3] = c[3];
  }
};

}  // namespace detail

// Hierarchical deterministic stream. child() derives an independent substream;
// draw methods walk a 128-bit counter under a path-derived key. Copying a
// stream copies its position.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed)
      : path_(detail::combine(0x8E1FAD4075D7C4E1ull, seed)) {}

  RandomStream child(std::uint64_t label) const {
    return RandomStream(detail::combine(path_, label), 0);
  }
  RandomStream child(std::string_view label) const {
    return child(detail::fnv1a(label));
  }

  std::uint64_t next_u64() {
    if (have_ == 0) refill();
    --have_;
    std::uint64_t v = buf_[have_];
    return v;
  }

  // Uniform double in [0, 1), 53-bit resolution.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Unbiased integer in [0, n); rejection sampling, no modulo bias.
  std::uint64_t uniform_below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("uniform_below: n must be positive");
    std::uint64_t rem = (std::numeric_limits<std::uint64_t>::max() % n + 1) % n;
    std::uint64_t bound = std::numeric_limits<std::uint64_t>::max() - rem;
    for (;;) {
      std::uint64_t x = next_u64();
      if (rem == 0 || x <= bound) return x % n;
    }
  }

  int bit() { return static_cast<int>(next_u64() & 1u); }

  std::uint64_t path() const { return path_; }

 private:
  RandomStream(std::uint64_t path, int) : path_(path) {}

  void refill() {
    std::uint32_t out[4];
    detail::Philox4x32::block(path_, block_index_,
                              detail::mix64(path_ ^ 0xD6E8FEB86659FD93ull), out);
    buf_[0] = (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
    buf_[1] = (static_cast<std::uint64_t>(out[3]) << 32) | out[2];
    have_ = 2;
    ++block_index_;
  }

  std::uint64_t path_;
  std::uint64_t block_index_ = 0;
  std::uint64_t buf_[2] = {0, 0};
  int have_ = 0;
};

using ComplexAmplitude = std::complex<double>;

// Circularly-symmetric complex Gaussian CN(0, variance): real and imaginary
// parts are independent N(0, variance/2). variance == 0 returns exactly 0.
inline ComplexAmplitude sample_circular_gaussian(RandomStream& stream,
                                                 double variance) {
  if (variance < 0.0)
    throw std::invalid_argument("sample_circular_gaussian: negative variance");
  if (variance == 0.0) return {0.0, 0.0};
  // Box-Muller; u1 in (0,1] so the log is finite.
  double u1 = (static_cast<double>(stream.next_u64() >> 11) + 1.0) * 0x1.0p-53;
  double u2 = static_cast<double>(stream.next_u64() >> 11) * 0x1.0p-53;
  double r = std::sqrt(-std::log(u1) * variance);  // includes the /2 pair split
  double a = 6.283185307179586476925286766559 * u2;
  return {r * std::cos(a), r * std::sin(a)};
}

}  // namespace fhlink
