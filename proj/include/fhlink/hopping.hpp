// hopping.hpp - keyed hop sequence and keyed tone-pair draws.
//
// Both sequences are PRFs of (secret key, purpose, slot): any party holding
// the key can reproduce them, an observer cannot predict them. Purposes
// domain-separate the carrier-hop sequence from the tone-pair sequence so the
// same secret can drive both.
#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "fhlink/frequency_plan.hpp"
#include "fhlink/rng.hpp"

namespace fhlink {

enum class HopPurpose : std::uint64_t {
  carrier_hop = detail::fnv1a("carrier-hop"),
  tone_pair = detail::fnv1a("tone-pair"),
};

struct HopKey {
  std::vector<std::uint8_t> secret;
  HopPurpose purpose = HopPurpose::carrier_hop;

  std::uint64_t hash() const {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (std::uint8_t b : secret) {
      h ^= b;
      h *= 0x100000001B3ull;
    }
    return detail::combine(h, static_cast<std::uint64_t>(purpose));
  }

  static HopKey from_string(std::string_view s,
                            HopPurpose p = HopPurpose::carrier_hop) {
    HopKey k;
    k.secret.assign(s.begin(), s.end());
    k.purpose = p;
    return k;
  }
};

namespace detail {
inline RandomStream slot_stream(const HopKey& key, std::uint64_t slot) {
  return RandomStream(key.hash()).child(slot);
}
}  // namespace detail

// Carrier index in [0, n_carriers) for the given hop slot; unbiased
// (rejection-sampled) and uniform across slots.
inline int next_hop(const HopKey& key, std::uint64_t slot, int n_carriers) {
  if (n_carriers < 1)
    throw std::invalid_argument("next_hop: need at least one carrier");
  auto s = detail::slot_stream(key, slot);
  return static_cast<int>(s.uniform_below(static_cast<std::uint64_t>(n_carriers)));
}

// Ordered pair (bit-1 tone, bit-0 tone), distinct, uniform over all
// 2N*(2N-1) ordered pairs. Pairs are redrawn independently every slot.
inline std::pair<int, int> draw_tone_pair(const HopKey& key, std::uint64_t slot,
                                          const FrequencyPlan& plan) {
  const int m = plan.tone_count();
  if (m < 2)
    throw std::invalid_argument("draw_tone_pair: need at least two tones");
  auto s = detail::slot_stream(key, slot);
  int t1 = static_cast<int>(s.uniform_below(static_cast<std::uint64_t>(m)));
  int t0 = static_cast<int>(s.uniform_below(static_cast<std::uint64_t>(m - 1)));
  if (t0 >= t1) ++t0;  // skip t1, keeping the remaining m-1 tones uniform
  return {t1, t0};
}

}  // namespace fhlink
