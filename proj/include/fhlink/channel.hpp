// channel.hpp - per-hop Rayleigh channel realizations for all three links.
//
// Channels are i.i.d. CN(0,1) per (band, antenna pair) and constant for the
// whole hop slot. A ChannelSet does not materialize the N x antennas matrix;
// each coefficient is a pure function of (slot stream, link, band, antenna),
// so lookups are cheap, repeatable bit-for-bit, and only the touched bands
// ever get sampled.
#pragma once

#include <cstdint>
#include <stdexcept>

#include "fhlink/frequency_plan.hpp"
#include "fhlink/rng.hpp"

namespace fhlink {

namespace tag {
inline constexpr std::uint64_t channels = detail::fnv1a("channels");
inline constexpr std::uint64_t alice_bob = detail::fnv1a("h_AB");
inline constexpr std::uint64_t alice_eve = detail::fnv1a("h_AE");
inline constexpr std::uint64_t eve_bob = detail::fnv1a("h_EB");
}  // namespace tag

class ChannelSet {
 public:
  ChannelSet(RandomStream slot_stream, int n_bands, int n_rx, int n_eve)
      : root_(slot_stream), n_bands_(n_bands), n_rx_(n_rx), n_eve_(n_eve) {
    if (n_bands < 1 || n_rx < 1 || n_eve < 1)
      throw std::invalid_argument("ChannelSet: dimensions must be positive");
  }

  // Alice -> Bob on `band`, Bob antenna j.
  ComplexAmplitude alice_bob(int band, int rx) const {
    check(band, rx, 0);
    return draw(root_.child(tag::alice_bob).child(key(band, rx, 0)));
  }
  // Alice -> Eve on `band`, Eve antenna l.
  ComplexAmplitude alice_eve(int band, int eve) const {
    check(band, 0, eve);
    return draw(root_.child(tag::alice_eve).child(key(band, 0, eve)));
  }
  // Eve -> Bob on `band`, Eve antenna l to Bob antenna j.
  ComplexAmplitude eve_bob(int band, int eve, int rx) const {
    check(band, rx, eve);
    return draw(root_.child(tag::eve_bob).child(key(band, rx, eve)));
  }

  int n_bands() const { return n_bands_; }
  int n_rx() const { return n_rx_; }
  int n_eve() const { return n_eve_; }

 private:
  static ComplexAmplitude draw(RandomStream s) {
    return sample_circular_gaussian(s, 1.0);
  }
  std::uint64_t key(int band, int rx, int eve) const {
    return (static_cast<std::uint64_t>(band) << 24) |
           (static_cast<std::uint64_t>(eve) << 12) |
           static_cast<std::uint64_t>(rx);
  }
  void check(int band, int rx, int eve) const {
    if (band < 0 || band >= n_bands_)
      throw std::out_of_range("ChannelSet: band out of range");
    if (rx < 0 || rx >= n_rx_) throw std::out_of_range("ChannelSet: rx out of range");
    if (eve < 0 || eve >= n_eve_)
      throw std::out_of_range("ChannelSet: eve antenna out of range");
  }

  RandomStream root_;
  int n_bands_, n_rx_, n_eve_;
};

// Channel realizations for one hop slot. Same (stream path, slot) -> same set.
inline ChannelSet sample_channels(const RandomStream& stream,
                                  const FrequencyPlan& plan, int n_rx, int n_eve,
                                  std::uint64_t hop_slot) {
  return ChannelSet(stream.child(tag::channels).child(hop_slot), plan.n_carriers,
                    n_rx, n_eve);
}

}  // namespace fhlink
