// modem.hpp - symbol-level transmit/receive chains for the three schemes.
//
// Per-symbol model on the active band (flat fading, one complex sample per
// Bob antenna and observed tone):
//   on-off keying      y_j = sqrt(E)*h_j*x + relay terms + jam + n_j, x in {0,1}
//   phase keying       same with x in {-1,+1}, coherent combining at Bob
//   frequency keying   two observed tones; transmitted tone carries the signal
// Detection: energy threshold (OOK), sign of the combined real part (BPSK),
// larger per-tone energy (FSK, ties decode as 0).
#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fhlink/adversary.hpp"
#include "fhlink/channel.hpp"
#include "fhlink/frequency_plan.hpp"
#include "fhlink/hopping.hpp"
#include "fhlink/rng.hpp"

namespace fhlink {

namespace tag {
inline constexpr std::uint64_t bob_noise = detail::fnv1a("noise_B");
}

enum class ModulationScheme { ook, bpsk, bfsk, ebfsk };

struct LinkConfig {
  ModulationScheme scheme = ModulationScheme::ook;
  int n_bands = 1024;
  int n_rx = 2;
  double sigma2_bob = 1.0;
  double sigma2_eve = 0.01;
  int symbols_per_hop = 1;

  // tone geometry; beta = delta/5 keeps every tone's 2*beta neighbourhood a
  // single tone (the same-carrier partner)
  double delta = 1.0;
  double beta = 0.2;
  double guard = 0.5;

  // pilot framing for threshold calibration: frames of `pilots_per_frame`
  // known symbols in front of `data_per_frame` payload symbols
  int pilots_per_frame = 128;
  int data_per_frame = 1024;
  int calibration_frames = 160;

  void validate() const {
    if (n_bands < 1) throw std::invalid_argument("link config: n_bands must be >= 1");
    if (n_rx < 1) throw std::invalid_argument("link config: n_rx must be >= 1");
    if (sigma2_bob < 0.0)
      throw std::invalid_argument("link config: sigma2_bob must be >= 0");
    if (sigma2_eve < 0.0)
      throw std::invalid_argument("link config: sigma2_eve must be >= 0");
    if (symbols_per_hop < 1)
      throw std::invalid_argument("link config: symbols_per_hop must be >= 1");
    if (pilots_per_frame < 1 || data_per_frame < 1 || calibration_frames < 1)
      throw std::invalid_argument("link config: pilot framing must be positive");
    build_frequency_plan(n_bands, delta, beta, guard);  // validates geometry
  }

  FrequencyPlan plan() const {
    return build_frequency_plan(n_bands, delta, beta, guard);
  }

  bool frequency_keyed() const {
    return scheme == ModulationScheme::bfsk || scheme == ModulationScheme::ebfsk;
  }

  int pilot_symbols() const { return pilots_per_frame * calibration_frames; }
};

// Bob's samples for one symbol. Flat schemes fill only `bit1_tone`; frequency
// keying fills both tones (indexed by the bit value they would signal).
struct ReceivedSymbol {
  std::vector<ComplexAmplitude> bit1_tone;
  std::vector<ComplexAmplitude> bit0_tone;
};

inline double ook_encode(int bit) {
  if (bit != 0 && bit != 1) throw std::invalid_argument("ook_encode: bit must be 0/1");
  return bit ? 1.0 : 0.0;
}

inline double bpsk_encode(int bit) {
  if (bit != 0 && bit != 1) throw std::invalid_argument("bpsk_encode: bit must be 0/1");
  return bit ? 1.0 : -1.0;
}

// Tone selection: bit 1 rides the first tone of the pair, bit 0 the second.
inline int bfsk_encode(int bit, const std::pair<int, int>& tone_pair) {
  if (bit != 0 && bit != 1) throw std::invalid_argument("bfsk_encode: bit must be 0/1");
  return bit ? tone_pair.first : tone_pair.second;
}

inline double total_energy(const std::vector<ComplexAmplitude>& samples) {
  double e = 0.0;
  for (const auto& y : samples) e += std::norm(y);
  return e;
}

namespace detail {
inline ComplexAmplitude bob_noise_draw(const RandomStream& symbol_stream,
                                       double sigma2, int tone_key, int rx) {
  RandomStream s = symbol_stream.child(tag::bob_noise)
                       .child(static_cast<std::uint64_t>(tone_key))
                       .child(static_cast<std::uint64_t>(rx));
  return sample_circular_gaussian(s, sigma2);
}
}  // namespace detail

// One on-off-keyed (or phase-keyed, via x = +/-1) symbol on the active band.
// x is the encoded symbol value; e_alice the ON-symbol energy.
inline ReceivedSymbol ook_receive(const RandomStream& symbol_stream,
                                  const ChannelSet& ch, const LinkConfig& link,
                                  const AttackConfig& atk, int active_band,
                                  double x, double e_alice) {
  ReceivedSymbol rs;
  rs.bit1_tone.resize(link.n_rx);
  ToneContribution relay = ToneContribution::zeros(link.n_rx);
  if (atk.kind == AttackKind::convolution)
    relay = ca_contribution(symbol_stream, ch, atk, active_band, x, e_alice,
                            link.sigma2_eve);
  else if (atk.kind == AttackKind::convolution_bfsk)
    throw std::invalid_argument("ook_receive: convolution_bfsk targets FSK tones");
  std::vector<ComplexAmplitude> jam(link.n_rx, ComplexAmplitude{0.0, 0.0});
  if (atk.kind == AttackKind::narrowband_jamming)
    jam = nj_contribution(symbol_stream, link.n_bands, atk.theta, e_alice,
                          active_band, link.n_rx);
  else if (atk.kind == AttackKind::wideband_jamming)
    jam = wj_contribution(symbol_stream, link.n_bands, atk.theta, e_alice,
                          active_band, link.n_rx);
  const double amp = std::sqrt(e_alice);
  for (int j = 0; j < link.n_rx; ++j) {
    rs.bit1_tone[j] = amp * ch.alice_bob(active_band, j) * x + relay.signal[j] +
                      relay.noise[j] + jam[j] +
                      detail::bob_noise_draw(symbol_stream, link.sigma2_bob,
                                             /*tone_key=*/0, j);
  }
  return rs;
}

// Energy detector: decide 1 when the summed per-antenna energy strictly
// exceeds the threshold; ties go to 0.
inline int ook_detect(const ReceivedSymbol& rs, double threshold) {
  if (threshold < 0.0)
    throw std::invalid_argument("ook_detect: threshold must be >= 0");
  return total_energy(rs.bit1_tone) > threshold ? 1 : 0;
}

// Attack-ignorant maximum-ratio combining with known direct-path gains only:
// decide by the sign of Re(sum_j conj(h_j) y_j); zero decodes as 1.
inline int bpsk_detect(const ReceivedSymbol& rs, const ChannelSet& ch,
                       int active_band) {
  ComplexAmplitude acc{0.0, 0.0};
  for (int j = 0; j < static_cast<int>(rs.bit1_tone.size()); ++j)
    acc += std::conj(ch.alice_bob(active_band, j)) * rs.bit1_tone[j];
  return acc.real() >= 0.0 ? 1 : 0;
}

// One frequency-keyed symbol. The pair supplies the bit-1 and bit-0 tones
// (same carrier for traditional keying, keyed random tones otherwise); the
// transmitted tone is pair[bit]. Channels are per band, so tones sharing a
// carrier share fading and tones on different carriers fade independently.
inline ReceivedSymbol bfsk_receive(const RandomStream& symbol_stream,
                                   const ChannelSet& ch, const LinkConfig& link,
                                   const AttackConfig& atk,
                                   const FrequencyPlan& plan,
                                   const std::pair<int, int>& tone_pair, int bit,
                                   double e_alice) {
  if (tone_pair.first == tone_pair.second)
    throw std::invalid_argument("bfsk_receive: tones must be distinct");
  const int tx_tone = bfsk_encode(bit, tone_pair);
  const double amp = std::sqrt(e_alice);
  ReceivedSymbol rs;
  rs.bit1_tone.resize(link.n_rx);
  rs.bit0_tone.resize(link.n_rx);
  const int tones[2] = {tone_pair.second, tone_pair.first};  // index by bit value
  for (int b = 0; b < 2; ++b) {
    const int tone = tones[b];
    const int band = plan.tone_carrier(tone);
    ToneContribution relay = ToneContribution::zeros(link.n_rx);
    if (atk.kind == AttackKind::convolution_bfsk)
      relay = ca_bfsk_contribution(symbol_stream, ch, atk, plan, tx_tone, tone,
                                   e_alice, link.sigma2_eve);
    else if (atk.kind == AttackKind::convolution)
      throw std::invalid_argument("bfsk_receive: convolution targets flat schemes");
    std::vector<ComplexAmplitude> jam(link.n_rx, ComplexAmplitude{0.0, 0.0});
    if (atk.kind == AttackKind::narrowband_jamming)
      jam = nj_contribution(symbol_stream, link.n_bands, atk.theta, e_alice, band,
                            link.n_rx, tone);
    else if (atk.kind == AttackKind::wideband_jamming)
      jam = wj_contribution(symbol_stream, link.n_bands, atk.theta, e_alice, tone,
                            link.n_rx);
    auto& dst = (b == 1) ? rs.bit1_tone : rs.bit0_tone;
    for (int j = 0; j < link.n_rx; ++j) {
      ComplexAmplitude y = relay.signal[j] + relay.noise[j] + jam[j] +
                           detail::bob_noise_draw(symbol_stream, link.sigma2_bob,
                                                  tone, j);
      if (tone == tx_tone) y += amp * ch.alice_bob(band, j);
      dst[j] = y;
    }
  }
  return rs;
}

// Larger-energy rule; an exact tie decodes as 0.
inline int bfsk_detect(const ReceivedSymbol& rs) {
  return total_energy(rs.bit1_tone) > total_energy(rs.bit0_tone) ? 1 : 0;
}

}  // namespace fhlink
