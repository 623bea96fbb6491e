// adversary.hpp - relay/jammer attack models and timing feasibility.
//
// The relay attack: a full-duplex adversary intercepts the live symbol,
// multiplies it by a fresh random unit-variance scalar, and forwards it inside
// the same symbol period, so the victim's receiver sees the product of three
// independent Rayleigh-like gains. Energy bookkeeping per symbol: the relay
// spends theta times the transmitter's symbol energy; fraction alpha goes to
// the intercepted tone and, for the FSK variant, (1-alpha)/2 to each of the
// two tones 2*beta away.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "fhlink/channel.hpp"
#include "fhlink/frequency_plan.hpp"
#include "fhlink/rng.hpp"

namespace fhlink {

namespace tag {
inline constexpr std::uint64_t relay_scalar = detail::fnv1a("w_k");
inline constexpr std::uint64_t side_scalar = detail::fnv1a("u_k");
inline constexpr std::uint64_t eve_noise = detail::fnv1a("noise_E");
inline constexpr std::uint64_t jam = detail::fnv1a("jam");
inline constexpr std::uint64_t jam_band = detail::fnv1a("jam_band");
}  // namespace tag

enum class AttackKind {
  none,
  narrowband_jamming,   // full budget on one uniformly chosen band per symbol
  wideband_jamming,     // budget split evenly over all bands
  convolution,          // multiply-and-forward on the intercepted tone
  convolution_bfsk,     // + side energy on the two tones 2*beta away
};

enum class EveSpatialMode { single, randomized, fixed };

struct AttackConfig {
  AttackKind kind = AttackKind::none;
  double alpha = 1.0;  // fraction of relay energy on the intercepted tone
  double theta = 9.0;  // relay-to-transmitter energy ratio, > 0
  int n_eve = 1;
  EveSpatialMode spatial = EveSpatialMode::single;
  bool attacks_pilots = true;  // whether pilot symbols see the same attack

  void validate() const {
    if (!(alpha >= 0.0 && alpha <= 1.0))
      throw std::invalid_argument("attack config: alpha must lie in [0, 1]");
    if (!(theta > 0.0))
      throw std::invalid_argument("attack config: theta must be positive");
    if (n_eve < 1)
      throw std::invalid_argument("attack config: n_eve must be at least 1");
    if (spatial == EveSpatialMode::single && n_eve != 1)
      throw std::invalid_argument(
          "attack config: single spatial mode requires n_eve == 1");
  }

  bool is_relay() const {
    return kind == AttackKind::convolution || kind == AttackKind::convolution_bfsk;
  }
};

// Propagation geometry for one symbol. The relayed copy must arrive after the
// direct copy but before the receive window closes (both strictly).
struct TimingGeometry {
  double tau_ab = 0.0;         // direct path delay
  double tau_ae = 0.0;         // transmitter -> relay
  double tau_eb = 0.0;         // relay -> receiver
  double processing = 0.0;     // relay turnaround time
  double symbol_period = 0.0;  // T
};

inline bool check_timing_feasibility(const TimingGeometry& g) {
  if (g.tau_ab < 0.0 || g.tau_ae < 0.0 || g.tau_eb < 0.0 || g.processing < 0.0)
    throw std::invalid_argument("timing: delays must be non-negative");
  if (!(g.symbol_period > 0.0))
    throw std::invalid_argument("timing: symbol period must be positive");
  const double relay_arrival = g.tau_ae + g.processing + g.tau_eb;
  return g.tau_ab < relay_arrival && relay_arrival < g.tau_ab + g.symbol_period;
}

// Eve's additive terms at Bob on one tone, split into the part that scales
// with the transmitted symbol and the forwarded receiver-noise part.
struct ToneContribution {
  std::vector<ComplexAmplitude> signal;  // per Bob antenna
  std::vector<ComplexAmplitude> noise;   // per Bob antenna

  static ToneContribution zeros(int n_rx) {
    ToneContribution c;
    c.signal.assign(n_rx, {0.0, 0.0});
    c.noise.assign(n_rx, {0.0, 0.0});
    return c;
  }
};

namespace detail {

// Relay scalar for Eve antenna l: fresh per symbol; "fixed" mode shares one
// scalar across antennas, "randomized" draws one per antenna.
inline ComplexAmplitude relay_scalar_for(const RandomStream& symbol_stream,
                                         std::uint64_t role_tag,
                                         EveSpatialMode mode, int eve_antenna) {
  RandomStream s = (mode == EveSpatialMode::randomized)
                       ? symbol_stream.child(role_tag).child(
                             static_cast<std::uint64_t>(eve_antenna))
                       : symbol_stream.child(role_tag);
  return sample_circular_gaussian(s, 1.0);
}

inline ComplexAmplitude eve_noise_for(const RandomStream& symbol_stream,
                                      double sigma2_eve, int eve_antenna) {
  RandomStream s =
      symbol_stream.child(tag::eve_noise).child(static_cast<std::uint64_t>(eve_antenna));
  return sample_circular_gaussian(s, sigma2_eve);
}

// Shared core of the relay terms: on the tone in band `rx_band`, with energy
// `tone_energy` = (share of theta*E_Alice) and per-symbol scalars drawn under
// `scalar_tag`. The transmitter->Eve intercept happens on `intercept_band`.
inline ToneContribution relay_terms(const RandomStream& symbol_stream,
                                    const ChannelSet& ch, const AttackConfig& cfg,
                                    int intercept_band, int rx_band,
                                    std::uint64_t scalar_tag, double tone_energy,
                                    double e_alice, double sigma2_eve, double x_k) {
  const int n_rx = ch.n_rx();
  ToneContribution out = ToneContribution::zeros(n_rx);
  if (tone_energy == 0.0) return out;
  const double sig_amp = std::sqrt(tone_energy / cfg.n_eve);
  const double noise_amp = std::sqrt(tone_energy / (e_alice * cfg.n_eve));
  for (int l = 0; l < cfg.n_eve; ++l) {
    const ComplexAmplitude scal =
        relay_scalar_for(symbol_stream, scalar_tag, cfg.spatial, l);
    const ComplexAmplitude h_ae = ch.alice_eve(intercept_band, l);
    const ComplexAmplitude n_e = eve_noise_for(symbol_stream, sigma2_eve, l);
    for (int j = 0; j < n_rx; ++j) {
      const ComplexAmplitude h_eb = ch.eve_bob(rx_band, l, j);
      out.signal[j] += sig_amp * h_ae * scal * h_eb * x_k;
      out.noise[j] += noise_amp * h_eb * scal * n_e;
    }
  }
  return out;
}

}  // namespace detail

// Relay terms on the intercepted band for flat single-tone schemes: signal
// amplitude sqrt(alpha*theta*E_Alice) per the energy split, forwarded noise
// sqrt(alpha*theta)*h_EB*w*n_E. x_k is the transmitted symbol value (0/1 for
// on-off keying, +/-1 for phase keying).
inline ToneContribution ca_contribution(const RandomStream& symbol_stream,
                                        const ChannelSet& ch,
                                        const AttackConfig& cfg, int active_band,
                                        double x_k, double e_alice,
                                        double sigma2_eve) {
  cfg.validate();
  if (!(e_alice > 0.0))
    throw std::invalid_argument("ca_contribution: e_alice must be positive");
  return detail::relay_terms(symbol_stream, ch, cfg, active_band, active_band,
                             tag::relay_scalar, cfg.alpha * cfg.theta * e_alice,
                             e_alice, sigma2_eve, x_k);
}

// FSK variant: what Eve lands on `observed_tone` when the intercepted symbol
// sits on `main_tone`. The main tone gets fraction alpha of theta*E_Alice with
// scalar w; each tone exactly 2*beta away gets (1-alpha)/2 with a shared
// scalar u. Tones elsewhere get nothing.
inline ToneContribution ca_bfsk_contribution(const RandomStream& symbol_stream,
                                             const ChannelSet& ch,
                                             const AttackConfig& cfg,
                                             const FrequencyPlan& plan,
                                             int main_tone, int observed_tone,
                                             double e_alice, double sigma2_eve) {
  cfg.validate();
  if (!(e_alice > 0.0))
    throw std::invalid_argument("ca_bfsk_contribution: e_alice must be positive");
  const int intercept_band = plan.tone_carrier(main_tone);
  const int rx_band = plan.tone_carrier(observed_tone);
  if (observed_tone == main_tone) {
    return detail::relay_terms(symbol_stream, ch, cfg, intercept_band, rx_band,
                               tag::relay_scalar,
                               cfg.alpha * cfg.theta * e_alice, e_alice,
                               sigma2_eve, 1.0);
  }
  if (plan.tones_side_adjacent(main_tone, observed_tone)) {
    return detail::relay_terms(symbol_stream, ch, cfg, intercept_band, rx_band,
                               tag::side_scalar,
                               (1.0 - cfg.alpha) / 2.0 * cfg.theta * e_alice,
                               e_alice, sigma2_eve, 1.0);
  }
  return ToneContribution::zeros(ch.n_rx());
}

// Narrowband jamming: one uniformly chosen band per symbol receives CN(0,
// theta*E_Alice) per Bob antenna; returns the additive samples for the band
// under observation (all zero when the jammed band differs). The jammed-band
// choice is made once per symbol no matter how many tones are queried;
// observed_tone keys the noise so parallel tones in one band stay independent.
// theta == 0 disables the jam.
inline std::vector<ComplexAmplitude> nj_contribution(
    const RandomStream& symbol_stream, int n_bands, double theta, double e_alice,
    int observed_band, int n_rx, int observed_tone = -1) {
  if (n_bands < 1)
    throw std::invalid_argument("nj_contribution: n_bands must be positive");
  if (theta < 0.0) throw std::invalid_argument("nj_contribution: negative theta");
  std::vector<ComplexAmplitude> out(n_rx, ComplexAmplitude{0.0, 0.0});
  if (theta == 0.0) return out;
  RandomStream pick = symbol_stream.child(tag::jam_band);
  const int jammed =
      static_cast<int>(pick.uniform_below(static_cast<std::uint64_t>(n_bands)));
  if (jammed != observed_band) return out;
  const std::uint64_t key =
      observed_tone < 0 ? static_cast<std::uint64_t>(observed_band)
                        : static_cast<std::uint64_t>(observed_tone);
  for (int j = 0; j < n_rx; ++j) {
    RandomStream s =
        symbol_stream.child(tag::jam).child(key).child(static_cast<std::uint64_t>(j));
    out[j] = sample_circular_gaussian(s, theta * e_alice);
  }
  return out;
}

// Wideband jamming: every band (and hence every tone) receives independent
// CN(0, theta*E_Alice/n_bands) per Bob antenna. Keyed by the observed tone so
// distinct tones see independent draws.
inline std::vector<ComplexAmplitude> wj_contribution(
    const RandomStream& symbol_stream, int n_bands, double theta, double e_alice,
    int observed_tone, int n_rx) {
  if (n_bands < 1)
    throw std::invalid_argument("wj_contribution: n_bands must be positive");
  if (theta < 0.0) throw std::invalid_argument("wj_contribution: negative theta");
  std::vector<ComplexAmplitude> out(n_rx, ComplexAmplitude{0.0, 0.0});
  if (theta == 0.0) return out;
  const double var = theta * e_alice / n_bands;
  for (int j = 0; j < n_rx; ++j) {
    RandomStream s = symbol_stream.child(tag::jam)
                         .child(static_cast<std::uint64_t>(observed_tone))
                         .child(static_cast<std::uint64_t>(j));
    out[j] = sample_circular_gaussian(s, var);
  }
  return out;
}

}  // namespace fhlink
