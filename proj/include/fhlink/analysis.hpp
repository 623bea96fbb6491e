// analysis.hpp - experiment harness: BER curves, energy CDFs, crossover
// probabilities, mutual-information sweeps, and large-N_r concentration
// checks, all driven by deterministic per-trial streams.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fhlink/adversary.hpp"
#include "fhlink/channel.hpp"
#include "fhlink/hopping.hpp"
#include "fhlink/modem.hpp"
#include "fhlink/parallel.hpp"
#include "fhlink/rng.hpp"
#include "fhlink/special_functions.hpp"
#include "fhlink/threshold.hpp"

namespace fhlink {

namespace tag {
inline constexpr std::uint64_t trial = detail::fnv1a("trial");
inline constexpr std::uint64_t pilot = detail::fnv1a("pilot");
inline constexpr std::uint64_t data_bit = detail::fnv1a("data-bit");
inline constexpr std::uint64_t exp_ber = detail::fnv1a("ber");
inline constexpr std::uint64_t exp_energy_cdf = detail::fnv1a("energy-cdf");
inline constexpr std::uint64_t exp_product_cdf = detail::fnv1a("product-cdf");
inline constexpr std::uint64_t exp_lln = detail::fnv1a("lln");
inline constexpr std::uint64_t exp_surrogate = detail::fnv1a("surrogate-pcross");
inline constexpr std::uint64_t exp_full_pcross = detail::fnv1a("full-pcross");
inline constexpr std::uint64_t exp_mi = detail::fnv1a("mi-sweep");
}  // namespace tag

// ---------------------------------------------------------------------------
// Result plumbing

struct ResultRow {
  double x = 0.0;         // grid value: dB, energy, or alpha
  double estimate = 0.0;  // proportion / CDF value / MI
  double std_error = 0.0;
  std::uint64_t trials = 0;
};

struct ResultTable {
  std::string kind;
  std::uint64_t seed = 0;
  std::vector<ResultRow> rows;  // kept sorted by x

  void sort_rows() {
    std::stable_sort(rows.begin(), rows.end(),
                     [](const ResultRow& a, const ResultRow& b) { return a.x < b.x; });
  }
};

inline double proportion_std_error(double p, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("proportion_std_error: n must be > 0");
  return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

// Reduce samples to at most max_rows CDF points: row r is (r-th quantile x,
// fraction of samples <= x). Rows come out sorted by x.
inline ResultTable cdf_table_from_samples(std::string kind, std::uint64_t seed,
                                          std::vector<double> samples,
                                          std::size_t max_rows = 1000) {
  if (samples.empty())
    throw std::invalid_argument("cdf_table_from_samples: no samples");
  if (max_rows == 0)
    throw std::invalid_argument("cdf_table_from_samples: max_rows must be > 0");
  std::sort(samples.begin(), samples.end());
  const std::size_t n = samples.size();
  const std::size_t rows = std::min(max_rows, n);
  ResultTable t;
  t.kind = std::move(kind);
  t.seed = seed;
  t.rows.reserve(rows);
  for (std::size_t r = 1; r <= rows; ++r) {
    const std::size_t idx = r * n / rows;  // in [1, n]
    const double f = static_cast<double>(idx) / static_cast<double>(n);
    t.rows.push_back({samples[idx - 1], f, proportion_std_error(f, n), n});
  }
  return t;
}

// ---------------------------------------------------------------------------
// Experiment specification

enum class GridKind {
  ebn0_db,  // grid values are Eb/N0 in dB, converted per scheme convention
  energy,   // grid values are the transmit energy E directly
};

// Transmit energy for a target Eb/N0 in dB. Flat schemes (OOK, BPSK) use
// E = 2*sigma2_bob*10^(dB/10); frequency keying uses E = sigma2_bob*10^(dB/10).
// With equiprobable bits, OOK's average energy per bit is E/2, so this also
// realizes the equal-energy-per-bit comparison between OOK and FSK.
inline double energy_from_ebn0_db(ModulationScheme scheme, double sigma2_bob,
                                  double db) {
  const double snr = std::pow(10.0, db / 10.0);
  const double scale = (scheme == ModulationScheme::bfsk ||
                        scheme == ModulationScheme::ebfsk)
                           ? 1.0
                           : 2.0;
  return scale * sigma2_bob * snr;
}

inline void check_scheme_attack(ModulationScheme scheme, AttackKind kind) {
  const bool fsk = scheme == ModulationScheme::bfsk ||
                   scheme == ModulationScheme::ebfsk;
  if (kind == AttackKind::convolution && fsk)
    throw std::invalid_argument(
        "experiment: attack 'convolution' applies to flat schemes (ook, bpsk); "
        "use 'convolution_bfsk' for frequency keying");
  if (kind == AttackKind::convolution_bfsk && !fsk)
    throw std::invalid_argument(
        "experiment: attack 'convolution_bfsk' applies to frequency keying "
        "(bfsk, ebfsk)");
}

struct ExperimentSpec {
  LinkConfig link;
  AttackConfig attack;
  std::vector<double> grid;  // one BER point per entry
  GridKind grid_kind = GridKind::ebn0_db;
  std::uint64_t trials = 1000000;
  std::uint64_t seed = 1;
  int threads = 1;
  ThresholdMethod threshold_method = ThresholdMethod::empirical_pilots;
  double eta_percent = -1.0;  // energy-CDF experiments only; < 0 when unused

  void validate() const {
    link.validate();
    attack.validate();
    check_scheme_attack(link.scheme, attack.kind);
    if (grid.empty()) throw std::invalid_argument("experiment: grid is empty");
    if (grid_kind == GridKind::energy)
      for (double e : grid)
        if (!(e > 0.0))
          throw std::invalid_argument("experiment: energies must be positive");
    if (trials < 1) throw std::invalid_argument("experiment: trials must be >= 1");
    if (threads < 1) throw std::invalid_argument("experiment: threads must be >= 1");
    if (eta_percent >= 0.0 && eta_percent > 100.0)
      throw std::invalid_argument("experiment: eta_percent must lie in [0, 100]");
  }
};

inline HopKey make_hop_key(std::uint64_t seed, HopPurpose purpose) {
  HopKey k;
  k.purpose = purpose;
  k.secret.resize(8);
  for (int i = 0; i < 8; ++i)
    k.secret[i] = static_cast<std::uint8_t>(seed >> (8 * i));
  return k;
}

// ---------------------------------------------------------------------------
// Per-symbol simulation

namespace detail {

struct FlatSymbol {
  ReceivedSymbol rs;
  ChannelSet channels;
  int bit;
  int band;
};

// One flat-scheme (OOK or BPSK) symbol at hop slot `slot`, fully determined
// by `symbol_stream`. forced_bit >= 0 pins the transmitted bit (pilots).
inline FlatSymbol simulate_flat_symbol(const RandomStream& symbol_stream,
                                       const LinkConfig& link,
                                       const AttackConfig& atk,
                                       const FrequencyPlan& plan,
                                       const HopKey& hop_key, std::uint64_t slot,
                                       double e_alice, int forced_bit) {
  const int band = next_hop(hop_key, slot, plan.n_carriers);
  const int bit =
      forced_bit >= 0 ? forced_bit : symbol_stream.child(tag::data_bit).bit();
  ChannelSet ch = sample_channels(symbol_stream, plan, link.n_rx, atk.n_eve, 0);
  const double x = link.scheme == ModulationScheme::bpsk ? bpsk_encode(bit)
                                                         : ook_encode(bit);
  ReceivedSymbol rs = ook_receive(symbol_stream, ch, link, atk, band, x, e_alice);
  return FlatSymbol{std::move(rs), std::move(ch), bit, band};
}

struct FskSymbol {
  ReceivedSymbol rs;
  int bit;
  std::pair<int, int> tones;  // (bit-1 tone, bit-0 tone)
};

inline FskSymbol simulate_fsk_symbol(const RandomStream& symbol_stream,
                                     const LinkConfig& link,
                                     const AttackConfig& atk,
                                     const FrequencyPlan& plan,
                                     const HopKey& hop_key, const HopKey& tone_key,
                                     std::uint64_t slot, double e_alice,
                                     int forced_bit) {
  const int bit =
      forced_bit >= 0 ? forced_bit : symbol_stream.child(tag::data_bit).bit();
  std::pair<int, int> tones;
  if (link.scheme == ModulationScheme::bfsk) {
    const int c = next_hop(hop_key, slot, plan.n_carriers);
    tones = {2 * c + 1, 2 * c};  // bit 1 on the upper tone, bit 0 on the lower
  } else {
    tones = draw_tone_pair(tone_key, slot, plan);
  }
  ChannelSet ch = sample_channels(symbol_stream, plan, link.n_rx, atk.n_eve, 0);
  ReceivedSymbol rs =
      bfsk_receive(symbol_stream, ch, link, atk, plan, tones, bit, e_alice);
  return FskSymbol{std::move(rs), bit, tones};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Threshold calibration against the live link

// Measure labelled pilot energies under the configured attack (or a clean
// link when the adversary skips pilots). Pilot j transmits bit 1 when j is
// even, bit 0 when odd, so both classes fill evenly.
inline EnergySamples calibrate_from_pilots(const LinkConfig& link,
                                           const AttackConfig& atk,
                                           double e_alice,
                                           const RandomStream& point_root,
                                           const HopKey& hop_key, int threads) {
  const int n = link.pilot_symbols();
  if (n < 4)
    throw std::invalid_argument(
        "calibrate_from_pilots: need at least 2 pilot symbols per class");
  AttackConfig effective = atk;
  if (!atk.attacks_pilots) effective.kind = AttackKind::none;
  const FrequencyPlan plan = link.plan();
  std::vector<double> energies(static_cast<std::size_t>(n));
  fill_over_indices(static_cast<std::uint64_t>(n), threads,
                    [&](std::uint64_t j) {
                      RandomStream ps = point_root.child(tag::pilot).child(j);
                      const int bit = (j % 2 == 0) ? 1 : 0;
                      auto sym = detail::simulate_flat_symbol(
                          ps, link, effective, plan, hop_key, j, e_alice, bit);
                      energies[j] = total_energy(sym.rs.bit1_tone);
                    });
  EnergySamples out;
  out.attacked = effective.kind != AttackKind::none;
  out.on.reserve(static_cast<std::size_t>((n + 1) / 2));
  out.off.reserve(static_cast<std::size_t>(n / 2));
  for (int j = 0; j < n; ++j)
    ((j % 2 == 0) ? out.on : out.off).push_back(energies[static_cast<std::size_t>(j)]);
  return out;
}

inline ThresholdDesign design_threshold(const LinkConfig& link,
                                        const AttackConfig& atk, double e_alice,
                                        ThresholdMethod method,
                                        const RandomStream& point_root,
                                        const HopKey& hop_key, int threads) {
  switch (method) {
    case ThresholdMethod::empirical_pilots: {
      EnergySamples pilots =
          calibrate_from_pilots(link, atk, e_alice, point_root, hop_key, threads);
      return optimal_threshold_empirical(pilots);
    }
    case ThresholdMethod::analytic_model: {
      // Fold the relay into the gamma scales; jamming and no-attack links use
      // the clean scales (alpha = 0).
      const bool relay = atk.kind == AttackKind::convolution;
      const EnergyScales s =
          energy_scales(e_alice, relay ? atk.alpha : 0.0, relay ? atk.theta : 0.0,
                        link.sigma2_eve, link.sigma2_bob);
      ThresholdDesign d;
      d.threshold = approximate_threshold_analytic(link.n_rx, s.on, s.off);
      return d;
    }
    case ThresholdMethod::clean_analytic: {
      const EnergyScales s =
          energy_scales(e_alice, 0.0, 0.0, link.sigma2_eve, link.sigma2_bob);
      ThresholdDesign d;
      d.threshold = approximate_threshold_analytic(link.n_rx, s.on, s.off);
      return d;
    }
  }
  throw std::invalid_argument("design_threshold: unknown method");
}

// ---------------------------------------------------------------------------
// Bit-error-rate experiments

struct BerPoint {
  double x = 0.0;        // grid value (dB or energy)
  double e_alice = 0.0;  // transmit energy actually used
  double threshold = 0.0;  // OOK detector cut; 0 for other schemes
  double ber = 0.0;
  double std_error = 0.0;
  std::uint64_t errors = 0;
  std::uint64_t trials = 0;
};

inline BerPoint run_ber_point(const ExperimentSpec& spec, std::size_t point) {
  spec.validate();
  if (point >= spec.grid.size())
    throw std::out_of_range("run_ber_point: grid index out of range");
  const FrequencyPlan plan = spec.link.plan();
  const HopKey hop_key = make_hop_key(spec.seed, HopPurpose::carrier_hop);
  const HopKey tone_key = make_hop_key(spec.seed, HopPurpose::tone_pair);
  const RandomStream point_root =
      RandomStream(spec.seed).child(tag::exp_ber).child(point);

  BerPoint out;
  out.x = spec.grid[point];
  out.e_alice = spec.grid_kind == GridKind::ebn0_db
                    ? energy_from_ebn0_db(spec.link.scheme, spec.link.sigma2_bob,
                                          out.x)
                    : out.x;
  out.trials = spec.trials;
  if (spec.link.scheme == ModulationScheme::ook)
    out.threshold = design_threshold(spec.link, spec.attack, out.e_alice,
                                     spec.threshold_method, point_root, hop_key,
                                     spec.threads)
                        .threshold;

  const double threshold = out.threshold;
  out.errors = count_over_indices(
      spec.trials, spec.threads, [&](std::uint64_t i) -> std::uint64_t {
        RandomStream ts = point_root.child(tag::trial).child(i);
        if (spec.link.frequency_keyed()) {
          auto sym = detail::simulate_fsk_symbol(ts, spec.link, spec.attack, plan,
                                                 hop_key, tone_key, i,
                                                 out.e_alice, -1);
          return bfsk_detect(sym.rs) != sym.bit ? 1u : 0u;
        }
        auto sym = detail::simulate_flat_symbol(ts, spec.link, spec.attack, plan,
                                                hop_key, i, out.e_alice, -1);
        const int decided = spec.link.scheme == ModulationScheme::bpsk
                                ? bpsk_detect(sym.rs, sym.channels, sym.band)
                                : ook_detect(sym.rs, threshold);
        return decided != sym.bit ? 1u : 0u;
      });
  out.ber = static_cast<double>(out.errors) / static_cast<double>(out.trials);
  out.std_error = proportion_std_error(out.ber, out.trials);
  return out;
}

inline ResultTable run_ber(const ExperimentSpec& spec) {
  spec.validate();
  ResultTable t;
  t.kind = "ber";
  t.seed = spec.seed;
  t.rows.reserve(spec.grid.size());
  for (std::size_t p = 0; p < spec.grid.size(); ++p) {
    const BerPoint bp = run_ber_point(spec, p);
    t.rows.push_back({bp.x, bp.ber, bp.std_error, bp.trials});
  }
  t.sort_rows();
  return t;
}

// Error-floor predicate: the curve has stopped improving when the BER at
// hi_db is at least 80% of the BER at lo_db.
inline bool error_floor_detected(const ResultTable& ber, double lo_db = 20.0,
                                 double hi_db = 30.0) {
  const ResultRow* lo = nullptr;
  const ResultRow* hi = nullptr;
  for (const auto& r : ber.rows) {
    if (std::fabs(r.x - lo_db) < 1e-9) lo = &r;
    if (std::fabs(r.x - hi_db) < 1e-9) hi = &r;
  }
  if (lo == nullptr || hi == nullptr)
    throw std::invalid_argument(
        "error_floor_detected: table lacks the two requested grid points");
  return hi->estimate >= 0.8 * lo->estimate;
}

// Textbook closed-form BER of coherent BPSK with L-branch maximum-ratio
// combining over i.i.d. Rayleigh fading, as an independent oracle:
// mu = sqrt(g/(1+g)), BER = [ (1-mu)/2 ]^L * sum_{l<L} C(L-1+l, l) [ (1+mu)/2 ]^l.
inline double closed_form_mrc_bpsk_ber(double mean_branch_snr, int branches) {
  if (!(mean_branch_snr > 0.0))
    throw std::invalid_argument("closed_form_mrc_bpsk_ber: snr must be positive");
  if (branches < 1)
    throw std::invalid_argument("closed_form_mrc_bpsk_ber: branches must be >= 1");
  const double mu = std::sqrt(mean_branch_snr / (1.0 + mean_branch_snr));
  const double lo = 0.5 * (1.0 - mu);
  const double hi = 0.5 * (1.0 + mu);
  double sum = 0.0;
  double binom = 1.0;  // C(L-1+l, l), built up iteratively
  double hip = 1.0;
  for (int l = 0; l < branches; ++l) {
    if (l > 0) {
      binom = binom * (branches - 1 + l) / l;
      hip *= hi;
    }
    sum += binom * hip;
  }
  return std::pow(lo, branches) * sum;
}

// ---------------------------------------------------------------------------
// Received-energy CDFs (noiseless, relay active, total mean energy 1)

struct EnergyCdfResult {
  ResultTable table;
  double sample_mean = 0.0;
};

// Statistic per realization: (1/N_r) * sum_j |sqrt(E_a) h_j + relay_j|^2 where
// the relay contributes sqrt(E_c/N_e) * sum_l h_AE_l w_l h_EB_{l,j}; E_a =
// 1 - eta/100 and E_c = eta/100, so the sample mean is 1 for every split.
inline EnergyCdfResult cdf_received_energy(double eta_percent, int n_rx, int n_e,
                                           EveSpatialMode mode,
                                           std::uint64_t trials,
                                           std::uint64_t seed, int threads,
                                           std::size_t max_rows = 1000) {
  if (!(eta_percent >= 0.0 && eta_percent <= 100.0))
    throw std::invalid_argument("cdf_received_energy: eta_percent outside [0,100]");
  if (n_rx < 1) throw std::invalid_argument("cdf_received_energy: n_rx >= 1");
  if (n_e < 1) throw std::invalid_argument("cdf_received_energy: n_e >= 1");
  if (mode == EveSpatialMode::single && n_e != 1)
    throw std::invalid_argument(
        "cdf_received_energy: single spatial mode requires n_e == 1");
  if (trials < 1) throw std::invalid_argument("cdf_received_energy: trials >= 1");
  const double e_alice = 1.0 - eta_percent / 100.0;
  const double e_eve = eta_percent / 100.0;
  const double alice_amp = std::sqrt(e_alice);
  const double eve_amp = std::sqrt(e_eve / n_e);
  std::vector<double> samples(trials);
  RandomStream root = RandomStream(seed).child(tag::exp_energy_cdf);
  fill_over_indices(trials, threads, [&](std::uint64_t i) {
    RandomStream ts = root.child(tag::trial).child(i);
    ChannelSet ch(ts.child(tag::channels).child(0), 1, n_rx, n_e);
    std::vector<ComplexAmplitude> y(static_cast<std::size_t>(n_rx));
    for (int j = 0; j < n_rx; ++j) y[j] = alice_amp * ch.alice_bob(0, j);
    for (int l = 0; l < n_e; ++l) {
      const ComplexAmplitude front =
          eve_amp * ch.alice_eve(0, l) *
          detail::relay_scalar_for(ts, tag::relay_scalar, mode, l);
      for (int j = 0; j < n_rx; ++j) y[j] += front * ch.eve_bob(0, l, j);
    }
    double acc = 0.0;
    for (int j = 0; j < n_rx; ++j) acc += std::norm(y[j]);
    samples[i] = acc / n_rx;
  });
  double mean = 0.0;
  for (double s : samples) mean += s;
  mean /= static_cast<double>(trials);
  EnergyCdfResult out;
  out.sample_mean = mean;
  out.table =
      cdf_table_from_samples("energy-cdf", seed, std::move(samples), max_rows);
  return out;
}

// CDF of |sum_l (1/sqrt(N_e)) h_AE_l w_l h_EB_l|^2 -- the relay-path gain seen
// through N_e antennas with independent per-antenna scalars.
inline EnergyCdfResult multi_eve_product_cdf(int n_e, std::uint64_t trials,
                                             std::uint64_t seed, int threads,
                                             std::size_t max_rows = 1000) {
  if (n_e < 1) throw std::invalid_argument("multi_eve_product_cdf: n_e >= 1");
  if (trials < 1) throw std::invalid_argument("multi_eve_product_cdf: trials >= 1");
  const double norm_amp = 1.0 / std::sqrt(static_cast<double>(n_e));
  std::vector<double> samples(trials);
  RandomStream root = RandomStream(seed).child(tag::exp_product_cdf);
  fill_over_indices(trials, threads, [&](std::uint64_t i) {
    RandomStream ts = root.child(tag::trial).child(i);
    ChannelSet ch(ts.child(tag::channels).child(0), 1, 1, n_e);
    ComplexAmplitude acc{0.0, 0.0};
    for (int l = 0; l < n_e; ++l) {
      acc += norm_amp * ch.alice_eve(0, l) *
             detail::relay_scalar_for(ts, tag::relay_scalar,
                                      EveSpatialMode::randomized, l) *
             ch.eve_bob(0, l, 0);
    }
    samples[i] = std::norm(acc);
  });
  double mean = 0.0;
  for (double s : samples) mean += s;
  mean /= static_cast<double>(trials);
  EnergyCdfResult out;
  out.sample_mean = mean;
  out.table =
      cdf_table_from_samples("product-cdf", seed, std::move(samples), max_rows);
  return out;
}

// ---------------------------------------------------------------------------
// Concentration of the attack's energy advantage over antennas

struct LlnRow {
  int n_rx = 0;
  double probability = 0.0;
  double std_error = 0.0;
};

struct LlnReport {
  std::vector<LlnRow> rows;
  double epsilon = 0.0;
  std::uint64_t trials = 0;
  // smallest tested antenna count whose estimate reaches 1 - epsilon; -1 if none
  int implied_n_rx = -1;
};

// Per realization, the attack's energy excess over the clean link summed over
// antennas is D = sum_j [ E_c |g_j|^2 + 2 sqrt(E_a E_c) Re(conj(h_j) g_j) ]
// with g_j = h_AE * w * h_EB_j. The report estimates P(D / N_r > -epsilon):
// the zero-mean cross term washes out as N_r grows, so the probability climbs
// toward 1.
inline LlnReport lln_check(const std::vector<int>& nr_list, double epsilon,
                           std::uint64_t trials, double e_alice, double e_eve_c,
                           std::uint64_t seed, int threads) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("lln_check: epsilon > 0");
  if (nr_list.empty()) throw std::invalid_argument("lln_check: empty n_rx list");
  if (trials < 1) throw std::invalid_argument("lln_check: trials >= 1");
  if (e_alice < 0.0 || e_eve_c < 0.0)
    throw std::invalid_argument("lln_check: energies must be non-negative");
  LlnReport report;
  report.epsilon = epsilon;
  report.trials = trials;
  RandomStream root = RandomStream(seed).child(tag::exp_lln);
  const double cross_amp = 2.0 * std::sqrt(e_alice * e_eve_c);
  for (std::size_t k = 0; k < nr_list.size(); ++k) {
    const int nr = nr_list[k];
    if (nr < 1) throw std::invalid_argument("lln_check: n_rx must be >= 1");
    RandomStream point_root = root.child(k);
    const std::uint64_t hits = count_over_indices(
        trials, threads, [&](std::uint64_t i) -> std::uint64_t {
          RandomStream ts = point_root.child(tag::trial).child(i);
          ChannelSet ch(ts.child(tag::channels).child(0), 1, nr, 1);
          const ComplexAmplitude g0 =
              ch.alice_eve(0, 0) * detail::relay_scalar_for(
                                       ts, tag::relay_scalar,
                                       EveSpatialMode::single, 0);
          double excess = 0.0;
          for (int j = 0; j < nr; ++j) {
            const ComplexAmplitude g = g0 * ch.eve_bob(0, 0, j);
            excess += e_eve_c * std::norm(g) +
                      cross_amp * std::real(std::conj(ch.alice_bob(0, j)) * g);
          }
          return excess / nr > -epsilon ? 1u : 0u;
        });
    const double p = static_cast<double>(hits) / static_cast<double>(trials);
    report.rows.push_back({nr, p, proportion_std_error(p, trials)});
    if (report.implied_n_rx < 0 && p >= 1.0 - epsilon) report.implied_n_rx = nr;
  }
  return report;
}

// ---------------------------------------------------------------------------
// FSK crossover probability: closed form, solver, and Monte Carlo

// Crossover probability of the tone-energy detector under the Gaussian
// surrogate (main tone variance 1 + alpha*theta against side-tone variance
// (1-alpha)*theta/2): p = (2 + 2*alpha*theta) / (2 + alpha*theta + theta).
inline double closed_form_pcross(double alpha, double theta) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument("closed_form_pcross: alpha must lie in [0, 1]");
  if (!(theta > 0.0))
    throw std::invalid_argument("closed_form_pcross: theta must be positive");
  return (2.0 + 2.0 * alpha * theta) / (2.0 + alpha * theta + theta);
}

// Energy split that drives the surrogate crossover to 1/2:
// alpha = (theta - 2) / (3*theta). Requires theta > 2; below that no split in
// [0, 1] reaches 1/2.
inline double solve_alpha_half(double theta) {
  if (!(theta > 2.0))
    throw std::domain_error(
        "solve_alpha_half: no alpha in [0, 1] reaches 1/2 unless theta > 2");
  return (theta - 2.0) / (3.0 * theta);
}

// The solver's root next to the other commonly quoted split (theta-2)/(2*theta),
// each with the surrogate crossover it induces, so the two candidates can be
// compared side by side in reports.
struct AlphaHalfReport {
  double theta = 0.0;
  double alpha_root = 0.0;          // exact root of the closed form = 1/2
  double alpha_root_pcross = 0.0;   // closed form at alpha_root (= 1/2)
  double companion_alpha = 0.0;     // (theta - 2) / (2*theta)
  double companion_pcross = 0.0;    // closed form at companion_alpha
};

inline AlphaHalfReport alpha_half_report(double theta) {
  AlphaHalfReport r;
  r.theta = theta;
  r.alpha_root = solve_alpha_half(theta);
  r.alpha_root_pcross = closed_form_pcross(r.alpha_root, theta);
  r.companion_alpha = (theta - 2.0) / (2.0 * theta);
  r.companion_pcross = closed_form_pcross(r.companion_alpha, theta);
  return r;
}

struct ProportionEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t trials = 0;
};

// Monte Carlo crossover under the Gaussian surrogate: main-tone energy
// |CN(0, 1 + alpha*theta)|^2 against side-tone energy |CN(0, (1-alpha)*theta/2)|^2.
inline ProportionEstimate surrogate_pcross_mc(double alpha, double theta,
                                              std::uint64_t trials,
                                              std::uint64_t seed, int threads) {
  closed_form_pcross(alpha, theta);  // validates the domain
  if (trials < 1) throw std::invalid_argument("surrogate_pcross_mc: trials >= 1");
  const double v_main = 1.0 + alpha * theta;
  const double v_side = (1.0 - alpha) * theta / 2.0;
  RandomStream root = RandomStream(seed).child(tag::exp_surrogate);
  const std::uint64_t wins = count_over_indices(
      trials, threads, [&](std::uint64_t i) -> std::uint64_t {
        RandomStream ts = root.child(tag::trial).child(i);
        const double e_main = std::norm(sample_circular_gaussian(ts, v_main));
        const double e_side = std::norm(sample_circular_gaussian(ts, v_side));
        return e_main > e_side ? 1u : 0u;
      });
  ProportionEstimate out;
  out.trials = trials;
  out.value = static_cast<double>(wins) / static_cast<double>(trials);
  out.std_error = proportion_std_error(out.value, trials);
  return out;
}

namespace detail {

// Full product-channel crossover trial count: main-tone energy
// |h_AB + sqrt(alpha*theta) h_AE w h_EB|^2 against side-tone energy
// ((1-alpha)/2) theta |h_AE u h_EB|^2, no additive noise, E = 1. The two
// tones share a carrier, hence the common h_AE / h_EB factors.
inline std::uint64_t full_pcross_wins(const RandomStream& root, double alpha,
                                      double theta, std::uint64_t trials,
                                      int threads) {
  const double main_amp = std::sqrt(alpha * theta);
  const double side_scale = (1.0 - alpha) / 2.0 * theta;
  return count_over_indices(
      trials, threads, [&](std::uint64_t i) -> std::uint64_t {
        RandomStream ts = root.child(tag::trial).child(i);
        const ComplexAmplitude h_ab = sample_circular_gaussian(ts, 1.0);
        const ComplexAmplitude h_ae = sample_circular_gaussian(ts, 1.0);
        const ComplexAmplitude h_eb = sample_circular_gaussian(ts, 1.0);
        const ComplexAmplitude w = sample_circular_gaussian(ts, 1.0);
        const ComplexAmplitude u = sample_circular_gaussian(ts, 1.0);
        const double e_main = std::norm(h_ab + main_amp * h_ae * w * h_eb);
        const double e_side = side_scale * std::norm(h_ae * u * h_eb);
        return e_main > e_side ? 1u : 0u;
      });
}

}  // namespace detail

inline ProportionEstimate full_model_pcross_mc(double alpha, double theta,
                                               std::uint64_t trials,
                                               std::uint64_t seed, int threads) {
  closed_form_pcross(alpha, theta);  // validates the domain
  if (trials < 1) throw std::invalid_argument("full_model_pcross_mc: trials >= 1");
  RandomStream root = RandomStream(seed).child(tag::exp_full_pcross);
  const std::uint64_t wins =
      detail::full_pcross_wins(root, alpha, theta, trials, threads);
  ProportionEstimate out;
  out.trials = trials;
  out.value = static_cast<double>(wins) / static_cast<double>(trials);
  out.std_error = proportion_std_error(out.value, trials);
  return out;
}

// ---------------------------------------------------------------------------
// Mutual information of the induced binary channel, swept over alpha

struct MiPoint {
  double alpha = 0.0;
  double p_cross = 0.0;
  double p_std_error = 0.0;
  double mi = 0.0;  // 1 - H(p_cross), no receiver-side bit flip applied
  double mi_std_error = 0.0;
  std::uint64_t trials = 0;
};

struct MiCurve {
  double theta = 0.0;
  std::vector<MiPoint> points;   // in the given alpha order
  double argmin_alpha = 0.0;     // smallest alpha attaining the minimum MI

  ResultTable table(std::uint64_t seed) const {
    ResultTable t;
    t.kind = "mi-sweep";
    t.seed = seed;
    for (const auto& p : points)
      t.rows.push_back({p.alpha, p.mi, p.mi_std_error, p.trials});
    t.sort_rows();
    return t;
  }
};

// Delta-method standard error of 1 - H(p): |log2((1-p)/p)| * se(p); zero at
// the endpoints and at p = 1/2 where the derivative vanishes.
inline double mi_std_error_from_p(double p, double p_std_error) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return std::fabs(std::log2((1.0 - p) / p)) * p_std_error;
}

inline std::vector<MiCurve> mutual_information_sweep(
    const std::vector<double>& thetas, const std::vector<double>& alphas,
    std::uint64_t trials, std::uint64_t seed, int threads) {
  if (thetas.empty() || alphas.empty())
    throw std::invalid_argument("mutual_information_sweep: empty grid");
  if (trials < 1)
    throw std::invalid_argument("mutual_information_sweep: trials >= 1");
  RandomStream root = RandomStream(seed).child(tag::exp_mi);
  std::vector<MiCurve> curves;
  curves.reserve(thetas.size());
  for (std::size_t ti = 0; ti < thetas.size(); ++ti) {
    MiCurve curve;
    curve.theta = thetas[ti];
    double best_mi = 2.0;
    for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
      const double alpha = alphas[ai];
      closed_form_pcross(alpha, curve.theta);  // validates the domain
      RandomStream point_root = root.child(ti).child(ai);
      const std::uint64_t wins = detail::full_pcross_wins(
          point_root, alpha, curve.theta, trials, threads);
      MiPoint mp;
      mp.alpha = alpha;
      mp.trials = trials;
      mp.p_cross = static_cast<double>(wins) / static_cast<double>(trials);
      mp.p_std_error = proportion_std_error(mp.p_cross, trials);
      mp.mi = 1.0 - binary_entropy(mp.p_cross);
      mp.mi_std_error = mi_std_error_from_p(mp.p_cross, mp.p_std_error);
      if (mp.mi < best_mi) {
        best_mi = mp.mi;
        curve.argmin_alpha = alpha;
      }
      curve.points.push_back(mp);
    }
    curves.push_back(std::move(curve));
  }
  return curves;
}

}  // namespace fhlink
