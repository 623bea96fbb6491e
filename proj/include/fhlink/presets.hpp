#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fhlink/analysis.hpp"
#include "fhlink/config.hpp"
#include "fhlink/csv.hpp"
#include "fhlink/version.hpp"

namespace fhlink {

// Summary of one study run: which files were produced, how much work was
// done, and a digest that changes whenever any configuration field changes.
struct RunManifest {
  std::string config_digest;
  std::uint64_t seed = 0;
  std::string version;
  std::vector<std::string> outputs;
  std::uint64_t trials = 0;
  double wall_seconds = 0.0;
};

inline nlohmann::json manifest_json(const RunManifest& m) {
  nlohmann::json j;
  j["config_digest"] = m.config_digest;
  j["seed"] = m.seed;
  j["version"] = m.version;
  j["outputs"] = m.outputs;
  j["trials"] = m.trials;
  j["wall_seconds"] = m.wall_seconds;
  return j;
}

inline void write_manifest(const RunManifest& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << manifest_json(m).dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

namespace detail {

// Accumulates the outputs of one preset run: CSV files on disk, the total
// trial count, and a canonical description of every parameter that shaped
// the results (digested into the manifest).
class PresetSink {
 public:
  PresetSink(std::string out_dir, std::uint64_t seed)
      : out_dir_(std::move(out_dir)), seed_(seed) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir_, ec);
    if (ec) {
      throw std::runtime_error("cannot create output directory: " + out_dir_ +
                               ": " + ec.message());
    }
  }

  std::uint64_t seed() const { return seed_; }

  std::string path_for(const std::string& filename) const {
    return (std::filesystem::path(out_dir_) / filename).string();
  }

  void add_table(const ResultTable& table, const std::string& filename,
                 const std::string& description) {
    write_csv(table, path_for(filename));
    outputs_.push_back(filename);
    material_ += "output " + filename + "\n" + description;
  }

  void note(const std::string& description) { material_ += description; }
  void add_trials(std::uint64_t n) { trials_ += n; }

  RunManifest finish(double wall_seconds) const {
    RunManifest m;
    m.config_digest = digest_hex(material_);
    m.seed = seed_;
    m.version = kVersion;
    m.outputs = outputs_;
    m.trials = trials_;
    m.wall_seconds = wall_seconds;
    return m;
  }

 private:
  static std::string digest_hex(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
      h ^= c;
      h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(h));
    return std::string(buf);
  }

  std::string out_dir_;
  std::uint64_t seed_ = 0;
  std::vector<std::string> outputs_;
  std::string material_;
  std::uint64_t trials_ = 0;
};

// Canonical description of a run for the manifest digest. The digest must
// identify what was computed, not how it was scheduled: results are
// thread-count invariant by construction, so the thread field is pinned
// before serializing.
inline std::string digest_form(ExperimentSpec spec) {
  spec.threads = 1;
  return serialize_config(spec);
}

inline std::uint64_t scale_trials(std::uint64_t trials, double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw std::invalid_argument("trials scale must be a positive finite number");
  }
  double scaled = static_cast<double>(trials) * scale;
  if (scaled < 1.0) return 1;
  return static_cast<std::uint64_t>(std::llround(scaled));
}

inline std::vector<double> standard_db_grid() {
  return {0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0};
}

inline LinkConfig flat_link(ModulationScheme scheme, int n_bands, int n_rx) {
  LinkConfig link;
  link.scheme = scheme;
  link.n_bands = n_bands;
  link.n_rx = n_rx;
  return link;
}

inline AttackConfig attack_of(AttackKind kind, double alpha, double theta,
                              int n_eve = 1,
                              EveSpatialMode spatial = EveSpatialMode::single) {
  AttackConfig atk;
  atk.kind = kind;
  atk.alpha = alpha;
  atk.theta = theta;
  atk.n_eve = n_eve;
  atk.spatial = spatial;
  return atk;
}

// Runs one BER curve and records it under `filename`.
inline void run_curve(PresetSink& sink, const LinkConfig& link,
                      const AttackConfig& atk, std::uint64_t trials,
                      int threads, const std::string& filename,
                      ThresholdMethod method = ThresholdMethod::empirical_pilots) {
  ExperimentSpec spec;
  spec.link = link;
  spec.attack = atk;
  spec.grid = standard_db_grid();
  spec.grid_kind = GridKind::ebn0_db;
  spec.trials = trials;
  spec.seed = sink.seed();
  spec.threads = threads;
  spec.threshold_method = method;
  spec.validate();
  ResultTable table = run_ber(spec);
  sink.add_table(table, filename, digest_form(spec));
  std::uint64_t total = 0;
  for (const auto& row : table.rows) total += row.trials;
  sink.add_trials(total);
}

}  // namespace detail

// Runs one named study end to end: writes its CSV outputs plus a JSON
// manifest ("<name>_manifest.json") into out_dir and returns the manifest.
//
// Every study finishes in well under ten minutes single-threaded at the
// default trial counts; trials_scale rescales all Monte Carlo loops
// (e.g. 0.01 for a quick smoke run).
inline RunManifest run_preset(const std::string& name, std::uint64_t seed,
                              const std::string& out_dir, int threads,
                              double trials_scale) {
  using detail::attack_of;
  using detail::flat_link;
  using detail::run_curve;
  using detail::scale_trials;

  if (threads < 1) throw std::invalid_argument("threads must be >= 1");
  auto t0 = std::chrono::steady_clock::now();
  detail::PresetSink sink(out_dir, seed);
  sink.note("preset " + name + "\n");

  const std::uint64_t ber_trials = scale_trials(1000000, trials_scale);
  const std::uint64_t cdf_trials = scale_trials(200000, trials_scale);

  if (name == "fig2") {
    // BPSK with coherent combining under each interference strategy.
    LinkConfig link = flat_link(ModulationScheme::bpsk, 1024, 2);
    run_curve(sink, link, attack_of(AttackKind::none, 1.0, 9.0), ber_trials,
              threads, "fig2_none.csv");
    run_curve(sink, link, attack_of(AttackKind::narrowband_jamming, 1.0, 9.0),
              ber_trials, threads, "fig2_nj.csv");
    run_curve(sink, link, attack_of(AttackKind::wideband_jamming, 1.0, 9.0),
              ber_trials, threads, "fig2_wj.csv");
    run_curve(sink, link, attack_of(AttackKind::convolution, 1.0, 9.0),
              ber_trials, threads, "fig2_ca.csv");
  } else if (name == "fig3") {
    // Received-energy CDFs as the relay's share of the power budget grows.
    for (double eta : {0.0, 50.0, 90.0}) {
      for (int nr : {1, 10}) {
        EnergyCdfResult res = cdf_received_energy(
            eta, nr, 1, EveSpatialMode::single, cdf_trials, seed, threads);
        char fname[64];
        std::snprintf(fname, sizeof(fname), "fig3_eta%d_nr%d.csv",
                      static_cast<int>(eta), nr);
        char desc[128];
        std::snprintf(desc, sizeof(desc),
                      "energy-cdf eta=%g n_rx=%d n_eve=1 spatial=single\n", eta,
                      nr);
        sink.add_table(res.table, fname, desc);
        sink.add_trials(cdf_trials);
      }
    }
  } else if (name == "fig4") {
    // CDF of the cascaded-channel power for one vs several relay antennas.
    std::uint64_t trials = scale_trials(1000000, trials_scale);
    for (int ne : {1, 4}) {
      EnergyCdfResult res = multi_eve_product_cdf(ne, trials, seed, threads);
      char fname[64];
      std::snprintf(fname, sizeof(fname), "fig4_ne%d.csv", ne);
      char desc[64];
      std::snprintf(desc, sizeof(desc), "product-cdf n_eve=%d\n", ne);
      sink.add_table(res.table, fname, desc);
      sink.add_trials(trials);
    }
  } else if (name == "fig5") {
    // Energy CDFs for a strong relay: one antenna vs twenty antennas with
    // randomized or fixed per-antenna weights.
    struct Case {
      int n_eve;
      EveSpatialMode mode;
      const char* fname;
    };
    const Case cases[] = {
        {1, EveSpatialMode::single, "fig5_single.csv"},
        {20, EveSpatialMode::randomized, "fig5_rand20.csv"},
        {20, EveSpatialMode::fixed, "fig5_fixed20.csv"},
    };
    for (const Case& c : cases) {
      EnergyCdfResult res = cdf_received_energy(90.0, 10, c.n_eve, c.mode,
                                                cdf_trials, seed, threads);
      char desc[128];
      std::snprintf(desc, sizeof(desc),
                    "energy-cdf eta=90 n_rx=10 n_eve=%d spatial=%s\n", c.n_eve,
                    to_string(c.mode).c_str());
      sink.add_table(res.table, c.fname, desc);
      sink.add_trials(cdf_trials);
    }
  } else if (name == "fig6" || name == "fig7") {
    // OOK under the relay attack, narrow (128) vs wide (1024) hopping sets:
    // clean link, attacked link with pilot-trained vs model-based thresholds,
    // and BPSK under the same attack for contrast.
    int n_bands = (name == "fig6") ? 128 : 1024;
    LinkConfig ook = flat_link(ModulationScheme::ook, n_bands, 2);
    LinkConfig bpsk = flat_link(ModulationScheme::bpsk, n_bands, 2);
    AttackConfig ca = attack_of(AttackKind::convolution, 1.0, 9.0);
    run_curve(sink, ook, attack_of(AttackKind::none, 1.0, 9.0), ber_trials,
              threads, name + "_ook_none.csv");
    run_curve(sink, ook, ca, ber_trials, threads, name + "_ook_ca.csv");
    run_curve(sink, ook, ca, ber_trials, threads,
              name + "_ook_ca_analytic.csv", ThresholdMethod::analytic_model);
    run_curve(sink, bpsk, ca, ber_trials, threads, name + "_bpsk_ca.csv");
  } else if (name == "fig8") {
    // Crossover probability and per-symbol leakage vs the relay power split.
    std::vector<double> thetas = {5.0, 9.0, 15.0};
    std::vector<double> alphas;
    for (int k = 1; k <= 19; ++k) alphas.push_back(0.05 * k);
    std::uint64_t trials = scale_trials(1000000, trials_scale);
    std::vector<MiCurve> curves =
        mutual_information_sweep(thetas, alphas, trials, seed, threads);
    for (const MiCurve& curve : curves) {
      char fname[64];
      std::snprintf(fname, sizeof(fname), "fig8_theta%g.csv", curve.theta);
      char desc[128];
      std::snprintf(desc, sizeof(desc),
                    "mi-sweep theta=%g alphas=0.05..0.95 argmin=%.10g\n",
                    curve.theta, curve.argmin_alpha);
      sink.add_table(curve.table(seed), fname, desc);
      sink.add_trials(trials * static_cast<std::uint64_t>(alphas.size()));
    }
  } else if (name == "fig9") {
    // Wideband jamming against OOK on a narrow hopping set.
    LinkConfig ook = flat_link(ModulationScheme::ook, 128, 2);
    run_curve(sink, ook, attack_of(AttackKind::none, 1.0, 9.0), ber_trials,
              threads, "fig9_none.csv");
    run_curve(sink, ook, attack_of(AttackKind::wideband_jamming, 1.0, 9.0),
              ber_trials, threads, "fig9_wj.csv");
  } else if (name == "fig10") {
    // Binary FSK under the tone-tracking relay at several power splits.
    LinkConfig bfsk = flat_link(ModulationScheme::bfsk, 1024, 1);
    run_curve(sink, bfsk, attack_of(AttackKind::none, 1.0, 9.0), ber_trials,
              threads, "fig10_none.csv");
    for (double alpha : {0.15, 0.25, 0.5, 1.0}) {
      char fname[64];
      std::snprintf(fname, sizeof(fname), "fig10_ca_alpha%g.csv", alpha);
      run_curve(sink, bfsk, attack_of(AttackKind::convolution_bfsk, alpha, 9.0),
                ber_trials, threads, fname);
    }
  } else if (name == "fig11") {
    // FSK relay splits chosen from the crossover analysis at theta = 9:
    // the surrogate's balanced split and its companion root.
    LinkConfig bfsk = flat_link(ModulationScheme::bfsk, 1024, 1);
    AlphaHalfReport rep = alpha_half_report(9.0);
    char note[160];
    std::snprintf(note, sizeof(note),
                  "alpha-half theta=9 root=%.12g companion=%.12g\n",
                  rep.alpha_root, rep.companion_alpha);
    sink.note(note);
    run_curve(sink, bfsk, attack_of(AttackKind::none, 1.0, 9.0), ber_trials,
              threads, "fig11_none.csv");
    run_curve(sink, bfsk,
              attack_of(AttackKind::convolution_bfsk, rep.alpha_root, 9.0),
              ber_trials, threads, "fig11_ca_root.csv");
    run_curve(sink, bfsk,
              attack_of(AttackKind::convolution_bfsk, rep.companion_alpha, 9.0),
              ber_trials, threads, "fig11_ca_companion.csv");
  } else if (name == "fig12") {
    // OOK under the relay attack with a multi-antenna relay.
    LinkConfig ook = flat_link(ModulationScheme::ook, 1024, 2);
    run_curve(sink, ook,
              attack_of(AttackKind::convolution, 1.0, 9.0, 1,
                        EveSpatialMode::single),
              ber_trials, threads, "fig12_ne1_single.csv");
    run_curve(sink, ook,
              attack_of(AttackKind::convolution, 1.0, 9.0, 4,
                        EveSpatialMode::randomized),
              ber_trials, threads, "fig12_ne4_randomized.csv");
    run_curve(sink, ook,
              attack_of(AttackKind::convolution, 1.0, 9.0, 4,
                        EveSpatialMode::fixed),
              ber_trials, threads, "fig12_ne4_fixed.csv");
  } else if (name == "fig13") {
    // Randomized tone pairs vs fixed tone pairs under the tone-tracking
    // relay, plus wideband jamming against randomized pairs.
    AttackConfig ca = attack_of(AttackKind::convolution_bfsk, 0.25, 9.0);
    run_curve(sink, flat_link(ModulationScheme::bfsk, 1024, 1),
              attack_of(AttackKind::none, 1.0, 9.0), ber_trials, threads,
              "fig13_bfsk_none.csv");
    run_curve(sink, flat_link(ModulationScheme::bfsk, 1024, 1), ca, ber_trials,
              threads, "fig13_bfsk_ca.csv");
    run_curve(sink, flat_link(ModulationScheme::ebfsk, 64, 1), ca, ber_trials,
              threads, "fig13_ebfsk_ca_n64.csv");
    run_curve(sink, flat_link(ModulationScheme::ebfsk, 1024, 1), ca,
              ber_trials, threads, "fig13_ebfsk_ca_n1024.csv");
    run_curve(sink, flat_link(ModulationScheme::ebfsk, 128, 1),
              attack_of(AttackKind::wideband_jamming, 1.0, 9.0), ber_trials,
              threads, "fig13_ebfsk_wj_n128.csv");
  } else if (name == "fig14") {
    // OOK vs binary FSK at matched energy per bit, clean and attacked.
    // Both schemes share the dB axis; each converts dB to symbol energy
    // under its own convention so energy per information bit matches.
    LinkConfig ook = flat_link(ModulationScheme::ook, 1024, 2);
    LinkConfig bfsk = flat_link(ModulationScheme::bfsk, 1024, 2);
    run_curve(sink, ook, attack_of(AttackKind::none, 1.0, 9.0), ber_trials,
              threads, "fig14_ook_none.csv");
    run_curve(sink, ook, attack_of(AttackKind::convolution, 1.0, 9.0),
              ber_trials, threads, "fig14_ook_ca.csv");
    run_curve(sink, bfsk, attack_of(AttackKind::none, 1.0, 9.0), ber_trials,
              threads, "fig14_bfsk_none.csv");
    run_curve(sink, bfsk, attack_of(AttackKind::convolution_bfsk, 1.0, 9.0),
              ber_trials, threads, "fig14_bfsk_ca.csv");
  } else if (name == "lln") {
    // Probability that coherent combining keeps the relay's distortion from
    // reducing the decision statistic, as receive antennas are added.
    std::uint64_t trials = scale_trials(10000, trials_scale);
    LlnReport rep = lln_check({1, 4, 16, 64, 256}, 0.1, trials, 1.0, 1.0, seed,
                              threads);
    ResultTable table;
    table.kind = "lln";
    table.seed = seed;
    for (const LlnRow& row : rep.rows) {
      ResultRow r;
      r.x = static_cast<double>(row.n_rx);
      r.estimate = row.probability;
      r.std_error = row.std_error;
      r.trials = rep.trials;
      table.rows.push_back(r);
    }
    char desc[128];
    std::snprintf(desc, sizeof(desc),
                  "lln epsilon=0.1 trials=%llu implied_n_rx=%d\n",
                  static_cast<unsigned long long>(trials), rep.implied_n_rx);
    sink.add_table(table, "lln.csv", desc);
    sink.add_trials(trials * static_cast<std::uint64_t>(rep.rows.size()));
  } else if (name == "timing") {
    // Feasibility of the relay's forwarding deadline as its processing
    // delay grows, for the reference geometry (direct path 1.0, each relay
    // leg 0.5, symbol period 1.0). Estimate is 1 when the relayed copy
    // lands inside the victim's symbol window, 0 otherwise.
    TimingGeometry geom;
    geom.tau_ab = 1.0;
    geom.tau_ae = 0.5;
    geom.tau_eb = 0.5;
    geom.symbol_period = 1.0;
    ResultTable table;
    table.kind = "timing";
    table.seed = seed;
    for (int k = 0; k <= 15; ++k) {
      geom.processing = static_cast<double>(k) / 10.0;
      ResultRow r;
      r.x = geom.processing;
      r.estimate = check_timing_feasibility(geom) ? 1.0 : 0.0;
      r.std_error = 0.0;
      r.trials = 1;
      table.rows.push_back(r);
    }
    sink.add_table(table, "timing.csv",
                   "timing tau_ab=1 tau_ae=0.5 tau_eb=0.5 period=1 "
                   "processing=0..1.5\n");
    sink.add_trials(table.rows.size());
  } else {
    throw std::invalid_argument(
        "unknown preset '" + name +
        "' (expected fig2..fig14, lln, or timing)");
  }

  double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              t0)
                    .count();
  RunManifest manifest = sink.finish(wall);
  write_manifest(manifest, sink.path_for(name + "_manifest.json"));
  return manifest;
}

inline std::vector<std::string> preset_names() {
  return {"fig2", "fig3",  "fig4",  "fig5",  "fig6",  "fig7",  "fig8", "fig9",
          "fig10", "fig11", "fig12", "fig13", "fig14", "lln",   "timing"};
}

// Runs a single experiment described by a parsed configuration, writing
// ber.csv plus run_manifest.json into out_dir.
inline RunManifest run_config(const ExperimentSpec& spec,
                              const std::string& out_dir) {
  auto t0 = std::chrono::steady_clock::now();
  detail::PresetSink sink(out_dir, spec.seed);
  sink.note("config run\n");
  spec.validate();
  ResultTable table = run_ber(spec);
  sink.add_table(table, "ber.csv", detail::digest_form(spec));
  std::uint64_t total = 0;
  for (const auto& row : table.rows) total += row.trials;
  sink.add_trials(total);
  double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              t0)
                    .count();
  RunManifest manifest = sink.finish(wall);
  write_manifest(manifest, sink.path_for("run_manifest.json"));
  return manifest;
}

}  // namespace fhlink
