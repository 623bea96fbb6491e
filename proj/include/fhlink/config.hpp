// config.hpp - line-oriented experiment configuration.
//
// Format: `key = value` lines grouped under [link], [attack], [experiment]
// sections; '#' starts a comment; blank lines ignored. Unknown sections or
// keys are rejected by name, and every parsed value passes the target type's
// own validation. The canonical serialization (and the digest over it) covers
// every field, so two configs digest equal iff they are field-for-field equal.
#pragma once

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fhlink/analysis.hpp"
#include "fhlink/csv.hpp"

namespace fhlink {

// --- enum <-> string -------------------------------------------------------

inline std::string to_string(ModulationScheme s) {
  switch (s) {
    case ModulationScheme::ook: return "ook";
    case ModulationScheme::bpsk: return "bpsk";
    case ModulationScheme::bfsk: return "bfsk";
    case ModulationScheme::ebfsk: return "ebfsk";
  }
  throw std::invalid_argument("to_string: unknown modulation scheme");
}

inline ModulationScheme scheme_from_string(const std::string& s) {
  if (s == "ook") return ModulationScheme::ook;
  if (s == "bpsk") return ModulationScheme::bpsk;
  if (s == "bfsk") return ModulationScheme::bfsk;
  if (s == "ebfsk") return ModulationScheme::ebfsk;
  throw std::invalid_argument(
      "scheme: unknown value '" + s + "' (expected ook|bpsk|bfsk|ebfsk)");
}

inline std::string to_string(AttackKind k) {
  switch (k) {
    case AttackKind::none: return "none";
    case AttackKind::narrowband_jamming: return "narrowband_jamming";
    case AttackKind::wideband_jamming: return "wideband_jamming";
    case AttackKind::convolution: return "convolution";
    case AttackKind::convolution_bfsk: return "convolution_bfsk";
  }
  throw std::invalid_argument("to_string: unknown attack kind");
}

inline AttackKind attack_kind_from_string(const std::string& s) {
  if (s == "none") return AttackKind::none;
  if (s == "narrowband_jamming") return AttackKind::narrowband_jamming;
  if (s == "wideband_jamming") return AttackKind::wideband_jamming;
  if (s == "convolution") return AttackKind::convolution;
  if (s == "convolution_bfsk") return AttackKind::convolution_bfsk;
  throw std::invalid_argument(
      "attack kind: unknown value '" + s +
      "' (expected none|narrowband_jamming|wideband_jamming|convolution|"
      "convolution_bfsk)");
}

inline std::string to_string(EveSpatialMode m) {
  switch (m) {
    case EveSpatialMode::single: return "single";
    case EveSpatialMode::randomized: return "randomized";
    case EveSpatialMode::fixed: return "fixed";
  }
  throw std::invalid_argument("to_string: unknown spatial mode");
}

inline EveSpatialMode spatial_mode_from_string(const std::string& s) {
  if (s == "single") return EveSpatialMode::single;
  if (s == "randomized") return EveSpatialMode::randomized;
  if (s == "fixed") return EveSpatialMode::fixed;
  throw std::invalid_argument(
      "spatial: unknown value '" + s + "' (expected single|randomized|fixed)");
}

inline std::string to_string(GridKind k) {
  switch (k) {
    case GridKind::ebn0_db: return "ebn0_db";
    case GridKind::energy: return "energy";
  }
  throw std::invalid_argument("to_string: unknown grid kind");
}

inline GridKind grid_kind_from_string(const std::string& s) {
  if (s == "ebn0_db") return GridKind::ebn0_db;
  if (s == "energy") return GridKind::energy;
  throw std::invalid_argument(
      "grid_kind: unknown value '" + s + "' (expected ebn0_db|energy)");
}

// --- parsing helpers -------------------------------------------------------

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

inline double parse_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument(key + ": not a number: '" + v + "'");
  }
  if (pos != v.size())
    throw std::invalid_argument(key + ": trailing characters in '" + v + "'");
  return x;
}

inline long long parse_int(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  long long x = 0;
  try {
    x = std::stoll(v, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument(key + ": not an integer: '" + v + "'");
  }
  if (pos != v.size())
    throw std::invalid_argument(key + ": trailing characters in '" + v + "'");
  return x;
}

inline bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw std::invalid_argument(key + ": expected true|false, got '" + v + "'");
}

inline std::vector<double> parse_grid(const std::string& key,
                                      const std::string& v) {
  std::vector<double> out;
  std::string item;
  std::istringstream in(v);
  while (std::getline(in, item, ',')) {
    std::istringstream fields(item);
    std::string f;
    while (fields >> f) out.push_back(parse_double(key, f));
  }
  if (out.empty()) throw std::invalid_argument(key + ": empty list");
  return out;
}

}  // namespace detail

// Parse a configuration document into a validated ExperimentSpec. An empty
// document yields the library defaults (OOK, 1024 bands, 2 receive antennas,
// theta = 9, sigma2_bob = 1, sigma2_eve = 0.01).
inline ExperimentSpec parse_config(const std::string& text) {
  ExperimentSpec spec;
  spec.grid = {0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0};
  std::string section = "experiment";
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::invalid_argument("config line " + std::to_string(line_no) +
                                    ": malformed section header '" + line + "'");
      section = detail::trim(line.substr(1, line.size() - 2));
      if (section != "link" && section != "attack" && section != "experiment")
        throw std::invalid_argument("config line " + std::to_string(line_no) +
                                    ": unknown section '" + section + "'");
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected key = value, got '" + line + "'");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": empty key or value in '" + line + "'");
    const std::string field = section + "." + key;
    if (section == "link") {
      if (key == "scheme") spec.link.scheme = scheme_from_string(value);
      else if (key == "n_bands") spec.link.n_bands = static_cast<int>(detail::parse_int(field, value));
      else if (key == "n_rx") spec.link.n_rx = static_cast<int>(detail::parse_int(field, value));
      else if (key == "sigma2_bob") spec.link.sigma2_bob = detail::parse_double(field, value);
      else if (key == "sigma2_eve") spec.link.sigma2_eve = detail::parse_double(field, value);
      else if (key == "symbols_per_hop") spec.link.symbols_per_hop = static_cast<int>(detail::parse_int(field, value));
      else if (key == "delta") spec.link.delta = detail::parse_double(field, value);
      else if (key == "beta") spec.link.beta = detail::parse_double(field, value);
      else if (key == "guard") spec.link.guard = detail::parse_double(field, value);
      else if (key == "pilots_per_frame") spec.link.pilots_per_frame = static_cast<int>(detail::parse_int(field, value));
      else if (key == "data_per_frame") spec.link.data_per_frame = static_cast<int>(detail::parse_int(field, value));
      else if (key == "calibration_frames") spec.link.calibration_frames = static_cast<int>(detail::parse_int(field, value));
      else throw std::invalid_argument("config: unknown key '" + field + "'");
    } else if (section == "attack") {
      if (key == "kind") spec.attack.kind = attack_kind_from_string(value);
      else if (key == "alpha") spec.attack.alpha = detail::parse_double(field, value);
      else if (key == "theta") spec.attack.theta = detail::parse_double(field, value);
      else if (key == "n_eve") spec.attack.n_eve = static_cast<int>(detail::parse_int(field, value));
      else if (key == "spatial") spec.attack.spatial = spatial_mode_from_string(value);
      else if (key == "attacks_pilots") spec.attack.attacks_pilots = detail::parse_bool(field, value);
      else throw std::invalid_argument("config: unknown key '" + field + "'");
    } else {
      if (key == "grid") spec.grid = detail::parse_grid(field, value);
      else if (key == "grid_kind") spec.grid_kind = grid_kind_from_string(value);
      else if (key == "trials") {
        const long long n = detail::parse_int(field, value);
        if (n < 1) throw std::invalid_argument(field + ": must be >= 1");
        spec.trials = static_cast<std::uint64_t>(n);
      } else if (key == "seed") {
        const long long n = detail::parse_int(field, value);
        if (n < 0) throw std::invalid_argument(field + ": must be >= 0");
        spec.seed = static_cast<std::uint64_t>(n);
      } else if (key == "threads") spec.threads = static_cast<int>(detail::parse_int(field, value));
      else if (key == "threshold_method") spec.threshold_method = threshold_method_from_string(value);
      else if (key == "eta_percent") spec.eta_percent = detail::parse_double(field, value);
      else throw std::invalid_argument("config: unknown key '" + field + "'");
    }
  }
  spec.validate();
  return spec;
}

// Canonical single-line-per-field rendering of a spec; the digest is FNV-1a
// over these bytes, so it moves iff some field moves.
inline std::string serialize_config(const ExperimentSpec& spec) {
  std::string out;
  out += "[link]\n";
  out += "scheme = " + to_string(spec.link.scheme) + "\n";
  out += "n_bands = " + std::to_string(spec.link.n_bands) + "\n";
  out += "n_rx = " + std::to_string(spec.link.n_rx) + "\n";
  out += "sigma2_bob = " + format_number(spec.link.sigma2_bob) + "\n";
  out += "sigma2_eve = " + format_number(spec.link.sigma2_eve) + "\n";
  out += "symbols_per_hop = " + std::to_string(spec.link.symbols_per_hop) + "\n";
  out += "delta = " + format_number(spec.link.delta) + "\n";
  out += "beta = " + format_number(spec.link.beta) + "\n";
  out += "guard = " + format_number(spec.link.guard) + "\n";
  out += "pilots_per_frame = " + std::to_string(spec.link.pilots_per_frame) + "\n";
  out += "data_per_frame = " + std::to_string(spec.link.data_per_frame) + "\n";
  out += "calibration_frames = " + std::to_string(spec.link.calibration_frames) + "\n";
  out += "[attack]\n";
  out += "kind = " + to_string(spec.attack.kind) + "\n";
  out += "alpha = " + format_number(spec.attack.alpha) + "\n";
  out += "theta = " + format_number(spec.attack.theta) + "\n";
  out += "n_eve = " + std::to_string(spec.attack.n_eve) + "\n";
  out += "spatial = " + to_string(spec.attack.spatial) + "\n";
  out += std::string("attacks_pilots = ") +
         (spec.attack.attacks_pilots ? "true" : "false") + "\n";
  out += "[experiment]\n";
  out += "grid =";
  for (double g : spec.grid) out += " " + format_number(g);
  out += "\n";
  out += "grid_kind = " + to_string(spec.grid_kind) + "\n";
  out += "trials = " + std::to_string(spec.trials) + "\n";
  out += "seed = " + std::to_string(spec.seed) + "\n";
  out += "threads = " + std::to_string(spec.threads) + "\n";
  out += "threshold_method = " + to_string(spec.threshold_method) + "\n";
  out += "eta_percent = " + format_number(spec.eta_percent) + "\n";
  return out;
}

inline std::string config_digest(const ExperimentSpec& spec) {
  const std::uint64_t h = detail::fnv1a(serialize_config(spec));
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace fhlink
