// threshold.hpp - energy-detector threshold design for on-off keying.
//
// With N_r antennas the summed received energy of a symbol is Gamma
// distributed: shape N_r and per-antenna scale
//   S1 = E*(1 + alpha*theta) + alpha*theta*sigma2_eve + sigma2_bob   (bit 1)
//   S0 =                       alpha*theta*sigma2_eve + sigma2_bob   (bit 0)
// under a relay attack of strength (alpha, theta); alpha*theta = 0 recovers
// the clean link. The likelihood-ratio threshold is the density crossing
//   t* = N_r * S0*S1 * ln(S1/S0) / (S1 - S0),
// and the empirical alternative picks the candidate cut that best separates
// labelled pilot energies.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "fhlink/special_functions.hpp"

namespace fhlink {

// Labelled pilot energies gathered during calibration. `attacked` records
// whether the adversary was active while the pilots were measured, so a
// threshold learned from clean pilots can be identified as mismatched.
struct EnergySamples {
  std::vector<double> on;   // energies of known bit-1 pilots
  std::vector<double> off;  // energies of known bit-0 pilots
  bool attacked = false;
};

struct ThresholdDesign {
  double threshold = 0.0;
  // fraction of pilots the chosen cut classifies correctly (empirical route
  // only; analytic routes leave it at -1)
  double pilot_accuracy = -1.0;
};

// Per-antenna energy scales for the two symbol classes.
struct EnergyScales {
  double on = 0.0;
  double off = 0.0;
};

inline EnergyScales energy_scales(double e_alice, double alpha, double theta,
                                  double sigma2_eve, double sigma2_bob) {
  if (e_alice < 0.0) throw std::invalid_argument("energy_scales: e_alice < 0");
  if (alpha < 0.0 || alpha > 1.0)
    throw std::invalid_argument("energy_scales: alpha outside [0,1]");
  if (theta < 0.0) throw std::invalid_argument("energy_scales: theta < 0");
  EnergyScales s;
  const double relay = alpha * theta;
  s.on = e_alice * (1.0 + relay) + relay * sigma2_eve + sigma2_bob;
  s.off = relay * sigma2_eve + sigma2_bob;
  return s;
}

// Density-crossing threshold of two Gamma(shape=n_rx, scale=*) classes.
inline double approximate_threshold_analytic(int n_rx, double scale_on,
                                             double scale_off) {
  if (n_rx < 1)
    throw std::invalid_argument("approximate_threshold_analytic: n_rx must be >= 1");
  if (!(scale_on > 0.0) || !(scale_off > 0.0))
    throw std::invalid_argument("approximate_threshold_analytic: scales must be > 0");
  if (scale_on == scale_off)
    throw std::invalid_argument(
        "approximate_threshold_analytic: classes are indistinguishable");
  const double lo = std::min(scale_on, scale_off);
  const double hi = std::max(scale_on, scale_off);
  return static_cast<double>(n_rx) * lo * hi * std::log(hi / lo) / (hi - lo);
}

// Probability that a threshold decides wrongly, averaged over equiprobable
// bits, for the Gamma energy model: miss = P(on <= t), false alarm = P(off > t).
inline double gamma_model_error_rate(double t, int n_rx, double scale_on,
                                     double scale_off) {
  const double miss = gamma_cdf(static_cast<double>(n_rx), scale_on, t);
  const double fa = 1.0 - gamma_cdf(static_cast<double>(n_rx), scale_off, t);
  return 0.5 * (miss + fa);
}

// Golden-section minimizer for a unimodal objective on [lo, hi].
template <typename F>
double golden_section_minimize(F&& f, double lo, double hi, double tol = 1e-12,
                               int max_iter = 400) {
  if (!(lo < hi)) throw std::invalid_argument("golden_section_minimize: lo >= hi");
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < max_iter && (b - a) > tol; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

// Pick the cut that maximizes labelled-pilot accuracy. Candidates are 0, the
// midpoints of adjacent distinct values in the pooled sorted sample, and the
// sample maximum; ties resolve to the smallest candidate. Decision rule at
// cut t: energy > t -> 1, else 0.
inline ThresholdDesign optimal_threshold_empirical(const EnergySamples& pilots) {
  if (pilots.on.size() < 2 || pilots.off.size() < 2)
    throw std::invalid_argument(
        "optimal_threshold_empirical: need >= 2 pilots per class");
  for (double e : pilots.on)
    if (e < 0.0 || !std::isfinite(e))
      throw std::invalid_argument("optimal_threshold_empirical: bad ON energy");
  for (double e : pilots.off)
    if (e < 0.0 || !std::isfinite(e))
      throw std::invalid_argument("optimal_threshold_empirical: bad OFF energy");

  std::vector<double> pooled;
  pooled.reserve(pilots.on.size() + pilots.off.size());
  pooled.insert(pooled.end(), pilots.on.begin(), pilots.on.end());
  pooled.insert(pooled.end(), pilots.off.begin(), pilots.off.end());
  std::sort(pooled.begin(), pooled.end());

  std::vector<double> candidates;
  candidates.push_back(0.0);
  for (std::size_t i = 0; i + 1 < pooled.size(); ++i)
    if (pooled[i] < pooled[i + 1])
      candidates.push_back(0.5 * (pooled[i] + pooled[i + 1]));
  candidates.push_back(pooled.back());

  // sorted ON energies make each candidate's accuracy an O(log n) lookup
  std::vector<double> on_sorted = pilots.on;
  std::vector<double> off_sorted = pilots.off;
  std::sort(on_sorted.begin(), on_sorted.end());
  std::sort(off_sorted.begin(), off_sorted.end());
  const double n_on = static_cast<double>(on_sorted.size());
  const double n_off = static_cast<double>(off_sorted.size());

  ThresholdDesign best;
  best.pilot_accuracy = -1.0;
  for (double t : candidates) {
    // ON counted correct when energy > t, OFF when energy <= t
    const auto on_wrong = std::upper_bound(on_sorted.begin(), on_sorted.end(), t) -
                          on_sorted.begin();
    const auto off_right = std::upper_bound(off_sorted.begin(), off_sorted.end(), t) -
                           off_sorted.begin();
    const double acc = 0.5 * ((n_on - static_cast<double>(on_wrong)) / n_on +
                              static_cast<double>(off_right) / n_off);
    if (acc > best.pilot_accuracy + 1e-15) {
      best.pilot_accuracy = acc;
      best.threshold = t;
    }
  }
  return best;
}

enum class ThresholdMethod {
  empirical_pilots,  // calibrate on labelled pilot energies (default)
  analytic_model,    // Gamma crossing with the attack folded into the scales
  clean_analytic,    // Gamma crossing assuming no attack
};

inline std::string to_string(ThresholdMethod m) {
  switch (m) {
    case ThresholdMethod::empirical_pilots: return "empirical_pilots";
    case ThresholdMethod::analytic_model: return "analytic_model";
    case ThresholdMethod::clean_analytic: return "clean_analytic";
  }
  throw std::invalid_argument("to_string: unknown threshold method");
}

inline ThresholdMethod threshold_method_from_string(const std::string& s) {
  if (s == "empirical_pilots") return ThresholdMethod::empirical_pilots;
  if (s == "analytic_model") return ThresholdMethod::analytic_model;
  if (s == "clean_analytic") return ThresholdMethod::clean_analytic;
  throw std::invalid_argument("unknown threshold method: " + s);
}

}  // namespace fhlink
