// frequency_plan.hpp - carrier grid and FSK tone geometry.
//
// N carriers spaced delta apart, each wider than the signal bandwidth (guard).
// Every carrier f_c owes two FSK tones f_c - beta and f_c + beta, so the tone
// set has 2N entries. Tone indices: tone 2i is carrier i's lower tone (-beta),
// tone 2i+1 its upper tone (+beta).
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace fhlink {

struct FrequencyPlan {
  int n_carriers = 0;
  double delta = 0.0;  // carrier spacing
  double beta = 0.0;   // tone offset from carrier, 0 < beta < delta/2
  double guard = 0.0;  // minimum carrier separation (delta > guard)

  int tone_count() const { return 2 * n_carriers; }
  double carrier_frequency(int carrier) const { return carrier * delta; }

  int tone_carrier(int tone) const { return tone >> 1; }
  // -1 for the lower tone, +1 for the upper.
  int tone_side(int tone) const { return (tone & 1) ? 1 : -1; }
  double tone_frequency(int tone) const {
    return carrier_frequency(tone_carrier(tone)) + tone_side(tone) * beta;
  }
  // The other tone of the same carrier, always exactly 2*beta away.
  int partner_tone(int tone) const { return tone ^ 1; }

  // Tones whose frequency is exactly 2*beta away from `tone`. Always contains
  // the same-carrier partner; when delta == 4*beta the tone grid is equally
  // spaced and interior tones gain a neighbour on the adjacent carrier.
  // Computed in carrier/side integer arithmetic, no floating-point fuzz.
  std::vector<int> side_adjacent_tones(int tone) const {
    check_tone(tone);
    std::vector<int> out;
    out.push_back(partner_tone(tone));
    if (delta == 4.0 * beta) {
      int c = tone_carrier(tone);
      if (tone_side(tone) > 0 && c + 1 < n_carriers) out.push_back(2 * (c + 1));
      if (tone_side(tone) < 0 && c - 1 >= 0) out.push_back(2 * (c - 1) + 1);
    }
    return out;
  }

  bool tones_side_adjacent(int a, int b) const {
    check_tone(a);
    check_tone(b);
    if (a == b) return false;
    if (tone_carrier(a) == tone_carrier(b)) return true;  // partners, 2*beta apart
    if (delta != 4.0 * beta) return false;
    int dc = tone_carrier(b) - tone_carrier(a);
    if (dc == 1) return tone_side(a) > 0 && tone_side(b) < 0;
    if (dc == -1) return tone_side(a) < 0 && tone_side(b) > 0;
    return false;
  }

  void check_tone(int tone) const {
    if (tone < 0 || tone >= tone_count())
      throw std::out_of_range("FrequencyPlan: tone index out of range");
  }
  void check_band(int band) const {
    if (band < 0 || band >= n_carriers)
      throw std::out_of_range("FrequencyPlan: band index out of range");
  }
};

inline FrequencyPlan build_frequency_plan(int n_carriers, double delta,
                                          double beta, double guard) {
  if (n_carriers < 1)
    throw std::invalid_argument("frequency plan: need at least one carrier");
  if (!(delta > 0.0))
    throw std::invalid_argument("frequency plan: carrier spacing must be positive");
  if (!(guard > 0.0))
    throw std::invalid_argument("frequency plan: guard bandwidth must be positive");
  if (!(delta > guard))
    throw std::invalid_argument(
        "frequency plan: carrier spacing must exceed the guard bandwidth");
  if (!(beta > 0.0 && beta < delta / 2.0))
    throw std::invalid_argument(
        "frequency plan: tone offset must satisfy 0 < beta < delta/2");
  return FrequencyPlan{n_carriers, delta, beta, guard};
}

}  // namespace fhlink
