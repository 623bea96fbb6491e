// Tests for the experiment harness: energy conventions, BER runs, CDF
// studies, the concentration check, crossover analysis, and the mutual
// information sweep.
//
// Numeric oracles were computed independently (closed forms evaluated by
// hand, reference Monte Carlo at 10^6 samples with a separate generator);
// tolerances are a few standard errors of the trial counts used here.

#include "fhlink/analysis.hpp"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

namespace {

using fhlink::AttackConfig;
using fhlink::AttackKind;
using fhlink::cdf_received_energy;
using fhlink::closed_form_mrc_bpsk_ber;
using fhlink::closed_form_pcross;
using fhlink::EnergyCdfResult;
using fhlink::error_floor_detected;
using fhlink::EveSpatialMode;
using fhlink::ExperimentSpec;
using fhlink::full_model_pcross_mc;
using fhlink::GridKind;
using fhlink::LinkConfig;
using fhlink::lln_check;
using fhlink::LlnReport;
using fhlink::MiCurve;
using fhlink::ModulationScheme;
using fhlink::mutual_information_sweep;
using fhlink::ResultRow;
using fhlink::ResultTable;
using fhlink::run_ber;
using fhlink::run_ber_point;
using fhlink::solve_alpha_half;
using fhlink::surrogate_pcross_mc;

TEST(EnergyConvention, PerSchemeScaling) {
  using fhlink::energy_from_ebn0_db;
  EXPECT_DOUBLE_EQ(energy_from_ebn0_db(ModulationScheme::ook, 1.0, 10.0), 20.0);
  EXPECT_DOUBLE_EQ(energy_from_ebn0_db(ModulationScheme::bpsk, 1.0, 0.0), 2.0);
  EXPECT_DOUBLE_EQ(energy_from_ebn0_db(ModulationScheme::bfsk, 1.0, 10.0), 10.0);
  EXPECT_DOUBLE_EQ(energy_from_ebn0_db(ModulationScheme::ebfsk, 2.0, 0.0), 2.0);
}

TEST(SchemeAttackPairing, MismatchesRejected) {
  using fhlink::check_scheme_attack;
  EXPECT_THROW(
      check_scheme_attack(ModulationScheme::bfsk, AttackKind::convolution),
      std::invalid_argument);
  EXPECT_THROW(check_scheme_attack(ModulationScheme::ook,
                                   AttackKind::convolution_bfsk),
               std::invalid_argument);
  EXPECT_NO_THROW(
      check_scheme_attack(ModulationScheme::ook, AttackKind::convolution));
  EXPECT_NO_THROW(check_scheme_attack(ModulationScheme::ebfsk,
                                      AttackKind::convolution_bfsk));
  EXPECT_NO_THROW(check_scheme_attack(ModulationScheme::bfsk,
                                      AttackKind::wideband_jamming));
  EXPECT_NO_THROW(
      check_scheme_attack(ModulationScheme::bpsk, AttackKind::none));
}

TEST(HopKeyDerivation, SeedBytesAndPurposeSeparation) {
  using fhlink::HopPurpose;
  using fhlink::make_hop_key;
  auto k = make_hop_key(0x1122334455667788ull, HopPurpose::carrier_hop);
  ASSERT_EQ(k.secret.size(), 8u);
  EXPECT_EQ(k.secret[0], 0x88);
  EXPECT_EQ(k.secret[7], 0x11);
  auto t = make_hop_key(0x1122334455667788ull, HopPurpose::tone_pair);
  EXPECT_NE(k.hash(), t.hash());
}

TEST(TableHelpers, StdErrorAndQuantileRows) {
  EXPECT_DOUBLE_EQ(fhlink::proportion_std_error(0.0, 100), 0.0);
  EXPECT_DOUBLE_EQ(fhlink::proportion_std_error(0.5, 100), 0.05);

  ResultTable t = fhlink::cdf_table_from_samples("x", 1, {3.0, 1.0, 2.0});
  ASSERT_EQ(t.rows.size(), 3u);
  EXPECT_DOUBLE_EQ(t.rows[0].x, 1.0);
  EXPECT_NEAR(t.rows[0].estimate, 1.0 / 3.0, 1e-15);
  EXPECT_DOUBLE_EQ(t.rows[2].x, 3.0);
  EXPECT_DOUBLE_EQ(t.rows[2].estimate, 1.0);

  ResultTable q = fhlink::cdf_table_from_samples("x", 1, {4.0, 3.0, 2.0, 1.0},
                                                 /*max_rows=*/2);
  ASSERT_EQ(q.rows.size(), 2u);
  EXPECT_DOUBLE_EQ(q.rows[0].x, 2.0);  // median of the sorted sample
  EXPECT_DOUBLE_EQ(q.rows[0].estimate, 0.5);
  EXPECT_DOUBLE_EQ(q.rows[1].x, 4.0);
  EXPECT_DOUBLE_EQ(q.rows[1].estimate, 1.0);

  ResultTable s;
  s.rows = {{10.0, 1.0, 0.0, 1}, {0.0, 2.0, 0.0, 1}};
  s.sort_rows();
  EXPECT_DOUBLE_EQ(s.rows[0].x, 0.0);
  EXPECT_THROW(fhlink::cdf_table_from_samples("x", 1, {}),
               std::invalid_argument);
}

TEST(CrossoverClosedForm, ExactValuesAndRoot) {
  EXPECT_DOUBLE_EQ(closed_form_pcross(0.0, 9.0), 2.0 / 11.0);
  EXPECT_DOUBLE_EQ(closed_form_pcross(1.0, 9.0), 1.0);
  EXPECT_DOUBLE_EQ(closed_form_pcross(1.0, 5.0), 1.0);
  EXPECT_THROW(closed_form_pcross(-0.1, 9.0), std::invalid_argument);
  EXPECT_THROW(closed_form_pcross(0.5, 0.0), std::invalid_argument);

  EXPECT_NEAR(solve_alpha_half(9.0), 7.0 / 27.0, 1e-15);
  EXPECT_NEAR(closed_form_pcross(solve_alpha_half(9.0), 9.0), 0.5, 1e-12);
  EXPECT_NEAR(closed_form_pcross(solve_alpha_half(5.0), 5.0), 0.5, 1e-12);
  EXPECT_THROW(solve_alpha_half(2.0), std::domain_error);
  EXPECT_THROW(solve_alpha_half(1.0), std::domain_error);
  EXPECT_NO_THROW(solve_alpha_half(2.0000001));

  auto rep = fhlink::alpha_half_report(9.0);
  EXPECT_NEAR(rep.alpha_root, 7.0 / 27.0, 1e-15);
  EXPECT_DOUBLE_EQ(rep.alpha_root_pcross, 0.5);
  EXPECT_NEAR(rep.companion_alpha, 7.0 / 18.0, 1e-15);
  const double a = 7.0 / 18.0;
  EXPECT_NEAR(rep.companion_pcross,
              (2.0 + 2.0 * a * 9.0) / (2.0 + a * 9.0 + 9.0), 1e-15);
}

TEST(CrossoverSurrogateMc, MatchesClosedForm) {
  const std::uint64_t n = 200000;
  for (double alpha : {7.0 / 27.0, 0.3, 0.8}) {
    auto est = surrogate_pcross_mc(alpha, 9.0, n, /*seed=*/3, /*threads=*/2);
    const double expected = closed_form_pcross(alpha, 9.0);
    EXPECT_NEAR(est.value, expected, 4.0 * est.std_error + 1e-12)
        << "alpha=" << alpha;
    EXPECT_EQ(est.trials, n);
  }
}

TEST(CrossoverFullModelMc, MatchesReferenceValues) {
  // Independent 10^6-sample reference runs give 0.6406 at alpha = 7/27 and
  // 0.7239 at alpha = 7/18 (theta = 9). The balanced split of the Gaussian
  // surrogate does NOT balance the product-channel model.
  const std::uint64_t n = 300000;
  auto root = full_model_pcross_mc(7.0 / 27.0, 9.0, n, 5, 2);
  EXPECT_NEAR(root.value, 0.6406, 0.005);
  auto companion = full_model_pcross_mc(7.0 / 18.0, 9.0, n, 5, 2);
  EXPECT_NEAR(companion.value, 0.7239, 0.005);
  EXPECT_GT(companion.value, root.value);
}

TEST(MiSweep, CurveShapeAndArgmin) {
  std::vector<double> alphas;
  for (int k = 1; k <= 19; ++k) alphas.push_back(0.05 * k);
  auto curves = mutual_information_sweep({9.0}, alphas, 50000, 7, 2);
  ASSERT_EQ(curves.size(), 1u);
  const MiCurve& c = curves[0];
  ASSERT_EQ(c.points.size(), 19u);
  // crossover grows with alpha under the relay model
  EXPECT_LT(c.points.front().p_cross, c.points.back().p_cross);
  // full energy on the main tone maximizes leakage, so the minimum sits at a
  // small alpha
  EXPECT_GE(c.argmin_alpha, 0.05 - 1e-12);
  EXPECT_LE(c.argmin_alpha, 0.35 + 1e-12);
  double argmin_mi = 2.0;
  for (const auto& p : c.points) {
    EXPECT_GE(p.p_cross, 0.0);
    EXPECT_LE(p.p_cross, 1.0);
    EXPECT_LE(p.mi, 1.0 + 1e-12);
    if (p.alpha == c.argmin_alpha) argmin_mi = p.mi;
  }
  EXPECT_LT(argmin_mi, c.points.back().mi);
  ResultTable t = c.table(7);
  EXPECT_EQ(t.rows.size(), 19u);
  EXPECT_EQ(t.kind, "mi-sweep");
}

TEST(MiStdError, DeltaMethodEndpoints) {
  using fhlink::mi_std_error_from_p;
  EXPECT_DOUBLE_EQ(mi_std_error_from_p(0.0, 0.01), 0.0);
  EXPECT_DOUBLE_EQ(mi_std_error_from_p(1.0, 0.01), 0.0);
  EXPECT_DOUBLE_EQ(mi_std_error_from_p(0.5, 0.01), 0.0);
  EXPECT_NEAR(mi_std_error_from_p(0.11, 0.001),
              std::fabs(std::log2(0.89 / 0.11)) * 0.001, 1e-15);
}

TEST(EnergyCdf, MeanIsBudgetInvariant) {
  // eta = 0: pure direct path, statistic is a unit-mean chi-square average.
  EnergyCdfResult direct =
      cdf_received_energy(0.0, 2, 1, EveSpatialMode::single, 100000, 11, 2);
  EXPECT_NEAR(direct.sample_mean, 1.0, 0.01);
  // eta = 100: pure relay path, heavier tails but the same unit mean.
  EnergyCdfResult relay =
      cdf_received_energy(100.0, 1, 1, EveSpatialMode::single, 100000, 11, 2);
  EXPECT_NEAR(relay.sample_mean, 1.0, 0.03);
  // split budget keeps the mean too (cross term has zero mean)
  EnergyCdfResult half =
      cdf_received_energy(50.0, 2, 1, EveSpatialMode::single, 100000, 11, 2);
  EXPECT_NEAR(half.sample_mean, 1.0, 0.02);
  // the table is a CDF: x and F both nondecreasing, F ends at 1
  const auto& rows = relay.table.rows;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_GE(rows[i].x, rows[i - 1].x);
    EXPECT_GE(rows[i].estimate, rows[i - 1].estimate);
  }
  EXPECT_DOUBLE_EQ(rows.back().estimate, 1.0);
  EXPECT_THROW(
      cdf_received_energy(120.0, 1, 1, EveSpatialMode::single, 100, 1, 1),
      std::invalid_argument);
  EXPECT_THROW(
      cdf_received_energy(50.0, 1, 2, EveSpatialMode::single, 100, 1, 1),
      std::invalid_argument);
}

double table_cdf_at(const ResultTable& t, double x) {
  double f = 0.0;
  for (const auto& r : t.rows) {
    if (r.x <= x) f = r.estimate;
    else break;
  }
  return f;
}

TEST(ProductCdf, MoreRelayAntennasConcentrateTheGain) {
  // P(|combined relay gain|^2 <= 0.01): about 0.102 with one antenna and
  // 0.0196 with four (independent reference runs), so deep fades are much
  // rarer with more antennas.
  auto one = fhlink::multi_eve_product_cdf(1, 100000, 13, 2);
  auto four = fhlink::multi_eve_product_cdf(4, 100000, 13, 2);
  const double f1 = table_cdf_at(one.table, 0.01);
  const double f4 = table_cdf_at(four.table, 0.01);
  EXPECT_NEAR(f1, 0.102, 0.01);
  EXPECT_NEAR(f4, 0.0196, 0.006);
  EXPECT_GT(f1, f4 + 0.05);
}

TEST(LlnCheck, ProbabilityClimbsWithAntennas) {
  LlnReport rep = lln_check({1, 16}, 0.1, 4000, 1.0, 1.0, 17, 2);
  ASSERT_EQ(rep.rows.size(), 2u);
  // independent 10^4-trial reference: 0.7615 at one antenna, 0.9875 at 16
  EXPECT_NEAR(rep.rows[0].probability, 0.7615, 0.035);
  EXPECT_NEAR(rep.rows[1].probability, 0.9875, 0.015);
  EXPECT_GT(rep.rows[1].probability, rep.rows[0].probability);
  EXPECT_EQ(rep.implied_n_rx, 16);  // first count reaching 1 - epsilon = 0.9
  EXPECT_THROW(lln_check({}, 0.1, 100, 1.0, 1.0, 1, 1), std::invalid_argument);
  EXPECT_THROW(lln_check({1}, 0.0, 100, 1.0, 1.0, 1, 1),
               std::invalid_argument);
}

TEST(MrcClosedForm, IdentitiesAndReferenceValues) {
  // L = 1: BER = (1 - mu)/2 exactly.
  for (double g : {0.5, 2.0, 20.0}) {
    const double mu = std::sqrt(g / (1.0 + g));
    EXPECT_NEAR(closed_form_mrc_bpsk_ber(g, 1), 0.5 * (1.0 - mu), 1e-15);
  }
  // L = 2: BER = lo^2 * (1 + 2*hi).
  const double g = 2.0;
  const double mu = std::sqrt(g / (1.0 + g));
  const double lo = 0.5 * (1.0 - mu), hi = 0.5 * (1.0 + mu);
  EXPECT_NEAR(closed_form_mrc_bpsk_ber(2.0, 2), lo * lo * (1.0 + 2.0 * hi),
              1e-15);
  // frozen references (mean branch SNR 2 at "0 dB", 20 at "10 dB")
  EXPECT_NEAR(closed_form_mrc_bpsk_ber(2.0, 1), 0.0917517, 1e-6);
  EXPECT_NEAR(closed_form_mrc_bpsk_ber(2.0, 2), 0.0237103, 1e-6);
  EXPECT_NEAR(closed_form_mrc_bpsk_ber(20.0, 2), 4.32106e-4, 1e-8);
  EXPECT_NEAR(closed_form_mrc_bpsk_ber(200.0, 2), 4.64869e-6, 1e-10);
  EXPECT_THROW(closed_form_mrc_bpsk_ber(0.0, 2), std::invalid_argument);
  EXPECT_THROW(closed_form_mrc_bpsk_ber(1.0, 0), std::invalid_argument);
}

ExperimentSpec small_ook_spec() {
  ExperimentSpec spec;
  spec.link.scheme = ModulationScheme::ook;
  spec.link.n_bands = 8;
  spec.link.n_rx = 2;
  spec.link.pilots_per_frame = 4;
  spec.link.calibration_frames = 1;
  spec.attack.kind = AttackKind::convolution;
  spec.attack.alpha = 1.0;
  spec.attack.theta = 9.0;
  spec.grid = {10.0};
  spec.trials = 4000;
  spec.seed = 21;
  return spec;
}

TEST(RunBer, ThreadCountInvariance) {
  ExperimentSpec spec = small_ook_spec();
  spec.threads = 1;
  auto p1 = run_ber_point(spec, 0);
  spec.threads = 3;
  auto p3 = run_ber_point(spec, 0);
  EXPECT_EQ(p1.errors, p3.errors);
  EXPECT_DOUBLE_EQ(p1.ber, p3.ber);
  EXPECT_DOUBLE_EQ(p1.threshold, p3.threshold);

  ExperimentSpec fsk;
  fsk.link.scheme = ModulationScheme::ebfsk;
  fsk.link.n_bands = 8;
  fsk.link.n_rx = 1;
  fsk.attack.kind = AttackKind::convolution_bfsk;
  fsk.attack.alpha = 0.25;
  fsk.grid = {5.0, 10.0};
  fsk.trials = 3000;
  fsk.seed = 23;
  fsk.threads = 1;
  ResultTable t1 = run_ber(fsk);
  fsk.threads = 4;
  ResultTable t4 = run_ber(fsk);
  ASSERT_EQ(t1.rows.size(), t4.rows.size());
  for (std::size_t i = 0; i < t1.rows.size(); ++i) {
    EXPECT_DOUBLE_EQ(t1.rows[i].estimate, t4.rows[i].estimate);
  }
}

TEST(RunBer, DeterministicInSeedAndSensitiveToIt) {
  ExperimentSpec spec = small_ook_spec();
  auto a = run_ber_point(spec, 0);
  auto b = run_ber_point(spec, 0);
  EXPECT_EQ(a.errors, b.errors);
  EXPECT_DOUBLE_EQ(a.threshold, b.threshold);
  spec.seed = 22;
  auto c = run_ber_point(spec, 0);
  EXPECT_NE(a.errors, c.errors);  // 4000 attacked trials: collision is ~impossible
}

TEST(RunBer, OokThresholdPositiveBpskZero) {
  ExperimentSpec spec = small_ook_spec();
  auto p = run_ber_point(spec, 0);
  EXPECT_GT(p.threshold, 0.0);
  EXPECT_DOUBLE_EQ(p.e_alice, 20.0);  // 10 dB under the flat-scheme convention

  spec.link.scheme = ModulationScheme::bpsk;
  auto q = run_ber_point(spec, 0);
  EXPECT_DOUBLE_EQ(q.threshold, 0.0);
  EXPECT_THROW(run_ber_point(spec, 5), std::out_of_range);
}

TEST(RunBer, NoiselessEnergyGridIsErrorFree) {
  // sigma2 -> 0 with an explicit energy grid: pilot OFF energies are exactly
  // zero, the learned cut separates perfectly, and the BER is exactly 0.
  ExperimentSpec spec;
  spec.link.scheme = ModulationScheme::ook;
  spec.link.n_bands = 4;
  spec.link.n_rx = 2;
  spec.link.sigma2_bob = 0.0;
  spec.link.sigma2_eve = 0.0;
  spec.link.pilots_per_frame = 4;
  spec.link.calibration_frames = 1;
  spec.attack.kind = AttackKind::none;
  spec.grid = {1.0, 4.0};
  spec.grid_kind = GridKind::energy;
  spec.trials = 2000;
  spec.seed = 29;
  ResultTable t = run_ber(spec);
  EXPECT_DOUBLE_EQ(t.rows[0].estimate, 0.0);
  EXPECT_DOUBLE_EQ(t.rows[1].estimate, 0.0);
}

TEST(RunBer, CleanLinkImprovesWithEnergy) {
  ExperimentSpec spec = small_ook_spec();
  spec.attack.kind = AttackKind::none;
  spec.grid = {0.0, 10.0};
  spec.trials = 20000;
  ResultTable t = run_ber(spec);
  EXPECT_GT(t.rows[0].estimate, 2.0 * t.rows[1].estimate);
}

TEST(RunBer, InvalidCombinationsRejected) {
  ExperimentSpec spec = small_ook_spec();
  spec.link.scheme = ModulationScheme::bfsk;  // keeps attack = convolution
  EXPECT_THROW(spec.validate(), std::invalid_argument);
  spec = small_ook_spec();
  spec.grid.clear();
  EXPECT_THROW(spec.validate(), std::invalid_argument);
  spec = small_ook_spec();
  spec.grid_kind = GridKind::energy;
  spec.grid = {0.0};
  EXPECT_THROW(spec.validate(), std::invalid_argument);
  spec = small_ook_spec();
  spec.trials = 0;
  EXPECT_THROW(spec.validate(), std::invalid_argument);
  spec = small_ook_spec();
  spec.eta_percent = 150.0;
  EXPECT_THROW(spec.validate(), std::invalid_argument);
}

TEST(ErrorFloor, PredicateReadsTheTwoGridPoints) {
  ResultTable t;
  t.rows = {{20.0, 0.10, 0.0, 1}, {30.0, 0.09, 0.0, 1}};
  EXPECT_TRUE(error_floor_detected(t));  // 0.09 >= 0.8 * 0.10
  t.rows = {{20.0, 0.10, 0.0, 1}, {30.0, 0.01, 0.0, 1}};
  EXPECT_FALSE(error_floor_detected(t));
  t.rows = {{20.0, 0.10, 0.0, 1}};
  EXPECT_THROW(error_floor_detected(t), std::invalid_argument);
}

}  // namespace
