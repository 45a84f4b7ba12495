// Acceptance checks, one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "qqs/dispersion.hpp"
#include "qqs/kernels.hpp"
#include "qqs/optics.hpp"
#include "qqs/polarimetry.hpp"
#include "qqs/random.hpp"
#include "qqs/qkd.hpp"
#include "qqs/scan.hpp"
#include "qqs/tomography.hpp"
#include "support.hpp"

using namespace qqs;
using testing_support::from_oracle;
using testing_support::max_diff;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

Outcome criterion1() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> thickness(0.5, 5.0), angle(0.0, 180.0), dn(-0.02, 0.02);
  const FrequencyModePair modes;
  double worst = 0.0, worst_unitary = 0.0;
  for (int n = 0; n < 100; ++n) {
    const double d = dn(rng);
    const PlateSpec spec{thickness(rng), angle(rng), DispersionModel::constant("random", 1.5 + d, 1.5)};
    const Matrix4 g = dichroic_unitary(spec, modes);
    const double dn_exact = (1.5 + d) - 1.5;
    const double d1 = oracle::pi * dn_exact * spec.thickness_mm * 1e6 / modes.lambda1_nm;
    const double d2 = oracle::pi * dn_exact * spec.thickness_mm * 1e6 / modes.lambda2_nm;
    const auto printed = oracle::printed_plate_matrix(oracle::plate_coefficients(d1, spec.alpha_deg),
                                                      oracle::plate_coefficients(d2, spec.alpha_deg));
    worst = std::max(worst, max_diff(g, printed));
    worst_unitary = std::max(worst_unitary, unitarity_error(g));
  }
  const double t = seconds_since(t0);
  return {worst <= 1e-12 && worst_unitary <= 1e-12 && t < 1.0,
          "max entry deviation " + fmt("%.2e", worst) + ", unitarity error " + fmt("%.2e", worst_unitary) + ", " +
              fmt("%.3f", t) + " s"};
}

Outcome criterion2() {
  const auto t0 = Clock::now();
  const Matrix4 g = dichroic_unitary(kPi / 2.0, kPi, 45.0);
  const QuquartState vv = basis_state(Basis::I, 3), hv = basis_state(Basis::I, 1);
  const double a = std::abs(overlap(vv.transformed(g), hv));
  const double b = std::abs(overlap(hv.transformed(g), vv));
  const BellSwapReport report = bell_swap_check(g);
  const double t = seconds_since(t0);
  const bool ok = a >= 1.0 - 1e-9 && b >= 1.0 - 1e-9 && report.swaps && t < 1.0;
  return {ok, "|<HV|G|VV>| = " + fmt("%.12f", a) + ", |<VV|G|HV>| = " + fmt("%.12f", b) +
                  ", Phi<->Psi " + (report.swaps ? "yes" : "no")};
}

Outcome criterion3() {
  const double p_vv = polarization_degree_p4(basis_state(Basis::I, 3));
  const double p_hv = polarization_degree_p4(basis_state(Basis::I, 1));
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> delta(-20.0, 20.0), angle(0.0, 180.0);
  double drift = 0.0;
  for (int n = 0; n < 100; ++n) {
    const QuquartState x(from_oracle(oracle::random_state(rng)));
    const double d = delta(rng);
    const QuquartState y = x.transformed(dichroic_unitary(d, d, angle(rng)));
    drift = std::max(drift, std::abs(polarization_degree_p4(y) - polarization_degree_p4(x)));
  }
  const double after = polarization_degree_p4(basis_state(Basis::I, 3).transformed(swap_plate_unitary()));
  const bool ok = p_vv == 1.0 && p_hv == 0.0 && drift <= 1e-9 && after <= 1e-12;
  return {ok, "P4(VV) = " + fmt("%g", p_vv) + ", P4(HV) = " + fmt("%g", p_hv) + ", non-dichroic drift " +
                  fmt("%.1e", drift) + ", P4 after swap plate " + fmt("%.1e", after)};
}

Outcome criterion4() {
  ScanConfig cfg;
  cfg.plate = PlateSpec{3.401, 45.0, load_material("quartz")};
  const auto rows = scan_tilt(cfg);
  double dev = 0.0;
  std::vector<double> counts, model;
  double mean = 0.0;
  for (const auto& r : rows) {
    const double s1 = std::sin(r.delta1_rad), c2 = std::cos(r.delta2_rad);
    dev = std::max(dev, std::abs(r.coincidences_norm - s1 * s1 * c2 * c2));
    dev = std::max(dev, std::abs(r.singles_702_norm - s1 * s1));
    counts.push_back(static_cast<double>(r.counts));
    model.push_back(s1 * s1 * c2 * c2 * cfg.noise.mean_pair_rate * cfg.time_s);
    mean += counts.back() / static_cast<double>(rows.size());
  }
  const double r2 = oracle::r_squared(counts, model);
  return {dev < 1e-9 && mean >= 200.0 && r2 > 0.99,
          "max model deviation " + fmt("%.1e", dev) + ", Monte-Carlo R^2 " + fmt("%.4f", r2) + " at " +
              fmt("%.0f", mean) + " counts/bin (" + std::to_string(rows.size()) + " bins)"};
}

Outcome criterion5() {
  double worst = 0.0;
  int pairs = 0;
  for (std::size_t x = 0; x < 3; ++x)
    for (std::size_t y = x + 1; y < 3; ++y)
      for (int s = 0; s < 4; ++s)
        for (int t = 0; t < 4; ++t, ++pairs)
          worst = std::max(worst, std::abs(std::norm(overlap(basis_state(kProductBases[x], s),
                                                             basis_state(kProductBases[y], t))) -
                                           0.25));
  SessionConfig cfg;
  cfg.rounds = 20000;
  cfg.seed = 5;
  std::vector<long> hist(4, 0);
  long mismatched = 0;
  for (const auto& rec : run_session(cfg).records)
    if (rec.alice_basis != rec.bob_basis) {
      ++hist[static_cast<std::size_t>(outcome_for_detector_pair(rec.detector_pair))];
      ++mismatched;
    }
  const double chi = oracle::chi_square_uniform(hist);
  return {pairs == 48 && worst <= 1e-12 && mismatched >= 10000 && chi < oracle::chi2_3dof_1pct,
          std::to_string(pairs) + " overlaps within " + fmt("%.1e", worst) + " of 1/4; chi2 = " + fmt("%.2f", chi) +
              " over " + std::to_string(mismatched) + " mismatched rounds (1% critical " +
              fmt("%.3f", oracle::chi2_3dof_1pct) + ")"};
}

Outcome criterion6() {
  static const DetectorPair table[4] = {{DetectorId::D4, DetectorId::D2},
                                        {DetectorId::D4, DetectorId::D1},
                                        {DetectorId::D3, DetectorId::D2},
                                        {DetectorId::D3, DetectorId::D1}};
  int errors = 0, trials = 0;
  for (const Basis b : kProductBases)
    for (int s = 0; s < 4; ++s) {
      const QuquartState st = alice_prepare(b, s).state;
      for (std::uint64_t seed = 0; seed < 100; ++seed, ++trials)
        if (qkd_detector_outcome(st, b, derive_seed(1000 + static_cast<std::uint64_t>(s), seed)) != table[s])
          ++errors;
    }
  const SessionSummary summary = run_session(SessionConfig{}).summary;
  return {errors == 0 && summary.qber == 0.0 && summary.errors == 0,
          std::to_string(errors) + " errors in " + std::to_string(trials) + " matched trials; session QBER " +
              fmt("%g", summary.qber) + " over " + std::to_string(summary.sifted) + " sifted rounds"};
}

Outcome criterion7() {
  const std::array<std::int64_t, 4> counts{0, 220, 6, 0};
  const auto d = diagonal_estimate(counts);
  const std::array<double, 4> expected{0.0, 0.973, 0.027, 0.0};
  double dev = 0.0;
  for (std::size_t k = 0; k < 4; ++k) dev = std::max(dev, std::abs(d[k] - expected[k]));
  const double f = fidelity(diagonal_density(counts, Basis::III), pure_density(basis_state(Basis::III, 1)));

  const auto t0 = Clock::now();
  std::mt19937_64 rng(99);
  std::vector<QuquartState> states;
  for (int n = 0; n < 200; ++n) states.emplace_back(from_oracle(oracle::random_state(rng)));
  const auto fids = parallel::roundtrip_fidelities(states, 1e6);
  const double t = seconds_since(t0);
  const double worst = *std::min_element(fids.begin(), fids.end());
  const bool ok = dev <= 0.002 && std::abs(f - 0.973) <= 0.002 && worst >= 0.999 && t < 60.0;
  return {ok, "diagonals within " + fmt("%.4f", dev) + ", F(R1L2) = " + fmt("%.4f", f) +
                  "; 200 random states min F = " + fmt("%.6f", worst) + " in " + fmt("%.2f", t) + " s"};
}

Outcome criterion8() {
  const ThicknessSolution s =
      solve_dichroic_thickness(load_material("quartz"), FrequencyModePair{}, 3.2, 3.6);
  const bool ok = s.thickness_mm >= 3.2 && s.thickness_mm <= 3.6 && s.residual1 <= 0.05 && s.residual2 <= 0.05;
  return {ok, "h = " + fmt("%.4f", s.thickness_mm) + " mm (reference 3.406, difference " +
                  fmt("%+.4f", s.thickness_mm - 3.406) + " mm); residuals " + fmt("%.3f", s.residual1) + " wave at 702 nm, " +
                  fmt("%.3f", s.residual2) + " wave at 605 nm"};
}

Outcome criterion9() {
  const auto dir = testing_support::scratch_dir("acceptance");
  const std::vector<std::vector<std::string>> commands = {
      {"scan-tilt"},
      {"tomography", "--target", "III:1", "--count-model", "poisson", "--depolarization", "0.036"},
      {"qkd", "--rounds", "5000", "--depolarization", "0.1", "--records-out", (dir / "qkd.records.jsonl").string()},
      {"qkd", "--rounds", "5000", "--eve", "intercept"},
      {"stokes", "--state", "III:2"},
      {"prepare", "--tilt-deg", "7.5"},
      {"thickness"},
  };
  int identical = 0;
  std::string failed;
  std::ostringstream sink;
  for (std::size_t k = 0; k < commands.size(); ++k) {
    const auto a = dir / ("run" + std::to_string(k) + ".a");
    const auto b = dir / ("run" + std::to_string(k) + ".b");
    std::vector<std::string> args{"--seed", "314", "--out", a.string()};
    args.insert(args.end(), commands[k].begin(), commands[k].end());
    bool ok = cli::run(args, sink, sink) == 0;
    const std::string first = testing_support::slurp(a);
    const std::string records = testing_support::slurp(dir / "qkd.records.jsonl");
    ok = ok && cli::run({"replay", a.string() + ".manifest.json", "--to", b.string()}, sink, sink) == 0;
    ok = ok && !first.empty() && testing_support::slurp(b) == first &&
         testing_support::slurp(dir / "qkd.records.jsonl") == records;
    if (ok)
      ++identical;
    else
      failed += " " + commands[k][0];
  }
  return {identical == static_cast<int>(commands.size()),
          std::to_string(identical) + "/" + std::to_string(commands.size()) +
              " commands replayed byte-for-byte from their manifests" + (failed.empty() ? "" : "; failed:" + failed)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"plate matrix transcription", criterion1},
      {"swap plate and Bell states", criterion2},
      {"polarization degree", criterion3},
      {"tilt scan functional form", criterion4},
      {"mutual unbiasedness", criterion5},
      {"deterministic identification", criterion6},
      {"diagonal estimator and tomography round trip", criterion7},
      {"quartz plate thickness", criterion8},
      {"CLI determinism", criterion9},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << k + 1 << " (" << criteria[k].first
              << "): " << o.detail << '\n';
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << '\n';
  return failures == 0 ? 0 : 1;
}
