#include <doctest.h>

#include <sstream>

#include "qqs/dispersion.hpp"
#include "qqs/error.hpp"
#include "qqs/kernels.hpp"
#include "qqs/qkd.hpp"
#include "qqs/scan.hpp"
#include "support.hpp"

using namespace qqs;

namespace {

ScanConfig quartz_scan() {
  ScanConfig cfg;
  cfg.plate = PlateSpec{3.401, 45.0, load_material("quartz")};
  return cfg;
}

}  // namespace

TEST_SUITE("scan") {
  TEST_CASE("noiseless rows follow the two-mode plate model") {
    const auto rows = scan_tilt(quartz_scan());
    CHECK(rows.size() == 251);
    for (const auto& r : rows) {
      const double s1 = std::sin(r.delta1_rad), c2 = std::cos(r.delta2_rad);
      CHECK(std::abs(r.coincidences_norm - s1 * s1 * c2 * c2) <= 1e-9);
      CHECK(std::abs(r.singles_702_norm - s1 * s1) <= 1e-9);
    }
    CHECK(rows.front().theta_deg == 0.0);
    CHECK(rows.back().theta_deg == doctest::Approx(25.0));
  }

  TEST_CASE("retardance grows with tilt") {
    const auto rows = scan_tilt(quartz_scan());
    for (std::size_t k = 1; k < rows.size(); ++k) CHECK(std::abs(rows[k].delta1_rad) > std::abs(rows[k - 1].delta1_rad));
  }

  TEST_CASE("Monte-Carlo counts track the model") {
    ScanConfig cfg = quartz_scan();
    cfg.theta_step_deg = 0.25;
    const auto rows = scan_tilt(cfg);
    std::vector<double> counts, model;
    double mean = 0.0;
    for (const auto& r : rows) {
      counts.push_back(static_cast<double>(r.counts));
      model.push_back(r.coincidences_norm * cfg.noise.mean_pair_rate * cfg.time_s);
      mean += counts.back() / static_cast<double>(rows.size());
    }
    CHECK(mean >= 200.0);
    CHECK(oracle::r_squared(counts, model) > 0.99);
  }

  TEST_CASE("zero-width range gives one row") {
    ScanConfig cfg = quartz_scan();
    cfg.theta_start_deg = cfg.theta_stop_deg = 7.5;
    CHECK(scan_tilt(cfg).size() == 1);
  }

  TEST_CASE("invalid ranges") {
    ScanConfig cfg = quartz_scan();
    cfg.theta_step_deg = 0.0;
    CHECK_THROWS_AS(scan_tilt(cfg), DomainError);
    cfg = quartz_scan();
    cfg.theta_stop_deg = -1.0;
    CHECK_THROWS_AS(scan_tilt(cfg), DomainError);
    cfg = quartz_scan();
    cfg.theta_stop_deg = 75.0;
    CHECK_THROWS_AS(scan_tilt(cfg), DomainError);
  }

  TEST_CASE("CSV output") {
    ScanConfig cfg = quartz_scan();
    cfg.theta_stop_deg = 0.2;
    std::ostringstream a, b;
    write_scan_csv(a, scan_tilt(cfg));
    write_scan_csv(b, scan_tilt(cfg));
    const std::string text = a.str();
    CHECK(text == b.str());
    CHECK(text.rfind("theta_deg,delta1_rad,delta2_rad,singles_702_norm,coincidences_norm,counts\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 4);
  }
}

TEST_SUITE("kernels") {
  TEST_CASE("serial and parallel scans agree") {
    ScanConfig cfg = quartz_scan();
    cfg.noise.depolarization = 0.05;
    CHECK(scan_tilt(cfg, Execution::Serial) == scan_tilt(cfg, Execution::Parallel));
  }

  TEST_CASE("serial and parallel sessions agree") {
    SessionConfig cfg;
    cfg.rounds = 5000;
    cfg.noise.depolarization = 0.2;
    CHECK(run_session(cfg, Execution::Serial).records == run_session(cfg, Execution::Parallel).records);
    const EveConfig eve;
    CHECK(run_intercept_resend(cfg, eve, Execution::Serial).records ==
          run_intercept_resend(cfg, eve, Execution::Parallel).records);
  }

  TEST_CASE("serial and parallel tomography round trips agree") {
    std::vector<QuquartState> states;
    for (const Basis b : kAllBases)
      for (int s = 0; s < 4; ++s) states.push_back(basis_state(b, s));
    CHECK(serial::roundtrip_fidelities(states, 1e6) == parallel::roundtrip_fidelities(states, 1e6));
    CHECK(parallel::max_threads() >= 1);
  }
}
