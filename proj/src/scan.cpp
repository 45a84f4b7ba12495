#include "qqs/scan.hpp"

#include <cmath>
#include <ostream>

#include "qqs/error.hpp"
#include "qqs/io.hpp"
#include "qqs/kernels.hpp"
#include "qqs/random.hpp"

namespace qqs {

void ScanConfig::validate() const {
  plate.validate();
  modes.validate();
  noise.validate();
  if (!(theta_step_deg > 0.0)) throw DomainError("theta step must be positive");
  if (!(theta_stop_deg >= theta_start_deg)) throw DomainError("theta range is reversed");
  if (!(std::abs(theta_start_deg) < 60.0) || !(std::abs(theta_stop_deg) < 60.0))
    throw DomainError("tilt angles must satisfy |theta| < 60 deg");
  if (!(time_s > 0.0)) throw DomainError("acquisition time must be positive");
}

std::vector<double> ScanConfig::angles() const {
  // Index-based so the grid does not accumulate rounding drift.
  const auto n = static_cast<std::size_t>(std::floor((theta_stop_deg - theta_start_deg) / theta_step_deg + 1e-9));
  std::vector<double> out;
  out.reserve(n + 1);
  for (std::size_t i = 0; i <= n; ++i) out.push_back(theta_start_deg + static_cast<double>(i) * theta_step_deg);
  return out;
}

QuquartState scan_source_state(const FrequencyModePair& modes) { return basis_state(Basis::I, 3, modes); }

ProjectorSetting h1v2_setting() { return {"HV", ArmSetting{0.0, 0.0}, ArmSetting{0.0, 45.0}}; }

ScanRow scan_row(const ScanConfig& cfg, double theta_deg, double n_eff, std::size_t index) {
  const PlateSpec tilted = effective_spec_under_tilt(cfg.plate, TiltConfig{theta_deg, n_eff});
  const QuquartState out = scan_source_state(cfg.modes).transformed(dichroic_unitary(tilted, cfg.modes));
  const DensityMatrix rho = pure_density(out).depolarized(cfg.noise.depolarization);

  ScanRow row;
  row.theta_deg = theta_deg;
  row.delta1_rad = optical_thickness(tilted, cfg.modes.lambda1_nm);
  row.delta2_rad = optical_thickness(tilted, cfg.modes.lambda2_nm);
  row.singles_702_norm = singles_probability(rho, Arm::One, AnalyzerOutcome::H);
  row.coincidences_norm = coincidence_probability(rho, h1v2_setting());
  row.counts = simulate_counts(row.coincidences_norm, cfg.noise, cfg.time_s, derive_seed(cfg.seed, index));
  return row;
}

std::vector<ScanRow> scan_tilt(const ScanConfig& cfg, Execution exec) {
  cfg.validate();
  const double n_eff = cfg.n_eff > 0.0 ? cfg.n_eff : mean_index(cfg.plate.material, cfg.modes);
  const auto angles = cfg.angles();
  return exec == Execution::Serial ? serial::scan_rows(cfg, angles, n_eff) : parallel::scan_rows(cfg, angles, n_eff);
}

void write_scan_csv(std::ostream& out, const std::vector<ScanRow>& rows) {
  out << "theta_deg,delta1_rad,delta2_rad,singles_702_norm,coincidences_norm,counts\n";
  for (const auto& r : rows)
    out << format_number(r.theta_deg) << ',' << format_number(r.delta1_rad) << ',' << format_number(r.delta2_rad)
        << ',' << format_number(r.singles_702_norm) << ',' << format_number(r.coincidences_norm) << ',' << r.counts
        << '\n';
}

}  // namespace qqs
