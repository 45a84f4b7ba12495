#pragma once

// Tilt scan: the effective dichroic plate is tilted through a range of angles
// while the analyzers select |H1 V2>. Reproduces the singles (sin^2 d1) and
// coincidence (sin^2 d1 cos^2 d2) curves versus tilt.

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "qqs/detection.hpp"
#include "qqs/optics.hpp"

namespace qqs {

enum class Execution { Serial, Parallel };

struct ScanConfig {
  PlateSpec plate;              // base (untilted) effective plate
  FrequencyModePair modes;
  double theta_start_deg = 0.0;
  double theta_stop_deg = 25.0;
  double theta_step_deg = 0.1;
  double n_eff = 0.0;           // <= 0: mean index of the plate material
  NoiseModel noise;
  double time_s = 30.0;         // acquisition time per tilt angle
  std::uint64_t seed = 1;

  // Throws DomainError on an empty/reversed range or |theta| >= 60 deg.
  void validate() const;
  std::vector<double> angles() const;
};

struct ScanRow {
  double theta_deg = 0.0;
  double delta1_rad = 0.0;
  double delta2_rad = 0.0;
  double singles_702_norm = 0.0;
  double coincidences_norm = 0.0;
  std::int64_t counts = 0;

  bool operator==(const ScanRow&) const = default;
};

// Input state of the scan, |V1 V2>.
QuquartState scan_source_state(const FrequencyModePair& modes);

// Analyzer setting selecting |H1 V2>.
ProjectorSetting h1v2_setting();

// Row i is computed from stream i of cfg.seed.
ScanRow scan_row(const ScanConfig& cfg, double theta_deg, double n_eff, std::size_t index);

std::vector<ScanRow> scan_tilt(const ScanConfig& cfg, Execution exec = Execution::Parallel);

// Header plus one line per row, 9 significant digits.
void write_scan_csv(std::ostream& out, const std::vector<ScanRow>& rows);

}  // namespace qqs
