#pragma once

// Coincidence detection: the Brown-Twiss tomography station (one analyzer arm
// per frequency mode) and the four-detector receiver used for key exchange.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "qqs/linalg.hpp"
#include "qqs/states.hpp"

namespace qqs {

// Receiver detectors: D4 = H at lambda1, D3 = V at lambda1, D2 = H at lambda2,
// D1 = V at lambda2.
enum class DetectorId { D1, D2, D3, D4 };

std::string_view to_string(DetectorId d);
std::optional<DetectorId> parse_detector(std::string_view text);

// (lambda1 detector, lambda2 detector)
using DetectorPair = std::pair<DetectorId, DetectorId>;

// Outcome index in the (HH, HV, VH, VV) ordering -> firing pair:
// 0 -> (D4, D2), 1 -> (D4, D1), 2 -> (D3, D2), 3 -> (D3, D1).
DetectorPair detector_pair_for_outcome(int outcome);
int outcome_for_detector_pair(DetectorPair pair);

// Zero-order quarter-wave then half-wave plate in front of a fixed analyzer
// that transmits H. Angles in degrees, [0, 180).
struct ArmSetting {
  double quarter_deg = 0.0;
  double half_deg = 0.0;

  bool operator==(const ArmSetting&) const = default;
};

struct ProjectorSetting {
  std::string label;
  ArmSetting arm1;  // 702 nm, transmitted arm
  ArmSetting arm2;  // 605 nm

  // Throws DomainError for angles outside [0, 180).
  void validate() const;
};

// Single-photon state transmitted by an arm: (U_half U_quarter)^dagger |H>.
Vector2 arm_projection(const ArmSetting& arm);
Vector4 projection_state(const ProjectorSetting& setting);
Matrix4 projector(const ProjectorSetting& setting);

double coincidence_probability(const QuquartState& state, const ProjectorSetting& setting);
double coincidence_probability(const DensityMatrix& rho, const ProjectorSetting& setting);

enum class Arm { One = 1, Two = 2 };
enum class AnalyzerOutcome { H, V };

// Marginal probability that the photon in `arm` exits the analyzer in
// `outcome` after that arm's plates, with the other photon traced out.
double singles_probability(const DensityMatrix& rho, Arm arm, AnalyzerOutcome outcome, const ArmSetting& plates = {});
double singles_probability(const QuquartState& state, Arm arm, AnalyzerOutcome outcome,
                           const ArmSetting& plates = {});

struct NoiseModel {
  double mean_pair_rate = 40.0;   // pairs per second reaching the analyzers
  double accidental_rate = 0.0;   // accidental coincidences per second
  std::array<double, 2> arm_efficiency{1.0, 1.0};              // tomography arms 1, 2
  std::array<double, 4> detector_efficiency{1.0, 1.0, 1.0, 1.0};  // receiver D1..D4
  double depolarization = 0.0;    // applied to the state before measurement

  // Throws DomainError when a field leaves its range.
  void validate() const;
  double pair_efficiency() const { return arm_efficiency[0] * arm_efficiency[1]; }
  double efficiency(DetectorPair pair) const;
};

// prob * mean_pair_rate * pair_efficiency * time + accidental_rate * time
double expected_counts(double prob, const NoiseModel& noise, double time_s);

// Poisson draw around expected_counts, deterministic in seed.
std::int64_t simulate_counts(double prob, const NoiseModel& noise, double time_s, std::uint64_t seed);

// Basis rotation in front of the receiver. I: none; II: half-wave at 22.5 deg;
// III: quarter-wave at 135 deg (the inverse of the 45 deg preparation plate).
// Throws DomainError for the entangled bases IV and V.
Matrix4 receiver_rotation(Basis bob_basis);

// Joint H/V outcome probabilities (HH, HV, VH, VV) behind the receiver rotation.
std::array<double, 4> outcome_probabilities(const DensityMatrix& rho, Basis bob_basis);
std::array<double, 4> outcome_probabilities(const QuquartState& state, Basis bob_basis);

// Index drawn from a discrete distribution with one uniform variate.
int sample_outcome(const std::array<double, 4>& probs, double u);

DetectorPair qkd_detector_outcome(const QuquartState& state, Basis bob_basis, std::uint64_t seed);
DetectorPair qkd_detector_outcome(const DensityMatrix& rho, Basis bob_basis, std::uint64_t seed);

}  // namespace qqs
