#include "qqs/detection.hpp"

#include <cmath>
#include <stdexcept>

#include "qqs/error.hpp"
#include "qqs/optics.hpp"
#include "qqs/random.hpp"

namespace qqs {
namespace {

void check_angle(double deg, const std::string& label) {
  if (!(deg >= 0.0 && deg < 180.0)) throw DomainError("plate angle outside [0, 180) in setting " + label);
}

void check_unit(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError(std::string(what) + " must lie in [0, 1]");
}

Matrix2 arm_unitary(const ArmSetting& arm) {
  return jones_matrix(kPi / 2.0, arm.half_deg) * jones_matrix(kPi / 4.0, arm.quarter_deg);
}

double expectation(const Matrix4& rho, const Vector4& v) { return inner(v, apply(rho, v)).real(); }

double clamp01(double p) { return std::min(1.0, std::max(0.0, p)); }

}  // namespace

std::string_view to_string(DetectorId d) {
  switch (d) {
    case DetectorId::D1: return "D1";
    case DetectorId::D2: return "D2";
    case DetectorId::D3: return "D3";
    case DetectorId::D4: return "D4";
  }
  return "?";
}

std::optional<DetectorId> parse_detector(std::string_view text) {
  for (const auto d : {DetectorId::D1, DetectorId::D2, DetectorId::D3, DetectorId::D4})
    if (to_string(d) == text) return d;
  return std::nullopt;
}

DetectorPair detector_pair_for_outcome(int outcome) {
  switch (outcome) {
    case 0: return {DetectorId::D4, DetectorId::D2};
    case 1: return {DetectorId::D4, DetectorId::D1};
    case 2: return {DetectorId::D3, DetectorId::D2};
    case 3: return {DetectorId::D3, DetectorId::D1};
  }
  throw std::out_of_range("outcome index must be in 0..3");
}

int outcome_for_detector_pair(DetectorPair pair) {
  for (int k = 0; k < 4; ++k)
    if (detector_pair_for_outcome(k) == pair) return k;
  throw DomainError("detector pair does not correspond to a coincidence outcome");
}

void ProjectorSetting::validate() const {
  check_angle(arm1.quarter_deg, label);
  check_angle(arm1.half_deg, label);
  check_angle(arm2.quarter_deg, label);
  check_angle(arm2.half_deg, label);
}

Vector2 arm_projection(const ArmSetting& arm) { return apply(arm_unitary(arm).adjoint(), Vector2{1.0, 0.0}); }

Vector4 projection_state(const ProjectorSetting& setting) {
  return kron(arm_projection(setting.arm1), arm_projection(setting.arm2));
}

Matrix4 projector(const ProjectorSetting& setting) {
  const Vector4 v = projection_state(setting);
  return outer(v, v);
}

double coincidence_probability(const QuquartState& state, const ProjectorSetting& setting) {
  return clamp01(std::norm(inner(projection_state(setting), state.amplitudes())));
}

double coincidence_probability(const DensityMatrix& rho, const ProjectorSetting& setting) {
  return clamp01(expectation(rho.matrix(), projection_state(setting)));
}

double singles_probability(const DensityMatrix& rho, Arm arm, AnalyzerOutcome outcome, const ArmSetting& plates) {
  const Matrix2 reduced =
      arm == Arm::One ? partial_trace_second(rho.matrix()) : partial_trace_first(rho.matrix());
  const Vector2 analyzer = outcome == AnalyzerOutcome::H ? Vector2{1.0, 0.0} : Vector2{0.0, 1.0};
  const Vector2 v = apply(arm_unitary(plates).adjoint(), analyzer);
  return clamp01(inner(v, apply(reduced, v)).real());
}

double singles_probability(const QuquartState& state, Arm arm, AnalyzerOutcome outcome, const ArmSetting& plates) {
  return singles_probability(pure_density(state), arm, outcome, plates);
}

void NoiseModel::validate() const {
  if (!(mean_pair_rate >= 0.0) || !std::isfinite(mean_pair_rate)) throw DomainError("mean_pair_rate must be >= 0");
  if (!(accidental_rate >= 0.0) || !std::isfinite(accidental_rate))
    throw DomainError("accidental_rate must be >= 0");
  for (const double e : arm_efficiency) check_unit(e, "arm efficiency");
  for (const double e : detector_efficiency) check_unit(e, "detector efficiency");
  check_unit(depolarization, "depolarization");
}

double NoiseModel::efficiency(DetectorPair pair) const {
  return detector_efficiency[static_cast<std::size_t>(pair.first)] *
         detector_efficiency[static_cast<std::size_t>(pair.second)];
}

double expected_counts(double prob, const NoiseModel& noise, double time_s) {
  if (!(prob >= 0.0 && prob <= 1.0)) throw DomainError("probability must lie in [0, 1]");
  if (!(time_s >= 0.0)) throw DomainError("acquisition time must be >= 0");
  return prob * noise.mean_pair_rate * noise.pair_efficiency() * time_s + noise.accidental_rate * time_s;
}

std::int64_t simulate_counts(double prob, const NoiseModel& noise, double time_s, std::uint64_t seed) {
  const double mean = expected_counts(prob, noise, time_s);
  Rng rng(seed);
  return rng.poisson(mean);
}

Matrix4 receiver_rotation(Basis bob_basis) {
  switch (bob_basis) {
    case Basis::I: return Matrix4::identity();
    case Basis::II: return half_wave_step(22.5).unitary();
    case Basis::III: return quarter_wave_step(135.0).unitary();
    case Basis::IV:
    case Basis::V: break;
  }
  throw DomainError("the product-projection receiver cannot measure entangled basis " +
                    std::string(to_string(bob_basis)));
}

std::array<double, 4> outcome_probabilities(const DensityMatrix& rho, Basis bob_basis) {
  const Matrix4 rotated = [&] {
    const Matrix4 u = receiver_rotation(bob_basis);
    return u * rho.matrix() * u.adjoint();
  }();
  std::array<double, 4> p{};
  for (std::size_t k = 0; k < 4; ++k) p[k] = clamp01(rotated(k, k).real());
  return p;
}

std::array<double, 4> outcome_probabilities(const QuquartState& state, Basis bob_basis) {
  const Vector4 out = apply(receiver_rotation(bob_basis), state.amplitudes());
  std::array<double, 4> p{};
  for (std::size_t k = 0; k < 4; ++k) p[k] = std::norm(out[k]);
  return p;
}

int sample_outcome(const std::array<double, 4>& probs, double u) {
  const double total = probs[0] + probs[1] + probs[2] + probs[3];
  double acc = 0.0;
  int last_nonzero = 0;
  for (int k = 0; k < 4; ++k) {
    // rounding residue of an exact zero is not a possible outcome
    double p = probs[static_cast<std::size_t>(k)];
    if (p <= 1e-14 * total) p = 0.0;
    if (p > 0.0) last_nonzero = k;
    acc += p;
    if (u * total < acc) return k;
  }
  return last_nonzero;
}

DetectorPair qkd_detector_outcome(const QuquartState& state, Basis bob_basis, std::uint64_t seed) {
  Rng rng(seed);
  return detector_pair_for_outcome(sample_outcome(outcome_probabilities(state, bob_basis), rng.uniform()));
}

DetectorPair qkd_detector_outcome(const DensityMatrix& rho, Basis bob_basis, std::uint64_t seed) {
  Rng rng(seed);
  return detector_pair_for_outcome(sample_outcome(outcome_probabilities(rho, bob_basis), rng.uniform()));
}

}  // namespace qqs
