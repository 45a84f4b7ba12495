#pragma once

// Retardation plates acting on ququarts. A plate applies one SU(2) Jones
// matrix per frequency mode, so its ququart unitary is jones(l1) (x) jones(l2).

#include <array>
#include <string>
#include <vector>

#include "qqs/dispersion.hpp"
#include "qqs/linalg.hpp"
#include "qqs/states.hpp"

namespace qqs {

struct PlateSpec {
  double thickness_mm = 3.401;
  double alpha_deg = 45.0;  // optical axis relative to vertical
  DispersionModel material = DispersionModel::constant("unset", 1.5, 1.5);

  void validate() const;
};

struct JonesCoefficients {
  Complex t;
  Complex r;
};

// t = cos d + i sin d cos 2a, r = i sin d sin 2a, with d the optical thickness
// (half the retardance) and a the axis orientation.
JonesCoefficients jones_coefficients(double delta, double alpha_deg);

// [[t, r], [-r*, t*]]
Matrix2 jones_matrix(const JonesCoefficients& c);
Matrix2 jones_matrix(double delta, double alpha_deg);

// delta = pi (n_o - n_e) h / lambda, signed. Throws DomainError when lambda is
// outside the material's validity window.
double optical_thickness(const PlateSpec& spec, double lambda_nm);

Matrix2 jones(const PlateSpec& spec, double lambda_nm);

Matrix4 dichroic_unitary(const PlateSpec& spec, const FrequencyModePair& modes);
Matrix4 dichroic_unitary(double delta1, double delta2, double alpha_deg);

// The ideal swap plate: half-wave at lambda1, full-wave at lambda2, at 45 deg.
// Acts as |H1><V1| + |V1><H1| on photon 1 (up to global phase).
Matrix4 swap_plate_unitary();

struct TiltConfig {
  double theta_deg = 0.0;
  double n_eff = 1.55;
};

// (n_o + n_e)/2 at the mean of the two wavelengths.
double mean_index(const DispersionModel& material, const FrequencyModePair& modes);

// h / cos(asin(sin(theta) / n_eff)). Throws DomainError for |theta| >= 60 deg
// or n_eff <= 1.
PlateSpec effective_spec_under_tilt(const PlateSpec& spec, const TiltConfig& tilt);

// One element of a preparation or analysis sequence. delta1/delta2 are the
// optical thicknesses seen by the two frequency modes.
struct PlateStep {
  std::string label;
  double delta1 = 0.0;
  double delta2 = 0.0;
  double alpha_deg = 0.0;

  Matrix4 unitary() const;
  bool operator==(const PlateStep&) const = default;
};

using PlateRecipe = std::vector<PlateStep>;

PlateStep dichroic_step(double delta1, double delta2, double alpha_deg);
// Zero-order plates: the same retardance at both wavelengths.
PlateStep half_wave_step(double alpha_deg);
PlateStep quarter_wave_step(double alpha_deg);

// Product of the steps in application order (first step acts first).
Matrix4 recipe_unitary(const PlateRecipe& recipe);

struct BellMapping {
  BellState from = BellState::PhiPlus;
  BellState to = BellState::PhiPlus;
  Complex phase{1.0, 0.0};  // G|from> = phase |to>
  bool maps_to_bell = false;
};

struct BellSwapReport {
  bool swaps = false;     // every Phi goes to a Psi and vice versa
  bool involutive = false;  // G^2 restores each Bell state up to phase
  std::array<BellMapping, 4> mappings{};
};

BellSwapReport bell_swap_check(const Matrix4& g);
BellSwapReport bell_swap_check(const PlateSpec& spec, const FrequencyModePair& modes);

struct ThicknessSolution {
  double thickness_mm = 0.0;
  double waves1 = 0.0;     // |n_o - n_e| h / lambda1
  double waves2 = 0.0;
  double residual1 = 0.0;  // distance of waves1 from target (mod 1), in waves
  double residual2 = 0.0;
};

// Thickness in [h_min, h_max] minimizing residual1^2 + residual2^2, where the
// targets are fractional retardances in waves (0.5 = half-wave, 0 = full-wave).
ThicknessSolution solve_dichroic_thickness(const DispersionModel& material, const FrequencyModePair& modes,
                                           double h_min_mm, double h_max_mm, double target1_waves = 0.5,
                                           double target2_waves = 0.0);

}  // namespace qqs
