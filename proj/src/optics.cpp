#include "qqs/optics.hpp"

#include <cmath>

#include "qqs/error.hpp"

namespace qqs {
namespace {

constexpr double kDeg = kPi / 180.0;
constexpr double kMaxTiltDeg = 60.0;

// Distance of x from target on the unit circle of fractional waves.
double wrapped_distance(double x, double target) {
  const double d = std::fmod(x - target, 1.0);
  const double w = d < 0.0 ? d + 1.0 : d;
  return std::min(w, 1.0 - w);
}

}  // namespace

void PlateSpec::validate() const {
  if (!(thickness_mm > 0.0) || !std::isfinite(thickness_mm)) throw DomainError("plate thickness must be positive");
}

JonesCoefficients jones_coefficients(double delta, double alpha_deg) {
  const double two_a = 2.0 * alpha_deg * kDeg;
  const double s = std::sin(delta);
  return {Complex{std::cos(delta), s * std::cos(two_a)}, Complex{0.0, s * std::sin(two_a)}};
}

Matrix2 jones_matrix(const JonesCoefficients& c) { return Matrix2{c.t, c.r, -std::conj(c.r), std::conj(c.t)}; }

Matrix2 jones_matrix(double delta, double alpha_deg) { return jones_matrix(jones_coefficients(delta, alpha_deg)); }

double optical_thickness(const PlateSpec& spec, double lambda_nm) {
  // h in mm, lambda in nm
  return kPi * spec.material.birefringence(lambda_nm) * spec.thickness_mm * 1e6 / lambda_nm;
}

Matrix2 jones(const PlateSpec& spec, double lambda_nm) {
  return jones_matrix(optical_thickness(spec, lambda_nm), spec.alpha_deg);
}

Matrix4 dichroic_unitary(const PlateSpec& spec, const FrequencyModePair& modes) {
  return kron(jones(spec, modes.lambda1_nm), jones(spec, modes.lambda2_nm));
}

Matrix4 dichroic_unitary(double delta1, double delta2, double alpha_deg) {
  return kron(jones_matrix(delta1, alpha_deg), jones_matrix(delta2, alpha_deg));
}

Matrix4 swap_plate_unitary() { return dichroic_unitary(kPi / 2.0, kPi, 45.0); }

double mean_index(const DispersionModel& material, const FrequencyModePair& modes) {
  const double lambda = 0.5 * (modes.lambda1_nm + modes.lambda2_nm);
  return 0.5 * (material.n_o(lambda) + material.n_e(lambda));
}

PlateSpec effective_spec_under_tilt(const PlateSpec& spec, const TiltConfig& tilt) {
  if (!(std::abs(tilt.theta_deg) < kMaxTiltDeg)) throw DomainError("tilt angle must satisfy |theta| < 60 deg");
  if (!(tilt.n_eff > 1.0)) throw DomainError("effective index must exceed 1");
  const double refracted = std::asin(std::sin(tilt.theta_deg * kDeg) / tilt.n_eff);
  PlateSpec out = spec;
  out.thickness_mm = spec.thickness_mm / std::cos(refracted);
  return out;
}

Matrix4 PlateStep::unitary() const { return dichroic_unitary(delta1, delta2, alpha_deg); }

PlateStep dichroic_step(double delta1, double delta2, double alpha_deg) {
  return {"dichroic", delta1, delta2, alpha_deg};
}

PlateStep half_wave_step(double alpha_deg) { return {"half-wave", kPi / 2.0, kPi / 2.0, alpha_deg}; }

PlateStep quarter_wave_step(double alpha_deg) { return {"quarter-wave", kPi / 4.0, kPi / 4.0, alpha_deg}; }

Matrix4 recipe_unitary(const PlateRecipe& recipe) {
  Matrix4 u = Matrix4::identity();
  for (const auto& step : recipe) u = step.unitary() * u;
  return u;
}

BellSwapReport bell_swap_check(const Matrix4& g) {
  constexpr std::array<BellState, 4> kinds{BellState::PhiPlus, BellState::PhiMinus, BellState::PsiPlus,
                                           BellState::PsiMinus};
  const auto is_phi = [](BellState b) { return b == BellState::PhiPlus || b == BellState::PhiMinus; };

  BellSwapReport report;
  report.swaps = true;
  report.involutive = true;
  const Matrix4 g2 = g * g;
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    const Vector4 in = bell_state(kinds[i]).amplitudes();
    const Vector4 out = apply(g, in);
    BellMapping m;
    m.from = kinds[i];
    for (const BellState target : kinds) {
      const Complex ov = inner(bell_state(target).amplitudes(), out);
      if (std::abs(std::abs(ov) - 1.0) <= 1e-9) {
        m.to = target;
        m.phase = ov;
        m.maps_to_bell = true;
        break;
      }
    }
    report.mappings[i] = m;
    if (!m.maps_to_bell || is_phi(m.from) == is_phi(m.to)) report.swaps = false;
    if (std::abs(std::abs(inner(in, apply(g2, in))) - 1.0) > 1e-9) report.involutive = false;
  }
  return report;
}

BellSwapReport bell_swap_check(const PlateSpec& spec, const FrequencyModePair& modes) {
  return bell_swap_check(dichroic_unitary(spec, modes));
}

ThicknessSolution solve_dichroic_thickness(const DispersionModel& material, const FrequencyModePair& modes,
                                           double h_min_mm, double h_max_mm, double target1_waves,
                                           double target2_waves) {
  modes.validate();
  if (!(h_min_mm > 0.0) || !(h_max_mm > h_min_mm)) throw DomainError("bad thickness search interval");
  const double per_mm1 = std::abs(material.birefringence(modes.lambda1_nm)) * 1e6 / modes.lambda1_nm;
  const double per_mm2 = std::abs(material.birefringence(modes.lambda2_nm)) * 1e6 / modes.lambda2_nm;

  const auto evaluate = [&](double h) {
    ThicknessSolution s;
    s.thickness_mm = h;
    s.waves1 = per_mm1 * h;
    s.waves2 = per_mm2 * h;
    s.residual1 = wrapped_distance(s.waves1, target1_waves);
    s.residual2 = wrapped_distance(s.waves2, target2_waves);
    return s;
  };
  const auto cost = [&](double h) {
    const ThicknessSolution s = evaluate(h);
    return s.residual1 * s.residual1 + s.residual2 * s.residual2;
  };

  // The cost is periodic with period ~1/per_mm in each term; a grid finer than
  // 1/100 of the shortest period brackets the global minimum.
  const double step = 0.01 / std::max(per_mm1, per_mm2);
  const auto n = static_cast<std::size_t>(std::ceil((h_max_mm - h_min_mm) / step));
  double best_h = h_min_mm;
  double best_cost = cost(best_h);
  for (std::size_t i = 1; i <= n; ++i) {
    const double h = std::min(h_max_mm, h_min_mm + static_cast<double>(i) * step);
    if (const double c = cost(h); c < best_cost) {
      best_cost = c;
      best_h = h;
    }
  }

  // golden-section refinement inside the bracketing cells
  double lo = std::max(h_min_mm, best_h - step);
  double hi = std::min(h_max_mm, best_h + step);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = cost(x1), f2 = cost(x2);
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = cost(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = cost(x2);
    }
  }
  const double refined = 0.5 * (lo + hi);
  return evaluate(cost(refined) < best_cost ? refined : best_h);
}

}  // namespace qqs
