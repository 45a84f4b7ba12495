#include <doctest.h>

#include <random>

#include "qqs/dispersion.hpp"
#include "qqs/error.hpp"
#include "qqs/optics.hpp"
#include "support.hpp"

using namespace qqs;
using testing_support::from_oracle;
using testing_support::max_diff;

TEST_SUITE("optics") {
  TEST_CASE("optical thickness arithmetic") {
    PlateSpec spec{3.406, 45.0, DispersionModel::constant("synthetic", 1.549, 1.540)};
    CHECK(optical_thickness(spec, 702.0) / kPi == doctest::Approx(0.009 * 3.406e6 / 702.0).epsilon(1e-12));
    CHECK(optical_thickness(spec, 702.0) / kPi == doctest::Approx(43.67).epsilon(1e-4));
    spec.thickness_mm = 0.0;
    CHECK(optical_thickness(spec, 702.0) == 0.0);
    spec.thickness_mm = 1.0;
    CHECK_THROWS_AS(optical_thickness(spec, 1200.0), DomainError);
  }

  TEST_CASE("quartz retardance is negative") {
    const PlateSpec spec{3.4, 45.0, load_material("quartz")};
    CHECK(optical_thickness(spec, 702.0) < 0.0);
  }

  TEST_CASE("single-mode Jones matrices") {
    CHECK(max_abs_diff(jones_matrix(0.0, 17.0), Matrix2::identity()) <= 1e-15);
    const Complex i{0.0, 1.0};
    CHECK(max_abs_diff(jones_matrix(kPi / 2.0, 45.0), Matrix2{0.0, i, i, 0.0}) <= 1e-15);
    for (const double a : {0.0, 10.0, 45.0, 123.0})
      CHECK(max_abs_diff(jones_matrix(kPi, a), Matrix2::identity() * -1.0) <= 1e-15);
  }

  TEST_CASE("dichroic plate of a random spec equals the printed matrix") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> h(0.5, 5.0), alpha(0.0, 180.0), dn(-0.02, 0.02);
    const FrequencyModePair modes;
    for (int n = 0; n < 50; ++n) {
      const double d = dn(rng);
      const PlateSpec spec{h(rng), alpha(rng), DispersionModel::constant("c", 1.5 + d, 1.5)};
      const Matrix4 g = dichroic_unitary(spec, modes);
      const double dn_exact = (1.5 + d) - 1.5;
      const double d1 = kPi * dn_exact * spec.thickness_mm * 1e6 / modes.lambda1_nm;
      const double d2 = kPi * dn_exact * spec.thickness_mm * 1e6 / modes.lambda2_nm;
      const auto expected = oracle::printed_plate_matrix(oracle::plate_coefficients(d1, spec.alpha_deg),
                                                         oracle::plate_coefficients(d2, spec.alpha_deg));
      CHECK(max_diff(g, expected) <= 1e-12);
      CHECK(is_unitary(g));
    }
  }

  TEST_CASE("swap plate reproduces the printed permutation up to phase") {
    const Matrix4 g = dichroic_unitary(kPi / 2.0, kPi, 45.0);
    const oracle::M4 p = oracle::printed_swap();
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) CHECK(std::abs(std::abs(g(r, c)) - std::abs(p[r][c])) <= 1e-15);
    CHECK(phase_insensitive_overlap(g, from_oracle(p)) == doctest::Approx(1.0).epsilon(1e-12));
    const Vector4 out = apply(g, Vector4{0.0, 0.0, 0.0, 1.0});
    CHECK(std::abs(out[1]) == doctest::Approx(1.0));
    CHECK(equal_up_to_phase(swap_plate_unitary(), g));
    CHECK(max_abs_diff(dichroic_unitary(0.0, 0.0, 33.0), Matrix4::identity()) <= 1e-15);
  }

  TEST_CASE("tilted plate thickness") {
    const PlateSpec base{3.0, 45.0, DispersionModel::constant("c", 1.55, 1.54)};
    CHECK(effective_spec_under_tilt(base, {0.0, 1.55}).thickness_mm == 3.0);
    const double ratio = effective_spec_under_tilt(base, {30.0, 1.55}).thickness_mm / 3.0;
    CHECK(ratio == doctest::Approx(1.0 / std::cos(std::asin(0.5 / 1.55))).epsilon(1e-12));
    CHECK(std::abs(ratio - 1.0557) <= 1e-3);
    double prev = 3.0;
    for (double theta = 0.5; theta < 60.0; theta += 0.5) {
      const double h = effective_spec_under_tilt(base, {theta, 1.55}).thickness_mm;
      CHECK(h > prev);
      CHECK(effective_spec_under_tilt(base, {-theta, 1.55}).thickness_mm == doctest::Approx(h));
      prev = h;
    }
    CHECK_THROWS_AS(effective_spec_under_tilt(base, {60.0, 1.55}), DomainError);
    CHECK_THROWS_AS(effective_spec_under_tilt(base, {10.0, 1.0}), DomainError);
  }

  TEST_CASE("Bell states under the swap plate") {
    const BellSwapReport r = bell_swap_check(swap_plate_unitary());
    CHECK(r.swaps);
    CHECK(r.involutive);
    for (const auto& m : r.mappings) {
      CHECK(m.maps_to_bell);
      const Vector4 out = apply(swap_plate_unitary(), bell_state(m.from).amplitudes());
      CHECK(max_abs_diff(out, bell_state(m.to).amplitudes() * m.phase) <= 1e-12);
    }
    CHECK(r.mappings[0].to == BellState::PsiPlus);
    CHECK_FALSE(bell_swap_check(Matrix4::identity()).swaps);

    const Matrix4 g2 = swap_plate_unitary() * swap_plate_unitary();
    for (const auto b : {BellState::PhiPlus, BellState::PhiMinus, BellState::PsiPlus, BellState::PsiMinus})
      CHECK(std::abs(inner(bell_state(b).amplitudes(), apply(g2, bell_state(b).amplitudes()))) ==
            doctest::Approx(1.0));
  }

  TEST_CASE("plate recipes compose in application order") {
    const PlateStep a = half_wave_step(22.5);
    const PlateStep b = dichroic_step(kPi / 2.0, kPi, 45.0);
    CHECK(max_abs_diff(recipe_unitary({a, b}), b.unitary() * a.unitary()) <= 1e-15);
    CHECK(recipe_unitary({}) == Matrix4::identity());
    // zero-order plates act identically on both photons
    CHECK(max_abs_diff(quarter_wave_step(45.0).unitary(),
                       kron(jones_matrix(kPi / 4.0, 45.0), jones_matrix(kPi / 4.0, 45.0))) <= 1e-15);
  }

  TEST_CASE("quartz thickness solver agrees with a brute-force scan") {
    const FrequencyModePair modes;
    const ThicknessSolution s = solve_dichroic_thickness(load_material("quartz"), modes, 3.2, 3.6);
    const double ref = oracle::brute_force_thickness(702.0, 605.0, 3.2, 3.6);
    CHECK(s.thickness_mm == doctest::Approx(ref).epsilon(2e-6));
    CHECK(s.thickness_mm >= 3.2);
    CHECK(s.thickness_mm <= 3.6);
    CHECK(s.residual1 <= 0.05);
    CHECK(s.residual2 <= 0.05);
    CHECK(oracle::wrapped(s.waves1, 0.5) == doctest::Approx(s.residual1));
  }

  TEST_CASE("thickness solver on an exactly solvable material") {
    // 0.04 mm of dn = 0.01 is half a wave at 800 nm and one wave at 400 nm.
    const auto m = DispersionModel::constant("toy", 1.51, 1.50, 350.0, 900.0);
    const ThicknessSolution s = solve_dichroic_thickness(m, {800.0, 400.0}, 0.02, 0.06);
    CHECK(s.thickness_mm == doctest::Approx(0.04).epsilon(1e-9));
    CHECK(s.residual1 <= 1e-9);
    CHECK(s.residual2 <= 1e-9);
    CHECK_THROWS_AS(solve_dichroic_thickness(m, {800.0, 400.0}, 3.0, 2.0), DomainError);
  }
}
