#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "qqs/error.hpp"
#include "qqs/log.hpp"
#include "qqs/optics.hpp"
#include "qqs/polarimetry.hpp"
#include "support.hpp"

using namespace qqs;
using testing_support::from_oracle;

namespace {

// Sum of the two single-photon Stokes vectors read off the reduced density
// matrices; S2 + i S3 = 2 rho(V, H) per photon.
std::array<double, 4> stokes_from_marginals(const oracle::V4& c) {
  using oracle::C;
  const double p1h = std::norm(c[0]) + std::norm(c[1]);
  const double p1v = std::norm(c[2]) + std::norm(c[3]);
  const double p2h = std::norm(c[0]) + std::norm(c[2]);
  const double p2v = std::norm(c[1]) + std::norm(c[3]);
  const C vh1 = c[2] * std::conj(c[0]) + c[3] * std::conj(c[1]);
  const C vh2 = c[1] * std::conj(c[0]) + c[3] * std::conj(c[2]);
  return {p1h + p1v + p2h + p2v, (p1h - p1v) + (p2h - p2v), 2 * (vh1 + vh2).real(), 2 * (vh1 + vh2).imag()};
}

}  // namespace

TEST_SUITE("polarimetry") {
  TEST_CASE("stokes examples") {
    const StokesVector vv = stokes(basis_state(Basis::I, 3));
    CHECK(vv.s0 == 2.0);
    CHECK(vv.s1 == -2.0);
    CHECK(vv.s2 == 0.0);
    CHECK(vv.s3 == 0.0);

    const StokesVector hv = stokes(basis_state(Basis::I, 1));
    CHECK(hv.s0 == 2.0);
    CHECK(hv.s1 == 0.0);
    CHECK(hv.polarized_length() == 0.0);

    const StokesVector phi = stokes(bell_state(BellState::PhiPlus));
    CHECK(phi.s0 == doctest::Approx(2.0));
    CHECK(std::abs(phi.s1) <= 1e-15);
    CHECK(std::abs(phi.s2) <= 1e-15);
    CHECK(std::abs(phi.s3) <= 1e-15);
  }

  TEST_CASE("stokes agrees with the sum of single-photon marginals") {
    std::mt19937_64 rng(21);
    for (int n = 0; n < 100; ++n) {
      const oracle::V4 c = oracle::random_state(rng);
      const StokesVector sv = stokes(QuquartState(from_oracle(c)));
      const auto ref = stokes_from_marginals(c);
      CHECK(sv.s0 == doctest::Approx(ref[0]).epsilon(1e-12));
      CHECK(std::abs(sv.s1 - ref[1]) <= 1e-12);
      CHECK(std::abs(sv.s2 - ref[2]) <= 1e-12);
      CHECK(std::abs(sv.s3 - ref[3]) <= 1e-12);
    }
  }

  TEST_CASE("P4 examples") {
    CHECK(polarization_degree_p4(basis_state(Basis::I, 3)) == 1.0);
    CHECK(polarization_degree_p4(basis_state(Basis::I, 1)) == 0.0);
    CHECK(polarization_degree_p4(bell_state(BellState::PhiPlus)) <= 1e-15);
  }

  TEST_CASE("P4 is invariant under non-dichroic plates") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> delta(-20.0, 20.0), angle(0.0, 180.0);
    for (int n = 0; n < 100; ++n) {
      const QuquartState x(from_oracle(oracle::random_state(rng)));
      const double d = delta(rng), a = angle(rng);
      const QuquartState y = x.transformed(dichroic_unitary(d, d, a));
      CHECK(std::abs(polarization_degree_p4(y) - polarization_degree_p4(x)) <= 1e-9);
    }
  }

  TEST_CASE("the swap plate takes P4 from 1 to 0") {
    const QuquartState vv = basis_state(Basis::I, 3);
    CHECK(polarization_degree_p4(vv) == 1.0);
    CHECK(polarization_degree_p4(vv.transformed(swap_plate_unitary())) <= 1e-12);
  }

  TEST_CASE("qutrit degree evaluates the printed expression") {
    std::vector<std::string> warnings;
    const auto previous = set_warning_sink([&](std::string_view w) { warnings.emplace_back(w); });

    const QutritDegree a = polarization_degree_p3(1.0, 0.0, 0.0);
    CHECK(a.value == 1.0);
    CHECK_FALSE(a.negative_radicand);

    const QutritDegree b = polarization_degree_p3(0.0, 1.0, 0.0);
    CHECK(b.value == 0.0);
    CHECK(b.radicand == 0.0);

    CHECK(warnings.empty());
    const QutritDegree c = polarization_degree_p3(0.0, 0.0, 1.0);
    CHECK(c.radicand == -1.0);
    CHECK(c.negative_radicand);
    CHECK(c.value == 1.0);
    CHECK(warnings.size() == 1);

    const double h = 1.0 / std::sqrt(2.0);
    const QutritDegree d = polarization_degree_p3(h, h, 0.0);
    // 1/2 - 0 + 2 |h h|^2 = 1
    CHECK(d.value == doctest::Approx(1.0));

    CHECK_THROWS_AS(polarization_degree_p3(1.0, 1.0, 0.0), DomainError);
    set_warning_sink(previous);
  }
}
