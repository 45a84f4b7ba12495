#include "qqs/states.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qqs/error.hpp"

namespace qqs {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kTraceTolerance = 1e-9;
constexpr double kEigenTolerance = 1e-9;
constexpr double kHermitianTolerance = 1e-12;

using P = Polarization;

Vector4 product(P a, P b) { return kron(jones_vector(a), jones_vector(b)); }

// (|a1 b2> + sign |c1 d2>)/sqrt2
Vector4 entangled(P a, P b, P c, P d, double sign) {
  return (product(a, b) + product(c, d) * sign) * kInvSqrt2;
}

Vector4 basis_vector(Basis b, int s) {
  switch (b) {
    case Basis::I: {
      constexpr std::array<std::array<P, 2>, 4> k{{{P::H, P::H}, {P::H, P::V}, {P::V, P::H}, {P::V, P::V}}};
      return product(k[s][0], k[s][1]);
    }
    case Basis::II: {
      constexpr std::array<std::array<P, 2>, 4> k{{{P::D, P::D}, {P::D, P::A}, {P::A, P::D}, {P::A, P::A}}};
      return product(k[s][0], k[s][1]);
    }
    case Basis::III: {
      constexpr std::array<std::array<P, 2>, 4> k{{{P::R, P::R}, {P::R, P::L}, {P::L, P::R}, {P::L, P::L}}};
      return product(k[s][0], k[s][1]);
    }
    case Basis::IV:
      switch (s) {
        case 0: return entangled(P::R, P::H, P::L, P::V, +1.0);
        case 1: return entangled(P::R, P::H, P::L, P::V, -1.0);
        case 2: return entangled(P::L, P::H, P::R, P::V, +1.0);
        default: return entangled(P::L, P::H, P::R, P::V, -1.0);
      }
    case Basis::V:
      switch (s) {
        case 0: return entangled(P::H, P::R, P::V, P::L, +1.0);
        case 1: return entangled(P::H, P::R, P::V, P::L, -1.0);
        case 2: return entangled(P::H, P::L, P::V, P::R, +1.0);
        default: return entangled(P::H, P::L, P::V, P::R, -1.0);
      }
  }
  throw std::out_of_range("unknown basis");
}

Matrix4 hermitize(const Matrix4& m) { return (m + m.adjoint()) * 0.5; }

}  // namespace

void FrequencyModePair::validate() const {
  if (!(lambda1_nm > 0.0) || !(lambda2_nm > 0.0))
    throw DomainError("wavelengths must be positive");
  if (lambda1_nm == lambda2_nm)
    throw DomainError("frequency modes must be non-degenerate (lambda1 != lambda2)");
}

std::string_view to_string(Basis b) {
  static constexpr std::array<std::string_view, 5> names{"I", "II", "III", "IV", "V"};
  return names[static_cast<std::size_t>(b)];
}

std::optional<Basis> parse_basis(std::string_view text) {
  for (const Basis b : kAllBases)
    if (to_string(b) == text) return b;
  if (text.size() == 1 && text[0] >= '1' && text[0] <= '5') return static_cast<Basis>(text[0] - '1');
  return std::nullopt;
}

Vector2 jones_vector(Polarization p) {
  const Complex i{0.0, 1.0};
  switch (p) {
    case P::H: return {1.0, 0.0};
    case P::V: return {0.0, 1.0};
    case P::D: return {kInvSqrt2, kInvSqrt2};
    case P::A: return {kInvSqrt2, -kInvSqrt2};
    case P::R: return {kInvSqrt2, i * kInvSqrt2};
    case P::L: return {kInvSqrt2, -i * kInvSqrt2};
  }
  return {};
}

QuquartState::QuquartState(const Vector4& amplitudes, FrequencyModePair modes)
    : amplitudes_(amplitudes), modes_(modes) {
  modes_.validate();
  const double n = amplitudes_.norm();
  if (!std::isfinite(n) || std::abs(n - 1.0) > kNormTolerance)
    throw DomainError("ququart amplitudes are not normalized (norm = " + std::to_string(n) + ")");
}

QuquartState QuquartState::normalized(const Vector4& amplitudes, FrequencyModePair modes) {
  const double n = amplitudes.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("cannot normalize a zero or non-finite vector");
  return QuquartState(amplitudes * (1.0 / n), modes);
}

QuquartState QuquartState::canonical() const {
  for (std::size_t i = 0; i < 4; ++i) {
    const double mag = std::abs(amplitudes_[i]);
    if (mag > kNormTolerance) {
      const Complex phase = std::conj(amplitudes_[i]) / mag;
      Vector4 out = amplitudes_ * phase;
      out[i] = mag;
      return QuquartState(out, modes_);
    }
  }
  return *this;
}

QuquartState QuquartState::transformed(const Matrix4& u) const {
  return normalized(apply(u, amplitudes_), modes_);
}

Complex overlap(const QuquartState& a, const QuquartState& b) {
  if (!(a.modes() == b.modes())) throw DomainError("overlap of states with different frequency modes");
  return inner(a.amplitudes(), b.amplitudes());
}

bool same_up_to_phase(const QuquartState& a, const QuquartState& b, double tol) {
  if (!(a.modes() == b.modes())) return false;
  const Complex ov = inner(a.amplitudes(), b.amplitudes());
  const double mag = std::abs(ov);
  const Complex phase = mag > 0.0 ? ov / mag : Complex{1.0};
  return max_abs_diff(a.amplitudes() * phase, b.amplitudes()) <= tol;
}

QuquartState basis_state(Basis b, int s, FrequencyModePair modes) {
  if (s < 0 || s > 3) throw std::out_of_range("state index must be in 0..3");
  return QuquartState::normalized(basis_vector(b, s), modes);
}

Matrix4 basis_matrix(Basis b) {
  Matrix4 m;
  for (int s = 0; s < 4; ++s) {
    const Vector4 v = basis_vector(b, s);
    for (std::size_t r = 0; r < 4; ++r) m(r, static_cast<std::size_t>(s)) = v[r];
  }
  return m;
}

std::string_view to_string(BellState b) {
  switch (b) {
    case BellState::PhiPlus: return "phi+";
    case BellState::PhiMinus: return "phi-";
    case BellState::PsiPlus: return "psi+";
    case BellState::PsiMinus: return "psi-";
  }
  return "?";
}

QuquartState bell_state(BellState kind, FrequencyModePair modes) {
  const double h = kInvSqrt2;
  switch (kind) {
    case BellState::PhiPlus: return QuquartState::normalized({h, 0.0, 0.0, h}, modes);
    case BellState::PhiMinus: return QuquartState::normalized({h, 0.0, 0.0, -h}, modes);
    case BellState::PsiPlus: return QuquartState::normalized({0.0, h, h, 0.0}, modes);
    case BellState::PsiMinus: return QuquartState::normalized({0.0, h, -h, 0.0}, modes);
  }
  throw std::out_of_range("unknown Bell state");
}

DensityCheck check_density(const Matrix4& m) {
  DensityCheck c;
  c.trace_error = std::abs(m.trace() - Complex{1.0});
  c.hermiticity_error = hermiticity_error(m);
  c.min_eigenvalue = hermitian_eigen(m).values[0];
  c.ok = std::isfinite(c.trace_error) && c.trace_error <= kTraceTolerance &&
         c.min_eigenvalue >= -kEigenTolerance && c.hermiticity_error <= kHermitianTolerance;
  return c;
}

DensityMatrix::DensityMatrix(const Matrix4& m) : rho_(m) {
  const DensityCheck c = check_density(rho_);
  if (!c.ok)
    throw DomainError("not a density matrix: trace error " + std::to_string(c.trace_error) + ", min eigenvalue " +
                      std::to_string(c.min_eigenvalue) + ", hermiticity error " +
                      std::to_string(c.hermiticity_error));
}

DensityMatrix DensityMatrix::maximally_mixed() { return DensityMatrix(Matrix4::identity() * 0.25); }

DensityMatrix DensityMatrix::from_diagonal(const std::array<double, 4>& d) {
  Matrix4 m;
  for (std::size_t k = 0; k < 4; ++k) m(k, k) = d[k];
  return DensityMatrix(m);
}

std::array<double, 4> DensityMatrix::diagonal() const {
  return {rho_(0, 0).real(), rho_(1, 1).real(), rho_(2, 2).real(), rho_(3, 3).real()};
}

DensityMatrix DensityMatrix::in_basis(const Matrix4& basis) const {
  return DensityMatrix(hermitize(basis.adjoint() * rho_ * basis));
}

DensityMatrix DensityMatrix::transformed(const Matrix4& u) const {
  return DensityMatrix(hermitize(u * rho_ * u.adjoint()));
}

DensityMatrix DensityMatrix::depolarized(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("depolarization must lie in [0, 1]");
  return DensityMatrix(rho_ * (1.0 - p) + Matrix4::identity() * (0.25 * p));
}

double DensityMatrix::purity() const { return (rho_ * rho_).trace().real(); }

DensityMatrix pure_density(const QuquartState& s) {
  return DensityMatrix(hermitize(outer(s.amplitudes(), s.amplitudes())));
}

double fidelity(const DensityMatrix& rho_exp, const DensityMatrix& rho_th) {
  return (rho_th.matrix() * rho_exp.matrix()).trace().real();
}

}  // namespace qqs
