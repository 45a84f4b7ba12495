#pragma once

// Biphoton polarization ququarts. Amplitudes are ordered
// (H1H2, H1V2, V1H2, V1V2); photon 1 lives at lambda1, photon 2 at lambda2.

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "qqs/linalg.hpp"

namespace qqs {

inline constexpr double kNormTolerance = 1e-12;

struct FrequencyModePair {
  double lambda1_nm = 702.0;
  double lambda2_nm = 605.0;

  // Throws DomainError unless both are positive and distinct.
  void validate() const;
  bool operator==(const FrequencyModePair&) const = default;
};

// Protocol bases: I-III are product bases, IV-V entangled.
enum class Basis { I = 0, II = 1, III = 2, IV = 3, V = 4 };

inline constexpr std::array<Basis, 5> kAllBases = {Basis::I, Basis::II, Basis::III, Basis::IV, Basis::V};
inline constexpr std::array<Basis, 3> kProductBases = {Basis::I, Basis::II, Basis::III};

std::string_view to_string(Basis b);
std::optional<Basis> parse_basis(std::string_view text);

enum class Polarization { H, V, D, A, R, L };

// D=(H+V)/sqrt2, A=(H-V)/sqrt2, R=(H+iV)/sqrt2, L=(H-iV)/sqrt2.
Vector2 jones_vector(Polarization p);

class QuquartState {
 public:
  // Throws DomainError if | ||amplitudes|| - 1 | > kNormTolerance.
  explicit QuquartState(const Vector4& amplitudes, FrequencyModePair modes = {});

  // Rescales to unit norm; throws DomainError on a zero vector.
  static QuquartState normalized(const Vector4& amplitudes, FrequencyModePair modes = {});

  const Vector4& amplitudes() const { return amplitudes_; }
  const FrequencyModePair& modes() const { return modes_; }
  const Complex& operator[](std::size_t i) const { return amplitudes_[i]; }

  // Global phase fixed so the first nonzero amplitude is real and positive.
  QuquartState canonical() const;

  // U|psi>, renormalized to absorb rounding.
  QuquartState transformed(const Matrix4& u) const;

 private:
  Vector4 amplitudes_;
  FrequencyModePair modes_;
};

// <a|b>; throws DomainError if the frequency modes differ.
Complex overlap(const QuquartState& a, const QuquartState& b);

// Equality modulo a global phase, entrywise within tol.
bool same_up_to_phase(const QuquartState& a, const QuquartState& b, double tol = 1e-9);

// State s (0..3) of basis b. Throws std::out_of_range on a bad index.
QuquartState basis_state(Basis b, int s, FrequencyModePair modes = {});

// Columns are the four states of basis b.
Matrix4 basis_matrix(Basis b);

enum class BellState { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

std::string_view to_string(BellState b);
QuquartState bell_state(BellState kind, FrequencyModePair modes = {});

struct DensityCheck {
  double trace_error = 0.0;
  double min_eigenvalue = 0.0;
  double hermiticity_error = 0.0;
  bool ok = false;
};

// trace 1 within 1e-9, min eigenvalue >= -1e-9, ||rho - rho^dagger||_max <= 1e-12.
DensityCheck check_density(const Matrix4& m);

class DensityMatrix {
 public:
  // Throws DomainError when check_density fails.
  explicit DensityMatrix(const Matrix4& m);

  static DensityMatrix maximally_mixed();
  static DensityMatrix from_diagonal(const std::array<double, 4>& d);

  const Matrix4& matrix() const { return rho_; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return rho_(r, c); }

  std::array<double, 4> diagonal() const;

  // B^dagger rho B: components in the basis whose states are the columns of B.
  DensityMatrix in_basis(const Matrix4& basis) const;

  // U rho U^dagger
  DensityMatrix transformed(const Matrix4& u) const;

  // (1-p) rho + p I/4
  DensityMatrix depolarized(double p) const;

  double purity() const;

 private:
  Matrix4 rho_;
};

DensityMatrix pure_density(const QuquartState& s);

// F = Tr(rho_th rho_exp) (the linear overlap, not the Uhlmann fidelity).
double fidelity(const DensityMatrix& rho_exp, const DensityMatrix& rho_th);

}  // namespace qqs
