#include "qqs/polarimetry.hpp"

#include <cmath>
#include <sstream>

#include "qqs/error.hpp"
#include "qqs/log.hpp"

namespace qqs {

double StokesVector::polarized_length() const { return std::sqrt(s1 * s1 + s2 * s2 + s3 * s3); }

StokesVector stokes(const QuquartState& s) {
  const Complex c1 = s[0], c2 = s[1], c3 = s[2], c4 = s[3];
  const Complex cross = std::conj(c1) * (c2 + c3) + c4 * (std::conj(c2) + std::conj(c3));
  StokesVector out;
  out.s0 = 2.0 * s.amplitudes().norm() * s.amplitudes().norm();
  out.s1 = 2.0 * (std::norm(c1) - std::norm(c4));
  out.s2 = 2.0 * cross.real();
  out.s3 = 2.0 * cross.imag();
  return out;
}

double polarization_degree_p4(const QuquartState& s) {
  const StokesVector v = stokes(s);
  return v.polarized_length() / v.s0;
}

QutritDegree polarization_degree_p3(Complex c1, Complex c2, Complex c3) {
  const double n = std::norm(c1) + std::norm(c2) + std::norm(c3);
  if (!std::isfinite(n) || std::abs(n - 1.0) > kNormTolerance)
    throw DomainError("qutrit amplitudes are not normalized");
  QutritDegree out;
  out.radicand = std::norm(c1) - std::norm(c3) + 2.0 * std::norm(std::conj(c1) * c2 + std::conj(c2) * c3);
  out.negative_radicand = out.radicand < 0.0;
  if (out.negative_radicand) {
    std::ostringstream msg;
    msg << "P3 radicand is negative (" << out.radicand << "); returning sqrt(|radicand|)";
    log_warning(msg.str());
  }
  out.value = std::sqrt(std::abs(out.radicand));
  return out;
}

}  // namespace qqs
