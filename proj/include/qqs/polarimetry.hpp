#pragma once

// Two-frequency-mode Stokes parameters with the inter-mode beat terms averaged
// away over the detection time.

#include "qqs/states.hpp"

namespace qqs {

struct StokesVector {
  double s0 = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;
  double s3 = 0.0;

  double polarized_length() const;
};

// s0 = 2, s1 = 2(|c1|^2 - |c4|^2),
// s2 + i s3 = 2 (c1* (c2 + c3) + c4 (c2* + c3*)).
StokesVector stokes(const QuquartState& s);

// P4 = sqrt(s1^2 + s2^2 + s3^2) / s0
double polarization_degree_p4(const QuquartState& s);

struct QutritDegree {
  double value = 0.0;
  double radicand = 0.0;  // as printed, before the abs() guard
  bool negative_radicand = false;
};

// Degenerate (qutrit) polarization degree evaluated from the printed expression
// sqrt(|c1|^2 - |c3|^2 + 2 |c1* c2 + c2* c3|^2). A negative radicand is
// replaced by its absolute value and reported through log_warning.
// Throws DomainError unless |c1|^2 + |c2|^2 + |c3|^2 = 1 within 1e-12.
QutritDegree polarization_degree_p3(Complex c1, Complex c2, Complex c3);

}  // namespace qqs
