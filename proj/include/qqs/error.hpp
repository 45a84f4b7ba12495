#pragma once

#include <stdexcept>
#include <string>

namespace qqs {

// Violation of a physical or numerical precondition (bad state, wavelength
// outside a dispersion model, singular tomography data...).
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qqs
