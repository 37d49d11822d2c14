#pragma once

#include <stdexcept>

namespace qtunnel {

// Thrown when the incident energy coincides exactly with a real barrier
// height: delta = (kappa^2 - k^2)/(kappa*k) has a removable singularity
// there, and the caller decides how to dodge it.
class SingularKinematicsError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A root search failed to converge or found nothing; the message carries
// the scanned range and the values seen at its ends.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qtunnel
