#pragma once

#include <stdexcept>

namespace qtunnel {

// CODATA 2018 values.
inline constexpr double kHbar = 1.054571817e-34;          // J s
inline constexpr double kElectronMass = 9.1093837015e-31;  // kg
inline constexpr double kElementaryCharge = 1.602176634e-19;  // C

// hbar^2/(2 m0) expressed in eV nm^2 (~0.0380998). Every formula in the
// library uses this carrier instead of raw hbar and m, so energies stay in
// eV, lengths in nm and delta strengths in nm eV throughout.
inline constexpr double kH2M0 =
    kHbar * kHbar / (2.0 * kElectronMass * kElementaryCharge) * 1e18;

// Electron mass inside the medium as a ratio to the free-electron mass.
struct EffectiveMass {
  double ratio = 1.0;  // m/m0, dimensionless, > 0
};

// hbar^2/(2 m) in eV nm^2 for the given effective mass.
inline double h2m(EffectiveMass m) {
  if (!(m.ratio > 0.0)) {
    throw std::domain_error("effective mass ratio must be positive");
  }
  return kH2M0 / m.ratio;
}

}  // namespace qtunnel
