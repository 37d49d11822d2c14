#pragma once

#include <cmath>
#include <complex>

#include "qtunnel/constants.hpp"
#include "qtunnel/errors.hpp"

namespace qtunnel {

using Complex = std::complex<double>;

inline constexpr Complex kImag{0.0, 1.0};

// Principal complex square root with the tie on the negative real axis
// broken toward positive imaginary part. All downstream quantities are even
// in kappa, so the convention is pinned for reproducibility only.
inline Complex principal_sqrt(Complex z) {
  Complex r = std::sqrt(z);
  if (r.real() < 0.0 || (r.real() == 0.0 && r.imag() < 0.0)) r = -r;
  return r;
}

// Free-propagation quantities at energy E: the wavenumber k = sqrt(E/h2m)
// in 1/nm and the scale factor a = 1/(4 h2m E) in 1/(eV^2 nm^2).
struct Kinematics {
  double energy = 0.0;  // eV
  double k = 0.0;       // 1/nm
  double a = 0.0;       // 1/(eV^2 nm^2); 4*h2m*a*E == 1
};

inline Kinematics kinematics(double energy, EffectiveMass m) {
  if (!(energy > 0.0)) {
    throw std::domain_error("energy must be positive (scattering states only)");
  }
  const double hh = h2m(m);
  return {energy, std::sqrt(energy / hh), 1.0 / (4.0 * hh * energy)};
}

// In-barrier quantities: kappa = sqrt((U0 - E)/h2m) on the principal branch,
// delta = (kappa^2 - k^2)/(kappa k) and sigma_sq = delta^2 + 4.
struct BarrierKinematics {
  Complex kappa;     // 1/nm
  Complex delta;     // dimensionless
  Complex sigma_sq;  // dimensionless, delta^2 + 4 exactly
};

inline BarrierKinematics barrier_kinematics(double energy, Complex barrier_height,
                                            EffectiveMass m) {
  const Kinematics kin = kinematics(energy, m);
  if (barrier_height.imag() == 0.0 && barrier_height.real() == energy) {
    throw SingularKinematicsError(
        "E equals the real barrier height exactly; delta is undefined "
        "(removable singularity, perturb the energy)");
  }
  const double hh = h2m(m);
  const Complex kappa = principal_sqrt((barrier_height - energy) / hh);
  const Complex delta = (kappa * kappa - kin.k * kin.k) / (kappa * kin.k);
  return {kappa, delta, delta * delta + 4.0};
}

}  // namespace qtunnel
