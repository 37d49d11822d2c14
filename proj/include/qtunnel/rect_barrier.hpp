#pragma once

#include <cmath>
#include <complex>

#include "qtunnel/kinematics.hpp"
#include "qtunnel/uvw.hpp"

namespace qtunnel {

// Symmetric double rectangular barrier: two barriers of width b and complex
// height U0 separated by a well of width w, centered on the origin.
struct RectDoubleBarrier {
  double barrier_width = 0.0;  // b, nm, > 0
  double well_width = 0.0;     // w, nm, > 0
  Complex height;              // U0 = U0R + i U0I, eV
  EffectiveMass mass;
};

inline UvwSplit uvw_from_kinematics(const BarrierKinematics& bk,
                                    double barrier_width) {
  const Complex z = bk.kappa * barrier_width;
  const Complex ch = std::cosh(z);
  const Complex sh = std::sinh(z);
  return {ch * ch - 0.25 * bk.delta * bk.delta * sh * sh,
          bk.delta * ch * sh,
          0.25 * bk.sigma_sq * sh * sh};
}

inline UvwSplit uvw(const RectDoubleBarrier& s, double energy) {
  return uvw_from_kinematics(barrier_kinematics(energy, s.height, s.mass),
                             s.barrier_width);
}

// Denominator of the transmission amplitude; |T|^2 = 1/|D|^2.
inline Complex d_of_k(const RectDoubleBarrier& s, double energy) {
  const Kinematics kin = kinematics(energy, s.mass);
  const double phase = 2.0 * kin.k * s.well_width;
  return d_from_uvw(uvw(s, energy), std::cos(phase), std::sin(phase));
}

// T = exp(-2ikb)/D. The phase prefactor drops out of |T|^2.
inline Amplitude transmission_amplitude(const RectDoubleBarrier& s, double energy) {
  const Kinematics kin = kinematics(energy, s.mass);
  const Complex prefactor =
      std::exp(Complex(0.0, -2.0 * kin.k * s.barrier_width));
  return amplitude_ratio(prefactor, d_of_k(s, energy));
}

// D at a resonant energy (transmission maximum of the extremal condition).
inline Complex d_res(const RectDoubleBarrier& s, double resonant_energy) {
  return resonant_d(uvw(s, resonant_energy));
}

}  // namespace qtunnel
