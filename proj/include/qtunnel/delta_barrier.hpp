#pragma once

#include <cmath>
#include <complex>
#include <limits>

#include "qtunnel/kinematics.hpp"
#include "qtunnel/uvw.hpp"

namespace qtunnel {

// Symmetric double delta barrier V0 [delta(x + w/2) + delta(x - w/2)]:
// the b -> 0, U0 -> inf limit of the rectangular structure at fixed
// V0 = U0 * b.
struct DeltaDoubleBarrier {
  double well_width = 0.0;  // w, nm, > 0
  Complex strength;         // V0 = V0R + i V0I, nm eV
  EffectiveMass mass;
};

// Dimensionless delta coupling alpha = sqrt(2m/hbar^2 E) V0 = 2 sqrt(a) V0.
inline Complex alpha(const DeltaDoubleBarrier& s, double energy) {
  const Kinematics kin = kinematics(energy, s.mass);
  return 2.0 * std::sqrt(kin.a) * s.strength;
}

// D(k) = 1 - a V0^2 [1 - exp(2ikw)] + 2i sqrt(a) V0; |T|^2 = 1/|D|^2.
inline Complex d_of_k(const DeltaDoubleBarrier& s, double energy) {
  const Kinematics kin = kinematics(energy, s.mass);
  const Complex e2 = std::exp(Complex(0.0, 2.0 * kin.k * s.well_width));
  return 1.0 - kin.a * s.strength * s.strength * (1.0 - e2) +
         2.0 * kImag * std::sqrt(kin.a) * s.strength;
}

// Delta-limit form of the U/V/W functions: U = 1 - a V0^2, V = 2 sqrt(a) V0,
// W = a V0^2, so U + W = 1 exactly.
inline UvwSplit uvw_delta(const DeltaDoubleBarrier& s, double energy) {
  const Kinematics kin = kinematics(energy, s.mass);
  const Complex w = kin.a * s.strength * s.strength;
  return {1.0 - w, 2.0 * std::sqrt(kin.a) * s.strength, w};
}

inline MN mn_delta(const DeltaDoubleBarrier& s, double energy) {
  return mn(uvw_delta(s, energy));
}

inline Amplitude transmission_amplitude(const DeltaDoubleBarrier& s, double energy) {
  return amplitude_ratio(1.0, d_of_k(s, energy));
}

// Resonant D in closed form:
//   (1 + i sqrt(a) V0)^2 *
//   [1 - a(V0R^2 + V0I^2) / sqrt((1 - a(V0R^2 - V0I^2) - 2 sqrt(a) V0I)^2 +
//                                (2 sqrt(a) V0R - 2a V0R V0I)^2)].
// Agrees with resonant_d(uvw_delta(...)) identically.
inline Complex d_res(const DeltaDoubleBarrier& s, double resonant_energy) {
  const Kinematics kin = kinematics(resonant_energy, s.mass);
  const double sa = std::sqrt(kin.a);
  const double vr = s.strength.real();
  const double vi = s.strength.imag();
  const Complex one_plus = 1.0 + kImag * sa * s.strength;
  const double radical =
      std::hypot(1.0 - kin.a * (vr * vr - vi * vi) - 2.0 * sa * vi,
                 2.0 * sa * vr - 2.0 * kin.a * vr * vi);
  if (!(radical > 0.0)) {
    throw std::domain_error("resonant denominator radical vanishes");
  }
  return one_plus * one_plus *
         (1.0 - kin.a * (vr * vr + vi * vi) / radical);
}

// Reflection amplitudes. `centered` refers to the structure symmetric about
// the origin; `shifted` to the same structure translated so the deltas sit
// at x = 0 and x = w (shifted = centered * exp(ikw)).
struct Reflection {
  Amplitude centered;
  Amplitude shifted;
};

inline Reflection reflection(const DeltaDoubleBarrier& s, double energy) {
  const Kinematics kin = kinematics(energy, s.mass);
  const Complex al = alpha(s, energy);
  const Complex eikw = std::exp(Complex(0.0, kin.k * s.well_width));
  const Complex emikw = std::exp(Complex(0.0, -kin.k * s.well_width));
  const Complex two_i = 2.0 * kImag;
  const Complex numerator = al * ((al - two_i) * emikw - (al + two_i) * eikw);
  // The denominator is 4 D(k), so it vanishes exactly at a singular point.
  const Complex denominator = al * al * (eikw * eikw - 1.0) + 4.0 * kImag * al + 4.0;
  const Amplitude centered = amplitude_ratio(numerator, denominator);
  return {centered, {centered.value * eikw, centered.divergent}};
}

// Absorption probability A = 2 (1 + Re{R e^{ikw}}) / (1 - h2m k / V0I).
// A > 0 means net absorption (V0I < 0); gain gives A < 0, unclamped.
// Strictly real strengths absorb nothing, so A = 0 directly.
inline double absorption(const DeltaDoubleBarrier& s, double energy) {
  const double vi = s.strength.imag();
  if (vi == 0.0) return 0.0;
  const Kinematics kin = kinematics(energy, s.mass);
  const Reflection refl = reflection(s, energy);
  if (refl.centered.divergent) {
    return vi > 0.0 ? -std::numeric_limits<double>::infinity()
                    : std::numeric_limits<double>::infinity();
  }
  return 2.0 * (1.0 + refl.shifted.value.real()) /
         (1.0 - h2m(s.mass) * kin.k / vi);
}

// One-shot bundle of everything the sweeps need at a single energy.
struct DeltaScattering {
  Complex d;          // denominator D(k)
  Complex t;          // transmission amplitude
  Complex r;          // reflection amplitude, centered structure
  Complex r_shifted;  // r * exp(ikw)
  double absorption = 0.0;
  Complex alpha;      // dimensionless coupling
  bool divergent = false;
};

inline DeltaScattering delta_scattering(const DeltaDoubleBarrier& s, double energy) {
  const Amplitude t = transmission_amplitude(s, energy);
  const Reflection refl = reflection(s, energy);
  return {d_of_k(s, energy), t.value,       refl.centered.value,
          refl.shifted.value, absorption(s, energy), alpha(s, energy),
          t.divergent || refl.centered.divergent};
}

}  // namespace qtunnel
