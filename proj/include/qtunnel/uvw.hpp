#pragma once

#include <cmath>
#include <complex>

#include "qtunnel/errors.hpp"
#include "qtunnel/kinematics.hpp"

namespace qtunnel {

// The three complex functions that carry the whole two-barrier amplitude:
//   U = cosh^2(kappa b) - (delta^2/4) sinh^2(kappa b)
//   V = delta cosh(kappa b) sinh(kappa b)
//   W = (sigma^2/4) sinh^2(kappa b)
// They satisfy U^2 + V^2 = (1 + W)^2 identically. The real/imaginary
// accessors are views on the one computed value, not a second code path.
struct UvwSplit {
  Complex u, v, w;

  double ur() const { return u.real(); }
  double ui() const { return u.imag(); }
  double vr() const { return v.real(); }
  double vi() const { return v.imag(); }
  double wr() const { return w.real(); }
  double wi() const { return w.imag(); }
};

// Denominator of the transmission amplitude for an inter-barrier phase
// 2kw with cosine c and sine s: D = U + iV + W (c + i s).
inline Complex d_from_uvw(const UvwSplit& f, double c, double s) {
  return f.u + kImag * f.v + f.w * Complex(c, s);
}

// Numerator/denominator pair of the extremal condition tan(2kw) = M/N,
// obtained from d|D|^2/dw = 0. Covers maxima and minima alike.
struct MN {
  double m = 0.0;
  double n = 0.0;
};

inline MN mn(const UvwSplit& f) {
  return {-f.ur() * f.wi() + f.vi() * f.wi() + f.ui() * f.wr() + f.vr() * f.wr(),
          f.ur() * f.wr() - f.vi() * f.wr() + f.ui() * f.wi() + f.vr() * f.wi()};
}

// Real bracket of the resonant denominator, 1 - |W|/|U + iV|. It vanishes
// at a transmission singularity.
inline double resonant_bracket(const UvwSplit& f) {
  const double ax = std::abs(f.u + kImag * f.v);
  if (!(ax > 0.0)) {
    throw std::domain_error("resonant denominator |U + iV| vanishes");
  }
  return 1.0 - std::abs(f.w) / ax;
}

// D at resonance: (U + iV) * [1 - |W|/|U + iV|]. Valid once the extremal
// condition holds with the transmission-maximum sign choice
// sin(2kw) = -M/sqrt(M^2 + N^2).
inline Complex resonant_d(const UvwSplit& f) {
  return (f.u + kImag * f.v) * resonant_bracket(f);
}

// A scattering amplitude together with an explicit divergence flag. D = 0
// (a transmission singularity) makes T, R infinite; the flag carries that
// state instead of an exception, so sweeps can keep going.
struct Amplitude {
  Complex value{};
  bool divergent = false;
};

inline Amplitude amplitude_ratio(Complex numerator, Complex denominator) {
  const double n2 = std::norm(denominator);
  if (!std::isfinite(1.0 / n2)) return {Complex{}, true};
  return {numerator / denominator, false};
}

}  // namespace qtunnel
