#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "qtunnel/delta_barrier.hpp"
#include "qtunnel/kinematics.hpp"

namespace qtunnel {

// One slice of a piecewise potential. length == 0 marks a delta interface
// whose `potential` field holds the delta strength in nm eV; otherwise
// `potential` is a uniform (possibly complex) potential in eV.
struct PiecewiseRegion {
  double length = 0.0;  // nm, >= 0
  Complex potential;
};

// 2x2 matrix acting on the state vector (psi, psi'), row-major.
struct Mat2 {
  Complex m11{1.0}, m12{}, m21{}, m22{1.0};
};

inline Mat2 mul(const Mat2& a, const Mat2& b) {
  return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
          a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
}

inline Complex det(const Mat2& m) { return m.m11 * m.m22 - m.m12 * m.m21; }

namespace detail {

// sinh(z)/z, stable near z = 0.
inline Complex sinhc(Complex z) {
  if (std::abs(z) < 1e-4) {
    const Complex z2 = z * z;
    return 1.0 + z2 / 6.0 + z2 * z2 / 120.0;
  }
  return std::sinh(z) / z;
}

}  // namespace detail

// Propagation matrix across one region. A uniform slice propagates with
// cosh/sinh of kappa*length; a delta interface jumps psi' by
// (V0/h2m) psi while psi stays continuous. det == 1 in both cases.
inline Mat2 region_matrix(const PiecewiseRegion& r, double energy, EffectiveMass m) {
  if (r.length < 0.0) throw std::invalid_argument("region length must be >= 0");
  if (r.length == 0.0) {
    return {1.0, 0.0, r.potential / h2m(m), 1.0};
  }
  const Complex kappa = principal_sqrt((r.potential - energy) / h2m(m));
  const Complex z = kappa * r.length;
  const Complex ch = std::cosh(z);
  const Complex sh = std::sinh(z);
  return {ch, r.length * detail::sinhc(z), kappa * sh, ch};
}

// Full matching solution for a wave of unit amplitude incident from the
// left on a structure occupying [0, X]. `r` is the reflection amplitude in
// that coordinate frame (for the delta pair this is the shifted amplitude
// R' = R exp(ikw)); `t` is translation-invariant. psi_0 and psi_w are the
// wavefunction values at the structure's outer edges x = 0 and x = X.
struct ScatteringState {
  Complex psi_0;
  Complex psi_w;
  Complex t;
  Complex r;
  bool divergent = false;
};

inline ScatteringState tm_scatter(std::span<const PiecewiseRegion> regions,
                                  double energy, EffectiveMass m) {
  if (regions.empty()) throw std::invalid_argument("at least one region required");
  const Kinematics kin = kinematics(energy, m);
  const double hh = h2m(m);

  Mat2 acc;
  double log_scale = 0.0;  // accumulated matrix = exp(log_scale) * acc
  double total_length = 0.0;
  for (const PiecewiseRegion& region : regions) {
    // Split opaque slices so the hyperbolic functions stay in range, and
    // renormalize the accumulated product with log-scale bookkeeping.
    int pieces = 1;
    if (region.length > 0.0) {
      const Complex kappa = principal_sqrt((region.potential - energy) / hh);
      const double opacity = std::abs(kappa.real()) * region.length;
      if (opacity > 350.0) pieces = static_cast<int>(std::ceil(opacity / 350.0));
    }
    const PiecewiseRegion piece{region.length / pieces, region.potential};
    for (int i = 0; i < pieces; ++i) {
      acc = mul(region_matrix(piece, energy, m), acc);
      const double big =
          std::max(std::max(std::abs(acc.m11), std::abs(acc.m12)),
                   std::max(std::abs(acc.m21), std::abs(acc.m22)));
      if (!std::isfinite(big)) {
        throw SolverError("transfer-matrix composition overflowed");
      }
      if (big > 1e120) {
        const double inv = 1.0 / big;
        acc = {acc.m11 * inv, acc.m12 * inv, acc.m21 * inv, acc.m22 * inv};
        log_scale += std::log(big);
      }
    }
    total_length += region.length;
  }

  // Match plane waves: psi = e^{ikx} + r e^{-ikx} on the left,
  // t e^{ikx} on the right of [0, X].
  const Complex ik(0.0, kin.k);
  const double k2 = kin.k * kin.k;
  const Complex den = ik * (acc.m11 + acc.m22) + k2 * acc.m12 - acc.m21;
  const Complex num_r = ik * (acc.m22 - acc.m11) + k2 * acc.m12 + acc.m21;
  const bool divergent = !std::isfinite(1.0 / std::norm(den));
  if (divergent) {
    return {Complex{}, Complex{}, Complex{}, Complex{}, true};
  }
  const Complex eikX = std::exp(Complex(0.0, kin.k * total_length));
  const Complex t = 2.0 * ik / (eikX * den) * std::exp(-log_scale);
  const Complex r = num_r / den;
  return {1.0 + r, t * eikX, t, r, false};
}

inline ScatteringState tm_scatter(std::initializer_list<PiecewiseRegion> regions,
                                  double energy, EffectiveMass m) {
  return tm_scatter(std::span<const PiecewiseRegion>(regions.begin(), regions.size()),
                    energy, m);
}

inline std::array<PiecewiseRegion, 3> regions_of(const DeltaDoubleBarrier& s) {
  return {{{0.0, s.strength}, {s.well_width, 0.0}, {0.0, s.strength}}};
}

inline std::array<PiecewiseRegion, 3> regions_of(const RectDoubleBarrier& s) {
  return {{{s.barrier_width, s.height},
           {s.well_width, 0.0},
           {s.barrier_width, s.height}}};
}

// Absorption evaluated directly from the wavefunction boundary values:
// A = -(V0I/(h2m k)) (|psi(0)|^2 + |psi(w)|^2), incident amplitude 1.
inline double absorption_direct(const DeltaDoubleBarrier& s, double energy) {
  const Kinematics kin = kinematics(energy, s.mass);
  const auto regions = regions_of(s);
  const ScatteringState state = tm_scatter(regions, energy, s.mass);
  const double vi = s.strength.imag();
  if (state.divergent) {
    if (vi == 0.0) return 0.0;
    return vi > 0.0 ? -std::numeric_limits<double>::infinity()
                    : std::numeric_limits<double>::infinity();
  }
  return -(vi / (h2m(s.mass) * kin.k)) *
         (std::norm(state.psi_0) + std::norm(state.psi_w));
}

}  // namespace qtunnel
