#pragma once

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qtunnel/delta_barrier.hpp"
#include "qtunnel/rect_barrier.hpp"
#include "qtunnel/uvw.hpp"

namespace qtunnel {

// A located transmission maximum.
struct ResonanceResult {
  double energy = 0.0;     // E0, eV
  Complex d_res;           // resonant denominator
  double t_res_sq = 0.0;   // 1/|d_res|^2, +inf at a singular point
  bool divergent = false;  // t_res_sq not finite
  int index = 0;           // ordinal in the search window, 0 = lowest energy
  double residual = 0.0;   // |sin(2kw) N - cos(2kw) M| / hypot(M, N) at E0
};

struct EnergyWindow {
  double e_min = 0.0;
  double e_max = 0.0;
};

namespace detail {

inline UvwSplit uvw_of(const RectDoubleBarrier& s, double energy) {
  return uvw(s, energy);
}
inline UvwSplit uvw_of(const DeltaDoubleBarrier& s, double energy) {
  return uvw_delta(s, energy);
}
inline double well_width_of(const RectDoubleBarrier& s) { return s.well_width; }
inline double well_width_of(const DeltaDoubleBarrier& s) { return s.well_width; }
inline EffectiveMass mass_of(const RectDoubleBarrier& s) { return s.mass; }
inline EffectiveMass mass_of(const DeltaDoubleBarrier& s) { return s.mass; }
inline Complex d_res_of(const RectDoubleBarrier& s, double e) { return d_res(s, e); }
inline Complex d_res_of(const DeltaDoubleBarrier& s, double e) { return d_res(s, e); }

// Grid points must dodge the removable kinematic singularity at E == U0R of
// a strictly real rectangular barrier; nudge by one part in 1e9.
inline double safe_energy(const RectDoubleBarrier& s, double energy) {
  if (s.height.imag() == 0.0 && energy == s.height.real()) {
    return energy * (1.0 + 1e-9);
  }
  return energy;
}
inline double safe_energy(const DeltaDoubleBarrier&, double energy) {
  return energy;
}

}  // namespace detail

// Default energy hunting window when the caller does not give one.
inline EnergyWindow default_search_window(const RectDoubleBarrier& s) {
  const double scale = std::max(std::abs(s.height.real()), 1e-3);
  return {0.001 * scale, 3.0 * std::max(scale, 1.0)};
}
inline EnergyWindow default_search_window(const DeltaDoubleBarrier& s) {
  const double scale = std::max(std::abs(s.strength.real()) / s.well_width, 1e-3);
  return {0.001 * scale, 3.0 * std::max(scale, 1.0)};
}

// sin(2kw) N - cos(2kw) M: zero exactly where the extremal condition
// tan(2kw) = M/N holds, with no tangent poles in the way.
template <class Structure>
double resonance_residual(const Structure& s, double energy) {
  const MN c = mn(detail::uvw_of(s, energy));
  const Kinematics kin = kinematics(energy, detail::mass_of(s));
  const double phase = 2.0 * kin.k * detail::well_width_of(s);
  return std::sin(phase) * c.n - std::cos(phase) * c.m;
}

namespace detail {

template <class Structure>
double residual_safe(const Structure& s, double energy) {
  return resonance_residual(s, safe_energy(s, energy));
}

// Transmission maxima are the extremal-condition roots with
// sin(2kw) = -M/sqrt(M^2+N^2); at those, |D|^2 is a local minimum in the
// well width. The first derivative in w vanishes at every extremal root, so
// a symmetric +-1e-6 nm probe measures pure curvature; when that signal
// rises above the rounding floor it must agree with the sign selection or
// the candidate is dropped with a warning.
template <class Structure>
bool is_transmission_maximum(const Structure& s, double energy) {
  const UvwSplit f = uvw_of(s, energy);
  const MN c = mn(f);
  const double hyp = std::hypot(c.m, c.n);
  if (!(hyp > 0.0)) return false;  // degenerate (no barrier)
  const Kinematics kin = kinematics(energy, mass_of(s));
  const double w = well_width_of(s);
  const double phase = 2.0 * kin.k * w;
  const bool sign_ok = std::abs(std::sin(phase) + c.m / hyp) < 1e-6;

  const double dw = 1e-6;  // nm
  const auto d2_at = [&](double well) {
    const double ph = 2.0 * kin.k * well;
    return std::norm(d_from_uvw(f, std::cos(ph), std::sin(ph)));
  };
  const double d2 = d2_at(w);
  const double dm = d2_at(w - dw);
  const double dp = d2_at(w + dw);
  const double curvature = (dm - d2) + (dp - d2);
  const double noise = 64.0 * std::numeric_limits<double>::epsilon() *
                       std::max(d2, std::max(dm, dp));
  if (std::abs(curvature) <= noise) return sign_ok;  // probe inconclusive

  const bool probe_ok = curvature > 0.0;
  if (sign_ok != probe_ok) {
    std::cerr << "qtunnel: resonance candidate at E=" << energy
              << " eV discarded (sign and curvature checks disagree)\n";
    return false;
  }
  return sign_ok;
}

template <class Structure>
double normalized_residual(const Structure& s, double energy) {
  const MN c = mn(uvw_of(s, energy));
  const double hyp = std::hypot(c.m, c.n);
  if (!(hyp > 0.0)) return 0.0;
  const Kinematics kin = kinematics(energy, mass_of(s));
  const double phase = 2.0 * kin.k * well_width_of(s);
  return std::abs(std::sin(phase) * c.n - std::cos(phase) * c.m) / hyp;
}

template <class Structure>
double bisect_root(const Structure& s, double lo, double hi, double f_lo) {
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = residual_safe(s, mid);
    if (f_mid == 0.0) return mid;
    if ((f_lo < 0.0) == (f_mid < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

template <class Structure>
ResonanceResult make_result(const Structure& s, double energy, int index) {
  const Complex dres = d_res_of(s, safe_energy(s, energy));
  const double t2 = 1.0 / std::norm(dres);
  return {energy,
          dres,
          t2,
          !std::isfinite(t2),
          index,
          normalized_residual(s, safe_energy(s, energy))};
}

}  // namespace detail

// Scans [e_min, e_max] on a uniform grid for sign changes of the extremal
// residual, bisects each bracket to 1e-12 eV, keeps transmission maxima and
// returns up to max_count of them ascending in energy.
template <class Structure>
std::vector<ResonanceResult> find_resonances(
    const Structure& s, double e_min, double e_max,
    int max_count = std::numeric_limits<int>::max(), int grid_points = 2000) {
  if (!(e_min > 0.0) || !(e_max > e_min)) {
    throw std::domain_error("resonance window requires 0 < e_min < e_max");
  }
  if (grid_points < 2) throw std::domain_error("grid_points must be >= 2");

  std::vector<ResonanceResult> out;
  const double step = (e_max - e_min) / (grid_points - 1);
  double e_prev = e_min;
  double f_prev = detail::residual_safe(s, e_prev);
  for (int i = 1; i < grid_points; ++i) {
    const double e = (i == grid_points - 1) ? e_max : e_min + i * step;
    const double f = detail::residual_safe(s, e);
    const bool bracketed = std::isfinite(f_prev) && std::isfinite(f) &&
                           ((f_prev < 0.0) != (f < 0.0) || f_prev == 0.0);
    if (bracketed) {
      const double root = (f_prev == 0.0)
                              ? e_prev
                              : detail::bisect_root(s, e_prev, e, f_prev);
      const bool duplicate =
          !out.empty() && std::abs(root - out.back().energy) < 1e-11;
      if (!duplicate && detail::is_transmission_maximum(s, root)) {
        out.push_back(detail::make_result(s, root, static_cast<int>(out.size())));
      }
    }
    e_prev = e;
    f_prev = f;
  }
  if (static_cast<int>(out.size()) > max_count) out.resize(max_count);
  return out;
}

template <class Structure>
std::vector<ResonanceResult> find_resonances(
    const Structure& s, int max_count = std::numeric_limits<int>::max()) {
  const EnergyWindow win = default_search_window(s);
  return find_resonances(s, win.e_min, win.e_max, max_count);
}

// Continuation solve: the transmission maximum nearest to a seed energy,
// found by scanning windows that expand geometrically around the seed.
// Used to track one resonance through a parameter sweep without hopping
// between resonance indices.
template <class Structure>
ResonanceResult find_resonance_near(const Structure& s, double e_seed) {
  if (!(e_seed > 0.0)) throw std::domain_error("seed energy must be positive");
  double span = std::max(1e-6, 1e-4 * e_seed);
  const double span_limit = 8.0 * std::max(1.0, e_seed);
  while (span <= span_limit) {
    const double lo = std::max(e_seed * 1e-6, e_seed - span);
    const double hi = e_seed + span;
    std::vector<ResonanceResult> found = find_resonances(s, lo, hi, 64, 128);
    if (!found.empty()) {
      auto best = std::min_element(
          found.begin(), found.end(), [&](const auto& a, const auto& b) {
            return std::abs(a.energy - e_seed) < std::abs(b.energy - e_seed);
          });
      ResonanceResult r = *best;
      r.index = -1;  // not an ordinal within a caller-visible window
      return r;
    }
    span *= 2.0;
  }
  std::ostringstream msg;
  msg << "no transmission maximum near E=" << e_seed
      << " eV (searched up to +-" << span_limit << " eV)";
  throw SolverError(msg.str());
}

}  // namespace qtunnel
