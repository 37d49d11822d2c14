#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <vector>

#include "qtunnel/resonance.hpp"

namespace qtunnel {

enum class BranchKind { tan_branch, cot_branch };
enum class PotentialSign { barrier, well };

// One branch of the singularity locus, indexed by n = 0, 1, 2, ... The
// tangent/cotangent halves swap their theta domains between barriers
// (V0R > 0) and wells (V0R < 0).
struct LocusBranch {
  int n = 0;
  BranchKind kind = BranchKind::tan_branch;

  double theta_min(PotentialSign sign) const {
    const bool first_half = (sign == PotentialSign::barrier)
                                ? kind == BranchKind::tan_branch
                                : kind == BranchKind::cot_branch;
    return first_half ? n * std::numbers::pi
                      : (n + 0.5) * std::numbers::pi;
  }
  double theta_max(PotentialSign sign) const {
    const bool first_half = (sign == PotentialSign::barrier)
                                ? kind == BranchKind::tan_branch
                                : kind == BranchKind::cot_branch;
    return first_half ? (n + 0.5) * std::numbers::pi
                      : (n + 1) * std::numbers::pi;
  }
};

// Parameter point where the resonant denominator vanishes and transmission,
// reflection and absorption all diverge.
struct SingularPoint {
  double im_pot = 0.0;   // U0I in eV (rect) or V0I in nm eV (delta), > 0
  double energy = 0.0;   // resonant energy E0, eV
  double bracket_residual = 0.0;          // resonant bracket at the point
  std::optional<double> cubic_residual;   // delta only
  std::optional<LocusBranch> branch;      // delta only
};

// Cubic whose physically relevant root marks the delta singular point:
//   4 a^{3/2} V0I^3 - 6 a V0I^2 + 4 a^{1/2} (1 + a V0R^2) V0I
//   - 2 a V0R^2 - 1.
// sqrt(a) V0I = 1/2 is always a root, for any V0R.
inline double cubic_residual(double v0i, double a, double v0r) {
  if (!(a > 0.0)) throw std::domain_error("scale factor a must be positive");
  const double sa = std::sqrt(a);
  return 4.0 * a * sa * v0i * v0i * v0i - 6.0 * a * v0i * v0i +
         4.0 * sa * (1.0 + a * v0r * v0r) * v0i - 2.0 * a * v0r * v0r - 1.0;
}

// One point of the singularity locus V0R(V0I). theta = w V0I / (2 h2m).
struct LocusPoint {
  double theta = 0.0;  // rad
  int branch_n = 0;
  BranchKind kind = BranchKind::tan_branch;
  double v0r = 0.0;    // nm eV; +-inf on a pole row
  bool pole = false;   // theta within 1e-9 rad of a branch endpoint
};

namespace detail {

inline double locus_v0r_value(double v0i, double theta, BranchKind kind) {
  return kind == BranchKind::tan_branch
             ? v0i * std::tan(theta)
             : -v0i * (std::cos(theta) / std::sin(theta));
}

}  // namespace detail

// Real part of the strength along the locus of infinite resonant
// transmission, for given imaginary part. Emits a pole marker instead of a
// large finite value near branch endpoints.
inline LocusPoint locus_v0r(double v0i, double well_width, EffectiveMass m,
                            PotentialSign sign) {
  if (!(v0i > 0.0)) {
    throw std::domain_error("locus requires a positive imaginary strength");
  }
  if (!(well_width > 0.0)) throw std::domain_error("well width must be positive");
  const double half_pi = 0.5 * std::numbers::pi;
  const double theta = well_width * v0i / (2.0 * h2m(m));
  const double nearest = std::round(theta / half_pi) * half_pi;

  const int n = static_cast<int>(std::floor(theta / std::numbers::pi));
  const bool first_half = theta - n * std::numbers::pi < half_pi;
  const BranchKind kind = (sign == PotentialSign::barrier) == first_half
                              ? BranchKind::tan_branch
                              : BranchKind::cot_branch;
  if (std::abs(theta - nearest) < 1e-9) {
    const double inf = std::numeric_limits<double>::infinity();
    return {theta, n, kind, sign == PotentialSign::barrier ? inf : -inf, true};
  }
  return {theta, n, kind, detail::locus_v0r_value(v0i, theta, kind), false};
}

// Singular point of the double delta structure from the closed-form locus:
// solve the branch equation for V0I, then E0 = V0I^2 / h2m. Within a branch
// the lower-theta half is preferred; wells fall back to the tangent half
// when the cotangent half holds no root for the requested |V0R|.
inline SingularPoint singular_point_delta(double v0r, double well_width,
                                          EffectiveMass m, int branch = 0) {
  if (v0r == 0.0) throw std::domain_error("V0R must be nonzero");
  if (!(well_width > 0.0)) throw std::domain_error("well width must be positive");
  if (branch < 0) throw std::domain_error("branch index must be >= 0");
  const PotentialSign sign =
      v0r > 0.0 ? PotentialSign::barrier : PotentialSign::well;
  const double hh = h2m(m);
  const double theta_of_v0i = well_width / (2.0 * hh);
  const auto v0i_of_theta = [&](double theta) { return theta / theta_of_v0i; };

  const BranchKind order[2] = {
      sign == PotentialSign::barrier ? BranchKind::tan_branch
                                     : BranchKind::cot_branch,
      sign == PotentialSign::barrier ? BranchKind::cot_branch
                                     : BranchKind::tan_branch};
  for (const BranchKind kind : order) {
    const LocusBranch lb{branch, kind};
    const double lo = lb.theta_min(sign);
    const double hi = lb.theta_max(sign);
    const double margin = (hi - lo) * 1e-15;
    const auto g = [&](double theta) {
      return detail::locus_v0r_value(v0i_of_theta(theta), theta, kind) - v0r;
    };
    double a = lo + margin;
    double b = hi - margin;
    double ga = g(a);
    double gb = g(b);
    if ((ga < 0.0) == (gb < 0.0)) continue;  // no root in this half
    for (int it = 0; it < 200 && b - a > 1e-15 * b; ++it) {
      const double mid = 0.5 * (a + b);
      const double gm = g(mid);
      if (gm == 0.0) {
        a = b = mid;
        break;
      }
      if ((ga < 0.0) == (gm < 0.0)) {
        a = mid;
        ga = gm;
      } else {
        b = mid;
      }
    }
    const double theta = 0.5 * (a + b);
    const double v0i = v0i_of_theta(theta);
    const double energy = v0i * v0i / hh;
    const DeltaDoubleBarrier star{well_width, {v0r, v0i}, m};
    const double bracket = resonant_bracket(uvw_delta(star, energy));
    const double cubic = cubic_residual(v0i, kinematics(energy, m).a, v0r);
    return {v0i, energy, bracket, cubic, lb};
  }
  std::ostringstream msg;
  msg << "no singular point on branch " << branch << " for V0R=" << v0r
      << " nm eV (w=" << well_width << " nm)";
  throw SolverError(msg.str());
}

// Singular point of the rectangular structure. No closed form exists, so
// this is a nested root-find: the outer variable is U0I, and each bracket
// evaluation re-solves the tracked resonance, seeded from the previous
// solution so the scan cannot hop between resonance indices.
inline SingularPoint singular_point_rect(double barrier_width, double well_width,
                                         double u0r, EffectiveMass m) {
  if (!(barrier_width > 0.0) || !(well_width > 0.0) || !(u0r > 0.0)) {
    throw std::domain_error("barrier width, well width and U0R must be positive");
  }
  const auto structure_at = [&](double u0i) {
    return RectDoubleBarrier{barrier_width, well_width, {u0r, u0i}, m};
  };

  const double u_lo_scan = u0r * 1e-9;
  const double u_hi_scan = u0r;
  const int scan_points = 240;

  double e_seed = 0.0;
  {
    const std::vector<ResonanceResult> base =
        find_resonances(structure_at(u_lo_scan));
    if (base.empty()) {
      throw SolverError("structure has no resonance in the default window");
    }
    e_seed = base.front().energy;
  }

  const auto bracket_at = [&](double u0i, double& seed) {
    const ResonanceResult r = find_resonance_near(structure_at(u0i), seed);
    seed = r.energy;
    return resonant_bracket(uvw(structure_at(u0i), r.energy));
  };

  // Log-spaced scan: the singular value can sit orders of magnitude below
  // U0R (thick barriers make the resonance width tiny).
  const double ratio = std::pow(u_hi_scan / u_lo_scan,
                                1.0 / (scan_points - 1));
  double u_prev = u_lo_scan;
  double seed = e_seed;
  double f_prev = bracket_at(u_prev, seed);
  double f_min = f_prev;
  double f_max = f_prev;
  double lo = 0.0, hi = 0.0, f_lo = 0.0;
  bool bracketed = false;
  double u = u_lo_scan;
  for (int i = 1; i < scan_points; ++i) {
    u = (i == scan_points - 1) ? u_hi_scan : u * ratio;
    double f = 0.0;
    try {
      f = bracket_at(u, seed);
    } catch (const SolverError&) {
      break;  // resonance no longer trackable; scan ends here
    }
    f_min = std::min(f_min, f);
    f_max = std::max(f_max, f);
    if ((f_prev < 0.0) != (f < 0.0)) {
      lo = u_prev;
      hi = u;
      f_lo = f_prev;
      bracketed = true;
      break;
    }
    u_prev = u;
    f_prev = f;
  }
  if (!bracketed) {
    std::ostringstream msg;
    msg << "resonant bracket has no sign change over U0I in (" << u_lo_scan
        << ", " << u << "] eV; bracket range [" << f_min << ", " << f_max
        << "]";
    throw SolverError(msg.str());
  }

  for (int it = 0; it < 200 && hi - lo > 1e-12 * hi + 1e-18; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = bracket_at(mid, seed);
    if (f_mid == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((f_lo < 0.0) == (f_mid < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  const double u_star = 0.5 * (lo + hi);
  const ResonanceResult r = find_resonance_near(structure_at(u_star), seed);
  return {u_star, r.energy,
          resonant_bracket(uvw(structure_at(u_star), r.energy)),
          std::nullopt, std::nullopt};
}

}  // namespace qtunnel
