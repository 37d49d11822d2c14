#pragma once

#include <cmath>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "qtunnel/csv.hpp"
#include "qtunnel/qtunnel.hpp"
#include "qtunnel/scenario.hpp"

namespace qtunnel::cli {

inline constexpr const char* kVersion = "0.1.0";

// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitSolver = 2;
inline constexpr int kExitOracle = 3;

namespace detail {

inline std::vector<double> make_grid(double lo, double hi, int n, bool log_axis) {
  if (n < 2) throw ScenarioError("field 'points' must be >= 2 for sweeps");
  if (!(hi > lo)) throw ScenarioError("sweep axis requires min < max");
  if (log_axis && !(lo > 0.0)) {
    throw ScenarioError("log axis requires a positive sweep minimum");
  }
  std::vector<double> grid(n);
  if (log_axis) {
    const double ratio = std::log(hi / lo) / (n - 1);
    for (int i = 0; i < n; ++i) grid[i] = lo * std::exp(i * ratio);
  } else {
    const double step = (hi - lo) / (n - 1);
    for (int i = 0; i < n; ++i) grid[i] = lo + i * step;
  }
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

inline void write_header(std::ostream& out, const std::string& command,
                         const Scenario& sc, const std::string& columns) {
  out << "# qtunnel " << command << " " << kVersion << "\n";
  out << "# scenario: " << scenario_echo(sc).dump() << "\n";
  out << columns << "\n";
}

inline const char* kind_name(BranchKind kind) {
  return kind == BranchKind::tan_branch ? "tan" : "cot";
}

inline nlohmann::json solver_error_json(const std::string& message) {
  return nlohmann::json{{"error", {{"type", "solver"}, {"message", message}}}};
}

}  // namespace detail

// spectrum: T, R, A and the complex denominator on an energy grid.
inline int run_spectrum(const Scenario& sc, std::ostream& out, std::ostream& err) {
  try {
    if (sc.structure != "rect" && sc.structure != "delta") {
      throw ScenarioError("field 'structure' must be \"rect\" or \"delta\"");
    }
    const bool is_rect = sc.structure == "rect";
    RectDoubleBarrier rect;
    DeltaDoubleBarrier delta;
    EnergyWindow win;
    if (is_rect) {
      rect = rect_from_scenario(sc);
      win = default_search_window(rect);
    } else {
      delta = delta_from_scenario(sc);
      win = default_search_window(delta);
    }
    const double e_lo = sc.emin.value_or(win.e_min);
    const double e_hi = sc.emax.value_or(win.e_max);
    if (!(e_lo > 0.0)) throw ScenarioError("field 'emin' must be positive");
    std::vector<double> grid = detail::make_grid(e_lo, e_hi, sc.points, sc.log_axis);
    if (is_rect) {
      for (double& e : grid) e = qtunnel::detail::safe_energy(rect, e);
    }

    detail::write_header(out, "spectrum", sc, "E_eV,T2,R2,A,ReD,ImD");
    for (const double e : grid) {
      Complex d;
      double t2 = 0.0, r2 = 0.0, a = 0.0;
      bool pole = false;
      if (is_rect) {
        d = d_of_k(rect, e);
        t2 = 1.0 / std::norm(d);
        const auto regions = regions_of(rect);
        const ScatteringState st = tm_scatter(regions, e, rect.mass);
        pole = st.divergent || !std::isfinite(t2);
        if (pole) {
          t2 = r2 = std::numeric_limits<double>::infinity();
          a = -std::numeric_limits<double>::infinity();
        } else {
          r2 = std::norm(st.r);
          a = 1.0 - t2 - r2;
        }
      } else {
        const DeltaScattering ds = delta_scattering(delta, e);
        d = ds.d;
        pole = ds.divergent;
        if (pole) {
          t2 = r2 = std::numeric_limits<double>::infinity();
          a = -std::numeric_limits<double>::infinity();
        } else {
          t2 = std::norm(ds.t);
          r2 = std::norm(ds.r);
          a = ds.absorption;
        }
      }
      out << format_double(e) << ',' << format_double(t2) << ','
          << format_double(r2) << ',' << format_double(a) << ','
          << format_double(d.real()) << ',' << format_double(d.imag());
      if (pole) out << ",flag=pole";
      out << "\n";
    }
    return kExitOk;
  } catch (const ScenarioError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << "\n";
    return kExitSolver;
  }
}

// res-sweep: re-solve the tracked resonance at each imaginary potential
// value, with continuation seeding between points.
inline int run_res_sweep(const Scenario& sc, std::ostream& out, std::ostream& err) {
  try {
    if (sc.structure != "rect" && sc.structure != "delta") {
      throw ScenarioError("field 'structure' must be \"rect\" or \"delta\"");
    }
    if (!sc.imin || !sc.imax) {
      throw ScenarioError("res-sweep requires fields 'imin' and 'imax'");
    }
    const bool is_rect = sc.structure == "rect";
    const std::vector<double> grid =
        detail::make_grid(*sc.imin, *sc.imax, sc.points, sc.log_axis);

    detail::write_header(out, "res-sweep", sc,
                         "im_pot,E0_eV,T2_res,R2_res,A_res");
    std::optional<double> seed;
    for (const double im : grid) {
      Scenario point = sc;
      if (is_rect) {
        point.u0i = im;
      } else {
        point.v0i = im;
      }
      RectDoubleBarrier rect;
      DeltaDoubleBarrier delta;
      if (is_rect) {
        rect = rect_from_scenario(point);
      } else {
        delta = delta_from_scenario(point);
      }

      const auto solve = [&]() -> std::optional<ResonanceResult> {
        try {
          if (seed) {
            return is_rect ? find_resonance_near(rect, *seed)
                           : find_resonance_near(delta, *seed);
          }
          EnergyWindow win = is_rect ? default_search_window(rect)
                                     : default_search_window(delta);
          if (sc.emin) win.e_min = *sc.emin;
          if (sc.emax) win.e_max = *sc.emax;
          std::vector<ResonanceResult> all =
              is_rect ? find_resonances(rect, win.e_min, win.e_max)
                      : find_resonances(delta, win.e_min, win.e_max);
          if (all.empty()) return std::nullopt;
          return all.front();
        } catch (const SolverError&) {
          return std::nullopt;
        }
      };

      const std::optional<ResonanceResult> res = solve();
      if (!res) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        out << format_double(im) << ',' << format_double(nan) << ','
            << format_double(nan) << ',' << format_double(nan) << ','
            << format_double(nan) << ",flag=failed\n";
        continue;  // keep the previous seed for the next point
      }
      seed = res->energy;

      double t2 = res->t_res_sq, r2 = 0.0, a = 0.0;
      bool pole = res->divergent;
      if (is_rect) {
        const auto regions = regions_of(rect);
        const ScatteringState st = tm_scatter(regions, res->energy, rect.mass);
        pole = pole || st.divergent;
        r2 = pole ? std::numeric_limits<double>::infinity() : std::norm(st.r);
        a = pole ? -std::numeric_limits<double>::infinity() : 1.0 - t2 - r2;
      } else {
        const Reflection refl = reflection(delta, res->energy);
        pole = pole || refl.centered.divergent;
        r2 = pole ? std::numeric_limits<double>::infinity()
                  : std::norm(refl.centered.value);
        a = absorption(delta, res->energy);
      }
      if (pole) t2 = std::numeric_limits<double>::infinity();
      out << format_double(im) << ',' << format_double(res->energy) << ','
          << format_double(t2) << ',' << format_double(r2) << ','
          << format_double(a);
      if (pole) out << ",flag=pole";
      out << "\n";
    }
    return kExitOk;
  } catch (const ScenarioError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << "\n";
    return kExitSolver;
  }
}

// singularity: the imaginary potential value and resonant energy where the
// resonant denominator vanishes.
inline int run_singularity(const Scenario& sc, std::ostream& out, std::ostream& err) {
  try {
    if (sc.structure != "rect" && sc.structure != "delta") {
      throw ScenarioError("field 'structure' must be \"rect\" or \"delta\"");
    }
    nlohmann::json j;
    if (sc.structure == "rect") {
      const RectDoubleBarrier rect = rect_from_scenario(sc);
      if (!(rect.height.real() > 0.0)) {
        throw ScenarioError("field 'u0r' must be positive");
      }
      const SingularPoint sp = singular_point_rect(
          rect.barrier_width, rect.well_width, rect.height.real(), rect.mass);
      j = {{"kind", "rect"},
           {"im_pot", sp.im_pot},
           {"E0_eV", sp.energy},
           {"bracket_residual", sp.bracket_residual}};
    } else {
      const DeltaDoubleBarrier delta = delta_from_scenario(sc);
      const SingularPoint sp = singular_point_delta(
          delta.strength.real(), delta.well_width, delta.mass, sc.branch);
      j = {{"kind", "delta"},
           {"im_pot", sp.im_pot},
           {"E0_eV", sp.energy},
           {"bracket_residual", sp.bracket_residual},
           {"cubic_residual", *sp.cubic_residual},
           {"branch",
            {{"n", sp.branch->n}, {"kind", detail::kind_name(sp.branch->kind)}}}};
    }
    out << j.dump(2) << "\n";
    return kExitOk;
  } catch (const ScenarioError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SolverError& e) {
    out << detail::solver_error_json(e.what()).dump(2) << "\n";
    return kExitSolver;
  }
}

// locus: the curve V0R(V0I) of infinite resonant transmission.
inline int run_locus(const Scenario& sc, std::ostream& out, std::ostream& err) {
  try {
    if (!sc.vimin || !sc.vimax) {
      throw ScenarioError("locus requires fields 'vimin' and 'vimax'");
    }
    if (!sc.w) throw ScenarioError("locus requires field 'w'");
    if (!(*sc.w > 0.0)) throw ScenarioError("field 'w' must be positive");
    if (!(sc.mass > 0.0)) throw ScenarioError("field 'mass' must be positive");
    PotentialSign sign;
    if (sc.potential == "barrier") {
      sign = PotentialSign::barrier;
    } else if (sc.potential == "well") {
      sign = PotentialSign::well;
    } else {
      throw ScenarioError("field 'potential' must be \"barrier\" or \"well\"");
    }
    if (!(*sc.vimin > 0.0)) {
      throw ScenarioError("field 'vimin' must be positive");
    }
    const std::vector<double> grid =
        detail::make_grid(*sc.vimin, *sc.vimax, sc.points, sc.log_axis);

    detail::write_header(out, "locus", sc, "V0I,theta_rad,branch_n,branch_kind,V0R");
    for (const double v0i : grid) {
      const LocusPoint p = locus_v0r(v0i, *sc.w, {sc.mass}, sign);
      out << format_double(v0i) << ',' << format_double(p.theta) << ','
          << format_int(p.branch_n) << ','
          << (p.pole ? "pole" : detail::kind_name(p.kind)) << ','
          << format_double(p.v0r);
      if (p.pole) out << ",flag=pole";
      out << "\n";
    }
    return kExitOk;
  } catch (const ScenarioError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
}

// cubic: left-hand side of the singularity cubic on a V0I grid.
inline int run_cubic(const Scenario& sc, std::ostream& out, std::ostream& err) {
  try {
    if (!sc.v0r) throw ScenarioError("cubic requires field 'v0r'");
    if (!sc.energy) throw ScenarioError("cubic requires field 'energy'");
    if (!sc.vimin || !sc.vimax) {
      throw ScenarioError("cubic requires fields 'vimin' and 'vimax'");
    }
    if (!(sc.mass > 0.0)) throw ScenarioError("field 'mass' must be positive");
    if (!(*sc.energy > 0.0)) throw ScenarioError("field 'energy' must be positive");
    const double a = kinematics(*sc.energy, {sc.mass}).a;
    const std::vector<double> grid =
        detail::make_grid(*sc.vimin, *sc.vimax, sc.points, sc.log_axis);
    detail::write_header(out, "cubic", sc, "V0I,residual");
    for (const double v0i : grid) {
      out << format_double(v0i) << ','
          << format_double(cubic_residual(v0i, a, *sc.v0r)) << "\n";
    }
    return kExitOk;
  } catch (const ScenarioError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
}

// Random-draw cross-validation of the analytic amplitudes against the
// transfer-matrix solution, plus the absorption bookkeeping identities.
struct OracleReport {
  int draws = 0;
  double max_rel_err_t = 0.0;
  double max_rel_err_r = 0.0;
  double max_abs_err_unitarity = 0.0;
  bool pass = false;
};

inline OracleReport run_oracle_draws(int draws, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  const auto uniform = [&rng](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };
  OracleReport rep;
  rep.draws = draws;
  const EffectiveMass mass{0.067};

  for (int i = 0; i < draws; ++i) {
    const double b = uniform(1e-3, 10.0);
    const double w = uniform(1e-3, 10.0);
    const Complex u0(uniform(-2.0, 2.0), uniform(-1.0, 1.0));
    double e = uniform(1e-3, 2.0);
    if (u0.imag() == 0.0 && e == u0.real()) e *= 1.0 + 1e-9;
    const RectDoubleBarrier rect{b, w, u0, mass};
    if (std::abs(d_of_k(rect, e)) < 1e-6) continue;
    const Amplitude t_an = transmission_amplitude(rect, e);
    const auto regions = regions_of(rect);
    const ScatteringState st = tm_scatter(regions, e, mass);
    if (t_an.divergent || st.divergent) continue;
    const double scale = std::abs(t_an.value);
    if (scale > 0.0) {
      rep.max_rel_err_t =
          std::max(rep.max_rel_err_t, std::abs(t_an.value - st.t) / scale);
    }
  }

  for (int i = 0; i < draws; ++i) {
    const double w = uniform(1e-2, 10.0);
    const Complex v0(uniform(-5.0, 5.0), uniform(-2.0, 2.0));
    const double e = uniform(1e-3, 2.0);
    const DeltaDoubleBarrier delta{w, v0, mass};
    if (std::abs(d_of_k(delta, e)) < 1e-6) continue;
    const DeltaScattering ds = delta_scattering(delta, e);
    const auto regions = regions_of(delta);
    const ScatteringState st = tm_scatter(regions, e, mass);
    if (ds.divergent || st.divergent) continue;
    const double t_scale = std::abs(ds.t);
    if (t_scale > 0.0) {
      rep.max_rel_err_t =
          std::max(rep.max_rel_err_t, std::abs(ds.t - st.t) / t_scale);
    }
    const double r_scale = std::abs(ds.r_shifted);
    if (r_scale > 0.0) {
      rep.max_rel_err_r =
          std::max(rep.max_rel_err_r, std::abs(ds.r_shifted - st.r) / r_scale);
    }
    const double quasi =
        std::norm(ds.t) + std::norm(ds.r) + ds.absorption - 1.0;
    rep.max_abs_err_unitarity =
        std::max(rep.max_abs_err_unitarity, std::abs(quasi));
    rep.max_abs_err_unitarity = std::max(
        rep.max_abs_err_unitarity,
        std::abs(ds.absorption - absorption_direct(delta, e)));
  }

  rep.pass = rep.max_rel_err_t <= 1e-10 && rep.max_rel_err_r <= 1e-10 &&
             rep.max_abs_err_unitarity <= 1e-8;
  return rep;
}

inline int run_oracle_check(const Scenario& sc, std::ostream& out, std::ostream& err) {
  try {
    if (sc.draws < 1) throw ScenarioError("field 'draws' must be >= 1");
    const OracleReport rep = run_oracle_draws(sc.draws, sc.seed);
    const nlohmann::json j = {{"draws", rep.draws},
                              {"max_rel_err_T", rep.max_rel_err_t},
                              {"max_rel_err_R", rep.max_rel_err_r},
                              {"max_abs_err_unitarity", rep.max_abs_err_unitarity},
                              {"pass", rep.pass}};
    out << j.dump(2) << "\n";
    return rep.pass ? kExitOk : kExitOracle;
  } catch (const ScenarioError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
}

inline int dispatch(const std::string& command, const Scenario& sc,
                    std::ostream& out, std::ostream& err) {
  if (command == "spectrum") return run_spectrum(sc, out, err);
  if (command == "res-sweep") return run_res_sweep(sc, out, err);
  if (command == "singularity") return run_singularity(sc, out, err);
  if (command == "locus") return run_locus(sc, out, err);
  if (command == "cubic") return run_cubic(sc, out, err);
  if (command == "oracle-check") return run_oracle_check(sc, out, err);
  err << "usage error: unknown command '" << command << "'\n";
  return kExitUsage;
}

}  // namespace qtunnel::cli
