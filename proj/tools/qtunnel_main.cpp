// Command-line front end: spectrum, res-sweep, singularity, locus, cubic
// and oracle-check subcommands over the double-barrier solvers. Input is a
// JSON scenario file, equivalent flags, or both (flags win).

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qtunnel/commands.hpp"

namespace {

struct FlagSet {
  std::string scenario_path;
  std::optional<std::string> structure;
  std::optional<double> b, w, u0r, u0i, v0r, v0i, mass;
  std::optional<double> emin, emax, imin, imax, vimin, vimax, energy;
  std::optional<int> points, branch, draws;
  std::optional<unsigned long long> seed;
  bool log_axis = false;
  std::optional<std::string> potential;
  std::optional<std::string> out;
};

void add_common_options(CLI::App* cmd, FlagSet& f) {
  cmd->add_option("--scenario", f.scenario_path, "JSON scenario file");
  cmd->add_option("--structure", f.structure, "structure kind: rect|delta");
  cmd->add_option("--b", f.b, "barrier width [nm]");
  cmd->add_option("--w", f.w, "well width [nm]");
  cmd->add_option("--u0r", f.u0r, "real barrier height [eV]");
  cmd->add_option("--u0i", f.u0i, "imaginary barrier height [eV]");
  cmd->add_option("--v0r", f.v0r, "real delta strength [nm eV]");
  cmd->add_option("--v0i", f.v0i, "imaginary delta strength [nm eV]");
  cmd->add_option("--mass", f.mass, "effective mass ratio m/m0");
  cmd->add_option("--emin", f.emin, "energy window minimum [eV]");
  cmd->add_option("--emax", f.emax, "energy window maximum [eV]");
  cmd->add_option("--points", f.points, "sweep point count (>= 2)");
  cmd->add_option("--imin", f.imin, "imaginary-potential axis minimum");
  cmd->add_option("--imax", f.imax, "imaginary-potential axis maximum");
  cmd->add_option("--vimin", f.vimin, "V0I axis minimum [nm eV]");
  cmd->add_option("--vimax", f.vimax, "V0I axis maximum [nm eV]");
  cmd->add_option("--energy", f.energy, "fixed energy [eV] (cubic)");
  cmd->add_option("--branch", f.branch, "locus branch index n >= 0");
  cmd->add_option("--potential", f.potential, "locus side: barrier|well");
  cmd->add_option("--draws", f.draws, "oracle-check sample count");
  cmd->add_option("--seed", f.seed, "oracle-check RNG seed");
  cmd->add_flag("--log-axis", f.log_axis, "log-spaced sweep axis");
  cmd->add_option("--out", f.out, "output path (default: stdout)");
}

qtunnel::Scenario merge(const FlagSet& f) {
  qtunnel::Scenario sc;
  if (!f.scenario_path.empty()) sc = qtunnel::load_scenario(f.scenario_path);
  if (f.structure) sc.structure = *f.structure;
  if (f.b) sc.b = f.b;
  if (f.w) sc.w = f.w;
  if (f.u0r) sc.u0r = f.u0r;
  if (f.u0i) sc.u0i = f.u0i;
  if (f.v0r) sc.v0r = f.v0r;
  if (f.v0i) sc.v0i = f.v0i;
  if (f.mass) sc.mass = *f.mass;
  if (f.emin) sc.emin = f.emin;
  if (f.emax) sc.emax = f.emax;
  if (f.points) sc.points = *f.points;
  if (f.imin) sc.imin = f.imin;
  if (f.imax) sc.imax = f.imax;
  if (f.vimin) sc.vimin = f.vimin;
  if (f.vimax) sc.vimax = f.vimax;
  if (f.energy) sc.energy = f.energy;
  if (f.branch) sc.branch = *f.branch;
  if (f.draws) sc.draws = *f.draws;
  if (f.seed) sc.seed = *f.seed;
  if (f.log_axis) sc.log_axis = true;
  if (f.potential) sc.potential = *f.potential;
  if (f.out) sc.out = *f.out;
  return sc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transmission, resonances and singular points for complex "
               "double-barrier structures"};
  app.require_subcommand(1);

  const char* names[] = {"spectrum", "res-sweep", "singularity",
                         "locus", "cubic", "oracle-check"};
  const char* descriptions[] = {
      "T, R, A and the complex denominator over an energy grid (CSV)",
      "resonant T, R, A versus the imaginary potential part (CSV)",
      "locate the transmission-singularity point (JSON)",
      "singularity locus V0R(V0I) for the delta pair (CSV)",
      "left-hand side of the singularity cubic over V0I (CSV)",
      "random-draw cross-check against the transfer-matrix solver (JSON)"};
  FlagSet flags[6];
  for (int i = 0; i < 6; ++i) {
    add_common_options(app.add_subcommand(names[i], descriptions[i]), flags[i]);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return qtunnel::cli::kExitUsage;
  }

  for (int i = 0; i < 6; ++i) {
    if (!app.get_subcommand(names[i])->parsed()) continue;
    qtunnel::Scenario sc;
    try {
      sc = merge(flags[i]);
    } catch (const qtunnel::ScenarioError& e) {
      std::cerr << "usage error: " << e.what() << "\n";
      return qtunnel::cli::kExitUsage;
    }
    if (!sc.out.empty()) {
      std::ofstream file(sc.out, std::ios::binary);
      if (!file) {
        std::cerr << "usage error: cannot open output file '" << sc.out << "'\n";
        return qtunnel::cli::kExitUsage;
      }
      return qtunnel::cli::dispatch(names[i], sc, file, std::cerr);
    }
    return qtunnel::cli::dispatch(names[i], sc, std::cout, std::cerr);
  }
  return qtunnel::cli::kExitUsage;
}
