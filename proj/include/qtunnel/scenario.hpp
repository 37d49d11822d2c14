#pragma once

#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qtunnel/delta_barrier.hpp"
#include "qtunnel/rect_barrier.hpp"

namespace qtunnel {

// A run request: structure, geometry, potential, sweep axis, output. Loaded
// from a JSON file and/or command-line flags; flags win over file fields.
struct Scenario {
  std::string structure;            // "rect" | "delta"
  std::optional<double> b;          // barrier width, nm (rect)
  std::optional<double> w;          // well width, nm
  std::optional<double> u0r, u0i;   // rect potential, eV
  std::optional<double> v0r, v0i;   // delta strength, nm eV
  double mass = 0.067;              // m/m0
  std::optional<double> emin, emax; // energy window, eV
  int points = 201;                 // sweep point count (inclusive ends)
  std::optional<double> imin, imax; // imaginary-part axis (res-sweep)
  std::optional<double> vimin, vimax;  // V0I axis (locus, cubic)
  std::optional<double> energy;     // fixed energy (cubic), eV
  int branch = 0;                   // locus branch index
  bool log_axis = false;            // log-spaced sweep axis
  std::string potential = "barrier";  // locus side: "barrier" | "well"
  int draws = 1000;                 // oracle-check sample count
  unsigned long long seed = 20230815ULL;  // oracle-check RNG seed
  std::string out;                  // output path; empty = stdout
};

class ScenarioError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline void read_field(const nlohmann::json& j, const char* key, double& out) {
  if (!j.at(key).is_number()) throw ScenarioError(std::string("scenario field '") + key + "' must be a number");
  out = j.at(key).get<double>();
}
inline void read_field(const nlohmann::json& j, const char* key,
                       std::optional<double>& out) {
  if (!j.at(key).is_number()) throw ScenarioError(std::string("scenario field '") + key + "' must be a number");
  out = j.at(key).get<double>();
}
inline void read_field(const nlohmann::json& j, const char* key, int& out) {
  if (!j.at(key).is_number_integer()) throw ScenarioError(std::string("scenario field '") + key + "' must be an integer");
  out = j.at(key).get<int>();
}
inline void read_field(const nlohmann::json& j, const char* key,
                       unsigned long long& out) {
  if (!j.at(key).is_number_unsigned() && !j.at(key).is_number_integer())
    throw ScenarioError(std::string("scenario field '") + key + "' must be an integer");
  out = j.at(key).get<unsigned long long>();
}
inline void read_field(const nlohmann::json& j, const char* key, bool& out) {
  if (!j.at(key).is_boolean()) throw ScenarioError(std::string("scenario field '") + key + "' must be a boolean");
  out = j.at(key).get<bool>();
}
inline void read_field(const nlohmann::json& j, const char* key,
                       std::string& out) {
  if (!j.at(key).is_string()) throw ScenarioError(std::string("scenario field '") + key + "' must be a string");
  out = j.at(key).get<std::string>();
}

}  // namespace detail

inline Scenario scenario_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ScenarioError("scenario must be a JSON object");
  Scenario sc;
  const std::set<std::string> known = {
      "structure", "b",     "w",      "u0r",   "u0i",    "v0r",
      "v0i",       "mass",  "emin",   "emax",  "points", "imin",
      "imax",      "vimin", "vimax",  "energy", "branch", "log_axis",
      "potential", "draws", "seed",   "out"};
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) {
      throw ScenarioError("unknown scenario field '" + key + "'");
    }
  }
  using detail::read_field;
  if (j.contains("structure")) read_field(j, "structure", sc.structure);
  if (j.contains("b")) read_field(j, "b", sc.b);
  if (j.contains("w")) read_field(j, "w", sc.w);
  if (j.contains("u0r")) read_field(j, "u0r", sc.u0r);
  if (j.contains("u0i")) read_field(j, "u0i", sc.u0i);
  if (j.contains("v0r")) read_field(j, "v0r", sc.v0r);
  if (j.contains("v0i")) read_field(j, "v0i", sc.v0i);
  if (j.contains("mass")) read_field(j, "mass", sc.mass);
  if (j.contains("emin")) read_field(j, "emin", sc.emin);
  if (j.contains("emax")) read_field(j, "emax", sc.emax);
  if (j.contains("points")) read_field(j, "points", sc.points);
  if (j.contains("imin")) read_field(j, "imin", sc.imin);
  if (j.contains("imax")) read_field(j, "imax", sc.imax);
  if (j.contains("vimin")) read_field(j, "vimin", sc.vimin);
  if (j.contains("vimax")) read_field(j, "vimax", sc.vimax);
  if (j.contains("energy")) read_field(j, "energy", sc.energy);
  if (j.contains("branch")) read_field(j, "branch", sc.branch);
  if (j.contains("log_axis")) read_field(j, "log_axis", sc.log_axis);
  if (j.contains("potential")) read_field(j, "potential", sc.potential);
  if (j.contains("draws")) read_field(j, "draws", sc.draws);
  if (j.contains("seed")) read_field(j, "seed", sc.seed);
  if (j.contains("out")) read_field(j, "out", sc.out);
  return sc;
}

inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ScenarioError("scenario file " + path + " is not valid JSON: " + e.what());
  }
  return scenario_from_json(j);
}

// Canonical echo of the fields that are set; keys come out sorted, so the
// echo is byte-stable across runs.
inline nlohmann::json scenario_echo(const Scenario& sc) {
  nlohmann::json j;
  if (!sc.structure.empty()) j["structure"] = sc.structure;
  if (sc.b) j["b"] = *sc.b;
  if (sc.w) j["w"] = *sc.w;
  if (sc.u0r) j["u0r"] = *sc.u0r;
  if (sc.u0i) j["u0i"] = *sc.u0i;
  if (sc.v0r) j["v0r"] = *sc.v0r;
  if (sc.v0i) j["v0i"] = *sc.v0i;
  j["mass"] = sc.mass;
  if (sc.emin) j["emin"] = *sc.emin;
  if (sc.emax) j["emax"] = *sc.emax;
  j["points"] = sc.points;
  if (sc.imin) j["imin"] = *sc.imin;
  if (sc.imax) j["imax"] = *sc.imax;
  if (sc.vimin) j["vimin"] = *sc.vimin;
  if (sc.vimax) j["vimax"] = *sc.vimax;
  if (sc.energy) j["energy"] = *sc.energy;
  if (sc.branch != 0) j["branch"] = sc.branch;
  if (sc.log_axis) j["log_axis"] = true;
  if (sc.potential != "barrier") j["potential"] = sc.potential;
  return j;
}

// Structure builders; throw ScenarioError naming the missing/invalid field.
inline RectDoubleBarrier rect_from_scenario(const Scenario& sc) {
  if (!sc.b) throw ScenarioError("rect structure requires field 'b'");
  if (!sc.w) throw ScenarioError("rect structure requires field 'w'");
  if (!sc.u0r) throw ScenarioError("rect structure requires field 'u0r'");
  if (!(*sc.b > 0.0)) throw ScenarioError("field 'b' must be positive");
  if (!(*sc.w > 0.0)) throw ScenarioError("field 'w' must be positive");
  if (!(sc.mass > 0.0)) throw ScenarioError("field 'mass' must be positive");
  return {*sc.b, *sc.w, {*sc.u0r, sc.u0i.value_or(0.0)}, {sc.mass}};
}

inline DeltaDoubleBarrier delta_from_scenario(const Scenario& sc) {
  if (!sc.w) throw ScenarioError("delta structure requires field 'w'");
  if (!sc.v0r) throw ScenarioError("delta structure requires field 'v0r'");
  if (!(*sc.w > 0.0)) throw ScenarioError("field 'w' must be positive");
  if (!(sc.mass > 0.0)) throw ScenarioError("field 'mass' must be positive");
  return {*sc.w, {*sc.v0r, sc.v0i.value_or(0.0)}, {sc.mass}};
}

}  // namespace qtunnel
