// JSON run configuration: model parameters, mesh, time stepping, and the
// kinetic validation run, with strict unknown-key rejection so typos fail
// loudly instead of silently falling back to defaults.

#pragma once

#include <string>

#include <json.hpp>

#include "leafpat/kinetic.hpp"
#include "leafpat/model.hpp"
#include "leafpat/timestepper.hpp"

namespace leafpat {

struct MeshConfig {
  int nx = 40;
  int ny = 40;
  double lx = 3.14159265358979323846;
  double ly = 3.14159265358979323846;
};

struct KineticConfig {
  double epsilon = 0.05;
  double eta = 1.0;
  double c = 1.0;
  double length = 1.0;
  double t_final = 1.0;
  int nx = 800;
  int ntheta = 16;
  int nu = 16; ///< velocity-modulus nodes; JSON key "nu_nodes"
};

struct RunConfig {
  ModelParams model;
  MeshConfig mesh;
  SolverConfig solver;
  KineticConfig kinetic;
};

/// Parse a configuration object.  Unknown keys anywhere in the tree throw
/// std::invalid_argument naming the offending key path; wrong value types
/// surface as std::invalid_argument as well.
RunConfig parse_config(const nlohmann::json& j);

/// Load and parse a JSON configuration file.  Throws std::invalid_argument
/// on unreadable files or malformed JSON.
RunConfig load_config(const std::string& path);

/// Apply one "dotted.path=value" override to a JSON tree (used by --set).
/// The value is parsed as JSON when possible and treated as a string
/// otherwise.  Throws std::invalid_argument on a malformed assignment.
void apply_override(nlohmann::json& j, const std::string& assignment);

/// Serialize back to JSON (round-trips through parse_config).
nlohmann::json to_json(const RunConfig& cfg);

} // namespace leafpat
