#include "leafpat/config.hpp"

#include <fstream>
#include <stdexcept>
#include <vector>

namespace leafpat {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw std::invalid_argument("config: " + path + ": " + what);
}

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
}

void reject_unknown(const json& j, const std::string& path, const std::vector<std::string>& known) {
  for (const auto& [key, _] : j.items()) {
    bool found = false;
    for (const auto& k : known)
      if (k == key) {
        found = true;
        break;
      }
    if (!found) fail(path.empty() ? key : path + "." + key, "unknown key");
  }
}

double get_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

int get_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

std::uint64_t get_u64(const json& j, const std::string& path) {
  if (!j.is_number_integer() || (j.is_number_integer() && j.get<long long>() < 0))
    fail(path, "expected a non-negative integer");
  return j.get<std::uint64_t>();
}

bool get_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expected a boolean");
  return j.get<bool>();
}

CoeffSpec parse_coeff(const json& j, const std::string& path) {
  require_object(j, path);
  if (!j.contains("type")) fail(path, "missing required key 'type'");
  if (!j.at("type").is_string()) fail(path + ".type", "expected a string");
  const std::string type = j.at("type").get<std::string>();
  CoeffSpec spec;
  if (type == "constant") {
    reject_unknown(j, path, {"type", "value"});
    spec = CoeffSpec::constant(j.contains("value") ? get_number(j.at("value"), path + ".value") : spec.value);
  } else if (type == "speed_law") {
    reject_unknown(j, path, {"type", "base", "amp", "exponent"});
    double base = 1.0, amp = 0.0, exponent = 1.0;
    if (j.contains("base")) base = get_number(j.at("base"), path + ".base");
    if (j.contains("amp")) amp = get_number(j.at("amp"), path + ".amp");
    if (j.contains("exponent")) exponent = get_number(j.at("exponent"), path + ".exponent");
    spec = CoeffSpec::speed_law(base, amp, exponent);
  } else if (type == "turning_law") {
    reject_unknown(j, path, {"type", "amp", "exponent"});
    double amp = 0.0, exponent = 1.0;
    if (j.contains("amp")) amp = get_number(j.at("amp"), path + ".amp");
    if (j.contains("exponent")) exponent = get_number(j.at("exponent"), path + ".exponent");
    spec = CoeffSpec::turning_law(amp, exponent);
  } else {
    fail(path + ".type", "expected one of: constant, speed_law, turning_law");
  }
  try {
    validate(spec);
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
  return spec;
}

ModelParams parse_model(const json& j, const std::string& path) {
  require_object(j, path);
  reject_unknown(j, path,
                 {"zeta", "beta", "tau", "nu", "d1", "delta", "c1", "c2", "lam1", "lam2"});
  // A model block, once given, must spell out all six scalar parameters; the
  // coefficient laws alone default to constants.
  for (const char* key : {"zeta", "beta", "tau", "nu", "d1", "delta"})
    if (!j.contains(key)) fail(path, std::string("missing required key '") + key + "'");
  ModelParams p;
  p.zeta = get_number(j.at("zeta"), path + ".zeta");
  p.beta = get_number(j.at("beta"), path + ".beta");
  p.tau = get_number(j.at("tau"), path + ".tau");
  p.nu = get_number(j.at("nu"), path + ".nu");
  p.d1 = get_number(j.at("d1"), path + ".d1");
  p.delta = get_number(j.at("delta"), path + ".delta");
  if (j.contains("c1")) p.c1 = parse_coeff(j.at("c1"), path + ".c1");
  if (j.contains("c2")) p.c2 = parse_coeff(j.at("c2"), path + ".c2");
  if (j.contains("lam1")) p.lam1 = parse_coeff(j.at("lam1"), path + ".lam1");
  if (j.contains("lam2")) p.lam2 = parse_coeff(j.at("lam2"), path + ".lam2");
  try {
    validate(p);
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
  return p;
}

MeshConfig parse_mesh(const json& j, const std::string& path) {
  require_object(j, path);
  reject_unknown(j, path, {"nx", "ny", "lx", "ly"});
  MeshConfig m;
  if (j.contains("nx")) m.nx = get_int(j.at("nx"), path + ".nx");
  if (j.contains("ny")) m.ny = get_int(j.at("ny"), path + ".ny");
  if (j.contains("lx")) m.lx = get_number(j.at("lx"), path + ".lx");
  if (j.contains("ly")) m.ly = get_number(j.at("ly"), path + ".ly");
  if (m.nx < 1 || m.ny < 1) fail(path, "nx and ny must be >= 1");
  if (!(m.lx > 0.0) || !(m.ly > 0.0)) fail(path, "lx and ly must be positive");
  return m;
}

SolverConfig parse_solver(const json& j, const std::string& path) {
  require_object(j, path);
  reject_unknown(j, path,
                 {"dt", "t_final", "picard_tol", "picard_max_iters", "linear_tol",
                  "linear_max_iters", "seed", "noise_rel", "snapshot_every", "reactions_enabled"});
  SolverConfig s;
  if (j.contains("dt")) s.dt = get_number(j.at("dt"), path + ".dt");
  if (j.contains("t_final")) s.t_final = get_number(j.at("t_final"), path + ".t_final");
  if (j.contains("picard_tol")) s.picard_tol = get_number(j.at("picard_tol"), path + ".picard_tol");
  if (j.contains("picard_max_iters"))
    s.picard_max_iters = get_int(j.at("picard_max_iters"), path + ".picard_max_iters");
  if (j.contains("linear_tol")) s.linear_tol = get_number(j.at("linear_tol"), path + ".linear_tol");
  if (j.contains("linear_max_iters"))
    s.linear_max_iters = get_int(j.at("linear_max_iters"), path + ".linear_max_iters");
  if (j.contains("seed")) s.seed = get_u64(j.at("seed"), path + ".seed");
  if (j.contains("noise_rel")) s.noise_rel = get_number(j.at("noise_rel"), path + ".noise_rel");
  if (j.contains("snapshot_every"))
    s.snapshot_every = get_number(j.at("snapshot_every"), path + ".snapshot_every");
  if (j.contains("reactions_enabled"))
    s.reactions_enabled = get_bool(j.at("reactions_enabled"), path + ".reactions_enabled");
  try {
    validate(s);
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
  return s;
}

KineticConfig parse_kinetic(const json& j, const std::string& path) {
  require_object(j, path);
  reject_unknown(j, path, {"epsilon", "eta", "c", "length", "t_final", "nx", "ntheta", "nu_nodes"});
  KineticConfig k;
  if (j.contains("epsilon")) k.epsilon = get_number(j.at("epsilon"), path + ".epsilon");
  if (j.contains("eta")) k.eta = get_number(j.at("eta"), path + ".eta");
  if (j.contains("c")) k.c = get_number(j.at("c"), path + ".c");
  if (j.contains("length")) k.length = get_number(j.at("length"), path + ".length");
  if (j.contains("t_final")) k.t_final = get_number(j.at("t_final"), path + ".t_final");
  if (j.contains("nx")) k.nx = get_int(j.at("nx"), path + ".nx");
  if (j.contains("ntheta")) k.ntheta = get_int(j.at("ntheta"), path + ".ntheta");
  if (j.contains("nu_nodes")) k.nu = get_int(j.at("nu_nodes"), path + ".nu_nodes");
  if (!(k.epsilon > 0.0) || !(k.eta > 0.0) || !(k.c > 0.0))
    fail(path, "epsilon, eta, c must be positive");
  if (!(k.length > 0.0) || !(k.t_final > 0.0)) fail(path, "length and t_final must be positive");
  if (k.nx < 2) fail(path + ".nx", "must be >= 2");
  if (k.ntheta < 4 || k.ntheta % 2 != 0) fail(path + ".ntheta", "must be even and >= 4");
  if (k.nu < 2) fail(path + ".nu_nodes", "must be >= 2");
  return k;
}

json coeff_to_json(const CoeffSpec& s) {
  switch (s.kind) {
    case CoeffKind::Constant: return {{"type", "constant"}, {"value", s.value}};
    case CoeffKind::SpeedLaw:
      return {{"type", "speed_law"}, {"base", s.base}, {"amp", s.amp}, {"exponent", s.exponent}};
    case CoeffKind::TurningLaw:
      return {{"type", "turning_law"}, {"amp", s.amp}, {"exponent", s.exponent}};
  }
  return json::object();
}

} // namespace

RunConfig parse_config(const nlohmann::json& j) {
  require_object(j, "(root)");
  reject_unknown(j, "", {"model", "mesh", "solver", "kinetic"});
  RunConfig cfg;
  if (j.contains("model")) cfg.model = parse_model(j.at("model"), "model");
  if (j.contains("mesh")) cfg.mesh = parse_mesh(j.at("mesh"), "mesh");
  if (j.contains("solver")) cfg.solver = parse_solver(j.at("solver"), "solver");
  if (j.contains("kinetic")) cfg.kinetic = parse_kinetic(j.at("kinetic"), "kinetic");
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("config: '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

void apply_override(nlohmann::json& j, const std::string& assignment) {
  const std::size_t eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
    throw std::invalid_argument("--set expects dotted.path=value, got '" + assignment + "'");
  const std::string dotted = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);

  nlohmann::json value;
  try {
    value = nlohmann::json::parse(raw);
  } catch (const nlohmann::json::parse_error&) {
    value = raw; // bare strings pass through unquoted
  }

  nlohmann::json* node = &j;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = dotted.find('.', start);
    const std::string key = dotted.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (key.empty()) throw std::invalid_argument("--set path has an empty segment: '" + dotted + "'");
    if (dot == std::string::npos) {
      (*node)[key] = value;
      return;
    }
    if (!node->contains(key) || !(*node)[key].is_object()) (*node)[key] = nlohmann::json::object();
    node = &(*node)[key];
    start = dot + 1;
  }
}

nlohmann::json to_json(const RunConfig& cfg) {
  return {
      {"model",
       {{"zeta", cfg.model.zeta},
        {"beta", cfg.model.beta},
        {"tau", cfg.model.tau},
        {"nu", cfg.model.nu},
        {"d1", cfg.model.d1},
        {"delta", cfg.model.delta},
        {"c1", coeff_to_json(cfg.model.c1)},
        {"c2", coeff_to_json(cfg.model.c2)},
        {"lam1", coeff_to_json(cfg.model.lam1)},
        {"lam2", coeff_to_json(cfg.model.lam2)}}},
      {"mesh", {{"nx", cfg.mesh.nx}, {"ny", cfg.mesh.ny}, {"lx", cfg.mesh.lx}, {"ly", cfg.mesh.ly}}},
      {"solver",
       {{"dt", cfg.solver.dt},
        {"t_final", cfg.solver.t_final},
        {"picard_tol", cfg.solver.picard_tol},
        {"picard_max_iters", cfg.solver.picard_max_iters},
        {"linear_tol", cfg.solver.linear_tol},
        {"linear_max_iters", cfg.solver.linear_max_iters},
        {"seed", cfg.solver.seed},
        {"noise_rel", cfg.solver.noise_rel},
        {"snapshot_every", cfg.solver.snapshot_every},
        {"reactions_enabled", cfg.solver.reactions_enabled}}},
      {"kinetic",
       {{"epsilon", cfg.kinetic.epsilon},
        {"eta", cfg.kinetic.eta},
        {"c", cfg.kinetic.c},
        {"length", cfg.kinetic.length},
        {"t_final", cfg.kinetic.t_final},
        {"nx", cfg.kinetic.nx},
        {"ntheta", cfg.kinetic.ntheta},
        {"nu_nodes", cfg.kinetic.nu}}},
  };
}

} // namespace leafpat
