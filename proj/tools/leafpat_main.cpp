// Command-line front end: equilibrium / dispersion / stability / bifurcate /
// simulate / kinetic-check, driven by a JSON config with --set overrides.
//
// Exit codes: 0 success, 2 configuration error, 3 solver failure, 64 usage.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "leafpat/bifurcation.hpp"
#include "leafpat/config.hpp"
#include "leafpat/csv.hpp"
#include "leafpat/fem.hpp"
#include "leafpat/kinetic.hpp"
#include "leafpat/mesh.hpp"
#include "leafpat/model.hpp"
#include "leafpat/stability.hpp"
#include "leafpat/timestepper.hpp"

namespace {

using namespace leafpat;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::string g12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void print_kv(const char* key, double v) { std::printf("%s=%s\n", key, g12(v).c_str()); }
void print_kv(const char* key, const char* v) { std::printf("%s=%s\n", key, v); }
void print_kv(const char* key, bool v) { std::printf("%s=%s\n", key, v ? "true" : "false"); }

RunConfig resolve_config(const std::string& config_path, const std::vector<std::string>& overrides) {
  nlohmann::json j = nlohmann::json::object();
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw std::invalid_argument("config: cannot open '" + config_path + "'");
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw std::invalid_argument("config: '" + config_path + "' is not valid JSON: " + e.what());
    }
  }
  for (const auto& o : overrides) apply_override(j, o);
  return parse_config(j);
}

// ---------------------------------------------------------------- commands

int cmd_equilibrium(const RunConfig& cfg) {
  const ModelParams& p = cfg.model;
  const StabilityClass sc = homogeneous_stability(p);
  if (sc == StabilityClass::NoPositiveEquilibrium) {
    const Equilibrium eq = equilibrium(p);
    print_kv("n1", eq.n1);
    print_kv("n2", eq.n2);
    print_kv("positive", eq.positive);
    print_kv("stability", to_string(sc));
    return 0;
  }
  const Equilibrium eq = equilibrium(p);
  const ReactionJacobian jac = jacobian(p);
  print_kv("n1", eq.n1);
  print_kv("n2", eq.n2);
  print_kv("positive", eq.positive);
  print_kv("j11", jac.j11);
  print_kv("j12", jac.j12);
  print_kv("j21", jac.j21);
  print_kv("j22", jac.j22);
  print_kv("trace", jac.trace);
  print_kv("det", jac.det);
  print_kv("stability", to_string(sc));
  return 0;
}

int cmd_dispersion(const RunConfig& cfg, const std::string& out, double k2_max, int k2_steps) {
  const ModelParams& p = cfg.model;
  const LinearizedDiffusion d = linearized_diffusion(p);
  double upper = k2_max;
  if (upper <= 0.0) {
    upper = 100.0;
    if (const auto crit = critical_k2(p, d)) upper = std::max(4.0 * crit->kc2, 100.0);
  }
  const auto curve = dispersion(p, d, upper, k2_steps);
  std::string csv = "k2,a,b,re_lmax\n";
  for (const auto& pt : curve) {
    csv += csv_row({format_double(pt.k2), format_double(pt.a), format_double(pt.b),
                    format_double(pt.re_lmax)});
    csv += '\n';
  }
  write_text_file(out, csv);
  std::printf("wrote %s (%d rows)\n", out.c_str(), static_cast<int>(curve.size()));
  return 0;
}

int cmd_stability(const RunConfig& cfg) {
  const ModelParams& p = cfg.model;
  const StabilityClass sc = homogeneous_stability(p);
  print_kv("stability", to_string(sc));
  if (sc == StabilityClass::NoPositiveEquilibrium) return 0;

  const LinearizedDiffusion d = linearized_diffusion(p);
  print_kv("delta_lin", d.delta);
  print_kv("delta12", d.delta12);
  print_kv("delta21", d.delta21);

  if (sc != StabilityClass::Stable) return 0;

  const TuringConditions tc = turing_conditions(p, d);
  print_kv("s1", tc.s1);
  print_kv("s2", tc.s2);
  print_kv("cond1", tc.cond1);
  print_kv("cond2", tc.cond2);
  print_kv("turing", tc.turing);
  if (const auto crit = critical_k2(p, d)) {
    print_kv("kc2", crit->kc2);
    print_kv("b_min", crit->b_min);
  } else {
    print_kv("kc2", "none");
  }
  const double dbar = delta_threshold(p, d.delta12, d.delta21);
  std::printf("delta_bar=%.5f\n", dbar);
  print_kv("delta_bar_full", dbar);
  if (d.delta12 == 0.0 && d.delta21 == 0.0) {
    print_kv("delta_bar_closed", delta_threshold_closed_form(p));
    print_kv("delta_bar_variant", delta_threshold_closed_form_variant(p));
  }
  return 0;
}

SweepAxis parse_axis(const std::string& name, const std::string& range) {
  SweepAxis a;
  a.name = name;
  double lo = 0.0, hi = 0.0;
  int count = 0;
  const std::size_t c1 = range.find(':');
  const std::size_t c2 = range.find(':', c1 == std::string::npos ? std::string::npos : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw UsageError("range '" + range + "' must be min:max:count");
  try {
    lo = std::stod(range.substr(0, c1));
    hi = std::stod(range.substr(c1 + 1, c2 - c1 - 1));
    count = std::stoi(range.substr(c2 + 1));
  } catch (const std::exception&) {
    throw UsageError("range '" + range + "' must be min:max:count with numeric fields");
  }
  a.min = lo;
  a.max = hi;
  a.count = count;
  return a;
}

bool is_lam_amp_axis(const std::string& name) { return name == "lam1_amp" || name == "lam2_amp"; }

void set_lam_amp(ModelParams& p, const std::string& name, double v) {
  CoeffSpec& s = (name == "lam1_amp") ? p.lam1 : p.lam2;
  if (s.kind == CoeffKind::Constant)
    s.value = v;
  else
    s.amp = v;
}

int cmd_bifurcate(const RunConfig& cfg, const std::string& out, const SweepAxis& a1,
                  const SweepAxis& a2, bool surface) {
  if (surface) {
    const auto rows = threshold_surface(cfg.model, a1, a2);
    write_text_file(out, threshold_surface_csv(rows));
    std::printf("wrote %s (%d rows)\n", out.c_str(), static_cast<int>(rows.size()));
    return 0;
  }
  std::vector<RegionMapRow> rows;
  if (is_lam_amp_axis(a1.name) || is_lam_amp_axis(a2.name)) {
    // Turning-amplitude axes change a coefficient spec, not a scalar, so the
    // grid is classified here instead of through the scalar sweep.
    if (a1.count < 1 || a2.count < 1) throw UsageError("axis counts must be >= 1");
    SweepAxis v1 = a1, v2 = a2;
    // axis_values validates names against the scalar set; bypass for lam axes.
    auto values = [](const SweepAxis& a) {
      std::vector<double> v(static_cast<std::size_t>(a.count));
      if (a.count == 1) {
        v[0] = a.min;
        return v;
      }
      const double h = (a.max - a.min) / static_cast<double>(a.count - 1);
      for (int i = 0; i < a.count; ++i) v[static_cast<std::size_t>(i)] = a.min + i * h;
      return v;
    };
    for (const double x1 : values(v1)) {
      for (const double x2 : values(v2)) {
        ModelParams p = cfg.model;
        std::optional<double> o12, o21;
        auto apply = [&](const SweepAxis& a, double v) {
          if (is_lam_amp_axis(a.name)) {
            set_lam_amp(p, a.name, v);
          } else if (a.name == "zeta") {
            p.zeta = v;
          } else if (a.name == "beta") {
            p.beta = v;
          } else if (a.name == "nu") {
            p.nu = v;
          } else if (a.name == "tau") {
            p.tau = v;
          } else if (a.name == "delta") {
            p.delta = v;
          } else if (a.name == "delta12_scale") {
            o12 = v;
          } else if (a.name == "delta21_scale") {
            o21 = v;
          } else {
            throw UsageError("unknown sweep parameter '" + a.name + "'");
          }
        };
        apply(v1, x1);
        apply(v2, x2);
        rows.push_back({x1, x2, classify_point(p, o12, o21)});
      }
    }
  } else {
    SweepSpec spec;
    spec.base = cfg.model;
    spec.axis1 = a1;
    spec.axis2 = a2;
    rows = sweep(spec);
  }
  write_text_file(out, region_map_csv(rows));
  std::printf("wrote %s (%d rows)\n", out.c_str(), static_cast<int>(rows.size()));
  return 0;
}

std::string diagnostics_csv(const std::vector<StepDiagnostics>& diags) {
  std::string out = "t,mass1,mass2,min1,max1,min2,max2,l2dev1,l2dev2,mode_m,mode_n,picard_iters\n";
  for (const auto& d : diags) {
    out += csv_row({format_double(d.t), format_double(d.mass1), format_double(d.mass2),
                    format_double(d.min1), format_double(d.max1), format_double(d.min2),
                    format_double(d.max2), format_double(d.l2dev1), format_double(d.l2dev2),
                    std::to_string(d.mode_m), std::to_string(d.mode_n),
                    std::to_string(d.picard_iters)});
    out += '\n';
  }
  return out;
}

std::string snapshot_csv(const Mesh& m, const Snapshot& s) {
  std::string out = "# t=" + format_double(s.t) + "\n";
  out += "x,y,n1,n2\n";
  for (int k = 0; k < m.n_nodes; ++k) {
    const std::size_t kk = static_cast<std::size_t>(k);
    out += csv_row({format_double(m.x[kk]), format_double(m.y[kk]),
                    format_double(s.fields.n1[kk]), format_double(s.fields.n2[kk])});
    out += '\n';
  }
  return out;
}

int cmd_simulate(const RunConfig& cfg, const std::string& out_dir) {
  const Mesh m = build_mesh(cfg.mesh.nx, cfg.mesh.ny, cfg.mesh.lx, cfg.mesh.ly);
  const RunResult res = run(m, cfg.model, cfg.solver);
  write_text_file(out_dir + "/diagnostics.csv", diagnostics_csv(res.diagnostics));
  int idx = 0;
  for (const auto& s : res.snapshots) {
    char name[32];
    std::snprintf(name, sizeof(name), "snapshot_%04d.csv", ++idx);
    write_text_file(out_dir + "/" + name, snapshot_csv(m, s));
  }
  std::printf("wrote %s/diagnostics.csv (%d rows) and %d snapshot(s)\n", out_dir.c_str(),
              static_cast<int>(res.diagnostics.size()), idx);
  return 0;
}

int cmd_kinetic_check(const RunConfig& cfg, const std::string& out) {
  const KineticConfig& kc = cfg.kinetic;
  const KineticGrid g = build_kinetic_grid(kc.length, kc.nx, kc.ntheta, kc.nu);

  const KineticChecks checks = check_k_solution(g, kc.eta);
  print_kv("k_residual_max", checks.k_residual_max);
  print_kv("d00", checks.d00);
  print_kv("d11", checks.d11);
  print_kv("d01", checks.d01);
  print_kv("chi00", checks.chi00);
  print_kv("chi11", checks.chi11);

  // Decay of the fundamental cosine mode against the predicted diffusivity.
  std::vector<double> rho0(static_cast<std::size_t>(g.nx));
  constexpr double pi = 3.14159265358979323846;
  for (int i = 0; i < g.nx; ++i)
    rho0[static_cast<std::size_t>(i)] =
        1.0 + 0.5 * std::cos(pi * g.x[static_cast<std::size_t>(i)] / g.length);
  KineticState s = kinetic_state_from_density(g, rho0, kc.epsilon, kc.eta, kc.c);
  const RhoHistory h = run_kinetic(g, s, kc.t_final);
  const DiffusivityFit fit = estimate_diffusivity(g, h);
  const double d_pred = kc.c * kc.c / (6.0 * kc.eta);
  const double rel_err = std::abs(fit.d_est - d_pred) / d_pred;
  print_kv("d_est", fit.d_est);
  print_kv("d_pred", d_pred);
  print_kv("rel_err", rel_err);
  print_kv("frames_used", static_cast<double>(fit.frames_used));

  if (!out.empty()) {
    std::string csv = "t,x,rho\n";
    for (std::size_t r = 0; r < h.t.size(); ++r)
      for (int i = 0; i < g.nx; ++i) {
        csv += csv_row({format_double(h.t[r]), format_double(g.x[static_cast<std::size_t>(i)]),
                        format_double(h.rho[r][static_cast<std::size_t>(i)])});
        csv += '\n';
      }
    csv += "# D_est=" + format_double(fit.d_est) + " D_pred=" + format_double(d_pred) +
           " rel_err=" + format_double(rel_err) + "\n";
    write_text_file(out, csv);
    std::printf("wrote %s\n", out.c_str());
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reaction cross-diffusion pattern toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  app.add_option("--config", config_path, "JSON configuration file")->expected(1);
  app.add_option("--set", overrides, "Override config entries as dotted.path=value");

  auto* sub_eq = app.add_subcommand("equilibrium", "Coexistence state, Jacobian, stability class");

  auto* sub_disp = app.add_subcommand("dispersion", "Dispersion-relation curve as CSV");
  std::string disp_out = "dispersion.csv";
  double disp_k2max = 0.0;
  int disp_steps = 1000;
  sub_disp->add_option("--out", disp_out, "Output CSV path");
  sub_disp->add_option("--k2-max", disp_k2max, "Upper end of the k^2 range (default: max(4 kc^2, 100))");
  sub_disp->add_option("--k2-steps", disp_steps, "Number of samples (>= 2)");

  auto* sub_stab = app.add_subcommand("stability", "Instability conditions and thresholds");

  auto* sub_bif = app.add_subcommand("bifurcate", "Parameter-plane region map as CSV");
  std::string bif_out = "regions.csv";
  std::string bif_p1 = "zeta", bif_p2 = "delta";
  std::string bif_r1 = "1.5:5:50", bif_r2 = "0.5:5:50";
  bool bif_surface = false;
  sub_bif->add_option("--out", bif_out, "Output CSV path");
  sub_bif->add_option("--param1", bif_p1, "First axis parameter name");
  sub_bif->add_option("--range1", bif_r1, "First axis range min:max:count");
  sub_bif->add_option("--param2", bif_p2, "Second axis parameter name");
  sub_bif->add_option("--range2", bif_r2, "Second axis range min:max:count");
  sub_bif->add_flag("--surface", bif_surface,
                    "Emit the diffusivity-ratio threshold surface over (delta12, delta21)");

  auto* sub_sim = app.add_subcommand("simulate", "Time integration with diagnostics and snapshots");
  std::string sim_out_dir = "out";
  double sim_t_final = -1.0;
  sub_sim->add_option("--out-dir", sim_out_dir, "Output directory");
  sub_sim->add_option("--t-final", sim_t_final, "Override solver.t_final");

  auto* sub_kin = app.add_subcommand("kinetic-check", "Diffusive-limit validation run");
  std::string kin_out;
  sub_kin->add_option("--out", kin_out, "Density-history CSV path (optional)");

  // --config/--set may appear after the subcommand name as well as before it.
  for (CLI::App* sub : {sub_eq, sub_disp, sub_stab, sub_bif, sub_sim, sub_kin})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 64;
  }

  try {
    const RunConfig cfg = resolve_config(config_path, overrides);
    if (sub_eq->parsed()) return cmd_equilibrium(cfg);
    if (sub_disp->parsed()) {
      if (disp_steps < 2) throw UsageError("--k2-steps must be >= 2");
      return cmd_dispersion(cfg, disp_out, disp_k2max, disp_steps);
    }
    if (sub_stab->parsed()) return cmd_stability(cfg);
    if (sub_bif->parsed()) {
      if (bif_surface) {
        if (bif_p1 == "zeta") bif_p1 = "delta12_scale";
        if (bif_p2 == "delta") bif_p2 = "delta21_scale";
      }
      const SweepAxis a1 = parse_axis(bif_p1, bif_r1);
      const SweepAxis a2 = parse_axis(bif_p2, bif_r2);
      return cmd_bifurcate(cfg, bif_out, a1, a2, bif_surface);
    }
    if (sub_sim->parsed()) {
      RunConfig c = cfg;
      if (sim_t_final >= 0.0) c.solver.t_final = sim_t_final;
      validate(c.solver);
      return cmd_simulate(c, sim_out_dir);
    }
    if (sub_kin->parsed()) return cmd_kinetic_check(cfg, kin_out);
    std::fprintf(stderr, "error: no subcommand\n");
    return 64;
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 64;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::runtime_error& e) {
    std::fprintf(stderr, "solver error: %s\n", e.what());
    return 3;
  }
}
