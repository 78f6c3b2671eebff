// Acceptance gate for the toolkit: ten numbered end-to-end checks, one
// PASS/FAIL line per criterion, exit code = number of failed criteria.
//
//   ./acceptance          runs all ten
//   ./acceptance 3 7 10   runs a subset
//
// Each criterion prints its measured values so the gate is auditable; two of
// them also report flagged discrepancies between rounded quoted constants and
// the exact evaluations (the exact values are what is gated).

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <optional>
#include <string>
#include <vector>

#include "leafpat/bifurcation.hpp"
#include "leafpat/fem.hpp"
#include "leafpat/kinetic.hpp"
#include "leafpat/mesh.hpp"
#include "leafpat/model.hpp"
#include "leafpat/sparse.hpp"
#include "leafpat/stability.hpp"
#include "leafpat/timestepper.hpp"

namespace {

using namespace leafpat;

constexpr double kPi = 3.14159265358979323846;

// ------------------------------------------------------------ bookkeeping

struct Gate {
  bool ok = true;
  void check(bool cond, const char* what) {
    std::printf("    %-4s %s\n", cond ? "ok" : "FAIL", what);
    ok = ok && cond;
  }
  void checkv(bool cond, const char* what, double value) {
    std::printf("    %-4s %s = %.15g\n", cond ? "ok" : "FAIL", what, value);
    ok = ok && cond;
  }
  void note(const std::string& text) { std::printf("    note %s\n", text.c_str()); }
};

// ------------------------------------------------------- parameter presets

ModelParams coexistence_defaults() { return ModelParams{}; } // zeta 3, beta 1.5, tau 2, nu 1.4, d1 0.1, delta 2.7

ModelParams attraction_params() { // unit speeds, attractive density-dependent turning
  ModelParams p;
  p.lam1 = CoeffSpec::turning_law(0.25, 2.0 / 3.0);
  p.lam2 = CoeffSpec::turning_law(0.25, 2.0 / 3.0);
  return p;
}

ModelParams self_diffusion_params() { return ModelParams{}; } // lam = 0, c = 1

ModelParams speed_variation_params() { // density-dependent speeds plus attraction
  ModelParams p = attraction_params();
  p.delta = 2.41;
  p.c1 = CoeffSpec::speed_law(1.0, 0.5, 2.0 / 3.0);
  p.c2 = CoeffSpec::speed_law(1.0, 0.5, 2.0 / 3.0);
  return p;
}

ModelParams repulsion_params() { // unit speeds, repulsive turning
  ModelParams p;
  p.lam1 = CoeffSpec::turning_law(-0.25, 2.0 / 3.0);
  p.lam2 = CoeffSpec::turning_law(-0.25, 2.0 / 3.0);
  return p;
}

// ------------------------------------------------------------ small tools

struct Jac4 {
  double j11, j12, j21, j22;
};

Jac4 fd_jacobian(const ModelParams& p, double n1, double n2) {
  const double h1 = 1e-5 * std::max(1.0, std::abs(n1));
  const double h2 = 1e-5 * std::max(1.0, std::abs(n2));
  const auto rp1 = reaction_rhs(p, n1 + h1, n2), rm1 = reaction_rhs(p, n1 - h1, n2);
  const auto rp2 = reaction_rhs(p, n1, n2 + h2), rm2 = reaction_rhs(p, n1, n2 - h2);
  return {(rp1.first - rm1.first) / (2.0 * h1), (rp2.first - rm2.first) / (2.0 * h2),
          (rp1.second - rm1.second) / (2.0 * h1), (rp2.second - rm2.second) / (2.0 * h2)};
}

double fit_slope(const std::vector<double>& t, const std::vector<double>& y) {
  const double n = static_cast<double>(t.size());
  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    st += t[i];
    sy += y[i];
    stt += t[i] * t[i];
    sty += t[i] * y[i];
  }
  return (n * sty - st * sy) / (n * stt - st * st);
}

// Projection coefficient of a fixed cosine mode, matching the run-time
// diagnostics normalization: (1/|domain|) int (f - fbar) cos(m pi x/lx)
// cos(n pi y/ly) with the mass matrix as quadrature.
double mode_projection(const Mesh& mesh, const SparseMatrix& mass, const std::vector<double>& field,
                       int mm, int nn) {
  const double area = mesh.lx * mesh.ly;
  const double mean = integrate_field(mesh, mass, field) / area;
  const std::size_t n = field.size();
  std::vector<double> dev(n), mdev(n);
  for (std::size_t i = 0; i < n; ++i) dev[i] = field[i] - mean;
  spmv(mass, dev.data(), mdev.data());
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    acc += mdev[i] * std::cos(static_cast<double>(mm) * kPi * mesh.x[i] / mesh.lx) *
           std::cos(static_cast<double>(nn) * kPi * mesh.y[i] / mesh.ly);
  return acc / area;
}

// --------------------------------------------------------------- criteria

bool criterion1() {
  Gate g;
  const ModelParams p = coexistence_defaults();
  const Equilibrium eq = equilibrium(p);
  g.checkv(std::abs(eq.n1 - 15.0) <= 1e-12 * 15.0, "coexistence n1", eq.n1);
  g.checkv(std::abs(eq.n2 - 20.0) <= 1e-12 * 20.0, "coexistence n2", eq.n2);

  const auto r = reaction_rhs(p, eq.n1, eq.n2);
  g.checkv(std::abs(r.first) <= 1e-12, "reaction residual r1", r.first);
  g.checkv(std::abs(r.second) <= 1e-12, "reaction residual r2", r.second);

  const ReactionJacobian jac = jacobian(p);
  g.checkv(std::abs(jac.trace - (-14.0 / 3.0)) <= 1e-12 * (14.0 / 3.0), "trace", jac.trace);
  g.checkv(std::abs(jac.det - 80.0 / 3.0) <= 1e-12 * (80.0 / 3.0), "determinant", jac.det);

  const Jac4 fd = fd_jacobian(p, eq.n1, eq.n2);
  const double scale = std::max({std::abs(jac.j11), std::abs(jac.j12), std::abs(jac.j21),
                                 std::abs(jac.j22), 1.0});
  const double err = std::max({std::abs(fd.j11 - jac.j11), std::abs(fd.j12 - jac.j12),
                               std::abs(fd.j21 - jac.j21), std::abs(fd.j22 - jac.j22)}) /
                     scale;
  g.checkv(err <= 1e-6, "finite-difference Jacobian relative error", err);
  return g.ok;
}

bool criterion2() {
  Gate g;
  const ModelParams p = self_diffusion_params();
  const double root = delta_threshold(p, 0.0, 0.0);
  const double closed = delta_threshold_closed_form(p);
  const double variant = delta_threshold_closed_form_variant(p);
  g.checkv(std::abs(root - 2.59869) <= 1e-4, "threshold ratio from the quadratic root", root);
  g.checkv(std::abs(closed - root) <= 1e-12 * root, "closed form minus root", closed - root);
  g.checkv(std::abs(variant - 2.2237) <= 1e-4,
           "alternative expression (diagnostic only)", variant);
  g.note("flagged discrepancy: the alternative expression evaluates to " +
         std::to_string(variant) + " (quoted as 2.2237) and does not solve the threshold "
         "quadratic; the classifier uses the root " + std::to_string(root) + ".");
  // The threshold must actually separate the regimes.
  ModelParams lo = p, hi = p;
  lo.delta = root - 1e-6;
  hi.delta = root + 1e-6;
  g.check(!turing_conditions(lo, linearized_diffusion(lo)).turing &&
              turing_conditions(hi, linearized_diffusion(hi)).turing,
          "regimes switch across the threshold");
  return g.ok;
}

bool criterion3() {
  Gate g;
  const ModelParams p = self_diffusion_params();
  const LinearizedDiffusion d = linearized_diffusion(p);
  const auto crit = critical_k2(p, d);
  if (!crit) {
    g.check(false, "interior minimum of b exists");
    return g.ok;
  }
  g.checkv(std::abs(crit->g - (-1.8)) <= 1e-12 * 1.8, "quadratic coefficient g", crit->g);
  g.checkv(std::abs(crit->kc2 - 100.0 / 3.0) <= 1e-12 * (100.0 / 3.0), "critical k^2", crit->kc2);
  g.checkv(std::abs(crit->b_min - (-10.0 / 3.0)) <= 1e-12 * (10.0 / 3.0), "b at critical k^2",
           crit->b_min);
  g.check(crit->b_min < 0.0, "b at critical k^2 is negative");

  // Brute-force scan of b over 10^4 points on [0, 4 kc^2].
  const ReactionJacobian jac = jacobian(p);
  const int n = 10000;
  const double upper = 4.0 * crit->kc2;
  double best_k2 = 0.0, best_b = dispersion_at(jac, d, 0.0).b;
  for (int i = 1; i < n; ++i) {
    const double k2 = upper * static_cast<double>(i) / static_cast<double>(n - 1);
    const double b = dispersion_at(jac, d, k2).b;
    if (b < best_b) {
      best_b = b;
      best_k2 = k2;
    }
  }
  const double step = upper / static_cast<double>(n - 1);
  g.checkv(std::abs(best_k2 - crit->kc2) <= step, "scan minimizer distance from critical k^2",
           std::abs(best_k2 - crit->kc2));
  return g.ok;
}

bool criterion4() {
  Gate g;
  const ModelParams p = attraction_params();

  // Independent evaluation from first principles.
  const double n1 = p.beta * p.tau / ((p.zeta - 1.0) * (p.beta - p.nu));
  const double n2 = p.tau / (p.beta - p.nu);
  const double lam1 = 0.25 * std::pow(1.0 / (std::sqrt(n1) * (n1 + n2)), 2.0 / 3.0);
  const double lam2 = 0.25 * std::pow(1.0 / (std::sqrt(n2) * (n1 + n2)), 2.0 / 3.0);
  const double d11 = p.d1, d22 = p.delta * p.d1;
  const double d12 = -p.d1 * n1 * lam1;
  const double d21 = -p.delta * p.d1 * n2 * lam2;
  const double r12 = d12 / d11, r21 = d21 / d11;

  const LinearizedDiffusion d = linearized_diffusion(p);
  g.checkv(std::abs(d.delta12 - r12) <= 1e-4, "cross ratio delta12", d.delta12);
  g.checkv(std::abs(d.delta21 - r21) <= 1e-4, "cross ratio delta21", d.delta21);
  g.note("flagged discrepancy: rounded source factors (0.0094816, 0.0086099) give cross "
         "ratios (-0.14222, -0.46494); the exact coefficient evaluations (" +
         std::to_string(lam1) + ", " + std::to_string(lam2) + ") give (" + std::to_string(r12) +
         ", " + std::to_string(r21) + "); gating on the exact values.");

  // Conditions via the sign-equivalent g/discriminant arrangement with a
  // finite-difference Jacobian.
  const Jac4 fj = fd_jacobian(p, n1, n2);
  const double gq = -(d11 * fj.j22 + d22 * fj.j11 - d12 * fj.j21 - d21 * fj.j12);
  const double q = p.zeta * (p.beta - p.nu);
  const double s1_o = gq * q / (p.tau * d11);
  const double det_d = d11 * d22 - d12 * d21;
  const double det_j = fj.j11 * fj.j22 - fj.j12 * fj.j21;
  const double s2_o = (gq * gq - 4.0 * det_d * det_j) * (q / (p.tau * d11)) * (q / (p.tau * d11));

  const TuringConditions tc = turing_conditions(p, d);
  g.checkv(std::abs(tc.s1 - s1_o) <= 1e-6 * std::abs(s1_o), "condition value s1", tc.s1);
  g.checkv(std::abs(tc.s2 - s2_o) <= 1e-6 * std::abs(s2_o), "condition value s2", tc.s2);
  g.check(tc.turing, "verdict: diffusion-driven instability");
  g.note("flagged discrepancy: the same rounded factors give s1 = -2.5715, s2 = 0.2913; the "
         "exact path gives s1 = " + std::to_string(tc.s1) + ", s2 = " + std::to_string(tc.s2) +
         ".");

  // Algebraically reduced forms agree with the general path.
  const ConditionPair unit = turing_conditions_unit_speed(p);
  g.checkv(std::abs(unit.s1 - tc.s1) <= 1e-10 * std::abs(tc.s1), "reduced unit-speed s1",
           unit.s1);
  g.checkv(std::abs(unit.s2 - tc.s2) <= 1e-10 * std::abs(tc.s2), "reduced unit-speed s2",
           unit.s2);

  const ModelParams ps = speed_variation_params();
  const TuringConditions tcs = turing_conditions(ps, linearized_diffusion(ps));
  const ConditionPair scaled = turing_conditions_scaled_speed(ps);
  g.checkv(std::abs(scaled.s1 - tcs.s1) <= 1e-10 * std::abs(tcs.s1),
           "reduced speed-scaled s1", scaled.s1);
  g.checkv(std::abs(scaled.s2 - tcs.s2) <= 1e-10 * std::abs(tcs.s2),
           "reduced speed-scaled s2", scaled.s2);
  return g.ok;
}

RegionLabel oracle_label(const ModelParams& p) {
  if (!(p.zeta > 1.0 && p.beta > p.nu)) return RegionLabel::Infeasible;
  const double n1 = p.beta * p.tau / ((p.zeta - 1.0) * (p.beta - p.nu));
  const double n2 = p.tau / (p.beta - p.nu);
  const Jac4 j = fd_jacobian(p, n1, n2);
  if (!(j.j11 + j.j22 < 0.0)) return RegionLabel::HomogUnstable;

  auto coeff = [](const CoeffSpec& s, double own, double other) {
    switch (s.kind) {
      case CoeffKind::Constant: return s.value;
      case CoeffKind::SpeedLaw: return s.base + s.amp * std::pow(own / (own + other), s.exponent);
      case CoeffKind::TurningLaw:
        return s.amp * std::pow(1.0 / (std::sqrt(own) * (own + other)), s.exponent);
    }
    return 0.0;
  };
  const double c1 = coeff(p.c1, n1, n2), c2 = coeff(p.c2, n2, n1);
  const double l1 = coeff(p.lam1, n1, n2), l2 = coeff(p.lam2, n2, n1);
  const double d11 = c1 * c1 * p.d1;
  const double d12 = -c1 * p.d1 * n1 * l1;
  const double d21 = -c2 * p.delta * p.d1 * n2 * l2;
  const double d22 = c2 * c2 * p.delta * p.d1;

  const double gq = -(d11 * j.j22 + d22 * j.j11 - d12 * j.j21 - d21 * j.j12);
  const double det_d = d11 * d22 - d12 * d21;
  const double det_j = j.j11 * j.j22 - j.j12 * j.j21;
  const bool cond1 = gq < 0.0;
  const bool cond2 = gq * gq - 4.0 * det_d * det_j > 0.0;
  const bool turing = cond1 && cond2;

  // Dense scan of b(k^2): a negative dip must exist exactly for the
  // pattern-forming labels.
  double upper = 100.0;
  if (det_d > 0.0 && gq < 0.0) upper = std::max(4.0 * (-gq / (2.0 * det_d)), 100.0);
  double min_b = det_j;
  const int n = 2000;
  for (int i = 1; i <= n; ++i) {
    const double k2 = upper * static_cast<double>(i) / static_cast<double>(n);
    const double b = det_d * k2 * k2 + gq * k2 + det_j;
    min_b = std::min(min_b, b);
  }
  if ((min_b < 0.0) != turing) return RegionLabel::HomogUnstable; // sentinel mismatch, never reached
  return turing ? RegionLabel::TypeIII
                : (cond1 ? RegionLabel::TypeI : (cond2 ? RegionLabel::TypeII : RegionLabel::None));
}

bool criterion5() {
  Gate g;
  struct Case {
    const char* name;
    ModelParams params;
  };
  const std::vector<Case> cases = {{"attraction", attraction_params()},
                                   {"no cross-diffusion", self_diffusion_params()},
                                   {"repulsion", repulsion_params()}};
  for (const auto& c : cases) {
    SweepSpec spec;
    spec.base = c.params;
    spec.axis1 = {"zeta", 1.5, 5.0, 50};
    spec.axis2 = {"delta", 0.5, 5.0, 50};
    const auto rows = sweep(spec);
    int mismatches = 0;
    for (const auto& row : rows) {
      ModelParams p = c.params;
      p.zeta = row.p1;
      p.delta = row.p2;
      if (oracle_label(p) != row.label) ++mismatches;
    }
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%s 50x50 grid: labels match the brute-force oracle", c.name);
    g.checkv(mismatches == 0, buf, static_cast<double>(mismatches));
  }

  ModelParams a = attraction_params(); // (zeta, delta) = (3, 2.7) in each family
  g.check(classify_point(a) == RegionLabel::TypeIII, "attraction marked point is region III");
  g.check(classify_point(self_diffusion_params()) == RegionLabel::TypeIII,
          "no-cross-diffusion marked point is region III");
  g.check(classify_point(repulsion_params()) == RegionLabel::TypeIII,
          "repulsion marked point is region III");
  g.check(classify_point(speed_variation_params()) == RegionLabel::TypeIII,
          "speed-variation marked point (3, 2.41) is region III");
  return g.ok;
}

bool criterion6() {
  Gate g;
  const Mesh mesh = build_mesh(40, 40, kPi, kPi);
  g.checkv(mesh.n_nodes == 3281, "node count", mesh.n_nodes);
  g.checkv(mesh.n_triangles == 6400, "triangle count", mesh.n_triangles);

  const SparseMatrix mass = assemble_mass(mesh);
  double total = 0.0;
  for (const double v : mass.val) total += v;
  g.checkv(std::abs(total - kPi * kPi) <= 1e-12 * kPi * kPi, "mass-matrix total", total);

  // Stiffness rows annihilate constants for density-dependent coefficients
  // evaluated at a rough positive state.
  const ModelParams p = attraction_params();
  SolverConfig cfg;
  cfg.seed = 1;
  cfg.noise_rel = 0.01;
  const FieldPair state = initial_condition(mesh, p, cfg);
  const SparseMatrix k = assemble_diffusion(mesh, p, state);
  double norm = 0.0;
  for (const double v : k.val) norm = std::max(norm, std::abs(v));
  double worst_row = 0.0;
  for (int i = 0; i < k.nrows; ++i) {
    double s = 0.0;
    for (int idx = k.rowptr[static_cast<std::size_t>(i)];
         idx < k.rowptr[static_cast<std::size_t>(i) + 1]; ++idx)
      s += k.val[static_cast<std::size_t>(idx)];
    worst_row = std::max(worst_row, std::abs(s));
  }
  g.checkv(worst_row <= 1e-12 * norm, "largest stiffness row sum", worst_row);

  // Reaction weights at the uniform coexistence state act as zero.
  const Equilibrium eq = equilibrium(p);
  const std::size_t n = static_cast<std::size_t>(mesh.n_nodes);
  FieldPair eq_state;
  eq_state.n1.assign(n, eq.n1);
  eq_state.n2.assign(n, eq.n2);
  const SparseMatrix f = assemble_reaction(mesh, p, eq_state);
  std::vector<double> stacked(2 * n), fx(2 * n), lump(2 * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    stacked[i] = eq.n1;
    stacked[n + i] = eq.n2;
  }
  spmv(f, stacked.data(), fx.data());
  for (int i = 0; i < mass.nrows; ++i)
    for (int idx = mass.rowptr[static_cast<std::size_t>(i)];
         idx < mass.rowptr[static_cast<std::size_t>(i) + 1]; ++idx) {
      lump[static_cast<std::size_t>(i)] += mass.val[static_cast<std::size_t>(idx)];
      lump[n + static_cast<std::size_t>(i)] += mass.val[static_cast<std::size_t>(idx)];
    }
  double worst = 0.0;
  for (std::size_t i = 0; i < 2 * n; ++i) worst = std::max(worst, std::abs(fx[i] / lump[i]));
  g.checkv(worst <= 1e-10, "largest reaction residual at the coexistence state", worst);
  return g.ok;
}

bool criterion7() {
  Gate g;
  const Mesh mesh = build_mesh(40, 40, kPi, kPi);
  const ModelParams p = self_diffusion_params();

  SolverConfig cfg;
  cfg.dt = 0.01;
  cfg.t_final = 1.0;
  cfg.noise_rel = 0.01;
  cfg.seed = 1;
  cfg.snapshot_every = 0.0;
  cfg.reactions_enabled = false;
  const SparseMatrix mass = assemble_mass(mesh);
  const FieldPair init = initial_condition(mesh, p, cfg);
  const double m1 = integrate_field(mesh, mass, init.n1);
  const double m2 = integrate_field(mesh, mass, init.n2);
  const RunResult res = run(mesh, p, cfg, &init);
  double worst1 = 0.0, worst2 = 0.0;
  bool always_two = true;
  for (const auto& d : res.diagnostics) {
    worst1 = std::max(worst1, std::abs(d.mass1 - m1) / std::abs(m1));
    worst2 = std::max(worst2, std::abs(d.mass2 - m2) / std::abs(m2));
    always_two = always_two && d.picard_iters == 2;
  }
  g.checkv(res.diagnostics.size() == 100, "steps taken", static_cast<double>(res.diagnostics.size()));
  g.checkv(worst1 <= 1e-8, "mass drift of species 1 over 100 steps", worst1);
  g.checkv(worst2 <= 1e-8, "mass drift of species 2 over 100 steps", worst2);
  g.check(always_two, "fixed-point linearization takes exactly 2 iterations per step");

  SolverConfig fixed = cfg;
  fixed.reactions_enabled = true;
  fixed.noise_rel = 0.0;
  fixed.t_final = 10.0; // 1000 steps
  const RunResult fres = run(mesh, p, fixed);
  const Equilibrium eq = equilibrium(p);
  double dev = 0.0;
  for (const double v : fres.state.n1) dev = std::max(dev, std::abs(v - eq.n1));
  for (const double v : fres.state.n2) dev = std::max(dev, std::abs(v - eq.n2));
  g.checkv(fres.diagnostics.size() == 1000, "fixed-point steps taken",
           static_cast<double>(fres.diagnostics.size()));
  g.checkv(dev <= 1e-6, "largest drift from the uniform state after 1000 steps", dev);
  return g.ok;
}

struct PatternRun {
  Mesh mesh = build_mesh(40, 40, kPi, kPi);
  ModelParams params = self_diffusion_params();
  RunResult result;
};

const PatternRun& pattern_run() {
  static const PatternRun pr = [] {
    std::printf("    note long pattern run (t = 200 on the 40x40 mesh), please wait...\n");
    PatternRun r;
    SolverConfig cfg;
    cfg.dt = 0.01;
    cfg.t_final = 200.0;
    cfg.noise_rel = 0.01;
    cfg.seed = 1;
    cfg.snapshot_every = 0.0;
    r.result = run(r.mesh, r.params, cfg);
    return r;
  }();
  return pr;
}

bool criterion8() {
  Gate g;
  const Mesh mesh = build_mesh(40, 40, kPi, kPi);
  const ModelParams p = self_diffusion_params();
  const SparseMatrix mass = assemble_mass(mesh);

  // Part 1: growth rate of the dominant mode under tiny noise.
  SolverConfig cfg;
  cfg.dt = 0.01;
  cfg.t_final = 0.1; // integrated in 10 chunks of 10 steps
  cfg.noise_rel = 1e-6;
  cfg.seed = 1;
  cfg.snapshot_every = 0.0;

  std::vector<FieldPair> states;
  states.push_back(initial_condition(mesh, p, cfg));
  for (int chunk = 1; chunk <= 10; ++chunk) {
    const RunResult r = run(mesh, p, cfg, &states.back());
    states.push_back(r.state);
  }
  const DominantMode dom = dominant_mode(mesh, mass, states.back().n1);
  const double k2 = static_cast<double>(dom.m * dom.m + dom.n * dom.n);
  std::printf("    note dominant mode after 100 steps: (%d, %d), k^2 = %g\n", dom.m, dom.n, k2);

  const ReactionJacobian jac = jacobian(p);
  const LinearizedDiffusion lin = linearized_diffusion(p);
  const double target = dispersion_at(jac, lin, k2).re_lmax;

  int best_m = 0, best_n = 1;
  double best_rate = dispersion_at(jac, lin, 1.0).re_lmax;
  for (int mm = 0; mm <= 12; ++mm)
    for (int nn = 0; nn <= 12; ++nn) {
      if (mm == 0 && nn == 0) continue;
      const double rate = dispersion_at(jac, lin, static_cast<double>(mm * mm + nn * nn)).re_lmax;
      if (rate > best_rate) {
        best_rate = rate;
        best_m = mm;
        best_n = nn;
      }
    }
  std::printf("    note fastest admissible mode: (%d, %d), growth rate %g\n", best_m, best_n,
              best_rate);

  std::vector<double> ts, ln_amps;
  for (std::size_t j = 3; j < states.size(); ++j) { // skip the fast initial transient
    const double amp = mode_projection(mesh, mass, states[j].n1, dom.m, dom.n);
    ts.push_back(0.1 * static_cast<double>(j));
    ln_amps.push_back(std::log(std::abs(amp)));
  }
  const double slope = fit_slope(ts, ln_amps);
  g.checkv(target > 0.0, "predicted growth rate of the dominant mode", target);
  g.checkv(std::abs(slope - target) <= 0.15 * std::abs(target), "fitted growth rate", slope);

  // Part 2: pattern emergence by t = 200 under 1% noise.
  const PatternRun& pr = pattern_run();
  const StepDiagnostics& last = pr.result.diagnostics.back();
  const double range1 = last.max1 - last.min1;
  const int mode_k2 = last.mode_m * last.mode_m + last.mode_n * last.mode_n;
  std::printf("    note final state: range(n1) = %g, dominant mode (%d, %d), m^2+n^2 = %d\n",
              range1, last.mode_m, last.mode_n, mode_k2);
  g.checkv(range1 > 0.1 * 15.0, "n1 range at t = 200 exceeds 10% of the uniform level", range1);
  g.check(25 <= mode_k2 && mode_k2 <= 41,
          "final dominant mode has 25 <= m^2+n^2 <= 41 (bracketing the critical k^2)");
  return g.ok;
}

bool criterion9() {
  Gate g;
  const PatternRun& pr = pattern_run();
  const Equilibrium eq = equilibrium(pr.params);
  const std::vector<double>& n1 = pr.result.state.n1;
  const std::vector<double>& n2 = pr.result.state.n2;
  double s11 = 0.0, s22 = 0.0, s12 = 0.0;
  for (std::size_t i = 0; i < n1.size(); ++i) {
    const double a = n1[i] - eq.n1;
    const double b = n2[i] - eq.n2;
    s11 += a * a;
    s22 += b * b;
    s12 += a * b;
  }
  const double corr = s12 / std::sqrt(s11 * s22);
  g.checkv(corr > 0.0, "nodal correlation of the two deviations at t = 200", corr);
  return g.ok;
}

double kinetic_d_est(double eta, double c, double eps, int nx, int ntheta, int nu, double t_final) {
  const KineticGrid grid = build_kinetic_grid(1.0, nx, ntheta, nu);
  std::vector<double> rho0(static_cast<std::size_t>(nx));
  for (int i = 0; i < nx; ++i)
    rho0[static_cast<std::size_t>(i)] = 1.0 + 0.5 * std::cos(kPi * grid.x[static_cast<std::size_t>(i)]);
  KineticState s = kinetic_state_from_density(grid, rho0, eps, eta, c);
  const RhoHistory h = run_kinetic(grid, s, t_final);
  return estimate_diffusivity(grid, h).d_est;
}

double kinetic_l2_error(double eps, int nx, int ntheta, int nu, double t_end) {
  const KineticGrid grid = build_kinetic_grid(1.0, nx, ntheta, nu);
  std::vector<double> rho0(static_cast<std::size_t>(nx));
  for (int i = 0; i < nx; ++i)
    rho0[static_cast<std::size_t>(i)] = 1.0 + 0.5 * std::cos(kPi * grid.x[static_cast<std::size_t>(i)]);
  KineticState s = kinetic_state_from_density(grid, rho0, eps, 1.0, 1.0);
  const RhoHistory h = run_kinetic(grid, s, t_end, 2);
  const std::vector<double>& rho = h.rho.back();
  // Reference: the diffusion solution with the velocity-quadrature diffusivity.
  const double d_quad = (1.0 - 1.0 / (static_cast<double>(nu) * static_cast<double>(nu))) / 6.0;
  const double damp = 0.5 * std::exp(-d_quad * kPi * kPi * h.t.back());
  double err2 = 0.0;
  for (int i = 0; i < nx; ++i) {
    const double ref = 1.0 + damp * std::cos(kPi * grid.x[static_cast<std::size_t>(i)]);
    const double diff = rho[static_cast<std::size_t>(i)] - ref;
    err2 += grid.dx * diff * diff;
  }
  return std::sqrt(err2);
}

bool criterion10() {
  Gate g;
  const struct {
    double eta, c;
  } runs[] = {{1.0, 1.0}, {2.0, 1.0}, {1.0, 2.0}};
  for (const auto& r : runs) {
    const double d_est = kinetic_d_est(r.eta, r.c, 0.05, 800, 16, 16, 1.0);
    const double target = r.c * r.c / (6.0 * r.eta);
    char buf[96];
    std::snprintf(buf, sizeof(buf), "relative diffusivity error at (eta=%g, c=%g, eps=0.05)",
                  r.eta, r.c);
    g.checkv(std::abs(d_est - target) / target <= 0.05, buf, std::abs(d_est - target) / target);
  }

  const double err_coarse = kinetic_l2_error(0.10, 3200, 16, 16, 0.25);
  const double err_fine = kinetic_l2_error(0.05, 3200, 16, 16, 0.25);
  std::printf("    note L2 errors vs the diffusion solution: eps=0.1 -> %g, eps=0.05 -> %g\n",
              err_coarse, err_fine);
  g.checkv(err_coarse >= 1.5 * err_fine, "error contraction factor from eps=0.1 to eps=0.05",
           err_coarse / err_fine);

  for (const double eta : {1.0, 2.0}) {
    const KineticGrid grid = build_kinetic_grid(1.0, 4, 64, 32);
    const KineticChecks k = check_k_solution(grid, eta);
    char buf[96];
    std::snprintf(buf, sizeof(buf), "transport tensor isotropy at eta=%g", eta);
    g.checkv(std::abs(k.d00 - k.d11) <= 1e-10 * k.d00 && std::abs(k.d01) <= 1e-10 &&
                 std::abs(k.d10) <= 1e-10,
             buf, std::abs(k.d00 - k.d11));
    std::snprintf(buf, sizeof(buf), "diagonal transport coefficient error at eta=%g", eta);
    g.checkv(std::abs(k.d00 - 1.0 / (6.0 * eta)) <= 1e-3, buf, std::abs(k.d00 - 1.0 / (6.0 * eta)));
    std::snprintf(buf, sizeof(buf), "relaxation-balance residual at eta=%g", eta);
    g.checkv(k.k_residual_max <= 1e-12, buf, k.k_residual_max);
  }
  return g.ok;
}

struct Criterion {
  int number;
  const char* title;
  bool (*fn)();
};

const Criterion kCriteria[] = {
    {1, "coexistence state and reaction Jacobian closed forms", criterion1},
    {2, "self-diffusion instability threshold", criterion2},
    {3, "critical wavenumber and brute-force scan agreement", criterion3},
    {4, "cross-diffusion instability conditions", criterion4},
    {5, "parameter-plane region maps match a brute-force oracle", criterion5},
    {6, "finite-element identities on the 40x40 mesh", criterion6},
    {7, "conservation, iteration count, and fixed-point sanity", criterion7},
    {8, "linear growth rate and pattern emergence", criterion8},
    {9, "the two species pattern in phase", criterion9},
    {10, "kinetic runs reproduce the diffusive limit", criterion10},
};

} // namespace

int main(int argc, char** argv) {
  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) {
    char* end = nullptr;
    const long v = std::strtol(argv[i], &end, 10);
    if (end == argv[i] || *end != '\0' || v < 1 || v > 10) {
      std::fprintf(stderr, "usage: %s [criterion numbers in 1..10]\n", argv[0]);
      return 64;
    }
    wanted.push_back(static_cast<int>(v));
  }

  int failures = 0, ran = 0;
  for (const Criterion& c : kCriteria) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.number) == wanted.end())
      continue;
    std::printf("criterion %d: %s\n", c.number, c.title);
    bool ok = false;
    try {
      ok = c.fn();
    } catch (const std::exception& e) {
      std::printf("    FAIL unexpected exception: %s\n", e.what());
    }
    std::printf("%s %d %s\n", ok ? "PASS" : "FAIL", c.number, c.title);
    ++ran;
    if (!ok) ++failures;
  }
  std::printf("acceptance: %d of %d criteria failed\n", failures, ran);
  return failures;
}
