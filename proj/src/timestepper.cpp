#include "leafpat/timestepper.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "leafpat/rng.hpp"
#include "leafpat/solver.hpp"
#include "leafpat/stability.hpp"

namespace leafpat {

namespace {

constexpr int kMaxMode = 12;

void pack(const FieldPair& f, std::vector<double>& x) {
  const std::size_t n = f.n1.size();
  x.resize(2 * n);
  std::copy(f.n1.begin(), f.n1.end(), x.begin());
  std::copy(f.n2.begin(), f.n2.end(), x.begin() + static_cast<std::ptrdiff_t>(n));
}

FieldPair unpack(const std::vector<double>& x) {
  const std::size_t n = x.size() / 2;
  FieldPair f;
  f.n1.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n));
  f.n2.assign(x.begin() + static_cast<std::ptrdiff_t>(n), x.end());
  return f;
}

double norm2_serial(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

/// Cosine-mode projection tables for one mesh, reused across steps.
class ModeProjector {
public:
  ModeProjector(const Mesh& m, const SparseMatrix& mass) : mesh_(m), mass_(mass) {
    const std::size_t n = static_cast<std::size_t>(m.n_nodes);
    std::vector<double> ones(n, 1.0);
    area_ = integrate_field(m, mass, ones);
    cosx_.resize(static_cast<std::size_t>(kMaxMode + 1) * n);
    cosy_.resize(static_cast<std::size_t>(kMaxMode + 1) * n);
    constexpr double pi = std::numbers::pi;
    for (int mm = 0; mm <= kMaxMode; ++mm) {
      for (std::size_t k = 0; k < n; ++k) {
        cosx_[static_cast<std::size_t>(mm) * n + k] = std::cos(static_cast<double>(mm) * pi * m.x[k] / m.lx);
        cosy_[static_cast<std::size_t>(mm) * n + k] = std::cos(static_cast<double>(mm) * pi * m.y[k] / m.ly);
      }
    }
    w_.resize(n);
    dev_.resize(n);
  }

  DominantMode dominant(const std::vector<double>& field) {
    const std::size_t n = static_cast<std::size_t>(mesh_.n_nodes);
    double total = 0.0;
    spmv(mass_, field.data(), w_.data());
    for (const double v : w_) total += v;
    const double mean = total / area_;
    for (std::size_t k = 0; k < n; ++k) dev_[k] = field[k] - mean;
    spmv(mass_, dev_.data(), w_.data());

    double amp[kMaxMode + 1][kMaxMode + 1];
#pragma omp parallel for schedule(static)
    for (int flat = 0; flat < (kMaxMode + 1) * (kMaxMode + 1); ++flat) {
      const int mm = flat / (kMaxMode + 1);
      const int nn = flat % (kMaxMode + 1);
      const double* cx = cosx_.data() + static_cast<std::size_t>(mm) * n;
      const double* cy = cosy_.data() + static_cast<std::size_t>(nn) * n;
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += w_[k] * cx[k] * cy[k];
      amp[mm][nn] = s / area_;
    }

    DominantMode best;
    best.m = 0;
    best.n = 1;
    best.amplitude = amp[0][1];
    for (int mm = 0; mm <= kMaxMode; ++mm) {
      for (int nn = 0; nn <= kMaxMode; ++nn) {
        if (mm == 0 && nn == 0) continue;
        if (std::abs(amp[mm][nn]) > std::abs(best.amplitude)) {
          best.m = mm;
          best.n = nn;
          best.amplitude = amp[mm][nn];
        }
      }
    }
    return best;
  }

private:
  const Mesh& mesh_;
  const SparseMatrix& mass_;
  double area_ = 0.0;
  std::vector<double> cosx_, cosy_, w_, dev_;
};

double l2_deviation(const Mesh& m, const SparseMatrix& mass, const std::vector<double>& field,
                    double ref) {
  const std::size_t n = static_cast<std::size_t>(m.n_nodes);
  std::vector<double> dev(n), w(n);
  for (std::size_t k = 0; k < n; ++k) dev[k] = field[k] - ref;
  spmv(mass, dev.data(), w.data());
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += dev[k] * w[k];
  return std::sqrt(std::max(0.0, s));
}

} // namespace

void validate(const SolverConfig& cfg) {
  if (!(cfg.dt > 0.0)) throw std::invalid_argument("solver: dt must be > 0");
  if (!(cfg.t_final >= 0.0)) throw std::invalid_argument("solver: t_final must be >= 0");
  if (!(cfg.picard_tol > 0.0)) throw std::invalid_argument("solver: picard_tol must be > 0");
  if (cfg.picard_max_iters < 2) throw std::invalid_argument("solver: picard_max_iters must be >= 2");
  if (!(cfg.linear_tol > 0.0) || cfg.linear_tol > 1e-10)
    throw std::invalid_argument("solver: linear_tol must be in (0, 1e-10]");
  if (cfg.linear_max_iters < 1) throw std::invalid_argument("solver: linear_max_iters must be >= 1");
  if (!(cfg.noise_rel >= 0.0)) throw std::invalid_argument("solver: noise_rel must be >= 0");
  if (!(cfg.snapshot_every >= 0.0)) throw std::invalid_argument("solver: snapshot_every must be >= 0");
}

FieldPair initial_condition(const Mesh& m, const ModelParams& p, const SolverConfig& cfg) {
  validate(p);
  validate(cfg);
  const Equilibrium eq = equilibrium(p);
  if (!eq.positive) throw std::domain_error("initial condition requires a positive coexistence state");
  const std::size_t n = static_cast<std::size_t>(m.n_nodes);
  FieldPair f;
  f.n1.resize(n);
  f.n2.resize(n);
  const double s1 = std::sqrt(eq.n1 * cfg.noise_rel);
  const double s2 = std::sqrt(eq.n2 * cfg.noise_rel);
#pragma omp parallel for schedule(static)
  for (int k = 0; k < m.n_nodes; ++k) {
    const std::size_t i = static_cast<std::size_t>(k);
    f.n1[i] = eq.n1 + s1 * counter_gaussian(cfg.seed, i);
    f.n2[i] = eq.n2 + s2 * counter_gaussian(cfg.seed, n + i);
  }
  return f;
}

PicardResult picard_step(const Mesh& m, const ModelParams& p, const SolverConfig& cfg,
                         const SparseMatrix& mass_sys, const FieldPair& state) {
  const std::size_t n2 = 2 * static_cast<std::size_t>(m.n_nodes);
  std::vector<double> xk;
  pack(state, xk);

  std::vector<double> b(n2);
  spmv(mass_sys, xk.data(), b.data());
  const double inv_dt = 1.0 / cfg.dt;
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(n2); ++i) b[static_cast<std::size_t>(i)] *= inv_dt;

  std::vector<double> iterate = xk;
  std::vector<double> next = xk;
  PicardResult out;
  for (int j = 1; j <= cfg.picard_max_iters; ++j) {
    const FieldPair current = unpack(iterate);
    SparseMatrix a = assemble_diffusion(m, p, current);
    if (cfg.reactions_enabled) {
      const SparseMatrix f = assemble_reaction(m, p, current);
#pragma omp parallel for schedule(static)
      for (long long k = 0; k < static_cast<long long>(a.val.size()); ++k) {
        const std::size_t i = static_cast<std::size_t>(k);
        a.val[i] += inv_dt * mass_sys.val[i] - f.val[i];
      }
    } else {
#pragma omp parallel for schedule(static)
      for (long long k = 0; k < static_cast<long long>(a.val.size()); ++k) {
        const std::size_t i = static_cast<std::size_t>(k);
        a.val[i] += inv_dt * mass_sys.val[i];
      }
    }

    const IluFactor pc = ilu0(a);
    next = iterate; // warm start
    const LinearSolveStats stats = bicgstab(a, b, next, pc, cfg.linear_tol, cfg.linear_max_iters);
    if (!stats.converged)
      throw std::runtime_error("linear solve failed to reach the residual bound (rel_residual=" +
                               std::to_string(stats.rel_residual) + ")");
    out.iterations = j;
    if (j >= 2 && norm2_serial(next, iterate) < cfg.picard_tol) {
      out.state = unpack(next);
      return out;
    }
    iterate.swap(next);
  }
  throw std::runtime_error("Picard iteration did not converge within picard_max_iters");
}

RunResult run(const Mesh& m, const ModelParams& p, const SolverConfig& cfg, const FieldPair* initial) {
  validate(p);
  validate(cfg);
  const Equilibrium eq = equilibrium(p);
  if (!eq.positive) throw std::domain_error("time integration requires a positive coexistence state");

  const SparseMatrix mass = assemble_mass(m);
  const SparseMatrix mass_sys = assemble_mass_system(m);
  ModeProjector projector(m, mass);

  RunResult res;
  res.state = initial ? *initial : initial_condition(m, p, cfg);
  if (initial && (initial->n1.size() != static_cast<std::size_t>(m.n_nodes) ||
                  initial->n2.size() != static_cast<std::size_t>(m.n_nodes)))
    throw std::invalid_argument("run: initial state size does not match mesh");

  const int nsteps = cfg.t_final == 0.0
                         ? 0
                         : static_cast<int>(std::ceil(cfg.t_final / cfg.dt - 1e-9));
  const long long snap_stride =
      cfg.snapshot_every > 0.0 ? std::max(1ll, std::llround(cfg.snapshot_every / cfg.dt)) : 0;

  auto record = [&](double t, int iters) {
    StepDiagnostics d;
    d.t = t;
    d.mass1 = integrate_field(m, mass, res.state.n1);
    d.mass2 = integrate_field(m, mass, res.state.n2);
    d.min1 = *std::min_element(res.state.n1.begin(), res.state.n1.end());
    d.max1 = *std::max_element(res.state.n1.begin(), res.state.n1.end());
    d.min2 = *std::min_element(res.state.n2.begin(), res.state.n2.end());
    d.max2 = *std::max_element(res.state.n2.begin(), res.state.n2.end());
    d.l2dev1 = l2_deviation(m, mass, res.state.n1, eq.n1);
    d.l2dev2 = l2_deviation(m, mass, res.state.n2, eq.n2);
    const DominantMode mode = projector.dominant(res.state.n1);
    d.mode_m = mode.m;
    d.mode_n = mode.n;
    d.mode_amp = mode.amplitude;
    d.picard_iters = iters;
    res.diagnostics.push_back(d);
  };

  if (nsteps == 0) {
    record(0.0, 0);
    return res;
  }

  for (int k = 1; k <= nsteps; ++k) {
    PicardResult pr = picard_step(m, p, cfg, mass_sys, res.state);
    res.state = std::move(pr.state);
    const double t = static_cast<double>(k) * cfg.dt;
    record(t, pr.iterations);
    if (snap_stride > 0 && k % snap_stride == 0) res.snapshots.push_back({t, res.state});
  }
  return res;
}

DominantMode dominant_mode(const Mesh& m, const SparseMatrix& mass, const std::vector<double>& field) {
  if (field.size() != static_cast<std::size_t>(m.n_nodes))
    throw std::invalid_argument("dominant_mode: field size does not match mesh");
  ModeProjector projector(m, mass);
  return projector.dominant(field);
}

} // namespace leafpat
