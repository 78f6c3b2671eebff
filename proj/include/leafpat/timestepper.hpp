// Backward-Euler time integration of the coupled system with Picard
// linearization of the density-dependent coefficients:
//
//   (M/dt + K(p^j) - F(p^j)) p^{j+1} = (M/dt) n^k,   p^0 = n^k,
//
// iterated until the 2-norm of the difference of successive corrector
// solves drops below picard_tol.  Because the first comparison is between
// the first and second solves, the minimum iteration count is 2; with
// density-independent coefficients the second solve reproduces the first
// bitwise (warm-started solver, unchanged matrix), so constant-coefficient
// problems always take exactly 2 iterations.

#pragma once

#include <cstdint>
#include <vector>

#include "leafpat/fem.hpp"
#include "leafpat/mesh.hpp"
#include "leafpat/model.hpp"

namespace leafpat {

struct SolverConfig {
  double dt = 0.01;
  double t_final = 1.0;
  double picard_tol = 0.01;
  int picard_max_iters = 50;
  double linear_tol = 1e-12; ///< relative-residual bound of each linear solve
  int linear_max_iters = 500;
  std::uint64_t seed = 1;
  double noise_rel = 0.01;      ///< nodal variance is noise_rel * equilibrium density
  double snapshot_every = 1.0;  ///< time units between stored snapshots; 0 disables
  bool reactions_enabled = true;
};

void validate(const SolverConfig& cfg);

/// Nodal equilibrium densities plus independent Gaussian perturbations:
/// n_i[k] = nbar_i + sqrt(nbar_i * noise_rel) * g(seed, (i-1)*N + k).
/// Deterministic in (seed, mesh) alone.  Requires a positive coexistence
/// state (throws std::domain_error).
FieldPair initial_condition(const Mesh& m, const ModelParams& p, const SolverConfig& cfg);

struct PicardResult {
  FieldPair state;
  int iterations = 0;
};

/// Advance one backward-Euler step from `state`.  `mass_sys` is the coupled
/// block-diagonal mass matrix of the mesh.  Throws std::runtime_error when
/// the linear solver or the Picard loop fails to converge.
PicardResult picard_step(const Mesh& m, const ModelParams& p, const SolverConfig& cfg,
                         const SparseMatrix& mass_sys, const FieldPair& state);

/// Per-step scalar diagnostics.
struct StepDiagnostics {
  double t = 0.0;
  double mass1 = 0.0, mass2 = 0.0;
  double min1 = 0.0, max1 = 0.0, min2 = 0.0, max2 = 0.0;
  double l2dev1 = 0.0, l2dev2 = 0.0; ///< L2 distance from the equilibrium value
  int mode_m = 0, mode_n = 0;        ///< dominant cosine mode of the n1 deviation
  double mode_amp = 0.0;             ///< its projection coefficient
  int picard_iters = 0;
};

struct Snapshot {
  double t = 0.0;
  FieldPair fields;
};

struct RunResult {
  FieldPair state;
  std::vector<StepDiagnostics> diagnostics; ///< one record per completed step
  std::vector<Snapshot> snapshots;          ///< at multiples of snapshot_every
};

/// Integrate from the noisy initial condition (or from *initial when given)
/// to t_final, rounded up to a whole number of steps of size dt.  One
/// diagnostics record is emitted per completed step; a run of zero steps
/// emits the single initial record.
RunResult run(const Mesh& m, const ModelParams& p, const SolverConfig& cfg,
              const FieldPair* initial = nullptr);

/// Dominant cosine mode of the deviation of `field` from its mean:
/// coefficient (1/|domain|) \int (f - fbar) cos(m pi x/lx) cos(n pi y/ly)
/// maximized in magnitude over 0 <= m, n <= 12, (m, n) != (0, 0).
struct DominantMode {
  int m = 0, n = 0;
  double amplitude = 0.0;
};
DominantMode dominant_mode(const Mesh& m, const SparseMatrix& mass, const std::vector<double>& field);

} // namespace leafpat
