// One-dimensional discrete-velocity validator for the diffusive limit.
// Distribution f(x, theta, u) on [0, L] x S^1 x [-1, 1] evolving by
//
//   eps^2 df/dt + eps u c cos(theta) df/dx = eta ( rho/(4 pi) - f ),
//
// discretized with midpoint velocity grids, first-order upwind flux-form
// transport with specular wall reflection, and an implicit (exact) update of
// the stiff relaxation.  As eps -> 0 the density obeys a heat equation with
// diffusivity c^2/(6 eta), which the driver verifies by fitting the decay of
// a cosine profile.

#pragma once

#include <vector>

namespace leafpat {

struct KineticGrid {
  double length = 1.0;
  int nx = 0;      ///< spatial cells (midpoints)
  int ntheta = 0;  ///< angular points; must be even for specular pairing
  int nu = 0;      ///< activity points
  double dx = 0.0;
  double w_theta = 0.0; ///< 2 pi / ntheta
  double w_u = 0.0;     ///< 2 / nu
  std::vector<double> x;         ///< cell midpoints
  std::vector<double> cos_theta; ///< cos at angular midpoints
  std::vector<double> sin_theta;
  std::vector<double> u;         ///< activity midpoints in (-1, 1)
  std::vector<int> mirror;       ///< specular partner: cos flips sign, sin kept
};

/// Midpoint grids.  Requires nx >= 2, even ntheta >= 4, nu >= 2
/// (throws std::invalid_argument).
KineticGrid build_kinetic_grid(double length, int nx, int ntheta, int nu);

struct KineticState {
  std::vector<double> f; ///< layout [(j*nu + l)*nx + i]
  double epsilon = 0.05;
  double eta = 1.0;
  double c = 1.0;
  double t = 0.0;
};

/// Isotropic state f = rho0(x)/(4 pi).
KineticState kinetic_state_from_density(const KineticGrid& g, const std::vector<double>& rho0,
                                        double epsilon, double eta, double c);

/// Velocity-space marginal rho(x) = sum of weights * f.
std::vector<double> kinetic_density(const KineticGrid& g, const KineticState& s);

/// Largest stable step of the explicit transport sweep:
/// eps * dx / (c * max|u cos(theta)|).
double kinetic_cfl_dt(const KineticGrid& g, const KineticState& s);

/// One step: explicit upwind transport (specular walls; discrete mass
/// balance by pairwise wall-flux cancellation and interior telescoping)
/// followed by the implicit relaxation, applied in the equivalent deviation
/// form  f <- f + q (rho/W - f)  with  q = (dt eta/eps^2)/(1 + dt eta/eps^2)
/// and W the discrete velocity measure (= 4 pi up to rounding), so the
/// update introduces no systematic mass drift.  Throws
/// std::invalid_argument when dt exceeds the CFL bound.
void relax_transport_step(const KineticGrid& g, KineticState& s, double dt);

struct RhoHistory {
  std::vector<double> t;
  std::vector<std::vector<double>> rho;
};

/// March to t_final with dt = 0.9 * CFL (rounded so the horizon is hit
/// exactly) recording at most max_frames density frames, endpoints included.
RhoHistory run_kinetic(const KineticGrid& g, KineticState& s, double t_final, int max_frames = 512);

struct DiffusivityFit {
  double d_est = 0.0;     ///< fitted diffusivity
  double decay_rate = 0.0; ///< fitted decay rate of the fundamental cosine amplitude
  int frames_used = 0;
};

/// Fit A(t) = A(0) exp(-D (pi/L)^2 t) on the fundamental cosine amplitude
/// over the trailing 80% of the recorded window (t >= 0.2 * t_end).
DiffusivityFit estimate_diffusivity(const KineticGrid& g, const RhoHistory& h);

/// Discrete checks of the diffusive-limit ingredients:
/// the kernel solution k = -vhat u/(4 pi eta) of the relaxation balance, the
/// transport tensor Dtilde = (1/(4 pi eta)) sum w u^2 vhat vhat^T, and
/// chitilde = Dtilde * sum w_theta cos^2.
struct KineticChecks {
  double k_residual_max = 0.0;
  double d00 = 0.0, d01 = 0.0, d10 = 0.0, d11 = 0.0;
  double chi00 = 0.0, chi11 = 0.0;
};
KineticChecks check_k_solution(const KineticGrid& g, double eta);

} // namespace leafpat
