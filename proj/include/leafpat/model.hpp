// Two-species reaction–cross-diffusion model on a bounded domain:
//
//   dn1/dt = c1 D1 div( c1 grad n1 - lam1 n1 grad n2 ) + zeta n1^2 n2/(n1 + beta n2) - n1 n2
//   dn2/dt = c2 D2 div( c2 grad n2 - lam2 n2 grad n1 ) + zeta beta n1 n2^2/(n1 + beta n2)
//            - tau n2 - nu n2^2
//
// with zero total flux through the boundary.  The speeds c_i and turning
// coefficients lam_i may depend on the local densities; the supported
// functional families are closed and validated.  Parameters can also be
// derived from the underlying run-and-tumble rate constants.

#pragma once

#include <cstdint>
#include <utility>

namespace leafpat {

/// Functional family of a motility coefficient c_i(n_i, n_j) or
/// lam_i(n_i, n_j).  The first density argument is always the species' own.
enum class CoeffKind : std::uint8_t {
  Constant,   ///< value
  SpeedLaw,   ///< base + amp * (n_i / (n_i + n_j))^exponent
  TurningLaw, ///< amp * ( 1 / (sqrt(n_i) * (n_i + n_j)) )^exponent
};

struct CoeffSpec {
  CoeffKind kind = CoeffKind::Constant;
  double value = 1.0;    ///< Constant only
  double base = 1.0;     ///< SpeedLaw offset (> 0)
  double amp = 0.0;      ///< SpeedLaw / TurningLaw amplitude; sign encodes attraction vs repulsion
  double exponent = 1.0; ///< SpeedLaw / TurningLaw exponent (> 0)

  static CoeffSpec constant(double v);
  static CoeffSpec speed_law(double base, double amp, double exponent);
  static CoeffSpec turning_law(double amp, double exponent);
};

/// Validate structural constraints of a coefficient description.
/// Throws std::invalid_argument on violation.
void validate(const CoeffSpec& s);

/// Evaluate a coefficient at densities (own, other).  The non-constant
/// families require own > 0 and own + other > 0; violations raise
/// std::domain_error.
double eval_coeff(const CoeffSpec& s, double own, double other);

struct ModelParams {
  double zeta = 3.0;  ///< nutrient-conversion gain (> 0)
  double beta = 1.5;  ///< consumption asymmetry (> 0)
  double tau = 2.0;   ///< linear decay rate of species 2 (> 0)
  double nu = 1.4;    ///< quadratic self-limitation of species 2 (> 0)
  double d1 = 0.1;    ///< base diffusivity of species 1 (> 0)
  double delta = 2.7; ///< diffusivity ratio: D2 = delta * d1 (> 0)
  CoeffSpec c1 = CoeffSpec::constant(1.0);
  CoeffSpec c2 = CoeffSpec::constant(1.0);
  CoeffSpec lam1 = CoeffSpec::constant(0.0);
  CoeffSpec lam2 = CoeffSpec::constant(0.0);

  double d2() const { return delta * d1; }
};

/// Validate positivity of the scalar parameters and the coefficient specs.
/// Throws std::invalid_argument on violation.
void validate(const ModelParams& p);

struct Equilibrium {
  double n1 = 0.0;
  double n2 = 0.0;
  bool positive = false; ///< true iff zeta > 1 and beta > nu (both densities > 0)
};

/// Coexistence steady state n1 = beta tau / ((zeta-1)(beta-nu)),
/// n2 = tau / (beta-nu).  Throws std::domain_error when zeta = 1 or
/// beta = nu (the state does not exist).
Equilibrium equilibrium(const ModelParams& p);

struct ReactionJacobian {
  double j11, j12, j21, j22;
  double trace;
  double det;
};

/// Jacobian of the reaction part at the coexistence state, in closed form.
/// Requires a positive coexistence state; throws std::domain_error otherwise.
ReactionJacobian jacobian(const ModelParams& p);

/// Reaction right-hand side (r1, r2) at densities (n1, n2).  Defined by
/// continuity as (0, 0) at the origin; otherwise requires n1 + beta n2 > 0
/// (throws std::domain_error).
std::pair<double, double> reaction_rhs(const ModelParams& p, double n1, double n2);

/// Microscopic run-and-tumble rate constants.  All rates are positive;
/// p12 and p21 are sign factors (+1 attraction, -1 repulsion).
struct MicroRates {
  double eta1 = 1.0;        ///< tumbling rate of species 1
  double eta2 = 1.0;        ///< tumbling rate of species 2
  double nu12 = 1.0;        ///< conflict-loss rate of species 1 against species 2
  double nu22 = 1.0;        ///< intraspecific loss rate of species 2
  double tau2 = 1.0;        ///< linear death rate of species 2
  double sigma_gamma = 1.0; ///< product of encounter rate and conversion gain for species 1
  double mu1_theta1 = 1.0;  ///< nutrient uptake capacity of species 1
  double mu2_theta2 = 1.0;  ///< nutrient uptake capacity of species 2
  double lam12 = 0.0;       ///< turning-response magnitude of species 1 to species 2
  double lam21 = 0.0;       ///< turning-response magnitude of species 2 to species 1
  double p12 = 1.0;         ///< sign of species-1 response (+1 or -1)
  double p21 = 1.0;         ///< sign of species-2 response (+1 or -1)
};

/// Transport coefficients of the diffusive limit before rescaling by the
/// conflict-loss rate: Dtilde_i = 1/(6 eta_i), chitilde_i = pi/(6 eta_i).
struct KineticTransport {
  double d1_tilde, d2_tilde;
  double chi1_tilde, chi2_tilde;
};

struct MacroMap {
  ModelParams params;
  KineticTransport transport;
};

/// Macroscopic parameters induced by the microscopic rates:
///   D_i   = (1/(6 eta_i)) / nu12,   lam_i = pi * p_ij * lam_ij,
///   zeta  = sigma_gamma / nu12,     tau   = tau2 / nu12,
///   nu    = nu22 / nu12,            beta  = mu2_theta2 / mu1_theta1,
/// with constant unit speeds.  Throws std::invalid_argument on non-positive
/// rates or sign factors not in {-1, +1}.
MacroMap macro_from_micro(const MicroRates& m);

} // namespace leafpat
