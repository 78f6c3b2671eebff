// Linear stability of the homogeneous coexistence state and the
// diffusion-driven (Turing) instability machinery: linearized diffusion
// matrix, dispersion relation, critical wavenumber, instability conditions,
// and diffusivity-ratio thresholds.

#pragma once

#include <optional>
#include <vector>

#include "leafpat/model.hpp"

namespace leafpat {

/// Diffusion matrix of the linearization around the coexistence state,
///   Dhat = [ c1^2 D1,              -c1 D1 n1 lam1 ]
///          [ -c2 D2 n2 lam2,        c2^2 D2       ]
/// (all coefficients evaluated at the equilibrium densities), together with
/// the ratios delta = d22/d11, delta12 = d12/d11, delta21 = d21/d11.
struct LinearizedDiffusion {
  double d11, d12, d21, d22;
  double delta, delta12, delta21;
  double trace() const { return d11 + d22; }
  double det() const { return d11 * d22 - d12 * d21; }
};

/// Evaluate the linearized diffusion matrix at the coexistence state.
/// Requires a positive equilibrium; throws std::domain_error otherwise.
LinearizedDiffusion linearized_diffusion(const ModelParams& p);

enum class StabilityClass {
  Stable,                ///< positive equilibrium, trace < 0 (det is always > 0 there)
  Unstable,              ///< positive equilibrium, trace > 0
  HopfBoundary,          ///< positive equilibrium, trace = 0 within 1e-12 relative
  NoPositiveEquilibrium, ///< zeta <= 1 or beta <= nu
};

const char* to_string(StabilityClass c);

/// Classify the homogeneous coexistence state without diffusion.
StabilityClass homogeneous_stability(const ModelParams& p);

/// Gain threshold zetabar = (1-beta)/(1-nu) at which the reaction trace
/// changes sign (oscillatory onset).  Throws std::domain_error when nu = 1.
double hopf_zeta(const ModelParams& p);

/// One sample of the dispersion relation l^2 + a(k^2) l + b(k^2) = 0 for
/// perturbations ~ exp(l t) cos(k.x):
///   a = k^2 tr(Dhat) - tr(J),
///   b = det(Dhat) k^4 + g k^2 + det(J),
///   g = -(d11 j22 + d22 j11 - d12 j21 - d21 j12),
/// with re_lmax the largest real part among the two roots.
struct DispersionPoint {
  double k2, a, b, re_lmax;
};

/// Evaluate the dispersion relation at a single squared wavenumber.
DispersionPoint dispersion_at(const ReactionJacobian& j, const LinearizedDiffusion& d, double k2);

/// Uniformly sample the dispersion relation at `k2_steps` points covering
/// [0, k2_max] (inclusive endpoints; k2_steps >= 2).
std::vector<DispersionPoint> dispersion(const ModelParams& p, const LinearizedDiffusion& d,
                                        double k2_max, int k2_steps);

/// Most unstable square wavenumber kc2 = -g / (2 det Dhat) and the value of b
/// there.  Empty when det(Dhat) <= 0 or g >= 0 (no interior minimum of b).
struct CriticalMode {
  double kc2;
  double b_min;
  double g;
};
std::optional<CriticalMode> critical_k2(const ModelParams& p, const LinearizedDiffusion& d);

/// Diffusion-driven instability conditions for a stable coexistence state:
///   s1 = -beta (delta21 + 1) + delta12 (zeta-1)^2 - delta zeta + delta + zeta nu
///   s2 = s1^2 + 4 (zeta-1) zeta (beta-nu) (delta12 delta21 - delta)
/// cond1: s1 < 0 (b develops a negative-slope band at small k^2);
/// cond2: s2 > 0 (the minimum of b actually reaches below zero).
/// The pattern-forming (Turing) regime is cond1 && cond2; the flags are
/// meaningful when the reaction part alone is stable.
struct TuringConditions {
  double s1, s2;
  bool cond1, cond2, turing;
};

TuringConditions turing_conditions(const ModelParams& p, double delta, double delta12, double delta21);
TuringConditions turing_conditions(const ModelParams& p, const LinearizedDiffusion& d);

/// Algebraically reduced forms of (s1, s2) used as cross-checks of the
/// general path.
struct ConditionPair {
  double s1, s2;
};

/// Reduced form valid for unit speeds (c1 = c2 = 1) with density-dependent
/// turning, written in terms of lambar_i = nbar_i * lam_i(nbar).
ConditionPair turing_conditions_unit_speed(const ModelParams& p);

/// Reduced form valid for density-dependent speeds, written in terms of
/// speed-rescaled quantities lambar_1 = nbar_1 lam_1 / c1,
/// lambar_2 = nbar_2 lam_2 c2 / c1^2 and cbar = (c2/c1)^2 (all at nbar),
/// with the raw diffusivity ratio delta = D2/D1.
ConditionPair turing_conditions_scaled_speed(const ModelParams& p);

/// Smallest diffusivity-ratio threshold deltabar such that cond1 and cond2
/// hold for every linearized ratio delta > deltabar, at fixed cross ratios
/// delta12, delta21.  Requires a stable coexistence state (throws
/// std::domain_error otherwise).
double delta_threshold(const ModelParams& p, double delta12, double delta21);

/// Closed form of delta_threshold for pure self-diffusion
/// (delta12 = delta21 = 0):
///   (beta (2 zeta - 1) - zeta nu)/(zeta - 1)
///     + 2 sqrt( beta zeta (beta - nu)/(zeta - 1) ).
double delta_threshold_closed_form(const ModelParams& p);

/// Variant of the closed form with the numerator term 2 beta zeta - beta^2
/// - zeta nu in place of beta (2 zeta - 1) - zeta nu.  It does not equal the
/// root of the threshold quadratic; it is retained only as a comparison
/// diagnostic for data produced with the erroneous expression.
double delta_threshold_closed_form_variant(const ModelParams& p);

} // namespace leafpat
