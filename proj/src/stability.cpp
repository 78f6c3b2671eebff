#include "leafpat/stability.hpp"

#include <cmath>
#include <stdexcept>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace leafpat {

LinearizedDiffusion linearized_diffusion(const ModelParams& p) {
  const Equilibrium eq = equilibrium(p);
  if (!eq.positive) throw std::domain_error("linearized diffusion requires a positive coexistence state");
  const double c1 = eval_coeff(p.c1, eq.n1, eq.n2);
  const double c2 = eval_coeff(p.c2, eq.n2, eq.n1);
  const double l1 = eval_coeff(p.lam1, eq.n1, eq.n2);
  const double l2 = eval_coeff(p.lam2, eq.n2, eq.n1);
  LinearizedDiffusion d;
  d.d11 = c1 * c1 * p.d1;
  d.d12 = -c1 * p.d1 * eq.n1 * l1;
  d.d21 = -c2 * p.d2() * eq.n2 * l2;
  d.d22 = c2 * c2 * p.d2();
  d.delta = d.d22 / d.d11;
  d.delta12 = d.d12 / d.d11;
  d.delta21 = d.d21 / d.d11;
  return d;
}

const char* to_string(StabilityClass c) {
  switch (c) {
    case StabilityClass::Stable: return "Stable";
    case StabilityClass::Unstable: return "Unstable";
    case StabilityClass::HopfBoundary: return "HopfBoundary";
    case StabilityClass::NoPositiveEquilibrium: return "NoPositiveEquilibrium";
  }
  return "?";
}

StabilityClass homogeneous_stability(const ModelParams& p) {
  Equilibrium eq;
  try {
    eq = equilibrium(p);
  } catch (const std::domain_error&) {
    return StabilityClass::NoPositiveEquilibrium;
  }
  if (!eq.positive) return StabilityClass::NoPositiveEquilibrium;
  // det(J) = tau^2 (zeta-1) / (zeta (beta-nu)) > 0 here, so stability is
  // decided by the sign of the trace.  Test the trace through its numerator
  // beta - 1 + zeta (1 - nu) (the shared positive denominator cannot flip it).
  const double t1 = p.beta - 1.0;
  const double t2 = p.zeta * (1.0 - p.nu);
  const double num = t1 + t2;
  const double scale = std::abs(t1) + std::abs(t2);
  if (std::abs(num) <= 1e-12 * scale) return StabilityClass::HopfBoundary;
  return num < 0.0 ? StabilityClass::Stable : StabilityClass::Unstable;
}

double hopf_zeta(const ModelParams& p) {
  if (p.nu == 1.0) throw std::domain_error("oscillatory-onset gain undefined at nu = 1");
  return (1.0 - p.beta) / (1.0 - p.nu);
}

DispersionPoint dispersion_at(const ReactionJacobian& j, const LinearizedDiffusion& d, double k2) {
  DispersionPoint pt;
  pt.k2 = k2;
  pt.a = k2 * d.trace() - j.trace;
  const double g = -(d.d11 * j.j22 + d.d22 * j.j11 - d.d12 * j.j21 - d.d21 * j.j12);
  pt.b = d.det() * k2 * k2 + g * k2 + j.det;
  const double disc = pt.a * pt.a - 4.0 * pt.b;
  pt.re_lmax = disc >= 0.0 ? 0.5 * (-pt.a + std::sqrt(disc)) : -0.5 * pt.a;
  return pt;
}

std::vector<DispersionPoint> dispersion(const ModelParams& p, const LinearizedDiffusion& d,
                                        double k2_max, int k2_steps) {
  if (!(k2_max > 0.0)) throw std::invalid_argument("dispersion: k2_max must be > 0");
  if (k2_steps < 2) throw std::invalid_argument("dispersion: k2_steps must be >= 2");
  const ReactionJacobian j = jacobian(p);
  std::vector<DispersionPoint> out(static_cast<std::size_t>(k2_steps));
  const double h = k2_max / static_cast<double>(k2_steps - 1);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < k2_steps; ++i) {
    out[static_cast<std::size_t>(i)] = dispersion_at(j, d, static_cast<double>(i) * h);
  }
  return out;
}

std::optional<CriticalMode> critical_k2(const ModelParams& p, const LinearizedDiffusion& d) {
  const ReactionJacobian j = jacobian(p);
  const double detd = d.det();
  const double g = -(d.d11 * j.j22 + d.d22 * j.j11 - d.d12 * j.j21 - d.d21 * j.j12);
  if (!(detd > 0.0) || !(g < 0.0)) return std::nullopt;
  CriticalMode m;
  m.g = g;
  m.kc2 = -g / (2.0 * detd);
  m.b_min = j.det - g * g / (4.0 * detd);
  return m;
}

TuringConditions turing_conditions(const ModelParams& p, double delta, double delta12, double delta21) {
  TuringConditions t;
  const double zm1 = p.zeta - 1.0;
  t.s1 = -p.beta * (delta21 + 1.0) + delta12 * zm1 * zm1 - delta * p.zeta + delta + p.zeta * p.nu;
  t.s2 = t.s1 * t.s1 + 4.0 * zm1 * p.zeta * (p.beta - p.nu) * (delta12 * delta21 - delta);
  t.cond1 = t.s1 < 0.0;
  t.cond2 = t.s2 > 0.0;
  t.turing = t.cond1 && t.cond2;
  return t;
}

TuringConditions turing_conditions(const ModelParams& p, const LinearizedDiffusion& d) {
  return turing_conditions(p, d.delta, d.delta12, d.delta21);
}

ConditionPair turing_conditions_unit_speed(const ModelParams& p) {
  const Equilibrium eq = equilibrium(p);
  if (!eq.positive) throw std::domain_error("reduced conditions require a positive coexistence state");
  const double lb1 = eq.n1 * eval_coeff(p.lam1, eq.n1, eq.n2);
  const double lb2 = eq.n2 * eval_coeff(p.lam2, eq.n2, eq.n1);
  const double zm1 = p.zeta - 1.0;
  ConditionPair c;
  c.s1 = (1.0 - p.zeta) * (p.delta + zm1 * lb1) + p.beta * (p.delta * lb2 - 1.0) + p.zeta * p.nu;
  c.s2 = 4.0 * p.delta * p.zeta * zm1 * (lb1 * lb2 - 1.0) * (p.beta - p.nu) + c.s1 * c.s1;
  return c;
}

ConditionPair turing_conditions_scaled_speed(const ModelParams& p) {
  const Equilibrium eq = equilibrium(p);
  if (!eq.positive) throw std::domain_error("reduced conditions require a positive coexistence state");
  const double c1 = eval_coeff(p.c1, eq.n1, eq.n2);
  const double c2 = eval_coeff(p.c2, eq.n2, eq.n1);
  const double cb = (c2 / c1) * (c2 / c1);
  const double lb1 = eq.n1 * eval_coeff(p.lam1, eq.n1, eq.n2) / c1;
  const double lb2 = eq.n2 * eval_coeff(p.lam2, eq.n2, eq.n1) * c2 / (c1 * c1);
  const double zm1 = p.zeta - 1.0;
  ConditionPair c;
  c.s1 = (1.0 - p.zeta) * (cb * p.delta + zm1 * lb1) + p.beta * (p.delta * lb2 - 1.0) + p.zeta * p.nu;
  c.s2 = 4.0 * p.delta * p.zeta * zm1 * (lb1 * lb2 - cb) * (p.beta - p.nu) + c.s1 * c.s1;
  return c;
}

double delta_threshold(const ModelParams& p, double delta12, double delta21) {
  if (homogeneous_stability(p) != StabilityClass::Stable)
    throw std::domain_error("diffusivity-ratio threshold requires a stable coexistence state");
  const double zm1 = p.zeta - 1.0;
  // s1(delta) = u + v delta with v < 0: cond1 holds for delta > r1.
  const double u = -p.beta * (delta21 + 1.0) + delta12 * zm1 * zm1 + p.zeta * p.nu;
  const double v = 1.0 - p.zeta;
  const double r1 = u / zm1;
  // s2(delta) = (u + v delta)^2 + w (delta12 delta21 - delta), w > 0:
  // quadratic v^2 delta^2 + (2uv - w) delta + u^2 + w delta12 delta21.
  const double w = 4.0 * p.zeta * zm1 * (p.beta - p.nu);
  const double disc = w * (w - 4.0 * u * v - 4.0 * v * v * delta12 * delta21);
  if (disc < 0.0) return r1; // s2 > 0 for every delta
  const double r2 = (w - 2.0 * u * v + std::sqrt(disc)) / (2.0 * v * v);
  return std::max(r1, r2);
}

double delta_threshold_closed_form(const ModelParams& p) {
  if (homogeneous_stability(p) != StabilityClass::Stable)
    throw std::domain_error("diffusivity-ratio threshold requires a stable coexistence state");
  const double zm1 = p.zeta - 1.0;
  return (p.beta * (2.0 * p.zeta - 1.0) - p.zeta * p.nu) / zm1 +
         2.0 * std::sqrt(p.beta * p.zeta * (p.beta - p.nu) / zm1);
}

double delta_threshold_closed_form_variant(const ModelParams& p) {
  if (homogeneous_stability(p) != StabilityClass::Stable)
    throw std::domain_error("diffusivity-ratio threshold requires a stable coexistence state");
  const double zm1 = p.zeta - 1.0;
  return (2.0 * p.beta * p.zeta - p.beta * p.beta - p.zeta * p.nu) / zm1 +
         2.0 * std::sqrt(p.beta * p.zeta * (p.beta - p.nu) / zm1);
}

} // namespace leafpat
