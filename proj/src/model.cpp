#include "leafpat/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace leafpat {

CoeffSpec CoeffSpec::constant(double v) {
  CoeffSpec s;
  s.kind = CoeffKind::Constant;
  s.value = v;
  return s;
}

CoeffSpec CoeffSpec::speed_law(double base, double amp, double exponent) {
  CoeffSpec s;
  s.kind = CoeffKind::SpeedLaw;
  s.base = base;
  s.amp = amp;
  s.exponent = exponent;
  return s;
}

CoeffSpec CoeffSpec::turning_law(double amp, double exponent) {
  CoeffSpec s;
  s.kind = CoeffKind::TurningLaw;
  s.amp = amp;
  s.exponent = exponent;
  return s;
}

void validate(const CoeffSpec& s) {
  switch (s.kind) {
    case CoeffKind::Constant:
      if (!std::isfinite(s.value)) throw std::invalid_argument("coefficient: constant value must be finite");
      return;
    case CoeffKind::SpeedLaw:
      if (!(s.base > 0.0)) throw std::invalid_argument("coefficient: speed-law base must be > 0");
      if (!(s.exponent > 0.0)) throw std::invalid_argument("coefficient: speed-law exponent must be > 0");
      if (!std::isfinite(s.amp)) throw std::invalid_argument("coefficient: speed-law amplitude must be finite");
      return;
    case CoeffKind::TurningLaw:
      if (!(s.exponent > 0.0)) throw std::invalid_argument("coefficient: turning-law exponent must be > 0");
      if (!std::isfinite(s.amp)) throw std::invalid_argument("coefficient: turning-law amplitude must be finite");
      return;
  }
  throw std::invalid_argument("coefficient: unknown kind");
}

double eval_coeff(const CoeffSpec& s, double own, double other) {
  if (s.kind == CoeffKind::Constant) return s.value;
  if (!(own > 0.0) || !(own + other > 0.0))
    throw std::domain_error("coefficient evaluation requires positive own density and positive total density");
  switch (s.kind) {
    case CoeffKind::SpeedLaw:
      return s.base + s.amp * std::pow(own / (own + other), s.exponent);
    case CoeffKind::TurningLaw:
      return s.amp * std::pow(1.0 / (std::sqrt(own) * (own + other)), s.exponent);
    default:
      throw std::invalid_argument("coefficient: unknown kind");
  }
}

void validate(const ModelParams& p) {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw std::invalid_argument(std::string("model parameter ") + name + " must be positive and finite");
  };
  positive(p.zeta, "zeta");
  positive(p.beta, "beta");
  positive(p.tau, "tau");
  positive(p.nu, "nu");
  positive(p.d1, "d1");
  positive(p.delta, "delta");
  validate(p.c1);
  validate(p.c2);
  validate(p.lam1);
  validate(p.lam2);
}

Equilibrium equilibrium(const ModelParams& p) {
  if (p.zeta == 1.0) throw std::domain_error("equilibrium undefined at zeta = 1");
  if (p.beta == p.nu) throw std::domain_error("equilibrium undefined at beta = nu");
  Equilibrium eq;
  eq.n2 = p.tau / (p.beta - p.nu);
  eq.n1 = p.beta * eq.n2 / (p.zeta - 1.0);
  eq.positive = (p.zeta > 1.0) && (p.beta > p.nu);
  return eq;
}

ReactionJacobian jacobian(const ModelParams& p) {
  const Equilibrium eq = equilibrium(p);
  if (!eq.positive) throw std::domain_error("reaction Jacobian requires a positive coexistence state");
  const double q = p.zeta * (p.beta - p.nu);
  ReactionJacobian j;
  j.j11 = p.tau * (p.zeta - 1.0) / q;
  j.j12 = p.beta * p.tau / (p.zeta * (p.nu - p.beta));
  j.j21 = p.tau * (p.zeta - 1.0) * (p.zeta - 1.0) / q;
  j.j22 = p.tau * (p.beta - p.zeta * p.nu) / q;
  j.trace = p.tau * (p.beta - 1.0 + p.zeta * (1.0 - p.nu)) / q;
  j.det = p.tau * p.tau * (p.zeta - 1.0) / q;
  return j;
}

std::pair<double, double> reaction_rhs(const ModelParams& p, double n1, double n2) {
  if (n1 == 0.0 && n2 == 0.0) return {0.0, 0.0};
  const double den = n1 + p.beta * n2;
  if (!(den > 0.0)) throw std::domain_error("reaction_rhs requires n1 + beta*n2 > 0 away from the origin");
  const double shared = p.zeta * n1 * n2 / den;
  const double r1 = shared * n1 - n1 * n2;
  const double r2 = p.beta * shared * n2 - p.tau * n2 - p.nu * n2 * n2;
  return {r1, r2};
}

MacroMap macro_from_micro(const MicroRates& m) {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw std::invalid_argument(std::string("microscopic rate ") + name + " must be positive and finite");
  };
  positive(m.eta1, "eta1");
  positive(m.eta2, "eta2");
  positive(m.nu12, "nu12");
  positive(m.nu22, "nu22");
  positive(m.tau2, "tau2");
  positive(m.sigma_gamma, "sigma_gamma");
  positive(m.mu1_theta1, "mu1_theta1");
  positive(m.mu2_theta2, "mu2_theta2");
  if (!(m.lam12 >= 0.0) || !(m.lam21 >= 0.0))
    throw std::invalid_argument("turning-response magnitudes lam12, lam21 must be >= 0");
  auto sign_ok = [](double s) { return s == 1.0 || s == -1.0; };
  if (!sign_ok(m.p12) || !sign_ok(m.p21))
    throw std::invalid_argument("sign factors p12, p21 must be +1 or -1");

  constexpr double pi = std::numbers::pi;
  MacroMap out;
  out.transport.d1_tilde = 1.0 / (6.0 * m.eta1);
  out.transport.d2_tilde = 1.0 / (6.0 * m.eta2);
  out.transport.chi1_tilde = pi * out.transport.d1_tilde;
  out.transport.chi2_tilde = pi * out.transport.d2_tilde;

  ModelParams& p = out.params;
  p.zeta = m.sigma_gamma / m.nu12;
  p.tau = m.tau2 / m.nu12;
  p.nu = m.nu22 / m.nu12;
  p.beta = m.mu2_theta2 / m.mu1_theta1;
  p.d1 = out.transport.d1_tilde / m.nu12;
  const double d2_macro = out.transport.d2_tilde / m.nu12;
  p.delta = d2_macro / p.d1;
  p.c1 = CoeffSpec::constant(1.0);
  p.c2 = CoeffSpec::constant(1.0);
  p.lam1 = CoeffSpec::constant(pi * m.p12 * m.lam12);
  p.lam2 = CoeffSpec::constant(pi * m.p21 * m.lam21);
  return out;
}

} // namespace leafpat
