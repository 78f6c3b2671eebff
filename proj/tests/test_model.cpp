#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "leafpat/model.hpp"
#include "leafpat/rng.hpp"

using namespace leafpat;

namespace {
ModelParams base_params() { return ModelParams{}; } // zeta=3, beta=1.5, tau=2, nu=1.4
}

TEST_CASE("coefficient families evaluate their closed forms") {
  CHECK(eval_coeff(CoeffSpec::constant(1.0), 7.0, 3.0) == 1.0);
  CHECK(eval_coeff(CoeffSpec::constant(-2.5), 1.0, 1.0) == -2.5);

  const CoeffSpec sp = CoeffSpec::speed_law(1.0, 0.5, 2.0 / 3.0);
  const double got = eval_coeff(sp, 15.0, 20.0);
  const double want = 1.0 + 0.5 * std::pow(15.0 / 35.0, 2.0 / 3.0);
  CHECK(got == doctest::Approx(want).epsilon(1e-15));

  const CoeffSpec tl = CoeffSpec::turning_law(0.25, 2.0 / 3.0);
  const double gt = eval_coeff(tl, 15.0, 20.0);
  const double wt = 0.25 * std::pow(1.0 / (std::sqrt(15.0) * 35.0), 2.0 / 3.0);
  CHECK(gt == doctest::Approx(wt).epsilon(1e-15));
}

TEST_CASE("non-constant coefficients reject non-positive densities") {
  const CoeffSpec sp = CoeffSpec::speed_law(1.0, 0.5, 1.0);
  CHECK_THROWS_AS(eval_coeff(sp, 0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(eval_coeff(sp, -1.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(eval_coeff(sp, 1.0, -2.0), std::domain_error);
  CHECK_NOTHROW(eval_coeff(CoeffSpec::constant(3.0), -1.0, -1.0));
}

TEST_CASE("coefficient validation rejects malformed specs") {
  CHECK_THROWS_AS(validate(CoeffSpec::speed_law(0.0, 0.5, 1.0)), std::invalid_argument);
  CHECK_THROWS_AS(validate(CoeffSpec::speed_law(1.0, 0.5, 0.0)), std::invalid_argument);
  CHECK_THROWS_AS(validate(CoeffSpec::turning_law(0.25, -1.0)), std::invalid_argument);
  CHECK_NOTHROW(validate(CoeffSpec::turning_law(-0.25, 2.0 / 3.0)));
}

TEST_CASE("model parameter validation") {
  ModelParams p = base_params();
  CHECK_NOTHROW(validate(p));
  p.delta = -1.0;
  CHECK_THROWS_WITH_AS(validate(p), "model parameter delta must be positive and finite",
                       std::invalid_argument);
  p = base_params();
  p.zeta = 0.0;
  CHECK_THROWS_AS(validate(p), std::invalid_argument);
}

TEST_CASE("coexistence state at the reference parameters") {
  const Equilibrium eq = equilibrium(base_params());
  CHECK(eq.positive);
  CHECK(eq.n1 == doctest::Approx(15.0).epsilon(1e-12));
  CHECK(eq.n2 == doctest::Approx(20.0).epsilon(1e-12));

  const auto [r1, r2] = reaction_rhs(base_params(), eq.n1, eq.n2);
  CHECK(std::abs(r1) <= 1e-12 * std::max(eq.n1, eq.n2));
  CHECK(std::abs(r2) <= 1e-12 * std::max(eq.n1, eq.n2));
}

TEST_CASE("coexistence state existence and positivity boundaries") {
  ModelParams p = base_params();
  p.zeta = 1.0;
  CHECK_THROWS_AS(equilibrium(p), std::domain_error);
  p = base_params();
  p.nu = p.beta;
  CHECK_THROWS_AS(equilibrium(p), std::domain_error);
  p = base_params();
  p.zeta = 0.5; // exists but not positive
  CHECK_FALSE(equilibrium(p).positive);
  p = base_params();
  p.nu = 2.0; // beta < nu
  CHECK_FALSE(equilibrium(p).positive);
  CHECK_THROWS_AS(jacobian(p), std::domain_error);
}

TEST_CASE("equilibrium zeroes the reaction over the feasible region") {
  // Randomized property: any (zeta, beta, nu, tau) with zeta > 1, beta > nu
  // gives residuals at machine scale.
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint64_t t = static_cast<std::uint64_t>(trial);
    ModelParams p;
    p.zeta = 1.0 + 4.0 * counter_uniform(7, 4 * t);
    p.nu = 0.1 + 2.0 * counter_uniform(7, 4 * t + 1);
    p.beta = p.nu + 0.05 + 3.0 * counter_uniform(7, 4 * t + 2);
    p.tau = 0.1 + 5.0 * counter_uniform(7, 4 * t + 3);
    const Equilibrium eq = equilibrium(p);
    REQUIRE(eq.positive);
    const auto [r1, r2] = reaction_rhs(p, eq.n1, eq.n2);
    const double scale = std::max(eq.n1, eq.n2);
    CHECK(std::abs(r1) <= 1e-12 * scale);
    CHECK(std::abs(r2) <= 1e-12 * scale);
  }
}

TEST_CASE("closed-form Jacobian matches central differences") {
  auto check_match = [](const ModelParams& p) {
    const Equilibrium eq = equilibrium(p);
    const ReactionJacobian j = jacobian(p);
    const double h1 = 1e-6 * eq.n1, h2 = 1e-6 * eq.n2;
    const auto [r1p, r2p] = reaction_rhs(p, eq.n1 + h1, eq.n2);
    const auto [r1m, r2m] = reaction_rhs(p, eq.n1 - h1, eq.n2);
    const auto [s1p, s2p] = reaction_rhs(p, eq.n1, eq.n2 + h2);
    const auto [s1m, s2m] = reaction_rhs(p, eq.n1, eq.n2 - h2);
    const double f11 = (r1p - r1m) / (2 * h1);
    const double f21 = (r2p - r2m) / (2 * h1);
    const double f12 = (s1p - s1m) / (2 * h2);
    const double f22 = (s2p - s2m) / (2 * h2);
    CHECK(f11 == doctest::Approx(j.j11).epsilon(1e-6));
    CHECK(f12 == doctest::Approx(j.j12).epsilon(1e-6));
    CHECK(f21 == doctest::Approx(j.j21).epsilon(1e-6));
    CHECK(f22 == doctest::Approx(j.j22).epsilon(1e-6));
    CHECK(j.trace == doctest::Approx(j.j11 + j.j22).epsilon(1e-12));
    CHECK(j.det == doctest::Approx(j.j11 * j.j22 - j.j12 * j.j21).epsilon(1e-12));
  };
  check_match(base_params());
  for (int trial = 0; trial < 50; ++trial) {
    const std::uint64_t t = static_cast<std::uint64_t>(trial);
    ModelParams p;
    p.zeta = 1.2 + 4.0 * counter_uniform(11, 4 * t);
    p.nu = 0.1 + 2.0 * counter_uniform(11, 4 * t + 1);
    p.beta = p.nu + 0.1 + 3.0 * counter_uniform(11, 4 * t + 2);
    p.tau = 0.2 + 5.0 * counter_uniform(11, 4 * t + 3);
    check_match(p);
  }
}

TEST_CASE("Jacobian closed-form values at the reference parameters") {
  const ReactionJacobian j = jacobian(base_params());
  CHECK(j.j11 == doctest::Approx(40.0 / 3.0).epsilon(1e-12));
  CHECK(j.j12 == doctest::Approx(-10.0).epsilon(1e-12));
  CHECK(j.j21 == doctest::Approx(80.0 / 3.0).epsilon(1e-12));
  CHECK(j.j22 == doctest::Approx(-18.0).epsilon(1e-12));
  CHECK(j.trace == doctest::Approx(-14.0 / 3.0).epsilon(1e-12));
  CHECK(j.det == doctest::Approx(80.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("reaction right-hand side is continuous at the origin and guarded") {
  const ModelParams p = base_params();
  const auto [r1, r2] = reaction_rhs(p, 0.0, 0.0);
  CHECK(r1 == 0.0);
  CHECK(r2 == 0.0);
  CHECK_THROWS_AS(reaction_rhs(p, -3.1, 1.0), std::domain_error);
}

TEST_CASE("microscopic rates map to the dimensionless parameters") {
  MicroRates m; // all rates 1, responses 0
  m.lam12 = 1.0;
  m.lam21 = 1.0;
  const MacroMap mm = macro_from_micro(m);
  CHECK(mm.params.d1 == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(mm.params.d2() == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(mm.params.zeta == 1.0);
  CHECK(mm.params.tau == 1.0);
  CHECK(mm.params.nu == 1.0);
  CHECK(mm.params.beta == 1.0);
  CHECK(eval_coeff(mm.params.lam1, 1.0, 1.0) == doctest::Approx(M_PI).epsilon(1e-15));
  CHECK(eval_coeff(mm.params.lam2, 1.0, 1.0) == doctest::Approx(M_PI).epsilon(1e-15));
  CHECK(mm.transport.d1_tilde == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(mm.transport.chi1_tilde == doctest::Approx(M_PI / 6.0).epsilon(1e-15));

  MicroRates rep = m;
  rep.p12 = -1.0;
  const MacroMap mr = macro_from_micro(rep);
  CHECK(eval_coeff(mr.params.lam1, 1.0, 1.0) == doctest::Approx(-M_PI).epsilon(1e-15));

  MicroRates bad = m;
  bad.eta1 = 0.0;
  CHECK_THROWS_AS(macro_from_micro(bad), std::invalid_argument);
  bad = m;
  bad.p12 = 0.5;
  CHECK_THROWS_AS(macro_from_micro(bad), std::invalid_argument);
}

TEST_CASE("scaling of the microscopic map") {
  MicroRates m;
  m.eta1 = 2.0;
  m.eta2 = 4.0;
  m.nu12 = 0.5;
  m.nu22 = 0.7;
  m.tau2 = 0.3;
  m.sigma_gamma = 1.5;
  m.mu1_theta1 = 2.0;
  m.mu2_theta2 = 3.0;
  m.lam12 = 0.25;
  m.lam21 = 0.1;
  const MacroMap mm = macro_from_micro(m);
  CHECK(mm.params.d1 == doctest::Approx((1.0 / 12.0) / 0.5).epsilon(1e-15));
  CHECK(mm.params.d2() == doctest::Approx((1.0 / 24.0) / 0.5).epsilon(1e-14));
  CHECK(mm.params.zeta == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(mm.params.tau == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(mm.params.nu == doctest::Approx(1.4).epsilon(1e-15));
  CHECK(mm.params.beta == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(eval_coeff(mm.params.lam1, 1.0, 1.0) == doctest::Approx(M_PI * 0.25).epsilon(1e-15));
  CHECK(eval_coeff(mm.params.lam2, 1.0, 1.0) == doctest::Approx(M_PI * 0.1).epsilon(1e-15));
}
