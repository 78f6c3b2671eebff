#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "leafpat/model.hpp"
#include "leafpat/stability.hpp"

using namespace leafpat;

namespace {

// zeta=3, beta=1.5, tau=2, nu=1.4, d1=0.1, delta=2.7, unit speeds, no
// cross-response.
ModelParams self_diffusion_params() { return ModelParams{}; }

// Density-dependent turning responses, unit speeds.
ModelParams turning_params() {
  ModelParams p;
  p.lam1 = CoeffSpec::turning_law(0.25, 2.0 / 3.0);
  p.lam2 = CoeffSpec::turning_law(0.25, 2.0 / 3.0);
  return p;
}

// Density-dependent speeds plus turning responses, raw ratio 2.41.
ModelParams speed_params() {
  ModelParams p = turning_params();
  p.delta = 2.41;
  p.c1 = CoeffSpec::speed_law(1.0, 0.5, 2.0 / 3.0);
  p.c2 = CoeffSpec::speed_law(1.0, 0.5, 2.0 / 3.0);
  return p;
}

} // namespace

TEST_CASE("homogeneous stability classification") {
  CHECK(homogeneous_stability(self_diffusion_params()) == StabilityClass::Stable);

  ModelParams p = self_diffusion_params();
  p.zeta = 1.1; // above 1 but below the oscillatory threshold
  CHECK(homogeneous_stability(p) == StabilityClass::Unstable);

  p = self_diffusion_params();
  p.zeta = 1.25; // trace crosses zero
  CHECK(homogeneous_stability(p) == StabilityClass::HopfBoundary);

  p = self_diffusion_params();
  p.zeta = 0.9;
  CHECK(homogeneous_stability(p) == StabilityClass::NoPositiveEquilibrium);

  p = self_diffusion_params();
  p.nu = 2.0; // beta < nu
  CHECK(homogeneous_stability(p) == StabilityClass::NoPositiveEquilibrium);

  p = self_diffusion_params();
  p.nu = 0.5; // nu < 1: trace stays positive for every zeta > 1
  CHECK(homogeneous_stability(p) == StabilityClass::Unstable);
  p.zeta = 4.9;
  CHECK(homogeneous_stability(p) == StabilityClass::Unstable);
}

TEST_CASE("oscillatory threshold") {
  const ModelParams p = self_diffusion_params();
  CHECK(hopf_zeta(p) == doctest::Approx(1.25).epsilon(1e-12));
  ModelParams q = p;
  q.zeta = hopf_zeta(p);
  CHECK(homogeneous_stability(q) == StabilityClass::HopfBoundary);
}

TEST_CASE("linearized diffusion matrix, self-diffusion case") {
  const LinearizedDiffusion d = linearized_diffusion(self_diffusion_params());
  CHECK(d.d11 == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(d.d22 == doctest::Approx(0.27).epsilon(1e-14));
  CHECK(d.d12 == 0.0);
  CHECK(d.d21 == 0.0);
  CHECK(d.delta == doctest::Approx(2.7).epsilon(1e-14));
  CHECK(d.delta12 == 0.0);
  CHECK(d.delta21 == 0.0);
  CHECK(d.trace() == doctest::Approx(0.37).epsilon(1e-14));
  CHECK(d.det() == doctest::Approx(0.027).epsilon(1e-14));
}

TEST_CASE("linearized diffusion matrix, turning case") {
  const LinearizedDiffusion d = linearized_diffusion(turning_params());
  CHECK(d.d12 == doctest::Approx(-0.014210918599629971).epsilon(1e-13));
  CHECK(d.d21 == doctest::Approx(-0.046481315094808007).epsilon(1e-13));
  CHECK(d.delta12 == doctest::Approx(-0.14210918599629971).epsilon(1e-13));
  CHECK(d.delta21 == doctest::Approx(-0.46481315094808007).epsilon(1e-13));
}

TEST_CASE("instability conditions, turning case") {
  const ModelParams p = turning_params();
  const TuringConditions t = turing_conditions(p, linearized_diffusion(p));
  CHECK(t.s1 == doctest::Approx(-2.5712170175630787).epsilon(1e-12));
  CHECK(t.s2 == doctest::Approx(0.28968707585782996).epsilon(1e-11));
  CHECK(t.cond1);
  CHECK(t.cond2);
  CHECK(t.turing);
}

TEST_CASE("instability conditions, speed case") {
  const ModelParams p = speed_params();
  const LinearizedDiffusion d = linearized_diffusion(p);
  CHECK(d.delta == doctest::Approx(2.6408004402283538).epsilon(1e-13));
  const TuringConditions t = turing_conditions(p, d);
  CHECK(t.s1 == doctest::Approx(-2.5169584895294960).epsilon(1e-12));
  CHECK(t.s2 == doctest::Approx(0.0869735095471157).epsilon(1e-9));
  CHECK(t.turing);
}

TEST_CASE("self-diffusion narrows to the classical threshold behavior") {
  const ModelParams p = self_diffusion_params();
  const TuringConditions t = turing_conditions(p, linearized_diffusion(p));
  // delta = 2.7 > deltabar ~ 2.5987: both conditions hold.
  CHECK(t.turing);
  ModelParams q = p;
  q.delta = 2.0; // below threshold
  const TuringConditions t2 = turing_conditions(q, linearized_diffusion(q));
  CHECK_FALSE(t2.turing);
}

TEST_CASE("dispersion relation endpoints and critical mode") {
  const ModelParams p = self_diffusion_params();
  const LinearizedDiffusion d = linearized_diffusion(p);
  const ReactionJacobian j = jacobian(p);

  const DispersionPoint at0 = dispersion_at(j, d, 0.0);
  CHECK(at0.a == doctest::Approx(14.0 / 3.0).epsilon(1e-12));
  CHECK(at0.b == doctest::Approx(80.0 / 3.0).epsilon(1e-12));
  CHECK(at0.re_lmax < 0.0);

  const auto crit = critical_k2(p, d);
  REQUIRE(crit.has_value());
  CHECK(crit->g == doctest::Approx(-1.8).epsilon(1e-12));
  CHECK(crit->kc2 == doctest::Approx(100.0 / 3.0).epsilon(1e-12));
  CHECK(crit->b_min == doctest::Approx(-10.0 / 3.0).epsilon(1e-12));

  // b evaluated at the critical wavenumber agrees with the reported minimum.
  const DispersionPoint atc = dispersion_at(j, d, crit->kc2);
  CHECK(atc.b == doctest::Approx(crit->b_min).epsilon(1e-12));
  CHECK(atc.re_lmax == doctest::Approx(0.19386757049665056).epsilon(1e-12));
  CHECK(dispersion_at(j, d, 32.0).re_lmax == doctest::Approx(0.19668704797016057).epsilon(1e-12));
  CHECK(dispersion_at(j, d, 34.0).re_lmax == doctest::Approx(0.19047464682547604).epsilon(1e-12));
}

TEST_CASE("critical mode is absent without a negative-slope band") {
  ModelParams p = self_diffusion_params();
  p.delta = 1.0; // g > 0: b is increasing in k^2
  const auto crit = critical_k2(p, linearized_diffusion(p));
  CHECK_FALSE(crit.has_value());
}

TEST_CASE("dispersion sampling covers the range deterministically") {
  const ModelParams p = self_diffusion_params();
  const LinearizedDiffusion d = linearized_diffusion(p);
  const auto curve = dispersion(p, d, 100.0, 501);
  REQUIRE(curve.size() == 501);
  CHECK(curve.front().k2 == 0.0);
  CHECK(curve.back().k2 == doctest::Approx(100.0).epsilon(1e-15));
  const ReactionJacobian j = jacobian(p);
  for (const int idx : {0, 100, 250, 500}) {
    const auto& pt = curve[static_cast<std::size_t>(idx)];
    const DispersionPoint want = dispersion_at(j, d, pt.k2);
    CHECK(pt.a == want.a);
    CHECK(pt.b == want.b);
    CHECK(pt.re_lmax == want.re_lmax);
  }
  const auto again = dispersion(p, d, 100.0, 501);
  for (std::size_t i = 0; i < curve.size(); ++i) {
    CHECK(curve[i].k2 == again[i].k2);
    CHECK(curve[i].re_lmax == again[i].re_lmax);
  }
}

TEST_CASE("reduced condition forms agree with the general path") {
  {
    const ModelParams p = turning_params();
    const TuringConditions general = turing_conditions(p, linearized_diffusion(p));
    const ConditionPair reduced = turing_conditions_unit_speed(p);
    CHECK(reduced.s1 == doctest::Approx(general.s1).epsilon(1e-10));
    CHECK(reduced.s2 == doctest::Approx(general.s2).epsilon(1e-10));
  }
  {
    const ModelParams p = speed_params();
    const TuringConditions general = turing_conditions(p, linearized_diffusion(p));
    const ConditionPair reduced = turing_conditions_scaled_speed(p);
    CHECK(reduced.s1 == doctest::Approx(general.s1).epsilon(1e-10));
    CHECK(reduced.s2 == doctest::Approx(general.s2).epsilon(1e-10));
  }
}

TEST_CASE("diffusivity-ratio threshold, pure self-diffusion") {
  const ModelParams p = self_diffusion_params();
  const double dbar = delta_threshold(p, 0.0, 0.0);
  CHECK(dbar == doctest::Approx(2.5986832980505138).epsilon(1e-12));
  CHECK(delta_threshold_closed_form(p) == doctest::Approx(dbar).epsilon(1e-12));
  // The variant expression is retained as a diagnostic only; it differs.
  CHECK(delta_threshold_closed_form_variant(p) == doctest::Approx(2.2236832980505138).epsilon(1e-12));

  // Threshold property: ratios just above switch the verdict on, just below off.
  ModelParams above = p;
  above.delta = dbar + 1e-6;
  CHECK(turing_conditions(above, linearized_diffusion(above)).turing);
  ModelParams below = p;
  below.delta = dbar - 1e-6;
  CHECK_FALSE(turing_conditions(below, linearized_diffusion(below)).turing);
}

TEST_CASE("threshold responds to cross-diffusion ratios") {
  const ModelParams p = self_diffusion_params();
  CHECK(delta_threshold(p, 0.1, 0.0) == doctest::Approx(2.8599504938362078).epsilon(1e-12));
  CHECK(delta_threshold(p, -0.1, 0.0) == doctest::Approx(2.3331760866327847).epsilon(1e-12));
  // A positive cross ratio raises the bar; a negative one lowers it.
  CHECK(delta_threshold(p, 0.1, 0.0) > delta_threshold(p, 0.0, 0.0));
  CHECK(delta_threshold(p, -0.1, 0.0) < delta_threshold(p, 0.0, 0.0));
}

TEST_CASE("threshold requires a stable reaction part") {
  ModelParams p = self_diffusion_params();
  p.zeta = 1.1;
  CHECK_THROWS_AS(delta_threshold(p, 0.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(delta_threshold_closed_form(p), std::domain_error);
}
