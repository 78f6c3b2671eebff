#include "leafpat/kinetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace leafpat {

namespace {
constexpr double kFourPi = 4.0 * std::numbers::pi;
}

KineticGrid build_kinetic_grid(double length, int nx, int ntheta, int nu) {
  if (!(length > 0.0)) throw std::invalid_argument("kinetic grid: length must be > 0");
  if (nx < 2) throw std::invalid_argument("kinetic grid: nx must be >= 2");
  if (ntheta < 4 || ntheta % 2 != 0)
    throw std::invalid_argument("kinetic grid: ntheta must be even and >= 4 for specular pairing");
  if (nu < 2) throw std::invalid_argument("kinetic grid: nu must be >= 2");

  KineticGrid g;
  g.length = length;
  g.nx = nx;
  g.ntheta = ntheta;
  g.nu = nu;
  g.dx = length / static_cast<double>(nx);
  g.w_theta = 2.0 * std::numbers::pi / static_cast<double>(ntheta);
  g.w_u = 2.0 / static_cast<double>(nu);

  g.x.resize(static_cast<std::size_t>(nx));
  for (int i = 0; i < nx; ++i) g.x[static_cast<std::size_t>(i)] = (static_cast<double>(i) + 0.5) * g.dx;

  g.cos_theta.resize(static_cast<std::size_t>(ntheta));
  g.sin_theta.resize(static_cast<std::size_t>(ntheta));
  g.mirror.resize(static_cast<std::size_t>(ntheta));
  for (int j = 0; j < ntheta; ++j) {
    const double th = (static_cast<double>(j) + 0.5) * g.w_theta;
    g.cos_theta[static_cast<std::size_t>(j)] = std::cos(th);
    g.sin_theta[static_cast<std::size_t>(j)] = std::sin(th);
    g.mirror[static_cast<std::size_t>(j)] = ((ntheta / 2 - 1 - j) % ntheta + ntheta) % ntheta;
  }

  g.u.resize(static_cast<std::size_t>(nu));
  for (int l = 0; l < nu; ++l) g.u[static_cast<std::size_t>(l)] = -1.0 + (static_cast<double>(l) + 0.5) * g.w_u;
  return g;
}

KineticState kinetic_state_from_density(const KineticGrid& g, const std::vector<double>& rho0,
                                        double epsilon, double eta, double c) {
  if (rho0.size() != static_cast<std::size_t>(g.nx))
    throw std::invalid_argument("kinetic state: density size does not match grid");
  if (!(epsilon > 0.0) || !(eta > 0.0) || !(c > 0.0))
    throw std::invalid_argument("kinetic state: epsilon, eta, c must be positive");
  KineticState s;
  s.epsilon = epsilon;
  s.eta = eta;
  s.c = c;
  s.t = 0.0;
  const std::size_t slices = static_cast<std::size_t>(g.ntheta) * static_cast<std::size_t>(g.nu);
  s.f.resize(slices * static_cast<std::size_t>(g.nx));
#pragma omp parallel for schedule(static)
  for (long long sl = 0; sl < static_cast<long long>(slices); ++sl) {
    double* fs = s.f.data() + static_cast<std::size_t>(sl) * static_cast<std::size_t>(g.nx);
    for (int i = 0; i < g.nx; ++i) fs[i] = rho0[static_cast<std::size_t>(i)] / kFourPi;
  }
  return s;
}

std::vector<double> kinetic_density(const KineticGrid& g, const KineticState& s) {
  const int nslices = g.ntheta * g.nu;
  const double w = g.w_theta * g.w_u;
  std::vector<double> rho(static_cast<std::size_t>(g.nx));
#pragma omp parallel for schedule(static)
  for (int i = 0; i < g.nx; ++i) {
    double acc = 0.0;
    for (int sl = 0; sl < nslices; ++sl)
      acc += s.f[static_cast<std::size_t>(sl) * static_cast<std::size_t>(g.nx) + static_cast<std::size_t>(i)];
    rho[static_cast<std::size_t>(i)] = w * acc;
  }
  return rho;
}

double kinetic_cfl_dt(const KineticGrid& g, const KineticState& s) {
  double umax = 0.0, cmax = 0.0;
  for (const double v : g.u) umax = std::max(umax, std::abs(v));
  for (const double v : g.cos_theta) cmax = std::max(cmax, std::abs(v));
  return s.epsilon * g.dx / (s.c * umax * cmax);
}

void relax_transport_step(const KineticGrid& g, KineticState& s, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("kinetic step: dt must be > 0");
  if (dt > kinetic_cfl_dt(g, s) * (1.0 + 1e-12))
    throw std::invalid_argument("kinetic step: dt exceeds the CFL bound");

  const int nx = g.nx;
  const int nslices = g.ntheta * g.nu;
  const double lam = dt / g.dx;
  std::vector<double> fnew(s.f.size());

  // Explicit upwind transport, one independent sweep per velocity slice.
#pragma omp parallel for schedule(static)
  for (int sl = 0; sl < nslices; ++sl) {
    const int j = sl / g.nu;
    const int l = sl % g.nu;
    const double a = s.c * g.u[static_cast<std::size_t>(l)] * g.cos_theta[static_cast<std::size_t>(j)] / s.epsilon;
    const double* f = s.f.data() + static_cast<std::size_t>(sl) * static_cast<std::size_t>(nx);
    const double* fm = s.f.data() +
                       (static_cast<std::size_t>(g.mirror[static_cast<std::size_t>(j)]) * static_cast<std::size_t>(g.nu) +
                        static_cast<std::size_t>(l)) *
                           static_cast<std::size_t>(nx);
    double* fn = fnew.data() + static_cast<std::size_t>(sl) * static_cast<std::size_t>(nx);

    // Left-wall flux: inflow comes from the specular partner slice.
    double flux_left = a > 0.0 ? a * fm[0] : a * f[0];
    for (int i = 0; i < nx; ++i) {
      double flux_right;
      if (i == nx - 1) {
        flux_right = a < 0.0 ? a * fm[nx - 1] : a * f[nx - 1];
      } else {
        flux_right = a > 0.0 ? a * f[i] : a * f[i + 1];
      }
      fn[i] = f[i] - lam * (flux_right - flux_left);
      flux_left = flux_right;
    }
  }

  // Implicit relaxation toward the isotropic state, deviation form.
  const double coef = dt * s.eta / (s.epsilon * s.epsilon);
  const double q = coef / (1.0 + coef);
  const double w = g.w_theta * g.w_u;
  const double w_total = w * static_cast<double>(nslices);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < nx; ++i) {
    double acc = 0.0;
    for (int sl = 0; sl < nslices; ++sl)
      acc += fnew[static_cast<std::size_t>(sl) * static_cast<std::size_t>(nx) + static_cast<std::size_t>(i)];
    const double target = w * acc / w_total; // rho_i / W
    for (int sl = 0; sl < nslices; ++sl) {
      double& v = fnew[static_cast<std::size_t>(sl) * static_cast<std::size_t>(nx) + static_cast<std::size_t>(i)];
      v += q * (target - v);
    }
  }

  s.f.swap(fnew);
  s.t += dt;
}

RhoHistory run_kinetic(const KineticGrid& g, KineticState& s, double t_final, int max_frames) {
  if (!(t_final > 0.0)) throw std::invalid_argument("run_kinetic: t_final must be > 0");
  if (max_frames < 2) throw std::invalid_argument("run_kinetic: max_frames must be >= 2");
  const double dt0 = 0.9 * kinetic_cfl_dt(g, s);
  const long long nsteps = static_cast<long long>(std::ceil(t_final / dt0 - 1e-12));
  const double dt = t_final / static_cast<double>(nsteps);
  const long long stride = std::max(1ll, (nsteps + max_frames - 1) / max_frames);

  RhoHistory h;
  h.t.push_back(s.t);
  h.rho.push_back(kinetic_density(g, s));
  for (long long k = 1; k <= nsteps; ++k) {
    relax_transport_step(g, s, dt);
    if (k % stride == 0 || k == nsteps) {
      h.t.push_back(s.t);
      h.rho.push_back(kinetic_density(g, s));
    }
  }
  return h;
}

DiffusivityFit estimate_diffusivity(const KineticGrid& g, const RhoHistory& h) {
  if (h.t.size() < 3) throw std::invalid_argument("diffusivity fit: not enough frames");
  const double t_end = h.t.back();
  const double t_start = 0.2 * t_end;
  constexpr double pi = std::numbers::pi;

  std::vector<double> ts, ln_amps;
  for (std::size_t r = 0; r < h.t.size(); ++r) {
    if (h.t[r] + 1e-12 < t_start) continue;
    double amp = 0.0;
    for (int i = 0; i < g.nx; ++i)
      amp += h.rho[r][static_cast<std::size_t>(i)] * std::cos(pi * g.x[static_cast<std::size_t>(i)] / g.length);
    amp *= 2.0 * g.dx / g.length;
    if (!(amp > 0.0))
      throw std::runtime_error("diffusivity fit: cosine amplitude is not positive over the fit window");
    ts.push_back(h.t[r]);
    ln_amps.push_back(std::log(amp));
  }
  if (ts.size() < 2) throw std::runtime_error("diffusivity fit: fewer than 2 frames in the fit window");

  // Least-squares slope of ln A against t.
  const double n = static_cast<double>(ts.size());
  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    st += ts[i];
    sy += ln_amps[i];
    stt += ts[i] * ts[i];
    sty += ts[i] * ln_amps[i];
  }
  const double slope = (n * sty - st * sy) / (n * stt - st * st);

  DiffusivityFit fit;
  fit.decay_rate = -slope;
  fit.d_est = fit.decay_rate * (g.length / pi) * (g.length / pi);
  fit.frames_used = static_cast<int>(ts.size());
  return fit;
}

KineticChecks check_k_solution(const KineticGrid& g, double eta) {
  if (!(eta > 0.0)) throw std::invalid_argument("check_k_solution: eta must be > 0");
  double su2 = 0.0;
  for (const double u : g.u) su2 += g.w_u * u * u;
  double scc = 0.0, sss = 0.0, scs = 0.0, sc = 0.0, ss = 0.0, su = 0.0;
  for (int j = 0; j < g.ntheta; ++j) {
    const double c = g.cos_theta[static_cast<std::size_t>(j)];
    const double s = g.sin_theta[static_cast<std::size_t>(j)];
    scc += g.w_theta * c * c;
    sss += g.w_theta * s * s;
    scs += g.w_theta * c * s;
    sc += g.w_theta * c;
    ss += g.w_theta * s;
  }
  for (const double u : g.u) su += g.w_u * u;

  KineticChecks out;
  out.d00 = su2 * scc / (kFourPi * eta);
  out.d01 = su2 * scs / (kFourPi * eta);
  out.d10 = out.d01;
  out.d11 = su2 * sss / (kFourPi * eta);
  out.chi00 = out.d00 * scc;
  out.chi11 = out.d11 * sss;

  // k(vhat, u) = -vhat u/(4 pi eta) must satisfy eta (<k>/(4 pi) - k) =
  // vhat u/(4 pi) on the discrete grid; <k> collects the (near-zero) odd
  // moments computed with the quadrature weights.
  const double rho_kx = -(su * sc) / (kFourPi * eta); // sum w_theta w_u k_x, factored
  const double rho_ky = -(su * ss) / (kFourPi * eta);
  double max_res = 0.0;
  for (int j = 0; j < g.ntheta; ++j) {
    for (int l = 0; l < g.nu; ++l) {
      const double u = g.u[static_cast<std::size_t>(l)];
      const double vx = g.cos_theta[static_cast<std::size_t>(j)];
      const double vy = g.sin_theta[static_cast<std::size_t>(j)];
      const double kx = -vx * u / (kFourPi * eta);
      const double ky = -vy * u / (kFourPi * eta);
      const double resx = eta * (rho_kx / kFourPi - kx) - vx * u / kFourPi;
      const double resy = eta * (rho_ky / kFourPi - ky) - vy * u / kFourPi;
      max_res = std::max({max_res, std::abs(resx), std::abs(resy)});
    }
  }
  out.k_residual_max = max_res;
  return out;
}

} // namespace leafpat
