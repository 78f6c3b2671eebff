// Benchmark comparing the parallel kernels against their serial reference
// implementations.  Each section verifies agreement first (the comparison is
// meaningless if the outputs differ), then reports wall time per call and
// the speedup.
//
//   ./leafpat_bench            default sizes
//   ./leafpat_bench --quick    smaller sizes for smoke runs

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "leafpat/bifurcation.hpp"
#include "leafpat/fem.hpp"
#include "leafpat/kinetic.hpp"
#include "leafpat/mesh.hpp"
#include "leafpat/model.hpp"
#include "leafpat/reference.hpp"
#include "leafpat/sparse.hpp"
#include "leafpat/timestepper.hpp"

namespace {

using namespace leafpat;

/// Best-of-`reps` wall time of one call, in seconds (one untimed warmup).
double time_best(int reps, const std::function<void()>& fn) {
  fn();
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

void report(const char* name, double serial, double parallel, double max_diff) {
  std::printf("%-34s serial %10.4f ms   parallel %10.4f ms   speedup %5.2fx   max|diff| %.3g\n",
              name, serial * 1e3, parallel * 1e3, serial / parallel, max_diff);
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

ModelParams bench_params() {
  ModelParams p;
  p.lam1 = CoeffSpec::turning_law(0.25, 2.0 / 3.0);
  p.lam2 = CoeffSpec::turning_law(0.25, 2.0 / 3.0);
  p.c1 = CoeffSpec::speed_law(1.0, 0.5, 2.0 / 3.0);
  p.c2 = CoeffSpec::speed_law(1.0, 0.5, 2.0 / 3.0);
  return p;
}

void bench_assembly(int nx, int reps) {
  const Mesh mesh = build_mesh(nx, nx, 3.14159265358979323846, 3.14159265358979323846);
  const ModelParams p = bench_params();
  SolverConfig cfg;
  const FieldPair state = initial_condition(mesh, p, cfg);

  const SparseMatrix a = assemble_diffusion(mesh, p, state);
  const SparseMatrix b = reference_assemble_diffusion(mesh, p, state);
  const double diff = max_abs_diff(a.val, b.val);

  const double ts = time_best(reps, [&] { (void)reference_assemble_diffusion(mesh, p, state); });
  const double tp = time_best(reps, [&] { (void)assemble_diffusion(mesh, p, state); });
  char name[64];
  std::snprintf(name, sizeof(name), "assemble_diffusion %dx%d", nx, nx);
  report(name, ts, tp, diff);
}

void bench_spmv(int nx, int reps) {
  const Mesh mesh = build_mesh(nx, nx, 3.14159265358979323846, 3.14159265358979323846);
  const ModelParams p = bench_params();
  SolverConfig cfg;
  const FieldPair state = initial_condition(mesh, p, cfg);
  const SparseMatrix a = assemble_diffusion(mesh, p, state);

  const std::size_t n = static_cast<std::size_t>(a.ncols);
  std::vector<double> x(n), ys(n), yp(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = std::sin(0.01 * static_cast<double>(i)) + 1.5;

  spmv_serial(a, x.data(), ys.data());
  spmv(a, x.data(), yp.data());
  const double diff = max_abs_diff(ys, yp);

  const int inner = 50; // single spmv is too fast to time alone
  const double ts = time_best(reps, [&] {
    for (int k = 0; k < inner; ++k) spmv_serial(a, x.data(), ys.data());
  });
  const double tp = time_best(reps, [&] {
    for (int k = 0; k < inner; ++k) spmv(a, x.data(), yp.data());
  });
  char name[64];
  std::snprintf(name, sizeof(name), "spmv x%d %dx%d", inner, nx, nx);
  report(name, ts, tp, diff);
}

void bench_kinetic(int nx, int reps) {
  const KineticGrid grid = build_kinetic_grid(1.0, nx, 16, 16);
  std::vector<double> rho0(static_cast<std::size_t>(nx));
  for (int i = 0; i < nx; ++i)
    rho0[static_cast<std::size_t>(i)] =
        1.0 + 0.5 * std::cos(3.14159265358979323846 * grid.x[static_cast<std::size_t>(i)]);
  const KineticState base = kinetic_state_from_density(grid, rho0, 0.05, 1.0, 1.0);
  const double dt = 0.9 * kinetic_cfl_dt(grid, base);

  KineticState sa = base, sb = base;
  const int inner = 10;
  for (int k = 0; k < inner; ++k) relax_transport_step(grid, sa, dt);
  for (int k = 0; k < inner; ++k) reference_relax_transport_step(grid, sb, dt);
  const double diff = max_abs_diff(sa.f, sb.f);

  const double ts = time_best(reps, [&] {
    KineticState s = base;
    for (int k = 0; k < inner; ++k) reference_relax_transport_step(grid, s, dt);
  });
  const double tp = time_best(reps, [&] {
    KineticState s = base;
    for (int k = 0; k < inner; ++k) relax_transport_step(grid, s, dt);
  });
  char name[64];
  std::snprintf(name, sizeof(name), "transport step x%d nx=%d", inner, nx);
  report(name, ts, tp, diff);
}

void bench_sweep(int count, int reps) {
  SweepSpec spec;
  spec.base = bench_params();
  spec.axis1 = {"zeta", 1.5, 5.0, count};
  spec.axis2 = {"delta", 0.5, 5.0, count};

  const auto a = sweep(spec);
  const auto b = reference_sweep(spec);
  double diff = 0.0; // label mismatches
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].label != b[i].label) diff += 1.0;

  const double ts = time_best(reps, [&] { (void)reference_sweep(spec); });
  const double tp = time_best(reps, [&] { (void)sweep(spec); });
  char name[64];
  std::snprintf(name, sizeof(name), "region sweep %dx%d", count, count);
  report(name, ts, tp, diff);
}

} // namespace

int main(int argc, char** argv) {
  bool quick = false;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--quick") == 0) quick = true;

#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP: not enabled\n");
#endif

  const int reps = quick ? 3 : 7;
  bench_assembly(40, reps);
  bench_assembly(quick ? 60 : 80, reps);
  bench_spmv(quick ? 60 : 80, reps);
  bench_kinetic(quick ? 400 : 1600, reps);
  bench_sweep(quick ? 30 : 50, reps);
  return 0;
}
