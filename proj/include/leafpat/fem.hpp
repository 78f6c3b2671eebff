// P1 finite-element assembly on the crisscross mesh for the coupled
// two-species system.  The weak form tests the divergence-form fluxes
// against c_i(n) phi_i, so the zero-total-flux boundary condition is natural
// and no boundary rows are modified:
//
//   diffusion block rows (species 1):
//     K11_ij =  D1 \int c1 grad(phi_j) . grad(c1 phi_i)
//     K12_ij = -D1 \int lam1 n1 grad(phi_j) . grad(c1 phi_i)
//   (species 2 symmetric with D2, lam2, n2, c2), with the coefficient
//   fields c_i, lam_i, n_i evaluated at the nodes of the current iterate and
//   P1-interpolated.
//
//   reaction blocks: F1_ij = \int f1(n) phi_j phi_i (block-diagonal), with
//     f1 = zeta n1 n2/(n1+beta n2) - n2,
//     f2 = zeta beta n1 n2/(n1+beta n2) - tau - nu n2,
//   nodal values P1-interpolated (f1 extended by 0 at the origin).
//
// Element integrals use the 3-point edge-midpoint rule (exact through
// quadratic integrands; for the cubic products above it is the committed
// quadrature choice).  Assembly is row-gather: each matrix row is summed by
// one thread over that node's incident triangles in fixed order, so results
// are identical for any thread count.

#pragma once

#include "leafpat/mesh.hpp"
#include "leafpat/model.hpp"
#include "leafpat/sparse.hpp"

#include <vector>

namespace leafpat {

struct FieldPair {
  std::vector<double> n1, n2;
};

/// P1 mass matrix (exact closed form: A/6 diagonal, A/12 off-diagonal per
/// element) on the scalar pattern.
SparseMatrix assemble_mass(const Mesh& m);

/// Block-diagonal mass on the coupled 2N pattern (both species).
SparseMatrix assemble_mass_system(const Mesh& m);

/// Coupled diffusion/cross-diffusion matrix (2N x 2N) evaluated at the
/// current iterate.  Throws std::domain_error when a non-constant
/// coefficient is evaluated at non-positive densities.
SparseMatrix assemble_diffusion(const Mesh& m, const ModelParams& p, const FieldPair& current);

/// Block-diagonal reaction mass matrix (2N x 2N) with density-dependent
/// nodal weights f1, f2 of the current iterate.
SparseMatrix assemble_reaction(const Mesh& m, const ModelParams& p, const FieldPair& current);

/// \int_domain field dx = 1^T M a.
double integrate_field(const Mesh& m, const SparseMatrix& mass, const std::vector<double>& a);

/// Nodal reaction weights (f1, f2) used by assemble_reaction; exposed for
/// tests.  Throws std::domain_error when n1 + beta n2 <= 0 away from the
/// origin.
std::pair<double, double> reaction_weights(const ModelParams& p, double n1, double n2);

} // namespace leafpat
