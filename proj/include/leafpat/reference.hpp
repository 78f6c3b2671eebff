// Serial reference implementations of the parallel kernels, kept for
// correctness tests and benchmarks.  The assembly references scatter
// element-by-element (triangle-major) instead of gathering row-by-row, so
// they exercise an independent traversal order.

#pragma once

#include "leafpat/bifurcation.hpp"
#include "leafpat/fem.hpp"
#include "leafpat/kinetic.hpp"

namespace leafpat {

SparseMatrix reference_assemble_mass(const Mesh& m);
SparseMatrix reference_assemble_diffusion(const Mesh& m, const ModelParams& p, const FieldPair& current);
SparseMatrix reference_assemble_reaction(const Mesh& m, const ModelParams& p, const FieldPair& current);

/// Serial grid classification (same output contract as sweep()).
std::vector<RegionMapRow> reference_sweep(const SweepSpec& spec);

/// Serial version of relax_transport_step.
void reference_relax_transport_step(const KineticGrid& g, KineticState& s, double dt);

} // namespace leafpat
