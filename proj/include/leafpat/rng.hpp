// Counter-based deterministic random number generation.
//
// Initial perturbations must be reproducible bit-for-bit from (seed, counter)
// alone, independent of evaluation order, thread count, and platform libm.
// To that end the Gaussian path avoids std::log and std::cos entirely and
// uses its own correctly-reduced ln / cos(2*pi*x) / sin(2*pi*x) evaluations
// built from IEEE-754 arithmetic and sqrt only.

#pragma once

#include <cstdint>
#include <utility>

namespace leafpat {

/// SplitMix64 output function: maps a 64-bit state to a well-mixed 64-bit
/// value.  Stateless; the k-th draw of a stream is mix64(seed + (k+1)*GAMMA).
std::uint64_t mix64(std::uint64_t z) noexcept;

/// k-th raw 64-bit draw of the stream identified by `seed`.
std::uint64_t counter_bits(std::uint64_t seed, std::uint64_t counter) noexcept;

/// k-th uniform draw in the half-open interval (0, 1]; never returns 0, so it
/// is safe to pass through ln().
double counter_uniform(std::uint64_t seed, std::uint64_t counter) noexcept;

/// Natural logarithm, deterministic across platforms (frexp range reduction
/// to [sqrt(1/2), sqrt(2)) followed by an atanh series; accurate to ~1 ulp
/// over the (0, 1] inputs the Gaussian path produces).  x must be > 0.
double det_ln(double x) noexcept;

/// cos(2*pi*x) and sin(2*pi*x) for x in [0, 1), via exact quadrant reduction
/// of 4*x and a Taylor kernel on [0, pi/2].
double det_cos2pi(double x) noexcept;
double det_sin2pi(double x) noexcept;

/// k-th standard-normal draw of the stream identified by `seed`:
/// Box-Muller on the uniforms at counters (2k, 2k+1),
///   z = sqrt(-2 ln u1) * cos(2 pi u2).
/// The sine partner is deliberately unused so draw k never depends on any
/// other counter.
double counter_gaussian(std::uint64_t seed, std::uint64_t counter) noexcept;

} // namespace leafpat
