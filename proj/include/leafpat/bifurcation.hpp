// Parameter-plane classification: sweep two parameters over a grid and label
// each point by feasibility, homogeneous stability, and which of the two
// diffusion-driven instability conditions hold.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "leafpat/model.hpp"
#include "leafpat/stability.hpp"

namespace leafpat {

enum class RegionLabel {
  Infeasible,    ///< no positive coexistence state
  HomogUnstable, ///< coexistence state unstable (or on the oscillatory boundary) without diffusion
  None,          ///< stable and neither instability condition holds
  TypeI,         ///< only condition 1 (s1 < 0)
  TypeII,        ///< only condition 2 (s2 > 0)
  TypeIII,       ///< both conditions: pattern-forming regime
};

/// CSV labels: "Infeasible", "HomogUnstable", "None", "I", "II", "III".
const char* to_string(RegionLabel r);

/// Classify one parameter point.  The optional arguments replace the
/// cross-diffusion ratios delta12, delta21 of the linearized diffusion
/// matrix (leaving its delta untouched) before the conditions are evaluated.
/// Throws std::invalid_argument for invalid parameters.
RegionLabel classify_point(const ModelParams& p,
                           std::optional<double> delta12_override = std::nullopt,
                           std::optional<double> delta21_override = std::nullopt);

/// One sweep axis: a closed set of parameter names is supported —
/// "zeta", "beta", "nu", "tau", "delta" set the corresponding scalar;
/// "delta12_scale" / "delta21_scale" override the cross-diffusion ratios.
struct SweepAxis {
  std::string name;
  double min = 0.0;
  double max = 1.0;
  int count = 2;
};

/// Grid values of an axis: count >= 1; a single-point axis stays at min.
std::vector<double> axis_values(const SweepAxis& a);

/// Throws std::invalid_argument when the axis name is not in the closed set
/// or the range is malformed.
void validate_axis(const SweepAxis& a);

struct SweepSpec {
  ModelParams base;
  SweepAxis axis1, axis2;
};

struct RegionMapRow {
  double p1, p2;
  RegionLabel label;
};

/// Classify every grid point, row-major with axis1 outermost.
std::vector<RegionMapRow> sweep(const SweepSpec& spec);

/// CSV with header "param1,param2,region".
std::string region_map_csv(const std::vector<RegionMapRow>& rows);

struct ThresholdSurfaceRow {
  double delta12, delta21, delta_bar;
};

/// Diffusivity-ratio threshold over a grid of cross-diffusion ratios,
/// row-major with the delta12 axis outermost.  Requires a stable coexistence
/// state for the base parameters.
std::vector<ThresholdSurfaceRow> threshold_surface(const ModelParams& base,
                                                   const SweepAxis& delta12_axis,
                                                   const SweepAxis& delta21_axis);

/// CSV with header "delta12,delta21,delta_bar".
std::string threshold_surface_csv(const std::vector<ThresholdSurfaceRow>& rows);

} // namespace leafpat
