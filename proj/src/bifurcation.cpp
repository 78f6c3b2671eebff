#include "leafpat/bifurcation.hpp"

#include <stdexcept>

#include "leafpat/csv.hpp"

namespace leafpat {

const char* to_string(RegionLabel r) {
  switch (r) {
    case RegionLabel::Infeasible: return "Infeasible";
    case RegionLabel::HomogUnstable: return "HomogUnstable";
    case RegionLabel::None: return "None";
    case RegionLabel::TypeI: return "I";
    case RegionLabel::TypeII: return "II";
    case RegionLabel::TypeIII: return "III";
  }
  return "?";
}

RegionLabel classify_point(const ModelParams& p,
                           std::optional<double> delta12_override,
                           std::optional<double> delta21_override) {
  validate(p);
  StabilityClass sc;
  try {
    sc = homogeneous_stability(p);
  } catch (const std::domain_error&) {
    return RegionLabel::Infeasible;
  }
  if (sc == StabilityClass::NoPositiveEquilibrium) return RegionLabel::Infeasible;
  if (sc != StabilityClass::Stable) return RegionLabel::HomogUnstable;
  LinearizedDiffusion d = linearized_diffusion(p);
  if (delta12_override) d.delta12 = *delta12_override;
  if (delta21_override) d.delta21 = *delta21_override;
  const TuringConditions t = turing_conditions(p, d.delta, d.delta12, d.delta21);
  if (t.cond1 && t.cond2) return RegionLabel::TypeIII;
  if (t.cond1) return RegionLabel::TypeI;
  if (t.cond2) return RegionLabel::TypeII;
  return RegionLabel::None;
}

namespace {

enum class AxisTarget { Zeta, Beta, Nu, Tau, Delta, Delta12Scale, Delta21Scale };

AxisTarget axis_target(const std::string& name) {
  if (name == "zeta") return AxisTarget::Zeta;
  if (name == "beta") return AxisTarget::Beta;
  if (name == "nu") return AxisTarget::Nu;
  if (name == "tau") return AxisTarget::Tau;
  if (name == "delta") return AxisTarget::Delta;
  if (name == "delta12_scale") return AxisTarget::Delta12Scale;
  if (name == "delta21_scale") return AxisTarget::Delta21Scale;
  throw std::invalid_argument("unknown sweep parameter '" + name +
                              "' (expected zeta, beta, nu, tau, delta, delta12_scale, delta21_scale)");
}

void apply_axis(AxisTarget t, double v, ModelParams& p,
                std::optional<double>& o12, std::optional<double>& o21) {
  switch (t) {
    case AxisTarget::Zeta: p.zeta = v; return;
    case AxisTarget::Beta: p.beta = v; return;
    case AxisTarget::Nu: p.nu = v; return;
    case AxisTarget::Tau: p.tau = v; return;
    case AxisTarget::Delta: p.delta = v; return;
    case AxisTarget::Delta12Scale: o12 = v; return;
    case AxisTarget::Delta21Scale: o21 = v; return;
  }
}

// Scalar model parameters must stay positive over the whole axis; the
// cross-ratio overrides may take any sign.  Checked before the parallel
// classification loop so no exception can escape it.
void require_positive_range(AxisTarget t, const SweepAxis& a) {
  const bool scalar = t != AxisTarget::Delta12Scale && t != AxisTarget::Delta21Scale;
  if (scalar && !(a.min > 0.0))
    throw std::invalid_argument("sweep axis '" + a.name + "': values must stay positive");
}

} // namespace

std::vector<double> axis_values(const SweepAxis& a) {
  validate_axis(a);
  std::vector<double> v(static_cast<std::size_t>(a.count));
  if (a.count == 1) {
    v[0] = a.min;
    return v;
  }
  const double h = (a.max - a.min) / static_cast<double>(a.count - 1);
  for (int i = 0; i < a.count; ++i) v[static_cast<std::size_t>(i)] = a.min + static_cast<double>(i) * h;
  return v;
}

void validate_axis(const SweepAxis& a) {
  axis_target(a.name);
  if (a.count < 1) throw std::invalid_argument("sweep axis '" + a.name + "': count must be >= 1");
  if (a.count > 1 && !(a.max > a.min))
    throw std::invalid_argument("sweep axis '" + a.name + "': max must exceed min");
}

std::vector<RegionMapRow> sweep(const SweepSpec& spec) {
  validate(spec.base);
  const AxisTarget t1 = axis_target(spec.axis1.name);
  const AxisTarget t2 = axis_target(spec.axis2.name);
  require_positive_range(t1, spec.axis1);
  require_positive_range(t2, spec.axis2);
  const std::vector<double> v1 = axis_values(spec.axis1);
  const std::vector<double> v2 = axis_values(spec.axis2);
  const std::size_t n1 = v1.size(), n2 = v2.size();
  std::vector<RegionMapRow> rows(n1 * n2);
#pragma omp parallel for schedule(static)
  for (long long idx = 0; idx < static_cast<long long>(n1 * n2); ++idx) {
    const std::size_t i = static_cast<std::size_t>(idx) / n2;
    const std::size_t j = static_cast<std::size_t>(idx) % n2;
    ModelParams p = spec.base;
    std::optional<double> o12, o21;
    apply_axis(t1, v1[i], p, o12, o21);
    apply_axis(t2, v2[j], p, o12, o21);
    rows[static_cast<std::size_t>(idx)] = {v1[i], v2[j], classify_point(p, o12, o21)};
  }
  return rows;
}

std::string region_map_csv(const std::vector<RegionMapRow>& rows) {
  std::string out = "param1,param2,region\n";
  for (const auto& r : rows) {
    out += format_double(r.p1);
    out += ',';
    out += format_double(r.p2);
    out += ',';
    out += to_string(r.label);
    out += '\n';
  }
  return out;
}

std::vector<ThresholdSurfaceRow> threshold_surface(const ModelParams& base,
                                                   const SweepAxis& delta12_axis,
                                                   const SweepAxis& delta21_axis) {
  validate(base);
  if (delta12_axis.name != "delta12_scale" || delta21_axis.name != "delta21_scale")
    throw std::invalid_argument("threshold surface axes must be delta12_scale and delta21_scale");
  if (homogeneous_stability(base) != StabilityClass::Stable)
    throw std::domain_error("threshold surface requires a stable coexistence state");
  const std::vector<double> v1 = axis_values(delta12_axis);
  const std::vector<double> v2 = axis_values(delta21_axis);
  const std::size_t n1 = v1.size(), n2 = v2.size();
  std::vector<ThresholdSurfaceRow> rows(n1 * n2);
#pragma omp parallel for schedule(static)
  for (long long idx = 0; idx < static_cast<long long>(n1 * n2); ++idx) {
    const std::size_t i = static_cast<std::size_t>(idx) / n2;
    const std::size_t j = static_cast<std::size_t>(idx) % n2;
    rows[static_cast<std::size_t>(idx)] = {v1[i], v2[j], delta_threshold(base, v1[i], v2[j])};
  }
  return rows;
}

std::string threshold_surface_csv(const std::vector<ThresholdSurfaceRow>& rows) {
  std::string out = "delta12,delta21,delta_bar\n";
  for (const auto& r : rows) {
    out += format_double(r.delta12);
    out += ',';
    out += format_double(r.delta21);
    out += ',';
    out += format_double(r.delta_bar);
    out += '\n';
  }
  return out;
}

} // namespace leafpat
