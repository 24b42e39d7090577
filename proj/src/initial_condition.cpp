#include "orthocube/initial_condition.hpp"

#include <algorithm>
#include <cmath>

#include "orthocube/errors.hpp"
#include "orthocube/numerics.hpp"

namespace orthocube {

namespace {

double gaussian_axis_sigma(const TruncatedGaussianIc& g, const OrthotropicModel& m, int axis) {
  switch (axis) {
    case 0: return g.sigma_x;
    case 1: return g.sigma_x / std::sqrt(m.dyy2);
    default: return g.sigma_x / std::sqrt(m.dzz2);
  }
}

// Unit-mass truncated normal on [0, L], centered at L/2.
double truncated_normal(double x, double L, double sigma) {
  const double z = (x - 0.5 * L) / sigma;
  const double norm = std::sqrt(2.0 * kPi) * sigma * std::erf(L / (2.0 * std::sqrt(2.0) * sigma));
  return std::exp(-0.5 * z * z) / norm;
}

double truncated_normal_mass(double x0, double x1, double L, double sigma) {
  const double s2 = sigma * std::sqrt(2.0);
  const double lo = std::erf((x0 - 0.5 * L) / s2);
  const double hi = std::erf((x1 - 0.5 * L) / s2);
  return (hi - lo) / (2.0 * std::erf(L / (2.0 * std::sqrt(2.0) * sigma)));
}

double integrate_panels(const std::function<double(double)>& f, double x0, double x1,
                        const std::vector<double>& breaks) {
  std::vector<double> edges{x0, x1};
  for (double b : breaks) {
    if (b > x0 && b < x1) edges.push_back(b);
  }
  std::sort(edges.begin(), edges.end());
  // refine until two consecutive doublings agree
  double prev = 0.0;
  for (int level = 0;; ++level) {
    CompensatedSum acc;
    const int sub = 1 << level;
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
      const double w = (edges[p + 1] - edges[p]) / sub;
      for (int s = 0; s < sub; ++s) {
        acc.add(gl16_panel(f, edges[p] + s * w, edges[p] + (s + 1) * w));
      }
    }
    const double cur = acc.value();
    if (level > 0 && std::abs(cur - prev) <= 1e-13 * std::max(1.0, std::abs(cur))) return cur;
    if (level >= 12) return cur;
    prev = cur;
  }
}

}  // namespace

std::string ic_name(const InitialCondition& ic) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, DeltaIc>) return "delta";
        if constexpr (std::is_same_v<T, StepIc>) return "step";
        if constexpr (std::is_same_v<T, TruncatedGaussianIc>) return "gaussian";
        if constexpr (std::is_same_v<T, PlaneIc>) return "plane";
        if constexpr (std::is_same_v<T, CustomSeparableIc>) return "custom_separable";
        return "custom_general";
      },
      ic);
}

bool ic_is_separable(const InitialCondition& ic) {
  return !std::holds_alternative<PlaneIc>(ic) && !std::holds_alternative<CustomGeneralIc>(ic);
}

bool ic_is_symmetric(const InitialCondition& ic) {
  return std::holds_alternative<DeltaIc>(ic) || std::holds_alternative<StepIc>(ic) ||
         std::holds_alternative<TruncatedGaussianIc>(ic);
}

void validate_ic(const InitialCondition& ic, const OrthotropicModel& model) {
  if (const auto* s = std::get_if<StepIc>(&ic)) {
    if (!(s->a > 0.0) || s->a > model.L) {
      throw BadExtentError("step extent a must satisfy 0 < a <= L");
    }
  } else if (const auto* g = std::get_if<TruncatedGaussianIc>(&ic)) {
    if (!(g->sigma_x > 0.0)) throw Error("gaussian sigma_x must be > 0");
  } else if (const auto* p = std::get_if<PlaneIc>(&ic)) {
    if (p->kappa_y < 0.0 || p->kappa_z < 0.0) throw Error("plane kappas must be >= 0");
    if (!(1.0 + p->kappa_y + p->kappa_z > 0.0)) throw Error("plane normalization degenerate");
  }
}

AxisProfile axis_profile(const InitialCondition& ic, const OrthotropicModel& model, int axis) {
  const double L = model.L;
  if (const auto* s = std::get_if<StepIc>(&ic)) {
    const double a = s->a;
    const double lo = 0.5 * (L - a), hi = 0.5 * (L + a);
    return {[a, lo, hi](double x) { return (x >= lo && x <= hi) ? 1.0 / a : 0.0; }, {lo, hi}};
  }
  if (const auto* g = std::get_if<TruncatedGaussianIc>(&ic)) {
    const double sigma = gaussian_axis_sigma(*g, model, axis);
    std::vector<double> breaks;
    for (double k : {-8.0, -4.0, 0.0, 4.0, 8.0}) {
      const double b = 0.5 * L + k * sigma;
      if (b > 0.0 && b < L) breaks.push_back(b);
    }
    return {[L, sigma](double x) { return truncated_normal(x, L, sigma); }, breaks};
  }
  if (const auto* c = std::get_if<CustomSeparableIc>(&ic)) {
    switch (axis) {
      case 0: return {c->fx, c->breaks_x};
      case 1: return {c->fy, c->breaks_y};
      default: return {c->fz, c->breaks_z};
    }
  }
  throw Error("axis_profile: " + ic_name(ic) + " has no per-axis density");
}

double axis_mass(const InitialCondition& ic, const OrthotropicModel& model, int axis, double x0,
                 double x1) {
  const double L = model.L;
  if (std::holds_alternative<DeltaIc>(ic)) {
    const double c = 0.5 * L;
    if (c > x0 && c < x1) return 1.0;
    if (c == x0 || c == x1) return 0.5;
    return 0.0;
  }
  if (const auto* s = std::get_if<StepIc>(&ic)) {
    const double lo = 0.5 * (L - s->a), hi = 0.5 * (L + s->a);
    const double overlap = std::max(0.0, std::min(x1, hi) - std::max(x0, lo));
    return overlap / s->a;
  }
  if (const auto* g = std::get_if<TruncatedGaussianIc>(&ic)) {
    return truncated_normal_mass(x0, x1, L, gaussian_axis_sigma(*g, model, axis));
  }
  const AxisProfile prof = axis_profile(ic, model, axis);
  return integrate_panels(prof.density, x0, x1, prof.breakpoints);
}

GeneralSampler general_sampler(const InitialCondition& ic, const OrthotropicModel& model) {
  const double L = model.L;
  if (std::holds_alternative<DeltaIc>(ic)) {
    throw Error("general_sampler: delta has no pointwise density; use the surrogate Gaussian");
  }
  if (const auto* p = std::get_if<PlaneIc>(&ic)) {
    const double ky = p->kappa_y, kz = p->kappa_z;
    const double norm = 2.0 / (L * L * L * L * (1.0 + ky + kz));
    return {[norm, ky, kz](double x, double y, double z) { return norm * (x + ky * y + kz * z); },
            {},
            {},
            {}};
  }
  if (const auto* c = std::get_if<CustomGeneralIc>(&ic)) {
    return {c->f, c->breaks_x, c->breaks_y, c->breaks_z};
  }
  const AxisProfile px = axis_profile(ic, model, 0);
  const AxisProfile py = axis_profile(ic, model, 1);
  const AxisProfile pz = axis_profile(ic, model, 2);
  return {[fx = px.density, fy = py.density, fz = pz.density](double x, double y, double z) {
            return fx(x) * fy(y) * fz(z);
          },
          px.breakpoints, py.breakpoints, pz.breakpoints};
}

}  // namespace orthocube
