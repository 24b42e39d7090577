#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "orthocube/tensor.hpp"

namespace orthocube {

/// Point mass at the cube center (Case 1). Total mass 1.
struct DeltaIc {};

/// Uniform block of side a centered in the cube, height 1/a^3 so the block
/// integrates to unit mass and the printed coefficient formulas hold (Case 2).
struct StepIc {
  double a;
};

/// Truncated Gaussian centered in the cube with per-axis widths
/// sigma_x, sigma_x/d_yy, sigma_x/d_zz, renormalized to unit mass (Case 3).
struct TruncatedGaussianIc {
  double sigma_x;
};

/// Tilted plane 2 (x + ky*y + kz*z) / (L^4 (1 + ky + kz)) (Case 4).
struct PlaneIc {
  double kappa_y;
  double kappa_z;
};

/// Product of three user 1-D densities, each of unit mass on [0, L].
/// Breakpoints mark discontinuities or sharp features for the quadrature.
struct CustomSeparableIc {
  std::function<double(double)> fx, fy, fz;
  std::vector<double> breaks_x, breaks_y, breaks_z;
};

/// Arbitrary bounded unit-mass 3-D density on the cube.
struct CustomGeneralIc {
  std::function<double(double, double, double)> f;
  std::vector<double> breaks_x, breaks_y, breaks_z;
};

using InitialCondition = std::variant<DeltaIc, StepIc, TruncatedGaussianIc, PlaneIc,
                                      CustomSeparableIc, CustomGeneralIc>;

std::string ic_name(const InitialCondition& ic);

/// Delta, Step, Gaussian and CustomSeparable factor into per-axis profiles.
bool ic_is_separable(const InitialCondition& ic);

/// Symmetric about the cube center along every axis (Cases 1-3).
bool ic_is_symmetric(const InitialCondition& ic);

/// Parameter checks: Step needs 0 < a <= L (BadExtent), Gaussian sigma_x > 0,
/// Plane kappas >= 0.
void validate_ic(const InitialCondition& ic, const OrthotropicModel& model);

/// Width of the narrow-Gaussian surrogate that stands in for the delta inside
/// numerical integration.
inline double delta_surrogate_sigma(const OrthotropicModel& model) { return 1e-4 * model.L; }

/// One axis of a separable IC: unit-mass density plus its breakpoints.
/// Delta has no pointwise density; callers that need one substitute the
/// surrogate Gaussian explicitly. axis is 0, 1 or 2.
struct AxisProfile {
  std::function<double(double)> density;
  std::vector<double> breakpoints;  // interior points in (0, L)
};
AxisProfile axis_profile(const InitialCondition& ic, const OrthotropicModel& model, int axis);

/// Exact mass of the axis profile inside [x0, x1] (closed form for built-ins,
/// panel quadrature for custom). For Delta this is the point-mass indicator:
/// 1 inside, 1/2 when the center sits on an interval endpoint, else 0 --
/// which is what makes cell deposition symmetric on even grids.
double axis_mass(const InitialCondition& ic, const OrthotropicModel& model, int axis, double x0,
                 double x1);

/// Full 3-D density for the general quadrature path. Works for every variant
/// except Delta (use the surrogate).
struct GeneralSampler {
  std::function<double(double, double, double)> f;
  std::vector<double> breaks_x, breaks_y, breaks_z;
};
GeneralSampler general_sampler(const InitialCondition& ic, const OrthotropicModel& model);

}  // namespace orthocube
