#pragma once

#include <optional>
#include <vector>

#include "orthocube/field.hpp"
#include "orthocube/tensor.hpp"

namespace orthocube {

/// Solutions of one observable on fine (1), medium (2) and coarse (3) grids,
/// co-located point by point (fields interpolated to the coarse grid first;
/// scalar histories line up by time index).
struct GridTriple {
  std::vector<double> phi1, phi2, phi3;
  double r21 = 2.0;  // Delta2 / Delta1
  double r32 = 2.0;  // Delta3 / Delta2
};

struct GciPointReport {
  int index = 0;
  double eps21 = 0.0;  // phi2 - phi1
  double eps32 = 0.0;  // phi3 - phi2
  int s = 0;           // sign(eps32 * eps21); 0 when degenerate
  double p_local = 0.0;
  double gci = 0.0;        // relative fine-grid GCI (uses the global P)
  double mu2 = 0.0;        // percent of M_infinity, when supplied
  bool oscillatory = false;  // eps signs differ (s = -1)
  bool excluded = false;     // left out of the global-order average
};

struct GciReport {
  double r21 = 0.0, r32 = 0.0;
  double p_global = 0.0;
  double excluded_fraction = 0.0;
  std::vector<GciPointReport> points;
  double gci_max = 0.0;
  double mu2_max = 0.0;
};

/// Observed order of accuracy from the two-ratio fixed point
///   P = 1/ln(r21) * | ln|eps32/eps21| + ln((r21^P - s)/(r32^P - s)) |,
/// s = sign(eps32 * eps21). Initial guess ln|eps32/eps21|/ln(r21), tolerance
/// 1e-10, 200 iterations, 0.5 damping when iterates oscillate. Throws
/// NoConvergenceError when the iteration stalls or leaves the valid domain;
/// preconditions (nonzero eps, ratios > 1) throw Error.
double observed_order(double eps32, double eps21, double r21, double r32);

/// observed_order that reports failure instead of throwing.
std::optional<double> try_observed_order(double eps32, double eps21, double r21, double r32);

/// Fine-grid convergence index GCI = 1.25 e_a / (r21^P - 1) with the
/// relative difference e_a = |(phi1 - phi2)/phi1|. Throws ZeroFineValueError
/// when phi1 = 0.
double gci_fine(double phi1, double phi2, double r21, double P);

/// Pointwise order where defined, averaged into a global P, then local GCI
/// everywhere computable. Points with a vanishing eps or a failed/out-of-range
/// order solve are excluded from the average and flagged. m_infinity, when
/// given, fills the mu2 percentages. Throws AllPointsDegenerateError when no
/// point yields an order.
GciReport local_gci_field(const GridTriple& triple, std::optional<double> m_infinity = {});

/// mu2 = 100 * gci_value / (L^2/12); gci_value carries the observable's units
/// (an absolute uncertainty, i.e. relative GCI times |phi1|).
double mu2_percent(double gci_value, const OrthotropicModel& model);

/// Trilinear restriction of fine and medium node fields onto the coarse
/// nodes; refinement ratios from the spacings.
GridTriple restrict_to_coarse(const Field3& fine, const Field3& medium, const Field3& coarse);

}  // namespace orthocube
