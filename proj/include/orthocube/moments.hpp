#pragma once

#include <string>

#include "orthocube/field.hpp"
#include "orthocube/series.hpp"
#include "orthocube/tensor.hpp"

namespace orthocube {

/// Zeroth, first and centered second moments at one time instant. First and
/// second moments are mass-normalized; second moments are centered on the
/// computed first moments. Off-diagonal entries are only filled by the
/// numeric path (symmetry diagnostics); no analytic series is provided for
/// them.
struct MomentSet {
  double t = 0.0;
  double m0 = 0.0;                          // ug
  double mx = 0.0, my = 0.0, mz = 0.0;      // m
  double Mxx = 0.0, Myy = 0.0, Mzz = 0.0;   // m^2
  double Mxy = 0.0, Mxz = 0.0, Myz = 0.0;   // m^2, numeric only
  std::string method;                       // which quadrature/series produced this
};

struct NormalizedMoments {
  double t_star = 0.0;
  double mx_star = 0.0, my_star = 0.0, mz_star = 0.0;       // m_i / L
  double Mxx_star = 0.0, Myy_star = 0.0, Mzz_star = 0.0;    // M_ii / (L^2/12)
};

/// Exact moment series for the solution's coefficient set. Below
/// t = 1e-6 * Tx* the slowly converging series are replaced by the closed
/// initial-condition integrals (exact at t = 0); the method string records
/// which branch ran. Delta is allowed at t = 0 (zero variance).
MomentSet moments_analytic(const SeriesSolution& sol, double t);

/// Composite Simpson (odd node counts) or trapezoid (even) moments of a
/// sampled field. Throws GridTooCoarseError below 3 nodes per axis.
MomentSet moments_numeric(const Field3& field);

NormalizedMoments normalize(const MomentSet& ms, const OrthotropicModel& model);

/// Steady-state concentration 1/L^3 (unit mass).
inline double c_infinity(const OrthotropicModel& m) { return 1.0 / (m.L * m.L * m.L); }

/// Steady-state centered second moment L^2/12.
inline double m_infinity(const OrthotropicModel& m) { return m.L * m.L / 12.0; }

}  // namespace orthocube
