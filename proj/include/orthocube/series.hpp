#pragma once

#include <array>
#include <variant>

#include "orthocube/coefficients.hpp"
#include "orthocube/field.hpp"
#include "orthocube/initial_condition.hpp"
#include "orthocube/tensor.hpp"

namespace orthocube {

/// A truncated triple-cosine solution: model + IC + coefficient set.
/// Immutable after construction and safe to share across threads.
struct SeriesSolution {
  OrthotropicModel model;
  InitialCondition ic;
  int N;
  std::variant<SeparableCoefficients, GeneralCoefficients> coeffs;

  bool is_delta() const { return std::holds_alternative<DeltaIc>(ic); }
  bool separable() const { return std::holds_alternative<SeparableCoefficients>(coeffs); }
};

/// Closed-form coefficients for the four built-in cases; quadrature
/// coefficients for the custom samplers.
SeriesSolution make_series_solution(const OrthotropicModel& model, const InitialCondition& ic,
                                    int N, const QuadratureOptions& quad_opts = {});

/// Decay rate of mode (l,m,n): (l^2 + m^2/d2yy + n^2/d2zz) pi^2 Dxx / L^2.
double mode_rate(int l, int m, int n, const OrthotropicModel& model);

/// Coefficients with the time factor exp(-rate t) applied. evaluate() and
/// evaluate_grid() both run through this one representation, which is what
/// makes grid values bit-identical to pointwise calls.
struct DecayedCoefficients {
  bool separable = false;
  std::array<std::vector<double>, 3> axis;         // separable brackets
  std::vector<GeneralCoefficients::Entry> entries; // general triple sum
};
DecayedCoefficients decay_coefficients(const SeriesSolution& sol, double t);
double evaluate_decayed(const DecayedCoefficients& dc, const OrthotropicModel& model, double x,
                        double y, double z);

/// Concentration at a point, ug/m^3. Throws DeltaAtZeroTimeError for the
/// delta IC at t = 0 (the field series does not converge pointwise there).
double evaluate(const SeriesSolution& sol, double x, double y, double z, double t);

/// Node-centered samples on a dims[0] x dims[1] x dims[2] grid spanning the
/// cube.
Field3 evaluate_grid(const SeriesSolution& sol, const std::array<int, 3>& dims, double t);

/// Instantaneous unit point source in unbounded space; coordinates are
/// relative to the source. Throws NonPositiveTimeError for t <= 0.
double free_space_point_source(const OrthotropicModel& model, double x, double y, double z,
                               double t);

}  // namespace orthocube
