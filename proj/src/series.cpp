#include "orthocube/series.hpp"

#include <cmath>

#include "orthocube/errors.hpp"
#include "orthocube/numerics.hpp"

namespace orthocube {

Field3 Field3::zeros(const std::array<int, 3>& dims, const std::array<double, 3>& lengths,
                     double time) {
  Field3 f;
  for (int a = 0; a < 3; ++a) {
    if (dims[a] < 2) throw BadGridError("Field3: need at least 2 nodes per axis");
    f.dims[a] = dims[a];
    f.spacing[a] = lengths[a] / (dims[a] - 1);
  }
  f.time = time;
  f.values.assign(static_cast<std::size_t>(dims[0]) * dims[1] * dims[2], 0.0);
  return f;
}

double mode_rate(int l, int m, int n, const OrthotropicModel& model) {
  if (l < 0 || m < 0 || n < 0) throw Error("mode_rate: indices must be >= 0");
  const double shape = static_cast<double>(l) * l + static_cast<double>(m) * m / model.dyy2 +
                       static_cast<double>(n) * n / model.dzz2;
  return shape * kPi * kPi * model.Dxx / (model.L * model.L);
}

SeriesSolution make_series_solution(const OrthotropicModel& model, const InitialCondition& ic,
                                    int N, const QuadratureOptions& quad_opts) {
  validate_ic(ic, model);
  if (N < 0) throw Error("make_series_solution: N must be >= 0");
  if (std::holds_alternative<DeltaIc>(ic)) {
    return {model, ic, N, coefficients_delta(model, N)};
  }
  if (const auto* s = std::get_if<StepIc>(&ic)) {
    return {model, ic, N, coefficients_step(model, s->a, N)};
  }
  if (const auto* g = std::get_if<TruncatedGaussianIc>(&ic)) {
    return {model, ic, N, coefficients_gaussian(model, g->sigma_x, N)};
  }
  if (const auto* p = std::get_if<PlaneIc>(&ic)) {
    return {model, ic, N, coefficients_plane(model, p->kappa_y, p->kappa_z, N)};
  }
  if (std::holds_alternative<CustomSeparableIc>(ic)) {
    return {model, ic, N, separable_coefficients_quadrature(ic, model, N, quad_opts)};
  }
  return {model, ic, N, coefficients_quadrature(ic, model, N, quad_opts).coeffs};
}

DecayedCoefficients decay_coefficients(const SeriesSolution& sol, double t) {
  DecayedCoefficients dc;
  if (sol.separable()) {
    dc.separable = true;
    const auto& c = std::get<SeparableCoefficients>(sol.coeffs);
    const std::array<const std::vector<double>*, 3> src = {&c.B, &c.H, &c.S};
    for (int axis = 0; axis < 3; ++axis) {
      auto& dst = dc.axis[axis];
      dst.resize(sol.N + 1);
      for (int j = 0; j <= sol.N; ++j) {
        const int l = (axis == 0) ? j : 0;
        const int m = (axis == 1) ? j : 0;
        const int n = (axis == 2) ? j : 0;
        dst[j] = (*src[axis])[j] * std::exp(-mode_rate(l, m, n, sol.model) * t);
      }
    }
  } else {
    const auto& g = std::get<GeneralCoefficients>(sol.coeffs);
    dc.entries = g.entries;
    for (auto& e : dc.entries) {
      e.value *= std::exp(-mode_rate(e.l, e.m, e.n, sol.model) * t);
    }
  }
  return dc;
}

double evaluate_decayed(const DecayedCoefficients& dc, const OrthotropicModel& model, double x,
                        double y, double z) {
  const double L = model.L;
  if (dc.separable) {
    const std::array<double, 3> pos = {x, y, z};
    double prod = 1.0;
    for (int axis = 0; axis < 3; ++axis) {
      const auto& b = dc.axis[axis];
      CompensatedSum bracket;
      bracket.add(b[0]);
      for (std::size_t j = 1; j < b.size(); ++j) {
        if (b[j] != 0.0) bracket.add(b[j] * std::cos(j * kPi * pos[axis] / L));
      }
      prod *= bracket.value();  // bracket carries the 1/L factor
    }
    return prod;
  }
  CompensatedSum total;
  for (const auto& e : dc.entries) {
    double term = e.value;
    if (e.l > 0) term *= std::cos(e.l * kPi * x / L);
    if (e.m > 0) term *= std::cos(e.m * kPi * y / L);
    if (e.n > 0) term *= std::cos(e.n * kPi * z / L);
    total.add(term);
  }
  return total.value();
}

namespace {

void check_domain(const SeriesSolution& sol, double x, double y, double z) {
  const double L = sol.model.L;
  if (x < 0.0 || x > L || y < 0.0 || y > L || z < 0.0 || z > L) {
    throw Error("evaluate: point outside the cube");
  }
}

}  // namespace

double evaluate(const SeriesSolution& sol, double x, double y, double z, double t) {
  check_domain(sol, x, y, z);
  if (t < 0.0) throw Error("evaluate: t must be >= 0");
  if (sol.is_delta() && t == 0.0) {
    throw DeltaAtZeroTimeError("evaluate: delta IC at t = 0 is not pointwise evaluable");
  }
  return evaluate_decayed(decay_coefficients(sol, t), sol.model, x, y, z);
}

Field3 evaluate_grid(const SeriesSolution& sol, const std::array<int, 3>& dims, double t) {
  if (t < 0.0) throw Error("evaluate_grid: t must be >= 0");
  if (sol.is_delta() && t == 0.0) {
    throw DeltaAtZeroTimeError("evaluate_grid: delta IC at t = 0 is not pointwise evaluable");
  }
  const double L = sol.model.L;
  Field3 f = Field3::zeros(dims, {L, L, L}, t);
  const DecayedCoefficients dc = decay_coefficients(sol, t);
  for (int k = 0; k < dims[2]; ++k) {
    const double z = node_coord(k, dims[2], L);
    for (int j = 0; j < dims[1]; ++j) {
      const double y = node_coord(j, dims[1], L);
      for (int i = 0; i < dims[0]; ++i) {
        f.at(i, j, k) = evaluate_decayed(dc, sol.model, node_coord(i, dims[0], L), y, z);
      }
    }
  }
  return f;
}

double free_space_point_source(const OrthotropicModel& model, double x, double y, double z,
                               double t) {
  if (!(t > 0.0)) throw NonPositiveTimeError("free_space_point_source: t must be > 0");
  const double dyy = std::sqrt(model.dyy2);
  const double dzz = std::sqrt(model.dzz2);
  const double root = 2.0 * std::sqrt(kPi * model.Dxx * t);
  const double denom4 = 4.0 * model.Dxx * t;
  return (1.0 / root) * (dyy / root) * (dzz / root) *
         std::exp(-x * x / denom4 - y * y * model.dyy2 / denom4 - z * z * model.dzz2 / denom4);
}

}  // namespace orthocube
