#include "orthocube/moments.hpp"

#include <cmath>

#include "orthocube/errors.hpp"
#include "orthocube/numerics.hpp"

namespace orthocube {

namespace {

// Int_0^L x cos(l pi x / L) dx
double x_cos_integral(int l, double L) {
  if (l == 0) return L * L / 2.0;
  return L * L * (minus_one_pow(l) - 1.0) / (static_cast<double>(l) * l * kPi * kPi);
}

// Int_0^L x^2 cos(l pi x / L) dx
double x2_cos_integral(int l, double L) {
  if (l == 0) return L * L * L / 3.0;
  return 2.0 * L * L * L * minus_one_pow(l) / (static_cast<double>(l) * l * kPi * kPi);
}

struct AxisMoments {
  double mass;    // Int f
  double first;   // Int x f / mass
  double second;  // Int x^2 f / mass  (about 0, not centered)
};

// Moment series for one axis of a separable solution.
AxisMoments axis_moments_series(const std::vector<double>& coef, int axis,
                                const OrthotropicModel& model, double t) {
  const double L = model.L;
  CompensatedSum first, second;
  first.add(coef[0] * x_cos_integral(0, L));
  second.add(coef[0] * x2_cos_integral(0, L));
  for (std::size_t j = 1; j < coef.size(); ++j) {
    if (coef[j] == 0.0) continue;
    const int jj = static_cast<int>(j);
    const double decay = std::exp(
        -mode_rate(axis == 0 ? jj : 0, axis == 1 ? jj : 0, axis == 2 ? jj : 0, model) * t);
    first.add(coef[j] * decay * x_cos_integral(jj, L));
    second.add(coef[j] * decay * x2_cos_integral(jj, L));
  }
  const double mass = coef[0] * L;
  return {mass, first.value() / mass, second.value() / mass};
}

MomentSet analytic_separable(const SeriesSolution& sol, double t) {
  const auto& c = std::get<SeparableCoefficients>(sol.coeffs);
  const AxisMoments ax = axis_moments_series(c.B, 0, sol.model, t);
  const AxisMoments ay = axis_moments_series(c.H, 1, sol.model, t);
  const AxisMoments az = axis_moments_series(c.S, 2, sol.model, t);
  MomentSet ms;
  ms.t = t;
  ms.m0 = ax.mass * ay.mass * az.mass;
  ms.mx = ax.first;
  ms.my = ay.first;
  ms.mz = az.first;
  ms.Mxx = ax.second - ax.first * ax.first;
  ms.Myy = ay.second - ay.first * ay.first;
  ms.Mzz = az.second - az.first * az.first;
  ms.method = "series";
  return ms;
}

MomentSet analytic_general(const SeriesSolution& sol, double t) {
  const auto& g = std::get<GeneralCoefficients>(sol.coeffs);
  const double L = sol.model.L;
  const double b000 = g.at(0, 0, 0);
  const double mass = b000 * L * L * L;
  // only single-axis modes contribute to first/second moments
  CompensatedSum fx, fy, fz, sx, sy, sz;
  fx.add(b000 * x_cos_integral(0, L) * L * L);
  fy.add(b000 * x_cos_integral(0, L) * L * L);
  fz.add(b000 * x_cos_integral(0, L) * L * L);
  sx.add(b000 * x2_cos_integral(0, L) * L * L);
  sy.add(b000 * x2_cos_integral(0, L) * L * L);
  sz.add(b000 * x2_cos_integral(0, L) * L * L);
  for (const auto& e : g.entries) {
    const int nonzero = (e.l > 0) + (e.m > 0) + (e.n > 0);
    if (nonzero != 1) continue;
    const double decay = std::exp(-mode_rate(e.l, e.m, e.n, sol.model) * t) * e.value * L * L;
    if (e.l > 0) {
      fx.add(decay * x_cos_integral(e.l, L));
      sx.add(decay * x2_cos_integral(e.l, L));
    } else if (e.m > 0) {
      fy.add(decay * x_cos_integral(e.m, L));
      sy.add(decay * x2_cos_integral(e.m, L));
    } else {
      fz.add(decay * x_cos_integral(e.n, L));
      sz.add(decay * x2_cos_integral(e.n, L));
    }
  }
  MomentSet ms;
  ms.t = t;
  ms.m0 = mass;
  ms.mx = fx.value() / mass;
  ms.my = fy.value() / mass;
  ms.mz = fz.value() / mass;
  ms.Mxx = sx.value() / mass - ms.mx * ms.mx;
  ms.Myy = sy.value() / mass - ms.my * ms.my;
  ms.Mzz = sz.value() / mass - ms.mz * ms.mz;
  ms.method = "series";
  return ms;
}

double truncated_gaussian_variance(double L, double sigma) {
  const double denom = std::sqrt(2.0 * kPi) * std::erf(L / (2.0 * std::sqrt(2.0) * sigma));
  return sigma * sigma * (1.0 - (L / sigma) * std::exp(-L * L / (8.0 * sigma * sigma)) / denom);
}

struct Quad1dMoments {
  double mass, first, second;
};

Quad1dMoments axis_moments_quadrature(const AxisProfile& prof, double L) {
  std::vector<double> edges{0.0, L};
  for (double b : prof.breakpoints) {
    if (b > 0.0 && b < L) edges.push_back(b);
  }
  std::sort(edges.begin(), edges.end());
  double prev[3] = {0, 0, 0};
  for (int level = 0; level <= 14; ++level) {
    CompensatedSum acc[3];
    const int sub = 1 << level;
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
      const double w = (edges[p + 1] - edges[p]) / sub;
      for (int s = 0; s < sub; ++s) {
        const double a = edges[p] + s * w;
        acc[0].add(gl16_panel(prof.density, a, a + w));
        acc[1].add(gl16_panel([&](double x) { return x * prof.density(x); }, a, a + w));
        acc[2].add(gl16_panel([&](double x) { return x * x * prof.density(x); }, a, a + w));
      }
    }
    const double cur[3] = {acc[0].value(), acc[1].value(), acc[2].value()};
    if (level > 0) {
      double change = 0.0;
      for (int i = 0; i < 3; ++i) change = std::max(change, std::abs(cur[i] - prev[i]));
      if (change <= 1e-13 * std::max({1.0, std::abs(cur[0]), std::abs(cur[1]), std::abs(cur[2])})) {
        return {cur[0], cur[1] / cur[0], cur[2] / cur[0]};
      }
    }
    prev[0] = cur[0];
    prev[1] = cur[1];
    prev[2] = cur[2];
  }
  return {prev[0], prev[1] / prev[0], prev[2] / prev[0]};
}

// Exact initial-condition moments, used below the series switch time.
MomentSet ic_moments(const SeriesSolution& sol) {
  const OrthotropicModel& model = sol.model;
  const double L = model.L;
  MomentSet ms;
  ms.t = 0.0;
  ms.m0 = 1.0;
  ms.method = "ic-integral";
  if (std::holds_alternative<DeltaIc>(sol.ic)) {
    ms.mx = ms.my = ms.mz = L / 2.0;
    return ms;
  }
  if (const auto* s = std::get_if<StepIc>(&sol.ic)) {
    ms.mx = ms.my = ms.mz = L / 2.0;
    ms.Mxx = ms.Myy = ms.Mzz = s->a * s->a / 12.0;
    return ms;
  }
  if (const auto* g = std::get_if<TruncatedGaussianIc>(&sol.ic)) {
    ms.mx = ms.my = ms.mz = L / 2.0;
    ms.Mxx = truncated_gaussian_variance(L, g->sigma_x);
    ms.Myy = truncated_gaussian_variance(L, g->sigma_x / std::sqrt(model.dyy2));
    ms.Mzz = truncated_gaussian_variance(L, g->sigma_x / std::sqrt(model.dzz2));
    return ms;
  }
  if (const auto* p = std::get_if<PlaneIc>(&sol.ic)) {
    const double ky = p->kappa_y, kz = p->kappa_z;
    const double K = 1.0 + ky + kz;
    ms.mx = 2.0 * L / K * (1.0 / 3.0 + (ky + kz) / 4.0);
    ms.my = 2.0 * L / K * (0.25 + ky / 3.0 + kz / 4.0);
    ms.mz = 2.0 * L / K * (0.25 + ky / 4.0 + kz / 3.0);
    const double x2 = 2.0 * L * L / K * (0.25 + (ky + kz) / 6.0);
    const double y2 = 2.0 * L * L / K * (1.0 / 6.0 + ky / 4.0 + kz / 6.0);
    const double z2 = 2.0 * L * L / K * (1.0 / 6.0 + ky / 6.0 + kz / 4.0);
    ms.Mxx = x2 - ms.mx * ms.mx;
    ms.Myy = y2 - ms.my * ms.my;
    ms.Mzz = z2 - ms.mz * ms.mz;
    return ms;
  }
  if (std::holds_alternative<CustomSeparableIc>(sol.ic)) {
    const Quad1dMoments qx = axis_moments_quadrature(axis_profile(sol.ic, model, 0), L);
    const Quad1dMoments qy = axis_moments_quadrature(axis_profile(sol.ic, model, 1), L);
    const Quad1dMoments qz = axis_moments_quadrature(axis_profile(sol.ic, model, 2), L);
    ms.m0 = qx.mass * qy.mass * qz.mass;
    ms.mx = qx.first;
    ms.my = qy.first;
    ms.mz = qz.first;
    ms.Mxx = qx.second - qx.first * qx.first;
    ms.Myy = qy.second - qy.first * qy.first;
    ms.Mzz = qz.second - qz.first * qz.first;
    return ms;
  }
  // custom general: moments of the sampler by tensor panel quadrature,
  // refined by global doubling until the seven integrals settle
  const GeneralSampler s = general_sampler(sol.ic, model);
  const auto edges = [&](const std::vector<double>& breaks) {
    std::vector<double> e{0.0, L};
    for (double b : breaks) {
      if (b > 0.0 && b < L) e.push_back(b);
    }
    std::sort(e.begin(), e.end());
    return e;
  };
  const std::vector<double> ex = edges(s.breaks_x), ey = edges(s.breaks_y),
                            ez = edges(s.breaks_z);
  const auto& rule = GaussLegendre16::get();
  auto level_nodes = [&](const std::vector<double>& base, int level, std::vector<double>& xs,
                         std::vector<double>& ws) {
    xs.clear();
    ws.clear();
    const int sub = 1 << level;
    for (std::size_t p = 0; p + 1 < base.size(); ++p) {
      const double w = (base[p + 1] - base[p]) / sub;
      for (int q = 0; q < sub; ++q) {
        const double mid = base[p] + (q + 0.5) * w;
        for (int i = 0; i < 16; ++i) {
          xs.push_back(mid + 0.5 * w * rule.nodes[i]);
          ws.push_back(0.5 * w * rule.weights[i]);
        }
      }
    }
  };
  std::array<double, 7> prev{};
  for (int level = 0; level <= 6; ++level) {
    std::vector<double> xs, wx, ys, wy, zs, wz;
    level_nodes(ex, level, xs, wx);
    level_nodes(ey, level, ys, wy);
    level_nodes(ez, level, zs, wz);
    std::array<CompensatedSum, 7> acc;  // m0, x, y, z, x^2, y^2, z^2
    for (std::size_t k = 0; k < zs.size(); ++k) {
      for (std::size_t j = 0; j < ys.size(); ++j) {
        for (std::size_t i = 0; i < xs.size(); ++i) {
          const double w = s.f(xs[i], ys[j], zs[k]) * wx[i] * wy[j] * wz[k];
          acc[0].add(w);
          acc[1].add(w * xs[i]);
          acc[2].add(w * ys[j]);
          acc[3].add(w * zs[k]);
          acc[4].add(w * xs[i] * xs[i]);
          acc[5].add(w * ys[j] * ys[j]);
          acc[6].add(w * zs[k] * zs[k]);
        }
      }
    }
    std::array<double, 7> cur;
    for (int q = 0; q < 7; ++q) cur[q] = acc[q].value();
    double change = 0.0;
    for (int q = 0; q < 7; ++q) change = std::max(change, std::abs(cur[q] - prev[q]));
    prev = cur;
    if (level > 0 && change <= 1e-12 * std::max(1.0, std::abs(cur[0]))) break;
  }
  ms.m0 = prev[0];
  ms.mx = prev[1] / prev[0];
  ms.my = prev[2] / prev[0];
  ms.mz = prev[3] / prev[0];
  ms.Mxx = prev[4] / prev[0] - ms.mx * ms.mx;
  ms.Myy = prev[5] / prev[0] - ms.my * ms.my;
  ms.Mzz = prev[6] / prev[0] - ms.mz * ms.mz;
  return ms;
}

}  // namespace

MomentSet moments_analytic(const SeriesSolution& sol, double t) {
  if (t < 0.0) throw Error("moments_analytic: t must be >= 0");
  const TimeScales ts = diffusive_time_scales(sol.model);
  if (t < 1e-6 * ts.Tx_star) {
    MomentSet ms = ic_moments(sol);
    ms.t = t;
    return ms;
  }
  return sol.separable() ? analytic_separable(sol, t) : analytic_general(sol, t);
}

namespace {

// Composite weights including spacing: Simpson for odd node counts,
// trapezoid otherwise. The choice lands in MomentSet::method.
std::vector<double> quadrature_weights(int n, double h, bool& simpson) {
  std::vector<double> w(n, h);
  simpson = (n % 2 == 1) && n >= 3;
  if (simpson) {
    w[0] = w[n - 1] = h / 3.0;
    for (int i = 1; i < n - 1; ++i) w[i] = (i % 2 == 1) ? 4.0 * h / 3.0 : 2.0 * h / 3.0;
  } else {
    w[0] = w[n - 1] = h / 2.0;
  }
  return w;
}

}  // namespace

MomentSet moments_numeric(const Field3& field) {
  for (int a = 0; a < 3; ++a) {
    if (field.dims[a] < 3) throw GridTooCoarseError("moments_numeric: need >= 3 nodes per axis");
  }
  bool sx = false, sy = false, sz = false;
  const std::vector<double> wx = quadrature_weights(field.dims[0], field.spacing[0], sx);
  const std::vector<double> wy = quadrature_weights(field.dims[1], field.spacing[1], sy);
  const std::vector<double> wz = quadrature_weights(field.dims[2], field.spacing[2], sz);

  CompensatedSum m0, mx, my, mz;
  for (int k = 0; k < field.dims[2]; ++k) {
    const double z = k * field.spacing[2];
    for (int j = 0; j < field.dims[1]; ++j) {
      const double y = j * field.spacing[1];
      for (int i = 0; i < field.dims[0]; ++i) {
        const double wcv = wx[i] * wy[j] * wz[k] * field.at(i, j, k);
        m0.add(wcv);
        mx.add(wcv * (i * field.spacing[0]));
        my.add(wcv * y);
        mz.add(wcv * z);
      }
    }
  }
  MomentSet ms;
  ms.t = field.time;
  ms.m0 = m0.value();
  ms.mx = mx.value() / ms.m0;
  ms.my = my.value() / ms.m0;
  ms.mz = mz.value() / ms.m0;

  CompensatedSum Mxx, Myy, Mzz, Mxy, Mxz, Myz;
  for (int k = 0; k < field.dims[2]; ++k) {
    const double dz = k * field.spacing[2] - ms.mz;
    for (int j = 0; j < field.dims[1]; ++j) {
      const double dy = j * field.spacing[1] - ms.my;
      for (int i = 0; i < field.dims[0]; ++i) {
        const double dx = i * field.spacing[0] - ms.mx;
        const double wcv = wx[i] * wy[j] * wz[k] * field.at(i, j, k);
        Mxx.add(wcv * dx * dx);
        Myy.add(wcv * dy * dy);
        Mzz.add(wcv * dz * dz);
        Mxy.add(wcv * dx * dy);
        Mxz.add(wcv * dx * dz);
        Myz.add(wcv * dy * dz);
      }
    }
  }
  ms.Mxx = Mxx.value() / ms.m0;
  ms.Myy = Myy.value() / ms.m0;
  ms.Mzz = Mzz.value() / ms.m0;
  ms.Mxy = Mxy.value() / ms.m0;
  ms.Mxz = Mxz.value() / ms.m0;
  ms.Myz = Myz.value() / ms.m0;
  ms.method = (sx && sy && sz) ? "simpson" : "trapezoid";
  return ms;
}

NormalizedMoments normalize(const MomentSet& ms, const OrthotropicModel& model) {
  const TimeScales ts = diffusive_time_scales(model);
  const double Minf = m_infinity(model);
  NormalizedMoments n;
  n.t_star = ms.t / ts.Tx_star;
  n.mx_star = ms.mx / model.L;
  n.my_star = ms.my / model.L;
  n.mz_star = ms.mz / model.L;
  n.Mxx_star = ms.Mxx / Minf;
  n.Myy_star = ms.Myy / Minf;
  n.Mzz_star = ms.Mzz / Minf;
  return n;
}

}  // namespace orthocube
