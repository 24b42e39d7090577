#include "orthocube/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "orthocube/errors.hpp"
#include "orthocube/numerics.hpp"

namespace orthocube {

double GeneralCoefficients::at(int l, int m, int n) const {
  const Entry key{l, m, n, 0.0};
  auto it = std::lower_bound(entries.begin(), entries.end(), key,
                             [](const Entry& a, const Entry& b) {
                               return std::tie(a.l, a.m, a.n) < std::tie(b.l, b.m, b.n);
                             });
  if (it != entries.end() && it->l == l && it->m == m && it->n == n) return it->value;
  return 0.0;
}

void GeneralCoefficients::insert(int l, int m, int n, double value) {
  const Entry e{l, m, n, value};
  auto it = std::lower_bound(entries.begin(), entries.end(), e,
                             [](const Entry& a, const Entry& b) {
                               return std::tie(a.l, a.m, a.n) < std::tie(b.l, b.m, b.n);
                             });
  entries.insert(it, e);
}

SeparableCoefficients coefficients_delta(const OrthotropicModel& model, int N) {
  SeparableCoefficients c;
  c.N = N;
  c.B.resize(N + 1);
  c.B[0] = 1.0 / model.L;
  for (int l = 1; l <= N; ++l) c.B[l] = 2.0 / model.L * cos_half_pi(l);
  c.H = c.B;
  c.S = c.B;
  return c;
}

SeparableCoefficients coefficients_step(const OrthotropicModel& model, double a, int N) {
  if (!(a > 0.0) || a > model.L) throw BadExtentError("coefficients_step: need 0 < a <= L");
  SeparableCoefficients c;
  c.N = N;
  c.B.resize(N + 1);
  c.B[0] = 1.0 / model.L;
  for (int l = 1; l <= N; ++l) {
    const double parity = cos_half_pi(l);
    c.B[l] = parity == 0.0
                 ? 0.0
                 : 4.0 * parity * std::sin(kPi * a * l / (2.0 * model.L)) / (kPi * a * l);
  }
  c.H = c.B;
  c.S = c.B;
  return c;
}

namespace {

// One axis of the truncated-Gaussian closed form. The erf of complex
// argument appears only through Re[erf(u+iv)]*exp(-v^2) with
// u = d L/(2 sqrt2 sigma), v = pi j sigma/(sqrt2 L d), which erf_re_scaled
// evaluates without overflow for any truncation order.
std::vector<double> gaussian_axis(double L, double sigma_x, double d, int N) {
  std::vector<double> out(N + 1);
  out[0] = 1.0 / L;
  const double u = d * L / (2.0 * std::sqrt(2.0) * sigma_x);
  const double denom = std::erf(u);
  for (int j = 1; j <= N; ++j) {
    const double parity = cos_half_pi(j);
    if (parity == 0.0) {
      out[j] = 0.0;
      continue;
    }
    const double v = kPi * j * sigma_x / (std::sqrt(2.0) * L * d);
    out[j] = 2.0 / L * parity * erf_re_scaled(u, v) / denom;
  }
  return out;
}

}  // namespace

SeparableCoefficients coefficients_gaussian(const OrthotropicModel& model, double sigma_x, int N) {
  if (!(sigma_x > 0.0)) throw Error("coefficients_gaussian: sigma_x must be > 0");
  SeparableCoefficients c;
  c.N = N;
  c.B = gaussian_axis(model.L, sigma_x, 1.0, N);
  c.H = gaussian_axis(model.L, sigma_x, std::sqrt(model.dyy2), N);
  c.S = gaussian_axis(model.L, sigma_x, std::sqrt(model.dzz2), N);
  return c;
}

GeneralCoefficients coefficients_plane(const OrthotropicModel& model, double kappa_y,
                                       double kappa_z, int N) {
  if (kappa_y < 0.0 || kappa_z < 0.0) throw Error("coefficients_plane: kappas must be >= 0");
  const double L3 = model.L * model.L * model.L;
  const double K = 1.0 + kappa_y + kappa_z;
  GeneralCoefficients g;
  g.N = N;
  g.entries.reserve(3 * static_cast<std::size_t>(N) / 2 + 1);
  g.entries.push_back({0, 0, 0, 1.0 / L3});
  // only single-axis modes survive; even indices vanish by (-1 + (-1)^j) = 0
  for (int j = 1; j <= N; j += 2) {
    const double shape = -8.0 / (static_cast<double>(j) * j * kPi * kPi) / L3;
    g.insert(j, 0, 0, shape / K);
    g.insert(0, j, 0, shape * kappa_y / K);
    g.insert(0, 0, j, shape * kappa_z / K);
  }
  return g;
}

namespace {

std::vector<double> base_edges(double L, const std::vector<double>& breaks) {
  std::vector<double> edges{0.0, L};
  for (double b : breaks) {
    if (b > 0.0 && b < L) edges.push_back(b);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [L](double a, double b) { return std::abs(a - b) < 1e-15 * L; }),
              edges.end());
  return edges;
}

// Nodes and weights of the composite GL16 rule at a given doubling level.
void level_nodes(const std::vector<double>& edges, int level, std::vector<double>& xs,
                 std::vector<double>& ws) {
  const auto& rule = GaussLegendre16::get();
  const int sub = 1 << level;
  xs.clear();
  ws.clear();
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const double w = (edges[p + 1] - edges[p]) / sub;
    for (int s = 0; s < sub; ++s) {
      const double a = edges[p] + s * w;
      const double mid = a + 0.5 * w, half = 0.5 * w;
      for (int i = 0; i < 16; ++i) {
        xs.push_back(mid + half * rule.nodes[i]);
        ws.push_back(half * rule.weights[i]);
      }
    }
  }
}

struct Projection1d {
  std::vector<double> integral;  // j = 0..N of Int f cos(j pi x / L)
  std::vector<double> abs_error;
  int levels = 0;
  double final_change = 0.0;
};

Projection1d cosine_projection_1d(const std::function<double(double)>& f,
                                  const std::vector<double>& breaks, double L, int N,
                                  const QuadratureOptions& opts) {
  const std::vector<double> edges = base_edges(L, breaks);
  std::vector<double> xs, ws;
  Projection1d out;
  std::vector<double> prev;
  for (int level = 0; level <= opts.max_levels_1d; ++level) {
    level_nodes(edges, level, xs, ws);
    std::vector<CompensatedSum> acc(N + 1);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double fv = f(xs[i]) * ws[i];
      for (int j = 0; j <= N; ++j) acc[j].add(fv * std::cos(j * kPi * xs[i] / L));
    }
    std::vector<double> cur(N + 1);
    for (int j = 0; j <= N; ++j) cur[j] = acc[j].value();

    if (!prev.empty()) {
      double scale = 0.0, change = 0.0;
      out.abs_error.assign(N + 1, 0.0);
      for (int j = 0; j <= N; ++j) {
        scale = std::max(scale, std::abs(cur[j]));
        out.abs_error[j] = std::abs(cur[j] - prev[j]);
        change = std::max(change, out.abs_error[j]);
      }
      out.levels = level;
      out.final_change = (scale > 0.0) ? change / scale : change;
      if (out.final_change <= opts.rel_tol) {
        out.integral = cur;
        return out;
      }
    }
    prev = std::move(cur);
  }
  out.integral = prev;
  if (out.final_change > opts.accept_tol) {
    throw QuadratureNotConvergedError("1-D cosine projection stalled at relative change " +
                                      std::to_string(out.final_change));
  }
  return out;
}

struct Projection3d {
  std::vector<double> integral;  // (N+1)^3, idx = (l*(N+1)+m)*(N+1)+n
  std::vector<double> abs_error;
  int levels = 0;
  double final_change = 0.0;
};

Projection3d cosine_projection_3d(const GeneralSampler& s, double L, int N,
                                  const QuadratureOptions& opts) {
  const int M = N + 1;
  const std::vector<double> ex = base_edges(L, s.breaks_x);
  const std::vector<double> ey = base_edges(L, s.breaks_y);
  const std::vector<double> ez = base_edges(L, s.breaks_z);
  Projection3d out;
  std::vector<double> prev;
  std::vector<double> xs, wx, ys, wy, zs, wz;
  for (int level = 0; level <= opts.max_levels_3d; ++level) {
    level_nodes(ex, level, xs, wx);
    level_nodes(ey, level, ys, wy);
    level_nodes(ez, level, zs, wz);
    const std::size_t nx = xs.size(), ny = ys.size(), nz = zs.size();

    std::vector<double> cx(static_cast<std::size_t>(M) * nx), cy(static_cast<std::size_t>(M) * ny),
        cz(static_cast<std::size_t>(M) * nz);
    for (int j = 0; j < M; ++j) {
      for (std::size_t i = 0; i < nx; ++i) cx[j * nx + i] = std::cos(j * kPi * xs[i] / L);
      for (std::size_t i = 0; i < ny; ++i) cy[j * ny + i] = std::cos(j * kPi * ys[i] / L);
      for (std::size_t i = 0; i < nz; ++i) cz[j * nz + i] = std::cos(j * kPi * zs[i] / L);
    }

    // contract x, then y, then z
    std::vector<double> A(static_cast<std::size_t>(M) * ny * nz, 0.0);
    for (std::size_t k = 0; k < nz; ++k) {
      for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t i = 0; i < nx; ++i) {
          const double fv = s.f(xs[i], ys[j], zs[k]) * wx[i] * wy[j] * wz[k];
          if (fv == 0.0) continue;
          for (int l = 0; l < M; ++l) A[(l * ny + j) * nz + k] += fv * cx[l * nx + i];
        }
      }
    }
    std::vector<double> B(static_cast<std::size_t>(M) * M * nz, 0.0);
    for (int l = 0; l < M; ++l) {
      for (int m = 0; m < M; ++m) {
        for (std::size_t k = 0; k < nz; ++k) {
          CompensatedSum acc;
          for (std::size_t j = 0; j < ny; ++j)
            acc.add(A[(l * ny + j) * nz + k] * cy[m * ny + j]);
          B[(static_cast<std::size_t>(l) * M + m) * nz + k] = acc.value();
        }
      }
    }
    std::vector<double> cur(static_cast<std::size_t>(M) * M * M);
    for (int l = 0; l < M; ++l) {
      for (int m = 0; m < M; ++m) {
        for (int n = 0; n < M; ++n) {
          CompensatedSum acc;
          for (std::size_t k = 0; k < nz; ++k)
            acc.add(B[(static_cast<std::size_t>(l) * M + m) * nz + k] * cz[n * nz + k]);
          cur[(static_cast<std::size_t>(l) * M + m) * M + n] = acc.value();
        }
      }
    }

    if (!prev.empty()) {
      double scale = 0.0, change = 0.0;
      out.abs_error.assign(cur.size(), 0.0);
      for (std::size_t i = 0; i < cur.size(); ++i) {
        scale = std::max(scale, std::abs(cur[i]));
        out.abs_error[i] = std::abs(cur[i] - prev[i]);
        change = std::max(change, out.abs_error[i]);
      }
      out.levels = level;
      out.final_change = (scale > 0.0) ? change / scale : change;
      if (out.final_change <= opts.rel_tol) {
        out.integral = std::move(cur);
        return out;
      }
    }
    prev = std::move(cur);
  }
  out.integral = std::move(prev);
  if (out.final_change > opts.accept_tol) {
    throw QuadratureNotConvergedError("3-D cosine projection stalled at relative change " +
                                      std::to_string(out.final_change));
  }
  return out;
}

InitialCondition substitute_delta(const InitialCondition& ic, const OrthotropicModel& model) {
  if (std::holds_alternative<DeltaIc>(ic)) {
    return TruncatedGaussianIc{delta_surrogate_sigma(model)};
  }
  return ic;
}

}  // namespace

QuadratureResult coefficients_quadrature(const InitialCondition& ic_in,
                                         const OrthotropicModel& model, int N,
                                         const QuadratureOptions& opts) {
  const InitialCondition ic = substitute_delta(ic_in, model);
  const int M = N + 1;
  const double L3 = model.L * model.L * model.L;
  QuadratureResult out;
  out.coeffs.N = N;
  out.coeffs.entries.reserve(static_cast<std::size_t>(M) * M * M);
  out.abs_error.reserve(static_cast<std::size_t>(M) * M * M);

  if (ic_is_separable(ic)) {
    out.used_separable_path = true;
    std::array<Projection1d, 3> proj;
    for (int axis = 0; axis < 3; ++axis) {
      const AxisProfile prof = axis_profile(ic, model, axis);
      proj[axis] = cosine_projection_1d(prof.density, prof.breakpoints, model.L, N, opts);
      out.levels = std::max(out.levels, proj[axis].levels);
    }
    for (int l = 0; l < M; ++l) {
      for (int m = 0; m < M; ++m) {
        for (int n = 0; n < M; ++n) {
          const double scale = std::pow(2.0, (l > 0) + (m > 0) + (n > 0)) / L3;
          const double Ix = proj[0].integral[l], Iy = proj[1].integral[m],
                       Iz = proj[2].integral[n];
          out.coeffs.entries.push_back({l, m, n, scale * Ix * Iy * Iz});
          out.abs_error.push_back(scale * (proj[0].abs_error[l] * std::abs(Iy * Iz) +
                                           proj[1].abs_error[m] * std::abs(Ix * Iz) +
                                           proj[2].abs_error[n] * std::abs(Ix * Iy)));
        }
      }
    }
    return out;
  }

  const GeneralSampler sampler = general_sampler(ic, model);
  const Projection3d proj = cosine_projection_3d(sampler, model.L, N, opts);
  out.levels = proj.levels;
  for (int l = 0; l < M; ++l) {
    for (int m = 0; m < M; ++m) {
      for (int n = 0; n < M; ++n) {
        const std::size_t idx = (static_cast<std::size_t>(l) * M + m) * M + n;
        const double scale = std::pow(2.0, (l > 0) + (m > 0) + (n > 0)) / L3;
        out.coeffs.entries.push_back({l, m, n, scale * proj.integral[idx]});
        out.abs_error.push_back(scale * proj.abs_error[idx]);
      }
    }
  }
  return out;
}

SeparableCoefficients separable_coefficients_quadrature(const InitialCondition& ic_in,
                                                        const OrthotropicModel& model, int N,
                                                        const QuadratureOptions& opts) {
  const InitialCondition ic = substitute_delta(ic_in, model);
  if (!ic_is_separable(ic)) {
    throw Error("separable_coefficients_quadrature: " + ic_name(ic) + " is not separable");
  }
  SeparableCoefficients c;
  c.N = N;
  for (int axis = 0; axis < 3; ++axis) {
    const AxisProfile prof = axis_profile(ic, model, axis);
    const Projection1d proj = cosine_projection_1d(prof.density, prof.breakpoints, model.L, N, opts);
    std::vector<double>& dst = (axis == 0) ? c.B : (axis == 1) ? c.H : c.S;
    dst.resize(N + 1);
    for (int j = 0; j <= N; ++j) {
      dst[j] = (j == 0 ? 1.0 : 2.0) / model.L * proj.integral[j];
    }
  }
  return c;
}

}  // namespace orthocube
