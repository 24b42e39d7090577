#include "orthocube/fd.hpp"

#include <algorithm>
#include <cmath>

#include "orthocube/errors.hpp"
#include "orthocube/numerics.hpp"

namespace orthocube {

double FdState::mass() const {
  CompensatedSum acc;
  for (double v : c) acc.add(v);
  return acc.value() * cell_volume();
}

double fd_stable_dt(const FdBoxConfig& cfg) {
  double rate = 0.0;
  for (int a = 0; a < 3; ++a) {
    const double h = cfg.box.lengths[a] / cfg.cells[a];
    rate += cfg.box.D[a] / (h * h);
  }
  return cfg.safety * 0.5 / rate;
}

namespace {

void check_box(const FdBoxConfig& cfg) {
  for (int a = 0; a < 3; ++a) {
    if (cfg.cells[a] < 4) throw BadGridError("fd: need at least 4 cells per axis");
    if (!(cfg.box.lengths[a] > 0.0) || !(cfg.box.D[a] > 0.0)) {
      throw Error("fd: box lengths and diffusivities must be > 0");
    }
  }
}

FdState make_state(const FdBoxConfig& cfg) {
  check_box(cfg);
  FdState s;
  s.cfg = cfg;
  s.c.assign(static_cast<std::size_t>(cfg.cells[0]) * cfg.cells[1] * cfg.cells[2], 0.0);
  return s;
}

}  // namespace

FdState fd_init_box(const FdBoxConfig& cfg, const std::array<AxisMassFn, 3>& axis_mass_fns) {
  FdState s = make_state(cfg);
  std::array<std::vector<double>, 3> m;
  for (int a = 0; a < 3; ++a) {
    const double h = s.dx(a);
    m[a].resize(cfg.cells[a]);
    for (int i = 0; i < cfg.cells[a]; ++i) m[a][i] = axis_mass_fns[a](i * h, (i + 1) * h);
  }
  const double vol = s.cell_volume();
  for (int k = 0; k < cfg.cells[2]; ++k) {
    for (int j = 0; j < cfg.cells[1]; ++j) {
      for (int i = 0; i < cfg.cells[0]; ++i) {
        s.c[s.index(i, j, k)] = m[0][i] * m[1][j] * m[2][k] / vol;
      }
    }
  }
  s.mass0 = s.mass();
  return s;
}

FdState fd_init_box_general(const FdBoxConfig& cfg,
                            const std::function<double(double, double, double)>& density) {
  FdState s = make_state(cfg);
  const auto& rule = GaussLegendreRule::of(4);
  const double hx = s.dx(0), hy = s.dx(1), hz = s.dx(2);
  for (int k = 0; k < cfg.cells[2]; ++k) {
    for (int j = 0; j < cfg.cells[1]; ++j) {
      for (int i = 0; i < cfg.cells[0]; ++i) {
        CompensatedSum acc;
        for (int a = 0; a < 4; ++a) {
          const double x = (i + 0.5 + 0.5 * rule.nodes[a]) * hx;
          for (int b = 0; b < 4; ++b) {
            const double y = (j + 0.5 + 0.5 * rule.nodes[b]) * hy;
            for (int c2 = 0; c2 < 4; ++c2) {
              const double z = (k + 0.5 + 0.5 * rule.nodes[c2]) * hz;
              acc.add(rule.weights[a] * rule.weights[b] * rule.weights[c2] * density(x, y, z));
            }
          }
        }
        s.c[s.index(i, j, k)] = acc.value() / 8.0;  // cell average
      }
    }
  }
  s.mass0 = s.mass();
  return s;
}

FdState fd_init(const FdConfig& cfg, const InitialCondition& ic) {
  if (cfg.n < 4) throw BadGridError("fd_init: need n >= 4");
  validate_ic(ic, cfg.model);
  const double L = cfg.model.L;
  FdBoxConfig box{{{L, L, L}, {cfg.model.Dxx, cfg.model.Dyy(), cfg.model.Dzz()}},
                  {cfg.n, cfg.n, cfg.n},
                  cfg.safety,
                  cfg.dt};

  if (std::holds_alternative<PlaneIc>(ic)) {
    const GeneralSampler sampler = general_sampler(ic, cfg.model);
    // linear density: the center value is the exact cell average
    FdState s = make_state(box);
    const double h = s.dx(0);
    for (int k = 0; k < cfg.n; ++k) {
      for (int j = 0; j < cfg.n; ++j) {
        for (int i = 0; i < cfg.n; ++i) {
          s.c[s.index(i, j, k)] =
              sampler.f((i + 0.5) * h, (j + 0.5) * h, (k + 0.5) * h);
        }
      }
    }
    s.mass0 = s.mass();
    return s;
  }
  if (std::holds_alternative<CustomGeneralIc>(ic)) {
    return fd_init_box_general(box, general_sampler(ic, cfg.model).f);
  }
  const auto mass_fn = [&](int axis) {
    return AxisMassFn([ic, model = cfg.model, axis](double x0, double x1) {
      return axis_mass(ic, model, axis, x0, x1);
    });
  };
  return fd_init_box(box, {mass_fn(0), mass_fn(1), mass_fn(2)});
}

void fd_step(FdState& s, double dt, std::vector<double>& scratch) {
  const int nx = s.cfg.cells[0], ny = s.cfg.cells[1], nz = s.cfg.cells[2];
  const double mux = s.cfg.box.D[0] * dt / (s.dx(0) * s.dx(0));
  const double muy = s.cfg.box.D[1] * dt / (s.dx(1) * s.dx(1));
  const double muz = s.cfg.box.D[2] * dt / (s.dx(2) * s.dx(2));
  if (mux + muy + muz > 0.5 * (1.0 + 1e-12)) {
    throw UnstableTimestepError("fd_step: dt violates the explicit stability bound");
  }
  scratch.resize(s.c.size());
  const std::vector<double>& c = s.c;
  const std::size_t sx = 1, sy = nx, sz = static_cast<std::size_t>(nx) * ny;
  for (int k = 0; k < nz; ++k) {
    for (int j = 0; j < ny; ++j) {
      const std::size_t row = s.index(0, j, k);
      for (int i = 0; i < nx; ++i) {
        const std::size_t q = row + i;
        const double v = c[q];
        const double xm = (i > 0) ? c[q - sx] : v;       // mirror ghosts: zero
        const double xp = (i < nx - 1) ? c[q + sx] : v;  // normal gradient
        const double ym = (j > 0) ? c[q - sy] : v;
        const double yp = (j < ny - 1) ? c[q + sy] : v;
        const double zm = (k > 0) ? c[q - sz] : v;
        const double zp = (k < nz - 1) ? c[q + sz] : v;
        scratch[q] = v + mux * (xm - 2.0 * v + xp) + muy * (ym - 2.0 * v + yp) +
                     muz * (zm - 2.0 * v + zp);
      }
    }
  }
  s.c.swap(scratch);
  s.time += dt;
}

Field3 fd_node_field(const FdState& s) {
  const int nx = s.cfg.cells[0], ny = s.cfg.cells[1], nz = s.cfg.cells[2];
  Field3 f = Field3::zeros({nx + 1, ny + 1, nz + 1}, s.cfg.box.lengths, s.time);
  // successive per-axis averaging of cell values onto node planes; the
  // mirror ghost makes boundary nodes equal the adjacent cell average
  auto clamp = [](int i, int n) { return std::clamp(i, 0, n - 1); };
  for (int k = 0; k <= nz; ++k) {
    const int k0 = clamp(k - 1, nz), k1 = clamp(k, nz);
    for (int j = 0; j <= ny; ++j) {
      const int j0 = clamp(j - 1, ny), j1 = clamp(j, ny);
      for (int i = 0; i <= nx; ++i) {
        const int i0 = clamp(i - 1, nx), i1 = clamp(i, nx);
        double acc = 0.0;
        for (int kk : {k0, k1}) {
          for (int jj : {j0, j1}) {
            for (int ii : {i0, i1}) acc += s.c[s.index(ii, jj, kk)];
          }
        }
        f.at(i, j, k) = acc / 8.0;
      }
    }
  }
  return f;
}

MomentSet fd_cell_moments(const FdState& s) {
  const int nx = s.cfg.cells[0], ny = s.cfg.cells[1], nz = s.cfg.cells[2];
  const double hx = s.dx(0), hy = s.dx(1), hz = s.dx(2);
  const double vol = s.cell_volume();
  CompensatedSum m0, mx, my, mz;
  for (int k = 0; k < nz; ++k) {
    const double z = (k + 0.5) * hz;
    for (int j = 0; j < ny; ++j) {
      const double y = (j + 0.5) * hy;
      for (int i = 0; i < nx; ++i) {
        const double cv = s.c[s.index(i, j, k)] * vol;
        m0.add(cv);
        mx.add(cv * ((i + 0.5) * hx));
        my.add(cv * y);
        mz.add(cv * z);
      }
    }
  }
  MomentSet ms;
  ms.t = s.time;
  ms.m0 = m0.value();
  ms.mx = mx.value() / ms.m0;
  ms.my = my.value() / ms.m0;
  ms.mz = mz.value() / ms.m0;
  CompensatedSum Mxx, Myy, Mzz, Mxy, Mxz, Myz;
  for (int k = 0; k < nz; ++k) {
    const double dz = (k + 0.5) * hz - ms.mz;
    for (int j = 0; j < ny; ++j) {
      const double dy = (j + 0.5) * hy - ms.my;
      for (int i = 0; i < nx; ++i) {
        const double cv = s.c[s.index(i, j, k)] * vol;
        const double dxv = (i + 0.5) * hx - ms.mx;
        Mxx.add(cv * dxv * dxv);
        Myy.add(cv * dy * dy);
        Mzz.add(cv * dz * dz);
        Mxy.add(cv * dxv * dy);
        Mxz.add(cv * dxv * dz);
        Myz.add(cv * dy * dz);
      }
    }
  }
  ms.Mxx = Mxx.value() / ms.m0;
  ms.Myy = Myy.value() / ms.m0;
  ms.Mzz = Mzz.value() / ms.m0;
  ms.Mxy = Mxy.value() / ms.m0;
  ms.Mxz = Mxz.value() / ms.m0;
  ms.Myz = Myz.value() / ms.m0;
  ms.method = "midpoint";
  return ms;
}

std::vector<FdSample> fd_run(FdState& s, double t_end, const std::vector<double>& sample_times) {
  if (t_end < s.time) throw Error("fd_run: t_end before current time");
  for (std::size_t i = 0; i < sample_times.size(); ++i) {
    if (sample_times[i] < 0.0 || sample_times[i] > t_end * (1.0 + 1e-12)) {
      throw Error("fd_run: sample time outside [0, t_end]");
    }
    if (i > 0 && sample_times[i] < sample_times[i - 1]) {
      throw Error("fd_run: sample times must be ascending");
    }
  }
  const double dt = s.cfg.dt.value_or(fd_stable_dt(s.cfg));
  std::vector<FdSample> samples;
  std::vector<double> scratch(s.c.size());
  std::vector<double> prev;
  std::size_t next = 0;

  auto snapshot = [&](double t_target, const std::vector<double>& before, double t_before) {
    FdState view = s;  // cheap relative to the run; keeps sampling code simple
    if (t_target < s.time && !before.empty()) {
      const double w = (t_target - t_before) / (s.time - t_before);
      for (std::size_t q = 0; q < view.c.size(); ++q) {
        view.c[q] = before[q] + w * (s.c[q] - before[q]);
      }
      view.time = t_target;
    }
    FdSample sample;
    sample.t = t_target;
    sample.field = fd_node_field(view);
    sample.field.time = t_target;
    sample.moments = fd_cell_moments(view);
    sample.moments.t = t_target;
    sample.mass_rel_drift = std::abs(view.mass() - s.mass0) / s.mass0;
    samples.push_back(std::move(sample));
  };

  while (next < sample_times.size() && sample_times[next] <= s.time) {
    snapshot(sample_times[next], {}, s.time);
    ++next;
  }
  while (s.time < t_end * (1.0 - 1e-15) && next < sample_times.size()) {
    const double t_before = s.time;
    const bool crossing = sample_times[next] <= s.time + dt;
    if (crossing) prev = s.c;
    fd_step(s, dt, scratch);
    while (next < sample_times.size() && sample_times[next] <= s.time * (1.0 + 1e-15)) {
      snapshot(sample_times[next], prev, t_before);
      ++next;
    }
  }
  // anything left differs from the final time only by roundoff
  while (next < sample_times.size()) {
    snapshot(sample_times[next], {}, s.time);
    ++next;
  }
  return samples;
}

}  // namespace orthocube
