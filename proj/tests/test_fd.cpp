#include <cmath>

#include "doctest.h"
#include "orthocube/errors.hpp"
#include "orthocube/fd.hpp"
#include "orthocube/numerics.hpp"
#include "orthocube/series.hpp"

using namespace orthocube;

namespace {
const OrthotropicModel kModel(0.01, 1e-9, 2.0, 4.0);
const double kL = kModel.L;
const double kTx = 25000.0;
}  // namespace

TEST_CASE("uniform initial condition fills every cell") {
  const FdState s = fd_init(FdConfig{kModel, 8}, StepIc{kL});
  for (double v : s.c) CHECK(v == doctest::Approx(1e6).epsilon(1e-13));
  CHECK(s.mass0 == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("aligned step block is reproduced exactly") {
  const double a = 0.5 * kL;
  const FdState s = fd_init(FdConfig{kModel, 8}, StepIc{a});
  const double inside = 1.0 / (a * a * a);
  int inner = 0;
  for (int k = 0; k < 8; ++k) {
    for (int j = 0; j < 8; ++j) {
      for (int i = 0; i < 8; ++i) {
        const double v = s.c[s.index(i, j, k)];
        const bool in = (i >= 2 && i < 6) && (j >= 2 && j < 6) && (k >= 2 && k < 6);
        if (in) {
          CHECK(v == doctest::Approx(inside).epsilon(1e-13));
          ++inner;
        } else {
          CHECK(v == 0.0);
        }
      }
    }
  }
  CHECK(inner == 64);
  CHECK(s.mass() == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("plane cell averages carry exactly unit mass") {
  const FdState s = fd_init(FdConfig{kModel, 10}, PlaneIc{20.0, 40.0});
  CHECK(s.mass() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("gaussian cell averages carry exactly unit mass") {
  const FdState s = fd_init(FdConfig{kModel, 12}, TruncatedGaussianIc{0.1 * kL});
  CHECK(s.mass() == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("delta deposition: single cell on odd grids, symmetric split on even") {
  const FdState odd = fd_init(FdConfig{kModel, 5}, DeltaIc{});
  int nonzero = 0;
  for (double v : odd.c) nonzero += (v != 0.0);
  CHECK(nonzero == 1);
  CHECK(odd.c[odd.index(2, 2, 2)] > 0.0);
  CHECK(odd.mass() == doctest::Approx(1.0).epsilon(1e-13));

  const FdState even = fd_init(FdConfig{kModel, 4}, DeltaIc{});
  nonzero = 0;
  for (double v : even.c) nonzero += (v != 0.0);
  CHECK(nonzero == 8);  // center on a cell corner: 8-way split
  CHECK(even.mass() == doctest::Approx(1.0).epsilon(1e-13));
  const MomentSet m = fd_cell_moments(even);
  CHECK(m.mx == doctest::Approx(kL / 2).epsilon(1e-13));  // split keeps symmetry
}

TEST_CASE("grids below four cells are rejected") {
  CHECK_THROWS_AS(fd_init(FdConfig{kModel, 3}, DeltaIc{}), BadGridError);
}

TEST_CASE("a uniform state is an exact fixed point of the stencil") {
  FdBoxConfig cfg{{{kL, kL, kL}, {kModel.Dxx, kModel.Dyy(), kModel.Dzz()}}, {6, 6, 6}, 0.9, {}};
  FdState s = fd_init_box_general(cfg, [](double, double, double) { return 1e6; });
  std::vector<double> scratch;
  const std::vector<double> before = s.c;
  fd_step(s, fd_stable_dt(s.cfg), scratch);
  for (std::size_t q = 0; q < s.c.size(); ++q) CHECK(s.c[q] == before[q]);
}

TEST_CASE("one step spreads an impulse to its 7-point neighborhood, conserving mass") {
  FdState s = fd_init(FdConfig{kModel, 5}, DeltaIc{});
  std::vector<double> scratch;
  fd_step(s, fd_stable_dt(s.cfg), scratch);
  int nonzero = 0;
  for (double v : s.c) nonzero += (v != 0.0);
  CHECK(nonzero == 7);
  CHECK(s.mass() == doctest::Approx(s.mass0).epsilon(1e-14));
}

TEST_CASE("unstable timestep is refused") {
  FdState s = fd_init(FdConfig{kModel, 6}, StepIc{kL});
  std::vector<double> scratch;
  CHECK_THROWS_AS(fd_step(s, 10.0 * fd_stable_dt(s.cfg), scratch), UnstableTimestepError);
}

TEST_CASE("discrete cosine mode decays at the analytic rate to second order") {
  // isotropic model so only the x rate matters
  const OrthotropicModel iso(0.01, 1e-9, 1.0, 1.0);
  const double exact = kPi * kPi * iso.Dxx / (iso.L * iso.L);
  double err[2];
  int idx = 0;
  for (const int n : {16, 32}) {
    FdBoxConfig cfg{{{iso.L, iso.L, iso.L}, {iso.Dxx, iso.Dxx, iso.Dxx}}, {n, n, n}, 0.9, {}};
    // init cells with 1/L^3 (1 + 0.5 cos(pi x / L)) via the general sampler
    FdState state = fd_init_box_general(cfg, [&](double x, double, double) {
      return (1.0 + 0.5 * std::cos(kPi * x / iso.L)) / (iso.L * iso.L * iso.L);
    });
    const double dt = fd_stable_dt(cfg);
    std::vector<double> scratch;
    const double amp0 = state.c[state.index(0, n / 2, n / 2)] -
                        state.c[state.index(n - 1, n / 2, n / 2)];
    int steps = 0;
    for (; steps < 200; ++steps) fd_step(state, dt, scratch);
    const double amp1 = state.c[state.index(0, n / 2, n / 2)] -
                        state.c[state.index(n - 1, n / 2, n / 2)];
    const double rate = -std::log(amp1 / amp0) / (steps * dt);
    err[idx++] = std::abs(rate - exact) / exact;
  }
  CHECK(err[1] < 0.01);
  CHECK(err[0] / err[1] == doctest::Approx(4.0).epsilon(0.5));  // second order
}

TEST_CASE("mass is conserved and extremes contract over a long run") {
  FdState s = fd_init(FdConfig{kModel, 10}, TruncatedGaussianIc{0.1 * kL});
  std::vector<double> samples = {0.0, 0.05 * kTx, 0.2 * kTx, 0.5 * kTx};
  const std::vector<FdSample> out = fd_run(s, samples.back(), samples);
  REQUIRE(out.size() == samples.size());
  double prev_min = -1e30, prev_max = 1e30;
  for (const FdSample& smp : out) {
    CHECK(smp.mass_rel_drift < 1e-12);
    double mn = 1e300, mx = -1e300;
    // recover cell extremes from the node field (monotone under averaging)
    for (double v : smp.field.values) {
      mn = std::min(mn, v);
      mx = std::max(mx, v);
    }
    CHECK(mn >= prev_min - 1e-9 * 1e6);
    CHECK(mx <= prev_max + 1e-9 * 1e6);
    prev_min = mn;
    prev_max = mx;
  }
}

TEST_CASE("long runs end at the uniform state") {
  FdState s = fd_init(FdConfig{kModel, 8}, StepIc{0.5 * kL});
  std::vector<double> samples = {10.0 * kTx};
  const std::vector<FdSample> out = fd_run(s, 10.0 * kTx, samples);
  for (double v : out[0].field.values) CHECK(v == doctest::Approx(1e6).epsilon(1e-6));
  CHECK(out[0].moments.Mxx == doctest::Approx(kL * kL / 12.0).epsilon(1e-5));
}

TEST_CASE("symmetric initial conditions stay mirror-symmetric") {
  FdState s = fd_init(FdConfig{kModel, 16}, StepIc{0.5 * kL});
  std::vector<double> scratch;
  const double dt = fd_stable_dt(s.cfg);
  for (int step = 0; step < 50; ++step) fd_step(s, dt, scratch);
  for (int k = 0; k < 16; ++k) {
    for (int j = 0; j < 16; ++j) {
      for (int i = 0; i < 8; ++i) {
        CHECK(s.c[s.index(i, j, k)] ==
              doctest::Approx(s.c[s.index(15 - i, j, k)]).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("fd moments converge to the series values with resolution") {
  const SeriesSolution sol = make_series_solution(kModel, TruncatedGaussianIc{0.1 * kL}, 20);
  const double t = 0.25 * kTx;
  const MomentSet want = moments_analytic(sol, t);
  double prev_err = 1e300;
  for (const int n : {10, 20, 40}) {
    FdState s = fd_init(FdConfig{kModel, n}, TruncatedGaussianIc{0.1 * kL});
    const std::vector<FdSample> out = fd_run(s, t, {t});
    const double err = std::abs(out[0].moments.Mxx - want.Mxx) / want.Mxx;
    CHECK(err < prev_err);
    prev_err = err;
  }
  CHECK(prev_err < 0.02);  // a few percent at n = 40, per the module contract
}

TEST_CASE("node interpolation is exact for linear fields") {
  FdBoxConfig cfg{{{1.0, 1.0, 1.0}, {1.0, 1.0, 1.0}}, {8, 8, 8}, 0.9, {}};
  FdState s = fd_init_box_general(
      cfg, [](double x, double y, double z) { return 1.0 + 2.0 * x + 3.0 * y - z; });
  const Field3 f = fd_node_field(s);
  // interior nodes: trilinear interpolation reproduces linear functions;
  // boundary nodes carry the half-cell offset of the mirror ghost
  for (int k = 1; k < 8; ++k) {
    for (int j = 1; j < 8; ++j) {
      for (int i = 1; i < 8; ++i) {
        const double x = i / 8.0, y = j / 8.0, z = k / 8.0;
        CHECK(f.at(i, j, k) == doctest::Approx(1.0 + 2 * x + 3 * y - z).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("box solver on a parallelepiped conserves mass and is stable") {
  const double L = 0.01, D = 1e-9;
  FdBoxConfig cfg{{{L, 2.0 * L, L}, {D, D, D}}, {8, 16, 8}, 0.9, {}};
  const auto block = [](double center, double extent) {
    return AxisMassFn([center, extent](double x0, double x1) {
      const double lo = center - 0.5 * extent, hi = center + 0.5 * extent;
      return std::max(0.0, std::min(x1, hi) - std::max(x0, lo)) / extent;
    });
  };
  FdState s = fd_init_box(cfg, {block(0.5 * L, 0.5 * L), block(L, 0.5 * L),
                                block(0.5 * L, 0.5 * L)});
  CHECK(s.mass0 == doctest::Approx(1.0).epsilon(1e-13));
  const double t_end = 0.2 * (L / 2) * (L / 2) / D;
  const std::vector<FdSample> out = fd_run(s, t_end, {t_end});
  CHECK(out[0].mass_rel_drift < 1e-12);
  CHECK(out[0].moments.my == doctest::Approx(L).epsilon(1e-10));  // centered along 2L axis
}
