#include <cmath>

#include "doctest.h"
#include "orthocube/errors.hpp"
#include "orthocube/moments.hpp"
#include "orthocube/numerics.hpp"
#include "orthocube/series.hpp"

using namespace orthocube;

namespace {
const OrthotropicModel kModel(0.01, 1e-9, 2.0, 4.0);
const double kL = kModel.L;
const double kTx = 25000.0;
const double kMinf = kL * kL / 12.0;

// the plane-case second moment in its expanded arrangement
// L^2/3 - L m(t) + m(t)^2 + decay sums; algebraically identical to the
// implementation's <x^2> - m^2 route and used here as an independent oracle
double plane_mxx_expanded_form(double kappa_y, double kappa_z, int N, double t) {
  const double K = 1.0 + kappa_y + kappa_z;
  const double L = kModel.L;
  CompensatedSum s_first, s_a, s_b;
  for (int l = 1; l <= N; ++l) {
    const double decay = std::exp(-mode_rate(l, 0, 0, kModel) * t);
    const double jump = -1.0 + minus_one_pow(l);
    s_first.add(decay * 8.0 * jump * jump / (std::pow(static_cast<double>(l), 4) * std::pow(kPi, 4)));
    s_a.add(decay * 8.0 * jump * minus_one_pow(l) /
            (std::pow(static_cast<double>(l), 4) * std::pow(kPi, 4)));
    s_b.add(decay * 8.0 * jump * jump / (std::pow(static_cast<double>(l), 4) * std::pow(kPi, 4)));
  }
  const double mx = 0.5 * L * (1.0 + s_first.value() / K);
  return L * L / 3.0 - L * mx + mx * mx + (1.0 / K) * L * L * s_a.value() -
         (1.0 / K) * L * mx * s_b.value();
}

}  // namespace

TEST_CASE("delta starts with zero variance") {
  const SeriesSolution sol = make_series_solution(kModel, DeltaIc{}, 20);
  const MomentSet m = moments_analytic(sol, 0.0);
  CHECK(m.m0 == 1.0);
  CHECK(m.mx == kL / 2);
  CHECK(std::abs(m.Mxx) < 1e-10 * kL * kL);
  CHECK(std::abs(m.Myy) < 1e-10 * kL * kL);
  CHECK(std::abs(m.Mzz) < 1e-10 * kL * kL);
  CHECK(m.method == "ic-integral");
}

TEST_CASE("step starts with the block variance a^2/12") {
  const double a = 0.5 * kL;
  const SeriesSolution sol = make_series_solution(kModel, StepIc{a}, 20);
  const MomentSet m = moments_analytic(sol, 0.0);
  CHECK(m.Mxx == doctest::Approx(a * a / 12.0).epsilon(1e-14));
  CHECK(m.Mxx == doctest::Approx(kL * kL / 48.0).epsilon(1e-14));
}

TEST_CASE("gaussian initial variance matches quadrature of the truncated normal") {
  const SeriesSolution sol = make_series_solution(kModel, TruncatedGaussianIc{0.1 * kL}, 20);
  const MomentSet m = moments_analytic(sol, 0.0);
  // value confirmed against 30-digit quadrature of the truncated normal
  CHECK(m.Mxx == doctest::Approx(9.99985132796329e-7).epsilon(1e-12));
  CHECK(m.Myy < m.Mxx);  // narrower per-axis widths
  CHECK(m.Mzz < m.Myy);
}

TEST_CASE("plane initial moments: exact rational values") {
  const SeriesSolution sol = make_series_solution(kModel, PlaneIc{20.0, 40.0}, 20);
  const MomentSet m = moments_analytic(sol, 0.0);
  CHECK(m.mx / kL == doctest::Approx(92.0 / 183.0).epsilon(1e-14));
  CHECK(m.my / kL == doctest::Approx(203.0 / 366.0).epsilon(1e-14));
  CHECK(m.mz / kL == doctest::Approx(223.0 / 366.0).epsilon(1e-14));
  CHECK(m.Mxx == doctest::Approx((41.0 / 122.0 - std::pow(92.0 / 183.0, 2)) * kL * kL)
                     .epsilon(1e-13));
  CHECK(m.Myy == doctest::Approx((71.0 / 183.0 - std::pow(203.0 / 366.0, 2)) * kL * kL)
                     .epsilon(1e-13));
  CHECK(m.Mzz == doctest::Approx((27.0 / 61.0 - std::pow(223.0 / 366.0, 2)) * kL * kL)
                     .epsilon(1e-13));
}

TEST_CASE("every case approaches L^2/12") {
  for (const auto& ic : {InitialCondition{DeltaIc{}}, InitialCondition{StepIc{0.5 * kL}},
                         InitialCondition{TruncatedGaussianIc{0.1 * kL}},
                         InitialCondition{PlaneIc{20.0, 40.0}}}) {
    const SeriesSolution sol = make_series_solution(kModel, ic, 20);
    const MomentSet m = moments_analytic(sol, 10.0 * kTx);
    CHECK(m.Mxx == doctest::Approx(kMinf).epsilon(1e-6));
    CHECK(m.Myy == doctest::Approx(kMinf).epsilon(1e-6));
    CHECK(m.Mzz == doctest::Approx(kMinf).epsilon(1e-6));
  }
  // the steady identity the closed form collapses to: L^2/3 - L^2/2 + L^2/4 = L^2/12
  CHECK(kL * kL / 3.0 - kL * (kL / 2) + (kL / 2) * (kL / 2) == doctest::Approx(kMinf));
}

TEST_CASE("plane second moments equal the expanded closed-form arrangement") {
  const SeriesSolution sol = make_series_solution(kModel, PlaneIc{20.0, 40.0}, 20);
  for (const double t_star : {0.01, 0.05, 0.25, 1.0}) {
    const MomentSet m = moments_analytic(sol, t_star * kTx);
    const double want = plane_mxx_expanded_form(20.0, 40.0, 20, t_star * kTx);
    CHECK(m.Mxx == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("case-4 center of mass marches monotonically to the center") {
  const SeriesSolution sol = make_series_solution(kModel, PlaneIc{20.0, 40.0}, 20);
  double prev_dist = 1e9;
  for (const double t_star : {0.0, 0.05, 0.1, 0.25, 0.5, 1.0, 2.0}) {
    const MomentSet m = moments_analytic(sol, t_star * kTx);
    const double dist = std::abs(m.mz - kL / 2) + std::abs(m.my - kL / 2) +
                        std::abs(m.mx - kL / 2);
    CHECK(dist <= prev_dist * (1.0 + 1e-12));
    prev_dist = dist;
  }
}

TEST_CASE("second moments grow monotonically for compact initial conditions") {
  for (const auto& ic :
       {InitialCondition{DeltaIc{}}, InitialCondition{TruncatedGaussianIc{0.1 * kL}}}) {
    const SeriesSolution sol = make_series_solution(kModel, ic, 20);
    double prev[3] = {-1.0, -1.0, -1.0};
    for (const double t_star : {0.0, 0.01, 0.05, 0.1, 0.25, 0.5, 1.0, 2.0, 5.0}) {
      const MomentSet m = moments_analytic(sol, t_star * kTx);
      CHECK(m.Mxx >= prev[0]);
      CHECK(m.Myy >= prev[1]);
      CHECK(m.Mzz >= prev[2]);
      prev[0] = m.Mxx;
      prev[1] = m.Myy;
      prev[2] = m.Mzz;
    }
  }
}

TEST_CASE("x relaxes fastest: Mxx* >= Myy* >= Mzz* for the delta case") {
  const SeriesSolution sol = make_series_solution(kModel, DeltaIc{}, 20);
  for (const double t_star : {0.05, 0.1, 0.25, 0.5, 1.0}) {
    const NormalizedMoments n = normalize(moments_analytic(sol, t_star * kTx), kModel);
    CHECK(n.Mxx_star >= n.Myy_star);
    CHECK(n.Myy_star >= n.Mzz_star);
  }
}

TEST_CASE("numeric moments of the uniform field") {
  Field3 f = Field3::zeros({33, 33, 33}, {kL, kL, kL}, 0.0);
  for (double& v : f.values) v = 1e6;
  const MomentSet m = moments_numeric(f);
  CHECK(m.m0 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m.mx == doctest::Approx(kL / 2).epsilon(1e-12));
  CHECK(m.my == doctest::Approx(kL / 2).epsilon(1e-12));
  CHECK(m.mz == doctest::Approx(kL / 2).epsilon(1e-12));
  CHECK(m.Mxx == doctest::Approx(kMinf).epsilon(1e-12));
  CHECK(m.Myy == doctest::Approx(kMinf).epsilon(1e-12));
  CHECK(m.Mzz == doctest::Approx(kMinf).epsilon(1e-12));
}

TEST_CASE("numeric moments track the analytic series") {
  const SeriesSolution sol = make_series_solution(kModel, TruncatedGaussianIc{0.1 * kL}, 20);
  const double t = 0.25 * kTx;
  const MomentSet a = moments_analytic(sol, t);
  const MomentSet n = moments_numeric(evaluate_grid(sol, {81, 81, 81}, t));
  CHECK(n.Mxx == doctest::Approx(a.Mxx).epsilon(1e-5));
  CHECK(n.Myy == doctest::Approx(a.Myy).epsilon(1e-5));
  CHECK(n.Mzz == doctest::Approx(a.Mzz).epsilon(1e-5));
  CHECK(std::abs(n.mx - a.mx) / kL < 1e-6);
}

TEST_CASE("analytic vs numeric over a time sweep for asymmetric case 4") {
  const SeriesSolution sol = make_series_solution(kModel, PlaneIc{20.0, 40.0}, 20);
  for (const double t_star : {0.01, 0.1, 1.0}) {
    const double t = t_star * kTx;
    const MomentSet a = moments_analytic(sol, t);
    const MomentSet n = moments_numeric(evaluate_grid(sol, {65, 65, 65}, t));
    CHECK(n.Mxx == doctest::Approx(a.Mxx).epsilon(1e-4));
    CHECK(n.Myy == doctest::Approx(a.Myy).epsilon(1e-4));
    CHECK(n.Mzz == doctest::Approx(a.Mzz).epsilon(1e-4));
    CHECK(std::abs(n.mx - a.mx) / kL < 1e-6);
    CHECK(std::abs(n.my - a.my) / kL < 1e-6);
    CHECK(std::abs(n.mz - a.mz) / kL < 1e-6);
  }
}

TEST_CASE("step moments agree with the sampled field at very early times") {
  // the discontinuous initial condition is the stress case: both sides use
  // the same truncated modes, so only quadrature error separates them
  const SeriesSolution sol = make_series_solution(kModel, StepIc{0.5 * kL}, 20);
  const double t = 1e-3 * kTx;
  const MomentSet a = moments_analytic(sol, t);
  const MomentSet n = moments_numeric(evaluate_grid(sol, {129, 129, 129}, t));
  CHECK(n.Mxx == doctest::Approx(a.Mxx).epsilon(1e-4));
  CHECK(n.Myy == doctest::Approx(a.Myy).epsilon(1e-4));
  CHECK(n.Mzz == doctest::Approx(a.Mzz).epsilon(1e-4));
}

TEST_CASE("off-diagonal moments vanish for symmetric cases") {
  const SeriesSolution sol = make_series_solution(kModel, TruncatedGaussianIc{0.1 * kL}, 20);
  const MomentSet n = moments_numeric(evaluate_grid(sol, {65, 65, 65}, 0.25 * kTx));
  CHECK(std::abs(n.Mxy) < 1e-12 * kL * kL);
  CHECK(std::abs(n.Mxz) < 1e-12 * kL * kL);
  CHECK(std::abs(n.Myz) < 1e-12 * kL * kL);
}

TEST_CASE("custom general initial moments come from quadrature of the sampler") {
  // the plane density fed through the general path must reproduce the
  // closed-form plane rationals at t = 0
  CustomGeneralIc ic;
  const double K = 61.0;
  ic.f = [K](double x, double y, double z) {
    const double L4 = kL * kL * kL * kL;
    return 2.0 * (x + 20.0 * y + 40.0 * z) / (L4 * K);
  };
  const SeriesSolution sol = make_series_solution(kModel, ic, 8);
  const MomentSet m = moments_analytic(sol, 0.0);
  CHECK(m.method == "ic-integral");
  CHECK(m.m0 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m.mx / kL == doctest::Approx(92.0 / 183.0).epsilon(1e-12));
  CHECK(m.my / kL == doctest::Approx(203.0 / 366.0).epsilon(1e-12));
  CHECK(m.Mzz == doctest::Approx((27.0 / 61.0 - std::pow(223.0 / 366.0, 2)) * kL * kL)
                     .epsilon(1e-11));
}

TEST_CASE("coarse grids are rejected") {
  Field3 f = Field3::zeros({2, 5, 5}, {kL, kL, kL}, 0.0);
  CHECK_THROWS_AS(moments_numeric(f), GridTooCoarseError);
}

TEST_CASE("normalization") {
  const SeriesSolution sol = make_series_solution(kModel, DeltaIc{}, 20);
  const NormalizedMoments steady = normalize(moments_analytic(sol, 10.0 * kTx), kModel);
  CHECK(steady.Mxx_star == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(steady.mx_star == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(steady.t_star == doctest::Approx(10.0).epsilon(1e-12));

  const NormalizedMoments zero = normalize(moments_analytic(sol, 0.0), kModel);
  CHECK(zero.Mxx_star == doctest::Approx(0.0).epsilon(1e-12));

  const NormalizedMoments one = normalize(moments_analytic(sol, kTx), kModel);
  CHECK(one.t_star == doctest::Approx(1.0).epsilon(1e-12));
}
