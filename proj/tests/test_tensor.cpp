#include <cmath>
#include <random>

#include "doctest.h"
#include "orthocube/errors.hpp"
#include "orthocube/tensor.hpp"

using namespace orthocube;

namespace {

SymmetricTensor3 from_eigen(const std::array<double, 3>& eig,
                            const std::array<std::array<double, 3>, 3>& R) {
  // A = R diag(eig) R^T, R given as columns
  double m[3][3] = {};
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      for (int k = 0; k < 3; ++k) m[r][c] += R[r][k] * eig[k] * R[c][k];
    }
  }
  return {m[0][0], m[1][1], m[2][2], m[0][1], m[0][2], m[1][2]};
}

std::array<std::array<double, 3>, 3> random_rotation(std::mt19937& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::array<std::array<double, 3>, 3> R{};
  // Gram-Schmidt on random vectors
  for (int c = 0; c < 3; ++c) {
    std::array<double, 3> v = {gauss(rng), gauss(rng), gauss(rng)};
    for (int p = 0; p < c; ++p) {
      double dot = 0.0;
      for (int r = 0; r < 3; ++r) dot += v[r] * R[r][p];
      for (int r = 0; r < 3; ++r) v[r] -= dot * R[r][p];
    }
    double norm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    for (int r = 0; r < 3; ++r) R[r][c] = v[r] / norm;
  }
  return R;
}

}  // namespace

TEST_CASE("psd verdict on the identity") {
  const PsdVerdict v = validate_psd({1, 1, 1, 0, 0, 0});
  CHECK(v.is_psd);
  CHECK_FALSE(v.all_zero);
  CHECK_FALSE(v.failing_minor.has_value());
  for (double m : v.minors) CHECK(m >= 0.0);
}

TEST_CASE("negative diagonal entry fails on minor c") {
  const PsdVerdict v = validate_psd({1, 2, -1, 0, 0, 0});
  CHECK_FALSE(v.is_psd);
  CHECK(*v.failing_minor == "c");
}

TEST_CASE("dominant off-diagonal fails on ab-d^2") {
  const PsdVerdict v = validate_psd({1, 1, 0, 2, 0, 0});
  CHECK_FALSE(v.is_psd);
  CHECK(*v.failing_minor == "ab-d^2");
  CHECK(v.minors[3] == doctest::Approx(-3.0));
}

TEST_CASE("all-zero tensor is flagged as trivial") {
  const PsdVerdict v = validate_psd({0, 0, 0, 0, 0, 0});
  CHECK(v.is_psd);
  CHECK(v.all_zero);
}

TEST_CASE("psd verdict agrees with the eigenvalue sign over random tensors") {
  std::mt19937 rng(20240811);
  std::uniform_real_distribution<double> u(-1.0, 2.0);
  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto R = random_rotation(rng);
    const std::array<double, 3> eig = {u(rng), u(rng), u(rng)};
    const SymmetricTensor3 t = from_eigen(eig, R);
    const double min_eig = std::min({eig[0], eig[1], eig[2]});
    const double max_abs = std::max({std::abs(eig[0]), std::abs(eig[1]), std::abs(eig[2])});
    // skip the sliver where roundoff decides the sign
    if (std::abs(min_eig) < 1e-10 * max_abs) continue;
    CHECK(validate_psd(t).is_psd == (min_eig >= -1e-10 * max_abs));
    ++checked;
  }
  CHECK(checked > 900);
}

TEST_CASE("principal decomposition of a diagonal tensor") {
  const PrincipalDecomposition p = principal_decomposition({4, 2, 1, 0, 0, 0});
  CHECK(p.eigenvalues[0] == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(p.eigenvalues[1] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(p.eigenvalues[2] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_FALSE(p.degenerate);
  for (int c = 0; c < 3; ++c) {
    for (int r = 0; r < 3; ++r) {
      CHECK(std::abs(p.axes[r][c]) == doctest::Approx(r == c ? 1.0 : 0.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("monoclinic-shaped tensor: repeated eigenvalue with 45-degree axes") {
  const PrincipalDecomposition p = principal_decomposition({2, 2, 3, 1, 0, 0});
  // repeated roots of the characteristic cubic are sqrt(eps)-conditioned;
  // the isolated root is machine accurate
  CHECK(p.eigenvalues[0] == doctest::Approx(3.0).epsilon(1e-7));
  CHECK(p.eigenvalues[1] == doctest::Approx(3.0).epsilon(1e-7));
  CHECK(p.eigenvalues[2] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p.degenerate);
  // the isolated eigenvalue 1 has eigenvector (1,-1,0)/sqrt(2): 45 degrees in x-y
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(p.axes[0][2]) == doctest::Approx(inv_sqrt2).epsilon(1e-12));
  CHECK(std::abs(p.axes[1][2]) == doctest::Approx(inv_sqrt2).epsilon(1e-12));
  CHECK(std::abs(p.axes[2][2]) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("random rotations round-trip through the decomposition") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const auto R = random_rotation(rng);
    const SymmetricTensor3 t = from_eigen({3.0, 2.0, 1.0}, R);
    const PrincipalDecomposition p = principal_decomposition(t);
    CHECK(p.eigenvalues[0] == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(p.eigenvalues[1] == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(p.eigenvalues[2] == doctest::Approx(1.0).epsilon(1e-10));

    // orthonormality to 1e-12
    for (int c1 = 0; c1 < 3; ++c1) {
      for (int c2 = 0; c2 < 3; ++c2) {
        double dot = 0.0;
        for (int r = 0; r < 3; ++r) dot += p.axes[r][c1] * p.axes[r][c2];
        CHECK(std::abs(dot - (c1 == c2 ? 1.0 : 0.0)) < 1e-12);
      }
    }
    // reconstruction axes diag axes^T to 1e-10 relative
    const SymmetricTensor3 back = from_eigen(p.eigenvalues, p.axes);
    CHECK(std::abs(back.a - t.a) < 1e-10 * 3.0);
    CHECK(std::abs(back.b - t.b) < 1e-10 * 3.0);
    CHECK(std::abs(back.c - t.c) < 1e-10 * 3.0);
    CHECK(std::abs(back.d - t.d) < 1e-10 * 3.0);
    CHECK(std::abs(back.e - t.e) < 1e-10 * 3.0);
    CHECK(std::abs(back.f - t.f) < 1e-10 * 3.0);
  }
}

TEST_CASE("non-psd input is rejected") {
  CHECK_THROWS_AS(principal_decomposition({1, 1, -2, 0, 0, 0}), NotPsdError);
}

TEST_CASE("orthotropic model from the reference eigenvalues") {
  PrincipalDecomposition p;
  p.eigenvalues = {1e-9, 0.5e-9, 0.25e-9};
  p.axes = {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  const OrthotropicModel m = orthotropic_from_principal(p, 0.01);
  CHECK(m.Dxx == doctest::Approx(1e-9).epsilon(1e-15));
  CHECK(m.dyy2 == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(m.dzz2 == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("isotropic eigenvalues give unit anisotropy ratios") {
  PrincipalDecomposition p;
  p.eigenvalues = {3.0, 3.0, 3.0};
  const OrthotropicModel m = orthotropic_from_principal(p, 1.0);
  CHECK(m.dyy2 == 1.0);
  CHECK(m.dzz2 == 1.0);
}

TEST_CASE("zero eigenvalue is outside the solver's domain") {
  PrincipalDecomposition p;
  p.eigenvalues = {1.0, 1.0, 0.0};
  CHECK_THROWS_AS(orthotropic_from_principal(p, 1.0), ZeroEigenvalueError);
}

TEST_CASE("axis order override") {
  PrincipalDecomposition p;
  p.eigenvalues = {4.0, 2.0, 1.0};
  const OrthotropicModel m = orthotropic_from_principal(p, 1.0, {2, 1, 0});
  CHECK(m.Dxx == 1.0);
  CHECK(m.dyy2 == doctest::Approx(0.5));
  CHECK(m.dzz2 == doctest::Approx(0.25));
}

TEST_CASE("cube equivalent: doubled side quarters the diffusivity") {
  const CubeEquivalent eq = cube_equivalent({0.01, 0.02, 0.01, 1e-9, 1e-9, 1e-9});
  CHECK(eq.model.Dyy() == doctest::Approx(0.25e-9).epsilon(1e-14));
  CHECK(eq.model.Dzz() == doctest::Approx(1e-9).epsilon(1e-14));
  CHECK(eq.map.sy == doctest::Approx(0.5));
  CHECK(eq.map.sz == doctest::Approx(1.0));
}

TEST_CASE("cube equivalent of a cube is the identity") {
  const CubeEquivalent eq = cube_equivalent({0.01, 0.01, 0.01, 1e-9, 2e-9, 3e-9});
  CHECK(eq.map.identity());
  CHECK(eq.model.Dyy() == doctest::Approx(2e-9).epsilon(1e-14));
  CHECK(eq.model.Dzz() == doctest::Approx(3e-9).epsilon(1e-14));
}

TEST_CASE("cube equivalent: shrunken sides amplify diffusivities") {
  const double L = 0.01, D = 1e-9;
  const CubeEquivalent eq = cube_equivalent({L, L / 2.0, L / 4.0, D, D, D});
  CHECK(eq.model.Dyy() == doctest::Approx(4.0 * D).epsilon(1e-14));
  CHECK(eq.model.Dzz() == doctest::Approx(16.0 * D).epsilon(1e-14));
  // map round trip
  const auto p = eq.map.to_physical(eq.map.to_cube({0.003, 0.001, 0.002}));
  CHECK(p[0] == doctest::Approx(0.003).epsilon(1e-15));
  CHECK(p[1] == doctest::Approx(0.001).epsilon(1e-15));
  CHECK(p[2] == doctest::Approx(0.002).epsilon(1e-15));
}

TEST_CASE("diffusive time scales reproduce the reference values") {
  const OrthotropicModel m(0.01, 1e-9, 2.0, 4.0);
  const TimeScales ts = diffusive_time_scales(m);
  CHECK(ts.Tx_star == doctest::Approx(25000.0).epsilon(1e-12));
  CHECK(ts.Ty_star == doctest::Approx(50000.0).epsilon(1e-12));
  CHECK(ts.Tz_star == doctest::Approx(100000.0).epsilon(1e-12));
  // exact ratio identities
  CHECK(ts.Ty_star / ts.Tx_star == m.dyy2);
  CHECK(ts.Tz_star / ts.Tx_star == m.dzz2);
}

TEST_CASE("time scales: isotropic equality and quadratic growth in L") {
  const OrthotropicModel iso(0.01, 1e-9, 1.0, 1.0);
  const TimeScales t1 = diffusive_time_scales(iso);
  CHECK(t1.Tx_star == t1.Ty_star);
  CHECK(t1.Tx_star == t1.Tz_star);
  const OrthotropicModel twice(0.02, 1e-9, 1.0, 1.0);
  CHECK(diffusive_time_scales(twice).Tx_star == doctest::Approx(4.0 * t1.Tx_star));
}
