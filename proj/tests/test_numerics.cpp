#include <cmath>

#include "doctest.h"
#include "orthocube/numerics.hpp"

using namespace orthocube;

TEST_CASE("gauss-legendre 16 integrates polynomials up to degree 31 exactly") {
  for (int k = 0; k <= 31; ++k) {
    const double got = gl16_panel([k](double x) { return std::pow(x, k); }, 0.0, 1.0);
    CHECK(got == doctest::Approx(1.0 / (k + 1)).epsilon(1e-13));
  }
  // a stretched panel
  const double got = gl16_panel([](double x) { return std::cos(x); }, 0.0, 1.3);
  CHECK(got == doctest::Approx(std::sin(1.3)).epsilon(1e-14));
}

TEST_CASE("gauss-legendre low orders from the shared builder") {
  const auto& r4 = GaussLegendreRule::of(4);
  double acc = 0.0;
  for (int i = 0; i < 4; ++i) acc += r4.weights[i] * std::pow(r4.nodes[i], 6);
  CHECK(acc == doctest::Approx(2.0 / 7.0).epsilon(1e-14));  // exact through degree 7
}

TEST_CASE("compensated summation survives heavy cancellation") {
  CompensatedSum s;
  s.add(1.0);
  for (int i = 0; i < 10000; ++i) s.add(1e-17);
  s.add(-1.0);
  CHECK(s.value() == doctest::Approx(1e-13).epsilon(1e-10));
}

TEST_CASE("parity helpers are exact") {
  CHECK(cos_half_pi(0) == 1.0);
  CHECK(cos_half_pi(1) == 0.0);
  CHECK(cos_half_pi(2) == -1.0);
  CHECK(cos_half_pi(3) == 0.0);
  CHECK(cos_half_pi(4) == 1.0);
  CHECK(minus_one_pow(7) == -1.0);
  CHECK(minus_one_pow(8) == 1.0);
}

TEST_CASE("scaled complex erf against an independent high-precision table") {
  // Re[erf(u+iv)] * exp(-v^2), reference values from 40-digit arithmetic.
  struct Row {
    double u, v, want;
  };
  const Row table[] = {
      {0.05, 0.0, 0.056371977797016627},
      {0.05, 3.0, 0.055530755066796105},
      {0.3536, 0.9, 0.35846013452158906},
      {1.0, 0.5, 0.74041348088840642},
      {1.0, 2.0, -0.0098289697627628649},
      {2.0, 0.0001, 0.99532225547906983},
      {3.5355339059327378, 0.2221441469, 0.95184984085837632},
      {3.5355339059327378, 2.221441469079183, 0.0071923102951689648},
      {5.0, 1.5707963267948966, 0.084804972472523605},
      {7.0710678118654755, 1.1107207345395915, 0.29121293321402089},
      {20.0, 5.0, 1.3887943864964021e-11},
      {100.0, 10.0, 3.7200759760208360e-44},
      {3535.533905932738, 0.0002221441469079183, 0.99999995065197921},
      {0.7, 22.21441469079183, -0.0052986088007555368},
      {3.5355339059327378, 22.21441469079183, -1.4733793055928879e-8},
  };
  for (const Row& row : table) {
    CAPTURE(row.u);
    CAPTURE(row.v);
    CHECK(std::abs(erf_re_scaled(row.u, row.v) - row.want) < 1e-13);
  }
  // tight relative agreement where the value is not absurdly small
  for (const Row& row : table) {
    if (std::abs(row.want) > 1e-10) {
      CHECK(erf_re_scaled(row.u, row.v) ==
            doctest::Approx(row.want).epsilon(1e-12));
    }
  }
}

TEST_CASE("scaled erf reduces to std::erf on the real axis") {
  for (double u : {0.01, 0.5, 1.0, 2.5, 10.0}) {
    CHECK(erf_re_scaled(u, 0.0) == std::erf(u));
  }
}
