#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace orthocube {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Neumaier-compensated accumulator. Summation order is the caller's
/// responsibility; all library loops add terms in ascending index order so
/// results are reproducible across platforms.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// cos(l*pi/2) evaluated by parity so odd modes vanish exactly.
inline double cos_half_pi(int l) {
  switch (l & 3) {
    case 0: return 1.0;
    case 2: return -1.0;
    default: return 0.0;
  }
}

/// (-1)^l without calling pow.
inline double minus_one_pow(int l) { return (l % 2 == 0) ? 1.0 : -1.0; }

/// Gauss-Legendre rule on [-1, 1]. Nodes/weights are computed by Newton
/// iteration on P_n (no tabulated constants) and cached per order.
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  static const GaussLegendreRule& of(int n);
};

/// 16-point rule, the workhorse of every panel quadrature here.
struct GaussLegendre16 {
  std::array<double, 16> nodes;
  std::array<double, 16> weights;
  static const GaussLegendre16& get();
};

/// Integrate f over [a, b] with a single 16-point panel.
double gl16_panel(const std::function<double(double)>& f, double a, double b);

/// Re[erf(u + i v)] * exp(-v^2), evaluated jointly so the result stays
/// bounded for arbitrarily large |v| (the raw erf grows like exp(v^2 - u^2)).
/// Absolute error is at the few-ulp level (~1e-16) over the full range used
/// by the truncated-Gaussian coefficients.
double erf_re_scaled(double u, double v);

/// Positions of the j-th of n uniformly spaced nodes spanning [0, len].
inline double node_coord(int j, int n, double len) {
  return len * static_cast<double>(j) / static_cast<double>(n - 1);
}

}  // namespace orthocube
