#include "orthocube/numerics.hpp"

#include <array>
#include <cmath>
#include <map>

namespace orthocube {

namespace {

// Legendre P_n(x) and derivative via the three-term recurrence.
std::pair<double, double> legendre_p(int n, double x) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  const double dp = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

GaussLegendreRule build_gl(int n) {
  GaussLegendreRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Chebyshev-like initial guess, polished by Newton.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre_p(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const auto [p, dp] = legendre_p(n, x);
    (void)p;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace

const GaussLegendreRule& GaussLegendreRule::of(int n) {
  static std::map<int, GaussLegendreRule> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_gl(n)).first;
  return it->second;
}

const GaussLegendre16& GaussLegendre16::get() {
  static const GaussLegendre16 rule = [] {
    const GaussLegendreRule& r = GaussLegendreRule::of(16);
    GaussLegendre16 out{};
    for (int i = 0; i < 16; ++i) {
      out.nodes[i] = r.nodes[i];
      out.weights[i] = r.weights[i];
    }
    return out;
  }();
  return rule;
}

double gl16_panel(const std::function<double(double)>& f, double a, double b) {
  const auto& rule = GaussLegendre16::get();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  CompensatedSum acc;
  for (int i = 0; i < 16; ++i) {
    acc.add(rule.weights[i] * f(mid + half * rule.nodes[i]));
  }
  return acc.value() * half;
}

// Trigonometric series of Abramowitz & Stegun 7.1.29 with exp(-v^2) folded
// into every term: exp(-k^2/4 - v^2) cosh(kv) and sinh(kv) become sums and
// differences of exp(-(v -/+ k/2)^2), each bounded by 1, so no intermediate
// overflows regardless of v. Intrinsic formula error ~1.6e-16.
double erf_re_scaled(double u, double v) {
  if (v == 0.0) return std::erf(u);
  if (u == 0.0) return 0.0;  // Re[erf(iv)] = 0

  const double ev2 = std::exp(-v * v);
  const double eu2 = std::exp(-u * u);
  double total = std::erf(u) * ev2;
  if (eu2 == 0.0) return total;  // series contribution underflows

  const double c2uv = std::cos(2.0 * u * v);
  const double s2uv = std::sin(2.0 * u * v);
  total += eu2 * ev2 / (2.0 * kPi * u) * (1.0 - c2uv);

  const int kmax = static_cast<int>(2.0 * std::abs(v)) + 18;
  CompensatedSum series;
  for (int k = 1; k <= kmax; ++k) {
    const double em = std::exp(-(v - 0.5 * k) * (v - 0.5 * k));
    const double ep = std::exp(-(v + 0.5 * k) * (v + 0.5 * k));
    const double ch = 0.5 * (em + ep);  // exp(-k^2/4 - v^2) cosh(kv)
    const double sh = 0.5 * (em - ep);  // exp(-k^2/4 - v^2) sinh(kv)
    const double ek = std::exp(-0.25 * k * k);
    series.add((2.0 * u * (ev2 * ek - c2uv * ch) + k * s2uv * sh) /
               (k * k + 4.0 * u * u));
  }
  total += (2.0 / kPi) * eu2 * series.value();
  return total;
}

}  // namespace orthocube
