#include "orthocube/gci.hpp"

#include <algorithm>
#include <cmath>

#include "orthocube/errors.hpp"
#include "orthocube/moments.hpp"
#include "orthocube/numerics.hpp"

namespace orthocube {

namespace {

constexpr double kOrderTol = 1e-10;
constexpr int kOrderMaxIter = 200;
constexpr double kOrderMin = 1e-2;  // accepted local orders for the global average
constexpr double kOrderMax = 20.0;
constexpr double kTinyFine = 1e-30;  // |phi1| below this cannot anchor e_a

}  // namespace

double observed_order(double eps32, double eps21, double r21, double r32) {
  if (eps21 == 0.0 || eps32 == 0.0) throw Error("observed_order: eps values must be nonzero");
  if (!(r21 > 1.0) || !(r32 > 1.0)) throw Error("observed_order: refinement ratios must be > 1");
  const double s = (eps32 * eps21 > 0.0) ? 1.0 : -1.0;
  const double log_ratio = std::log(std::abs(eps32 / eps21));
  double P = std::abs(log_ratio) / std::log(r21);
  if (P == 0.0) P = 1.0;  // ratio exactly 1; start the iteration off the trivial point
  double prev_delta = 0.0;
  for (int it = 0; it < kOrderMaxIter; ++it) {
    const double a21 = std::pow(r21, P) - s;
    const double a32 = std::pow(r32, P) - s;
    if (!(a21 > 0.0) || !(a32 > 0.0)) {
      throw NoConvergenceError("observed_order: iterate left the valid domain");
    }
    double next = std::abs(log_ratio + std::log(a21 / a32)) / std::log(r21);
    double delta = next - P;
    if (it > 0 && delta * prev_delta < 0.0) {
      next = 0.5 * (next + P);  // damp oscillating iterates
      delta = next - P;
    }
    prev_delta = delta;
    P = next;
    if (std::abs(delta) < kOrderTol) return P;
  }
  throw NoConvergenceError("observed_order: no fixed point after 200 iterations");
}

std::optional<double> try_observed_order(double eps32, double eps21, double r21, double r32) {
  try {
    return observed_order(eps32, eps21, r21, r32);
  } catch (const Error&) {
    return std::nullopt;
  }
}

double gci_fine(double phi1, double phi2, double r21, double P) {
  if (phi1 == 0.0) {
    throw ZeroFineValueError("gci_fine: phi1 = 0; use an absolute reference instead");
  }
  if (!(P > 0.0)) throw Error("gci_fine: order must be positive");
  const double e_a = std::abs((phi1 - phi2) / phi1);
  return 1.25 * e_a / (std::pow(r21, P) - 1.0);
}

GciReport local_gci_field(const GridTriple& triple, std::optional<double> m_infinity) {
  const std::size_t n = triple.phi1.size();
  if (triple.phi2.size() != n || triple.phi3.size() != n || n == 0) {
    throw Error("local_gci_field: triple sizes must match and be nonempty");
  }
  if (!(triple.r21 > 1.0) || !(triple.r32 > 1.0)) {
    throw Error("local_gci_field: refinement ratios must be > 1");
  }
  GciReport rep;
  rep.r21 = triple.r21;
  rep.r32 = triple.r32;
  rep.points.resize(n);

  CompensatedSum p_sum;
  std::size_t accepted = 0;
  for (std::size_t i = 0; i < n; ++i) {
    GciPointReport& pt = rep.points[i];
    pt.index = static_cast<int>(i);
    pt.eps21 = triple.phi2[i] - triple.phi1[i];
    pt.eps32 = triple.phi3[i] - triple.phi2[i];
    if (pt.eps21 == 0.0 || pt.eps32 == 0.0) {
      pt.excluded = true;
      continue;
    }
    pt.s = (pt.eps32 * pt.eps21 > 0.0) ? 1 : -1;
    pt.oscillatory = pt.s < 0;
    const auto order = try_observed_order(pt.eps32, pt.eps21, triple.r21, triple.r32);
    if (order && *order >= kOrderMin && *order <= kOrderMax) {
      pt.p_local = *order;
      p_sum.add(*order);
      ++accepted;
    } else {
      pt.excluded = true;
    }
  }
  if (accepted == 0) {
    throw AllPointsDegenerateError("local_gci_field: no point produced an observed order");
  }
  rep.p_global = p_sum.value() / static_cast<double>(accepted);
  rep.excluded_fraction = static_cast<double>(n - accepted) / static_cast<double>(n);

  for (std::size_t i = 0; i < n; ++i) {
    GciPointReport& pt = rep.points[i];
    if (std::abs(triple.phi1[i]) < kTinyFine) {
      pt.excluded = true;  // no relative error is defined here
      continue;
    }
    pt.gci = gci_fine(triple.phi1[i], triple.phi2[i], triple.r21, rep.p_global);
    rep.gci_max = std::max(rep.gci_max, pt.gci);
    if (m_infinity) {
      pt.mu2 = 100.0 * pt.gci * std::abs(triple.phi1[i]) / *m_infinity;
      rep.mu2_max = std::max(rep.mu2_max, pt.mu2);
    }
  }
  return rep;
}

double mu2_percent(double gci_value, const OrthotropicModel& model) {
  return 100.0 * gci_value / m_infinity(model);
}

namespace {

double trilinear(const Field3& f, double x, double y, double z) {
  const auto locate = [&](double pos, int axis, int& i0, double& w) {
    const double u = pos / f.spacing[axis];
    i0 = std::clamp(static_cast<int>(std::floor(u)), 0, f.dims[axis] - 2);
    w = std::clamp(u - i0, 0.0, 1.0);
  };
  int i0, j0, k0;
  double wx, wy, wz;
  locate(x, 0, i0, wx);
  locate(y, 1, j0, wy);
  locate(z, 2, k0, wz);
  double acc = 0.0;
  for (int dk = 0; dk < 2; ++dk) {
    for (int dj = 0; dj < 2; ++dj) {
      for (int di = 0; di < 2; ++di) {
        const double w = (di ? wx : 1.0 - wx) * (dj ? wy : 1.0 - wy) * (dk ? wz : 1.0 - wz);
        acc += w * f.at(i0 + di, j0 + dj, k0 + dk);
      }
    }
  }
  return acc;
}

}  // namespace

GridTriple restrict_to_coarse(const Field3& fine, const Field3& medium, const Field3& coarse) {
  GridTriple t;
  t.r21 = medium.spacing[0] / fine.spacing[0];
  t.r32 = coarse.spacing[0] / medium.spacing[0];
  const std::size_t n =
      static_cast<std::size_t>(coarse.dims[0]) * coarse.dims[1] * coarse.dims[2];
  t.phi1.reserve(n);
  t.phi2.reserve(n);
  t.phi3.reserve(n);
  for (int k = 0; k < coarse.dims[2]; ++k) {
    const double z = k * coarse.spacing[2];
    for (int j = 0; j < coarse.dims[1]; ++j) {
      const double y = j * coarse.spacing[1];
      for (int i = 0; i < coarse.dims[0]; ++i) {
        const double x = i * coarse.spacing[0];
        t.phi1.push_back(trilinear(fine, x, y, z));
        t.phi2.push_back(trilinear(medium, x, y, z));
        t.phi3.push_back(coarse.at(i, j, k));
      }
    }
  }
  return t;
}

}  // namespace orthocube
