#include "orthocube/tensor.hpp"

#include <algorithm>
#include <cmath>

#include "orthocube/errors.hpp"
#include "orthocube/numerics.hpp"

namespace orthocube {

double SymmetricTensor3::operator()(int i, int j) const {
  const double m[3][3] = {{a, d, e}, {d, b, f}, {e, f, c}};
  return m[i][j];
}

double SymmetricTensor3::max_abs() const {
  return std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d), std::abs(e), std::abs(f)});
}

const std::array<const char*, 7>& PsdVerdict::minor_labels() {
  static const std::array<const char*, 7> labels = {"a",     "b",     "c",    "ab-d^2",
                                                    "bc-f^2", "ac-e^2", "det"};
  return labels;
}

PsdVerdict validate_psd(const SymmetricTensor3& t) {
  PsdVerdict v;
  v.minors[0] = t.a;
  v.minors[1] = t.b;
  v.minors[2] = t.c;
  v.minors[3] = t.a * t.b - t.d * t.d;
  v.minors[4] = t.b * t.c - t.f * t.f;
  v.minors[5] = t.a * t.c - t.e * t.e;
  v.minors[6] = t.a * (t.b * t.c - t.f * t.f) - t.d * (t.d * t.c - t.e * t.f) +
                t.e * (t.d * t.f - t.b * t.e);

  const double tol = 1e-12 * t.max_abs();
  v.is_psd = true;
  v.all_zero = true;
  for (std::size_t i = 0; i < v.minors.size(); ++i) {
    if (v.minors[i] != 0.0) v.all_zero = false;
    if (v.minors[i] < -tol && v.is_psd) {
      v.is_psd = false;
      v.failing_minor = PsdVerdict::minor_labels()[i];
    }
  }
  return v;
}

OrthotropicModel::OrthotropicModel(double L_, double Dxx_, double dyy2_, double dzz2_)
    : L(L_), Dxx(Dxx_), dyy2(dyy2_), dzz2(dzz2_) {
  if (!(L > 0.0)) throw Error("OrthotropicModel: L must be > 0");
  if (!(Dxx > 0.0)) throw Error("OrthotropicModel: Dxx must be > 0");
  if (!(dyy2 > 0.0) || !(dzz2 > 0.0))
    throw Error("OrthotropicModel: anisotropy ratios must be > 0");
}

namespace {

using Vec3 = std::array<double, 3>;

Vec3 cross(const Vec3& u, const Vec3& v) {
  return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

double dot(const Vec3& u, const Vec3& v) { return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]; }

double norm(const Vec3& u) { return std::sqrt(dot(u, u)); }

Vec3 normalized(const Vec3& u) {
  const double n = norm(u);
  return {u[0] / n, u[1] / n, u[2] / n};
}

// Characteristic polynomial p(x) = det(A - x I) and derivative, for the
// Newton polish step.
std::pair<double, double> char_poly(const SymmetricTensor3& t, double x) {
  const double c2 = -(t.a + t.b + t.c);
  const double c1 = t.a * t.b + t.b * t.c + t.a * t.c - t.d * t.d - t.e * t.e - t.f * t.f;
  const double c0 = -(t.a * (t.b * t.c - t.f * t.f) - t.d * (t.d * t.c - t.e * t.f) +
                      t.e * (t.d * t.f - t.b * t.e));
  // p(x) = -x^3 - c2 x^2 - ... sign convention: det(A - xI) = -x^3 + tr x^2 - ...
  const double p = -x * x * x - c2 * x * x - c1 * x - c0;
  const double dp = -3.0 * x * x - 2.0 * c2 * x - c1;
  return {p, dp};
}

// Eigenvector for an isolated eigenvalue: largest cross product of two rows
// of (A - lambda I).
Vec3 eigenvector_isolated(const SymmetricTensor3& t, double lambda) {
  const Vec3 r0 = {t.a - lambda, t.d, t.e};
  const Vec3 r1 = {t.d, t.b - lambda, t.f};
  const Vec3 r2 = {t.e, t.f, t.c - lambda};
  const Vec3 c01 = cross(r0, r1);
  const Vec3 c02 = cross(r0, r2);
  const Vec3 c12 = cross(r1, r2);
  const double n01 = norm(c01), n02 = norm(c02), n12 = norm(c12);
  if (n01 >= n02 && n01 >= n12 && n01 > 0.0) return normalized(c01);
  if (n02 >= n12 && n02 > 0.0) return normalized(c02);
  if (n12 > 0.0) return normalized(c12);
  return {1.0, 0.0, 0.0};
}

// Deterministic sign convention: the largest-magnitude component is positive.
Vec3 fix_sign(Vec3 v) {
  int imax = 0;
  for (int i = 1; i < 3; ++i) {
    if (std::abs(v[i]) > std::abs(v[imax])) imax = i;
  }
  if (v[imax] < 0.0) {
    for (auto& x : v) x = -x;
  }
  return v;
}

Vec3 gram_schmidt(Vec3 v, const Vec3& against) {
  const double p = dot(v, against);
  for (int i = 0; i < 3; ++i) v[i] -= p * against[i];
  return v;
}

}  // namespace

PrincipalDecomposition principal_decomposition(const SymmetricTensor3& t) {
  const PsdVerdict verdict = validate_psd(t);
  if (!verdict.is_psd) {
    throw NotPsdError("principal_decomposition: tensor is not positive semidefinite (minor " +
                      *verdict.failing_minor + " negative)");
  }

  PrincipalDecomposition out;
  const double scale = t.max_abs();
  if (scale == 0.0) {
    out.eigenvalues = {0.0, 0.0, 0.0};
    out.axes = {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    out.degenerate = true;
    return out;
  }

  const double q = (t.a + t.b + t.c) / 3.0;
  const double p2 = (t.a - q) * (t.a - q) + (t.b - q) * (t.b - q) + (t.c - q) * (t.c - q) +
                    2.0 * (t.d * t.d + t.e * t.e + t.f * t.f);
  std::array<double, 3> eig;
  if (p2 <= 1e-28 * scale * scale) {
    eig = {q, q, q};  // isotropic
  } else {
    const double p = std::sqrt(p2 / 6.0);
    // r = det((A - qI)/p) / 2, clamped against roundoff
    const SymmetricTensor3 bq{(t.a - q) / p, (t.b - q) / p, (t.c - q) / p,
                              t.d / p,       t.e / p,       t.f / p};
    const double detb = bq.a * (bq.b * bq.c - bq.f * bq.f) - bq.d * (bq.d * bq.c - bq.e * bq.f) +
                        bq.e * (bq.d * bq.f - bq.b * bq.e);
    const double r = std::clamp(detb / 2.0, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    eig[0] = q + 2.0 * p * std::cos(phi);
    eig[2] = q + 2.0 * p * std::cos(phi + 2.0 * kPi / 3.0);
    eig[1] = 3.0 * q - eig[0] - eig[2];
    // one Newton step per root against the exact characteristic polynomial
    for (auto& lam : eig) {
      const auto [pv, dpv] = char_poly(t, lam);
      if (dpv != 0.0) {
        const double dl = pv / dpv;
        if (std::abs(dl) < 1e-8 * scale) lam -= dl;
      }
    }
    std::sort(eig.begin(), eig.end(), std::greater<double>());
  }
  out.eigenvalues = eig;

  const double gap_tol = 1e-8 * std::max(scale, std::abs(eig[0]));
  const bool deg01 = std::abs(eig[0] - eig[1]) <= gap_tol;
  const bool deg12 = std::abs(eig[1] - eig[2]) <= gap_tol;
  out.degenerate = deg01 || deg12;

  std::array<Vec3, 3> cols;
  if (deg01 && deg12) {
    cols = {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  } else if (!out.degenerate) {
    cols[0] = eigenvector_isolated(t, eig[0]);
    cols[1] = normalized(gram_schmidt(eigenvector_isolated(t, eig[1]), cols[0]));
    cols[2] = cross(cols[0], cols[1]);
  } else {
    // One isolated eigenvalue; span the repeated pair with a deterministic
    // Gram-Schmidt against the seed basis e1, e2, e3.
    const int isolated = deg01 ? 2 : 0;
    const Vec3 viso = eigenvector_isolated(t, eig[isolated]);
    Vec3 u{};
    for (const Vec3 seed : {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}}) {
      Vec3 cand = gram_schmidt(seed, viso);
      if (norm(cand) > 0.5) {
        u = normalized(cand);
        break;
      }
    }
    const Vec3 w = cross(viso, u);
    if (isolated == 0) {
      cols = {viso, u, w};
    } else {
      cols = {u, w, viso};
    }
  }

  for (auto& c : cols) c = fix_sign(normalized(c));
  // keep a proper rotation (det +1) after sign fixing
  if (dot(cross(cols[0], cols[1]), cols[2]) < 0.0) {
    for (auto& x : cols[2]) x = -x;
  }
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) out.axes[r][c] = cols[c][r];
  }
  return out;
}

OrthotropicModel orthotropic_from_principal(const PrincipalDecomposition& p, double L,
                                            const std::array<int, 3>& axis_order) {
  const double ex = p.eigenvalues[axis_order[0]];
  const double ey = p.eigenvalues[axis_order[1]];
  const double ez = p.eigenvalues[axis_order[2]];
  if (!(ex > 0.0) || !(ey > 0.0) || !(ez > 0.0)) {
    throw ZeroEigenvalueError(
        "orthotropic_from_principal: zero eigenvalue; singular transport is outside the series "
        "solver's domain");
  }
  return OrthotropicModel(L, ex, ex / ey, ex / ez);
}

CubeEquivalent cube_equivalent(const ParallelepipedSpec& p) {
  if (!(p.Lx > 0.0) || !(p.Ly_bar > 0.0) || !(p.Lz_bar > 0.0))
    throw Error("cube_equivalent: all side lengths must be > 0");
  if (!(p.Dxx_bar > 0.0) || !(p.Dyy_bar > 0.0) || !(p.Dzz_bar > 0.0))
    throw Error("cube_equivalent: all diffusivities must be > 0");

  const double L = p.Lx;
  const double Dyy = p.Dyy_bar * (L * L) / (p.Ly_bar * p.Ly_bar);
  const double Dzz = p.Dzz_bar * (L * L) / (p.Lz_bar * p.Lz_bar);
  CubeEquivalent out{OrthotropicModel(L, p.Dxx_bar, p.Dxx_bar / Dyy, p.Dxx_bar / Dzz),
                     CoordinateMap{L / p.Ly_bar, L / p.Lz_bar}};
  return out;
}

TimeScales diffusive_time_scales(const OrthotropicModel& m) {
  const double Tx = (m.L / 2.0) * (m.L / 2.0) / m.Dxx;
  return TimeScales{Tx, Tx * m.dyy2, Tx * m.dzz2};
}

}  // namespace orthocube
