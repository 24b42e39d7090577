#pragma once

#include <array>
#include <optional>
#include <string>

namespace orthocube {

/// Symmetric 3x3 diffusivity tensor, stored by its six independent entries
/// in the layout  [a d e; d b f; e f c]  (units m^2/s).
struct SymmetricTensor3 {
  double a = 0.0, b = 0.0, c = 0.0;  // diagonal
  double d = 0.0, e = 0.0, f = 0.0;  // off-diagonal

  double operator()(int i, int j) const;
  double max_abs() const;
};

/// Result of the Sylvester positive-semidefiniteness check. The seven minors
/// are, in order: a, b, c, ab-d^2, bc-f^2, ac-e^2, det.
struct PsdVerdict {
  bool is_psd = false;
  bool all_zero = false;  // every minor exactly zero: no transport at all
  std::optional<std::string> failing_minor;
  std::array<double, 7> minors{};

  static const std::array<const char*, 7>& minor_labels();
};

/// Eigenvalues (descending) and orthonormal principal axes (columns).
struct PrincipalDecomposition {
  std::array<double, 3> eigenvalues{};
  std::array<std::array<double, 3>, 3> axes{};  // axes[r][c], column c = eigenvector c
  bool degenerate = false;                      // repeated eigenvalue: basis not unique
};

/// Canonical problem definition: cube side L, diffusivity along x, and the
/// anisotropy ratios d2yy = Dxx/Dyy, d2zz = Dxx/Dzz.
struct OrthotropicModel {
  double L;
  double Dxx;
  double dyy2;
  double dzz2;

  OrthotropicModel(double L_, double Dxx_, double dyy2_, double dzz2_);

  double Dyy() const { return Dxx / dyy2; }
  double Dzz() const { return Dxx / dzz2; }
};

/// Rectangular parallelepiped with diagonal diffusivities; the x side is the
/// cube side L of the equivalent problem.
struct ParallelepipedSpec {
  double Lx;  // becomes the cube side
  double Ly_bar;
  double Lz_bar;
  double Dxx_bar;
  double Dyy_bar;
  double Dzz_bar;
};

/// Invertible coordinate map between the physical parallelepiped and the
/// canonical cube: x = x_bar, y = sy * y_bar, z = sz * z_bar.
struct CoordinateMap {
  double sy = 1.0;  // L / Ly_bar
  double sz = 1.0;  // L / Lz_bar

  std::array<double, 3> to_cube(const std::array<double, 3>& p_bar) const {
    return {p_bar[0], sy * p_bar[1], sz * p_bar[2]};
  }
  std::array<double, 3> to_physical(const std::array<double, 3>& p) const {
    return {p[0], p[1] / sy, p[2] / sz};
  }
  bool identity() const { return sy == 1.0 && sz == 1.0; }
};

struct CubeEquivalent {
  OrthotropicModel model;
  CoordinateMap map;
};

/// Diffusive time scales per axis, (L/2)^2 over the directional diffusivity.
struct TimeScales {
  double Tx_star;
  double Ty_star;
  double Tz_star;

  double t_star(double t_seconds) const { return t_seconds / Tx_star; }
  double seconds(double t_star_value) const { return t_star_value * Tx_star; }
};

/// Sylvester criterion on the seven principal minors. Total function; the
/// sign tolerance is 1e-12 * max|entry| (scale-relative, survives unit
/// changes).
PsdVerdict validate_psd(const SymmetricTensor3& t);

/// Analytic symmetric 3x3 eigendecomposition (characteristic cubic solved
/// trigonometrically, one Newton polish per root). Eigenvalues descending;
/// repeated eigenvalues get a deterministic Gram-Schmidt basis and the
/// degenerate flag. Throws NotPsdError when validate_psd fails.
PrincipalDecomposition principal_decomposition(const SymmetricTensor3& t);

/// Build the canonical model from principal diffusivities. axis_order picks
/// which eigenvalue index maps to x, y, z; the default keeps the descending
/// order so dyy2, dzz2 >= 1. Throws ZeroEigenvalueError for singular input.
OrthotropicModel orthotropic_from_principal(const PrincipalDecomposition& p, double L,
                                            const std::array<int, 3>& axis_order = {0, 1, 2});

/// Appendix-style reduction of a rectangular parallelepiped to the unit-side
/// cube problem: Dyy = Dyy_bar * L^2/Ly_bar^2 (z analogous), coordinates
/// scaled by L/Ly_bar, and ICs remapped as
/// Phi(x,y,z) = Phi_bar(x, (Ly_bar/L) y, (Lz_bar/L) z).
CubeEquivalent cube_equivalent(const ParallelepipedSpec& p);

TimeScales diffusive_time_scales(const OrthotropicModel& m);

}  // namespace orthocube
