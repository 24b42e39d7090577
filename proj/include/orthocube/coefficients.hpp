#pragma once

#include <variant>
#include <vector>

#include "orthocube/initial_condition.hpp"
#include "orthocube/tensor.hpp"

namespace orthocube {

/// Per-axis cosine coefficients B_l, H_m, S_n (1/m), indices 0..N.
/// B[0] = H[0] = S[0] = 1/L for unit-mass initial conditions.
struct SeparableCoefficients {
  int N = 0;
  std::vector<double> B, H, S;
};

/// Sparse product coefficients Bbar_{lmn} (1/m^3); entries sorted
/// lexicographically, missing entries are zero.
struct GeneralCoefficients {
  struct Entry {
    int l, m, n;
    double value;
  };
  int N = 0;
  std::vector<Entry> entries;

  double at(int l, int m, int n) const;
  void insert(int l, int m, int n, double value);  // keeps sorted order
};

SeparableCoefficients coefficients_delta(const OrthotropicModel& model, int N);
SeparableCoefficients coefficients_step(const OrthotropicModel& model, double a, int N);
SeparableCoefficients coefficients_gaussian(const OrthotropicModel& model, double sigma_x, int N);
GeneralCoefficients coefficients_plane(const OrthotropicModel& model, double kappa_y,
                                       double kappa_z, int N);

struct QuadratureOptions {
  double rel_tol = 1e-11;   // refinement target on the projection scale
  double accept_tol = 1e-8; // residual beyond which the projection throws
  int max_levels_1d = 22;
  int max_levels_3d = 7;
};

/// Mode projections from numerical integration of the defining triple
/// integral: Bbar_{lmn} = 2^{N0}/L^3 * Int Phi cos cos cos. Separable ICs
/// factor into three 1-D adaptive integrations; general ICs use a tensor
/// Gauss-Legendre grid refined by global panel doubling. The delta is
/// replaced by the narrow-Gaussian surrogate. Every (l,m,n) <= N entry is
/// returned together with its level-to-level error estimate.
struct QuadratureResult {
  GeneralCoefficients coeffs;     // dense: all (N+1)^3 modes
  std::vector<double> abs_error;  // aligned with coeffs.entries
  int levels = 0;
  bool used_separable_path = false;
};
QuadratureResult coefficients_quadrature(const InitialCondition& ic,
                                         const OrthotropicModel& model, int N,
                                         const QuadratureOptions& opts = {});

/// Per-axis quadrature coefficients for custom separable solutions:
/// B_j = 2^{N0j}/L * Int Phi_axis cos(j pi x / L).
SeparableCoefficients separable_coefficients_quadrature(const InitialCondition& ic,
                                                        const OrthotropicModel& model, int N,
                                                        const QuadratureOptions& opts = {});

}  // namespace orthocube
