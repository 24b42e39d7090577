#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "orthocube/field.hpp"
#include "orthocube/initial_condition.hpp"
#include "orthocube/moments.hpp"
#include "orthocube/tensor.hpp"

namespace orthocube {

/// Rectangular box with diagonal diffusivities. The cube problem is the
/// special case lengths = {L,L,L}; the box form exists so the reference
/// solver can run directly on a parallelepiped and be compared against the
/// mapped-cube series solution.
struct FdBox {
  std::array<double, 3> lengths;
  std::array<double, 3> D;
};

struct FdBoxConfig {
  FdBox box;
  std::array<int, 3> cells;
  double safety = 0.9;
  std::optional<double> dt;  // explicit step; defaults to safety * stability bound
};

/// Cube-facing configuration: uniform n^3 cells over the model cube.
struct FdConfig {
  OrthotropicModel model;
  int n;
  double safety = 0.9;
  std::optional<double> dt;
};

/// Cell-centered explicit FTCS state. Mirror ghost cells make the no-flux
/// condition exactly conservative.
struct FdState {
  FdBoxConfig cfg;
  std::vector<double> c;  // x-fastest cell values
  double time = 0.0;
  double mass0 = 0.0;

  double dx(int axis) const { return cfg.box.lengths[axis] / cfg.cells[axis]; }
  double cell_volume() const { return dx(0) * dx(1) * dx(2); }
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(k) * cfg.cells[1] + j) * cfg.cells[0] + i;
  }
  double mass() const;  // compensated audit over all cells
};

double fd_stable_dt(const FdBoxConfig& cfg);

/// Box initialization from per-axis interval-mass functions (each of unit
/// total mass over its axis length). Exact for aligned discontinuities.
using AxisMassFn = std::function<double(double, double)>;
FdState fd_init_box(const FdBoxConfig& cfg, const std::array<AxisMassFn, 3>& axis_mass_fns);

/// Box initialization from a pointwise density, cell-averaged by a fixed
/// 4x4x4 Gauss rule per cell.
FdState fd_init_box_general(const FdBoxConfig& cfg,
                            const std::function<double(double, double, double)>& density);

/// Cube initialization from an InitialCondition. Cell values are exact cell
/// averages (closed-form interval masses for Delta/Step/Gaussian, center
/// values for the linear Plane, panel quadrature for custom separable).
/// Throws BadGridError for n < 4. A delta whose center lies on a cell corner
/// is split evenly among the touching cells so symmetric grids stay
/// symmetric.
FdState fd_init(const FdConfig& cfg, const InitialCondition& ic);

/// One explicit step. Throws UnstableTimestepError when dt exceeds the
/// stability bound. scratch must have the same size as state.c.
void fd_step(FdState& state, double dt, std::vector<double>& scratch);

struct FdSample {
  double t = 0.0;
  Field3 field;          // node-interpolated (trilinear from cell centers)
  MomentSet moments;     // midpoint-rule cell moments, mass-normalized
  double mass_rel_drift = 0.0;  // |mass - mass0| / mass0 at this sample
};

/// Advance to t_end with the configured fixed dt, snapshotting at each
/// requested time (linear interpolation between the bracketing steps).
/// sample_times must be ascending and within [0, t_end].
std::vector<FdSample> fd_run(FdState& state, double t_end, const std::vector<double>& sample_times);

/// Node-interpolated view of the current cells.
Field3 fd_node_field(const FdState& state);

/// Midpoint-rule moments of the current cells (mass-normalized, centered).
MomentSet fd_cell_moments(const FdState& state);

}  // namespace orthocube
