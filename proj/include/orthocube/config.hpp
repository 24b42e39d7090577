#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "orthocube/initial_condition.hpp"
#include "orthocube/tensor.hpp"

#include "json.hpp"

namespace orthocube {

/// Fully resolved run configuration. Defaults reproduce the reference
/// parameter set: L = 0.01 m, Dxx = 1e-9 m^2/s, d2yy = 2, d2zz = 4,
/// a = 0.5 L, sigma_x = 0.1 L, kappa_y = 20, kappa_z = 40, N = 20.
struct RunConfig {
  // model block (either direct orthotropic values or a full tensor that is
  // reduced to principal axes)
  double L = 0.01;
  double Dxx = 1e-9;
  double dyy2 = 2.0;
  double dzz2 = 4.0;
  std::optional<SymmetricTensor3> tensor;

  // ic block
  std::string ic_case = "delta";  // delta | step | gaussian | plane
  double a = 0.005;
  double sigma_x = 0.001;
  double kappa_y = 20.0;
  double kappa_z = 40.0;

  // series block
  int n_terms = 20;

  // fd block
  std::vector<int> fd_grids;  // empty: no reference solve
  double fd_safety = 0.9;

  // times block, resolved to t* units
  std::vector<double> times_star = {0.01, 0.025, 0.05, 0.1, 0.15, 0.25, 0.4, 0.6, 1.0, 2.0};

  // outputs block
  std::string out_dir = "out";
  std::vector<double> vtk_times_star;
  std::array<int, 3> vtk_dims = {65, 65, 65};
  bool write_coefficients = false;

  // optional parallelepiped block for the transform subcommand
  std::optional<ParallelepipedSpec> parallelepiped;

  OrthotropicModel model() const;
  InitialCondition ic() const;
  nlohmann::ordered_json echo() const;  // resolved-config round trip
};

/// Parse and validate. Unknown keys anywhere are ConfigErrors carrying the
/// offending path (fail-closed).
RunConfig parse_config(const nlohmann::json& j);
RunConfig parse_config_file(const std::filesystem::path& path);

}  // namespace orthocube
