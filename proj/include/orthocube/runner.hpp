#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "orthocube/config.hpp"
#include "orthocube/moments.hpp"
#include "orthocube/series.hpp"

#include "json.hpp"

namespace orthocube {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct RunReport {
  nlohmann::ordered_json config_echo;
  TimeScales scales{};
  double c_inf = 0.0;
  double M_inf = 0.0;
  std::vector<std::pair<std::string, std::uint64_t>> files;  // path -> fnv1a64
  std::vector<CheckResult> checks;

  bool all_passed() const;
  nlohmann::ordered_json to_json() const;
};

struct RunOptions {
  bool series_outputs = true;  // moments csv, vtk fields, coefficient csv
  bool fd_outputs = true;      // per-grid reference-solver moment csvs
  bool gci_outputs = true;     // per-observable GCI json + overlay csv
};

/// End-to-end case run: analytic moment table, optional field exports, the
/// reference FD solve per configured grid, and GCI reports with the
/// analytic-vs-FD overlay. Every emitted file lands in cfg.out_dir and in
/// the returned manifest.
RunReport run_case(const RunConfig& cfg, const RunOptions& opts = {});

/// Parallelepiped-to-cube mapping report (transform subcommand). Requires
/// cfg.parallelepiped.
nlohmann::ordered_json transform_report(const RunConfig& cfg);

/// Simpson-integrated mass of the truncated series field at one time.
double series_mass_simpson(const SeriesSolution& sol, double t, int nodes_per_axis);

/// Fraction of (Simpson-weighted) mass carried by negative field values; the
/// truncation diagnostic for under-resolved series.
double negative_mass_fraction(const SeriesSolution& sol, double t, int nodes_per_axis);

}  // namespace orthocube
