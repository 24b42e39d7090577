#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "orthocube/config.hpp"

namespace orthocube {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

/// The full verification suite: derived constants, coefficient oracle
/// equivalence, mass conservation, moment endpoints, analytic-vs-numeric
/// agreement, FD convergence + GCI bounds, short-time free-space agreement,
/// and the parallelepiped equivalence run. Criteria run against the given
/// base configuration (model/IC parameters; grids and times are fixed by the
/// criteria themselves).
std::vector<CriterionResult> run_acceptance(const RunConfig& base, std::ostream* progress);

CriterionResult criterion_table1_constants(const RunConfig& cfg);
CriterionResult criterion_coefficient_oracle(const RunConfig& cfg);
CriterionResult criterion_mass_conservation(const RunConfig& cfg);
CriterionResult criterion_moment_endpoints(const RunConfig& cfg);
CriterionResult criterion_moment_agreement(const RunConfig& cfg);
CriterionResult criterion_fd_convergence_gci(const RunConfig& cfg);
CriterionResult criterion_free_space_short_time(const RunConfig& cfg);
CriterionResult criterion_parallelepiped_equivalence(const RunConfig& cfg);

}  // namespace orthocube
