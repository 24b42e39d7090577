#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "orthocube/coefficients.hpp"
#include "orthocube/field.hpp"
#include "orthocube/gci.hpp"
#include "orthocube/moments.hpp"

#include "json.hpp"

namespace orthocube {

/// Scientific notation with 17 significant digits, C locale, no trailing
/// whitespace. Every numeric file goes through this so outputs are
/// byte-reproducible.
std::string fmt_sci17(double v);

/// Legacy-ASCII VTK STRUCTURED_POINTS with one double SCALARS array,
/// point data in x-fastest order.
void write_vtk_structured_points(const std::filesystem::path& path, const Field3& field,
                                 const std::string& scalar_name = "concentration");

struct MomentCsvRow {
  double t_seconds = 0.0;
  double t_star = 0.0;
  double m0 = 0.0;
  double mx_star = 0.0, my_star = 0.0, mz_star = 0.0;
  double Mxx_star = 0.0, Myy_star = 0.0, Mzz_star = 0.0;
};

void write_moments_csv(const std::filesystem::path& path, const std::vector<MomentCsvRow>& rows);
std::vector<MomentCsvRow> read_moments_csv(const std::filesystem::path& path);

void write_separable_coefficients_csv(const std::filesystem::path& path,
                                      const SeparableCoefficients& c);
void write_general_coefficients_csv(const std::filesystem::path& path,
                                    const GeneralCoefficients& c);

nlohmann::ordered_json gci_report_to_json(const GciReport& rep);
void write_gci_report(const std::filesystem::path& path, const GciReport& rep);

/// FNV-1a 64-bit over a file's bytes; the manifest checksum.
std::uint64_t fnv1a64_file(const std::filesystem::path& path);

}  // namespace orthocube
