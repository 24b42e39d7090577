#include "orthocube/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "orthocube/errors.hpp"

namespace orthocube {

std::string fmt_sci17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);  // binary: LF endings everywhere
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  return out;
}

}  // namespace

void write_vtk_structured_points(const std::filesystem::path& path, const Field3& field,
                                 const std::string& scalar_name) {
  std::ofstream out = open_out(path);
  out << "# vtk DataFile Version 3.0\n";
  out << "orthocube field t=" << fmt_sci17(field.time) << " s\n";
  out << "ASCII\n";
  out << "DATASET STRUCTURED_POINTS\n";
  out << "DIMENSIONS " << field.dims[0] << " " << field.dims[1] << " " << field.dims[2] << "\n";
  out << "ORIGIN 0 0 0\n";
  out << "SPACING " << fmt_sci17(field.spacing[0]) << " " << fmt_sci17(field.spacing[1]) << " "
      << fmt_sci17(field.spacing[2]) << "\n";
  out << "POINT_DATA " << field.values.size() << "\n";
  out << "SCALARS " << scalar_name << " double 1\n";
  out << "LOOKUP_TABLE default\n";
  for (double v : field.values) out << fmt_sci17(v) << "\n";
}

void write_moments_csv(const std::filesystem::path& path, const std::vector<MomentCsvRow>& rows) {
  std::ofstream out = open_out(path);
  out << "t_seconds,t_star,m0,mx_star,my_star,mz_star,Mxx_star,Myy_star,Mzz_star\n";
  for (const auto& r : rows) {
    out << fmt_sci17(r.t_seconds) << "," << fmt_sci17(r.t_star) << "," << fmt_sci17(r.m0) << ","
        << fmt_sci17(r.mx_star) << "," << fmt_sci17(r.my_star) << "," << fmt_sci17(r.mz_star)
        << "," << fmt_sci17(r.Mxx_star) << "," << fmt_sci17(r.Myy_star) << ","
        << fmt_sci17(r.Mzz_star) << "\n";
  }
}

std::vector<MomentCsvRow> read_moments_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw Error(path.string() + ": empty moments csv");
  std::vector<MomentCsvRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    MomentCsvRow r;
    char comma;
    ss >> r.t_seconds >> comma >> r.t_star >> comma >> r.m0 >> comma >> r.mx_star >> comma >>
        r.my_star >> comma >> r.mz_star >> comma >> r.Mxx_star >> comma >> r.Myy_star >> comma >>
        r.Mzz_star;
    if (ss.fail()) throw Error(path.string() + ": malformed moments csv row");
    rows.push_back(r);
  }
  return rows;
}

void write_separable_coefficients_csv(const std::filesystem::path& path,
                                      const SeparableCoefficients& c) {
  std::ofstream out = open_out(path);
  out << "index,B,H,S\n";
  for (int j = 0; j <= c.N; ++j) {
    out << j << "," << fmt_sci17(c.B[j]) << "," << fmt_sci17(c.H[j]) << "," << fmt_sci17(c.S[j])
        << "\n";
  }
}

void write_general_coefficients_csv(const std::filesystem::path& path,
                                    const GeneralCoefficients& c) {
  std::ofstream out = open_out(path);
  out << "l,m,n,value\n";
  for (const auto& e : c.entries) {
    out << e.l << "," << e.m << "," << e.n << "," << fmt_sci17(e.value) << "\n";
  }
}

nlohmann::ordered_json gci_report_to_json(const GciReport& rep) {
  nlohmann::ordered_json j;
  j["r21"] = rep.r21;
  j["r32"] = rep.r32;
  j["p_global"] = rep.p_global;
  j["excluded_fraction"] = rep.excluded_fraction;
  j["points"] = nlohmann::ordered_json::array();
  for (const auto& p : rep.points) {
    nlohmann::ordered_json pj;
    pj["index"] = p.index;
    pj["eps21"] = p.eps21;
    pj["eps32"] = p.eps32;
    pj["s"] = p.s;
    pj["p_local"] = p.p_local;
    pj["gci"] = p.gci;
    pj["mu2"] = p.mu2;
    pj["oscillatory"] = p.oscillatory;
    pj["excluded"] = p.excluded;
    j["points"].push_back(pj);
  }
  j["summary"] = {{"gci_max", rep.gci_max}, {"mu2_max", rep.mu2_max}};
  return j;
}

void write_gci_report(const std::filesystem::path& path, const GciReport& rep) {
  std::ofstream out = open_out(path);
  out << gci_report_to_json(rep).dump(2) << "\n";
}

std::uint64_t fnv1a64_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string() + " for checksum");
  std::uint64_t hash = 14695981039346656037ull;
  char buf[4096];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      hash ^= static_cast<unsigned char>(buf[i]);
      hash *= 1099511628211ull;
    }
    if (in.eof()) break;
  }
  return hash;
}

}  // namespace orthocube
