#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "orthocube/io.hpp"

using namespace orthocube;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path tmp_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "orthocube_io_test";
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("seventeen significant digits, C locale") {
  CHECK(fmt_sci17(1.0) == "1.0000000000000000e+00");
  CHECK(fmt_sci17(-0.25) == "-2.5000000000000000e-01");
  CHECK(fmt_sci17(8.333333333333333e-06) == "8.3333333333333337e-06");
}

TEST_CASE("vtk structured points golden file") {
  Field3 f = Field3::zeros({2, 2, 2}, {0.01, 0.01, 0.01}, 2500.0);
  for (std::size_t q = 0; q < f.values.size(); ++q) f.values[q] = 1e6 + q;
  const auto path = tmp_dir() / "field.vtk";
  write_vtk_structured_points(path, f);
  const std::string want =
      "# vtk DataFile Version 3.0\n"
      "orthocube field t=2.5000000000000000e+03 s\n"
      "ASCII\n"
      "DATASET STRUCTURED_POINTS\n"
      "DIMENSIONS 2 2 2\n"
      "ORIGIN 0 0 0\n"
      "SPACING 1.0000000000000000e-02 1.0000000000000000e-02 1.0000000000000000e-02\n"
      "POINT_DATA 8\n"
      "SCALARS concentration double 1\n"
      "LOOKUP_TABLE default\n"
      "1.0000000000000000e+06\n"
      "1.0000010000000000e+06\n"
      "1.0000020000000000e+06\n"
      "1.0000030000000000e+06\n"
      "1.0000040000000000e+06\n"
      "1.0000050000000000e+06\n"
      "1.0000060000000000e+06\n"
      "1.0000070000000000e+06\n";
  CHECK(slurp(path) == want);
}

TEST_CASE("moments csv round trip with exact header") {
  const auto path = tmp_dir() / "moments.csv";
  std::vector<MomentCsvRow> rows = {{2500.0, 0.1, 1.0, 0.5, 0.5, 0.5, 0.25, 0.5, 0.75}};
  write_moments_csv(path, rows);
  const std::string text = slurp(path);
  CHECK(text.substr(0, text.find('\n')) ==
        "t_seconds,t_star,m0,mx_star,my_star,mz_star,Mxx_star,Myy_star,Mzz_star");
  CHECK(text.find("\r") == std::string::npos);  // LF only

  const auto back = read_moments_csv(path);
  REQUIRE(back.size() == 1);
  CHECK(back[0].t_seconds == 2500.0);
  CHECK(back[0].Mzz_star == 0.75);
}

TEST_CASE("coefficient csv layouts") {
  SeparableCoefficients s;
  s.N = 1;
  s.B = {100.0, 0.0};
  s.H = {100.0, -1.0};
  s.S = {100.0, 2.0};
  const auto sep_path = tmp_dir() / "sep.csv";
  write_separable_coefficients_csv(sep_path, s);
  const std::string sep = slurp(sep_path);
  CHECK(sep.substr(0, sep.find('\n')) == "index,B,H,S");
  CHECK(sep.find("1,0.0000000000000000e+00,-1.0000000000000000e+00,2.0000000000000000e+00") !=
        std::string::npos);

  GeneralCoefficients g;
  g.N = 1;
  g.insert(0, 0, 0, 1e6);
  g.insert(1, 0, 0, -2.5);
  const auto gen_path = tmp_dir() / "gen.csv";
  write_general_coefficients_csv(gen_path, g);
  const std::string gen = slurp(gen_path);
  CHECK(gen.substr(0, gen.find('\n')) == "l,m,n,value");
  CHECK(gen.find("1,0,0,-2.5000000000000000e+00") != std::string::npos);
}

TEST_CASE("gci report json carries the documented schema") {
  GciReport rep;
  rep.r21 = 2.0;
  rep.r32 = 2.0;
  rep.p_global = 1.98;
  rep.excluded_fraction = 0.25;
  GciPointReport p;
  p.index = 0;
  p.eps21 = -1e-8;
  p.eps32 = -4.1e-8;
  p.s = 1;
  p.p_local = 2.04;
  p.gci = 3.3e-4;
  p.mu2 = 0.21;
  rep.points.push_back(p);
  rep.gci_max = 3.3e-4;
  rep.mu2_max = 0.21;

  const auto j = gci_report_to_json(rep);
  CHECK(j.contains("r21"));
  CHECK(j.contains("r32"));
  CHECK(j.contains("p_global"));
  CHECK(j.contains("excluded_fraction"));
  CHECK(j["points"].is_array());
  for (const char* key : {"index", "eps21", "eps32", "s", "p_local", "gci", "mu2"}) {
    CHECK(j["points"][0].contains(key));
  }
  CHECK(j["summary"].contains("gci_max"));
  CHECK(j["summary"].contains("mu2_max"));
}

TEST_CASE("fnv checksum is stable and content-sensitive") {
  const auto p1 = tmp_dir() / "hash_a.txt";
  const auto p2 = tmp_dir() / "hash_b.txt";
  std::ofstream(p1, std::ios::binary) << "orthotropic";
  std::ofstream(p2, std::ios::binary) << "orthotropiC";
  CHECK(fnv1a64_file(p1) == fnv1a64_file(p1));
  CHECK(fnv1a64_file(p1) != fnv1a64_file(p2));
}
