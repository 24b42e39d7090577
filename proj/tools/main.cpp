#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "orthocube/config.hpp"
#include "orthocube/errors.hpp"
#include "orthocube/gci.hpp"
#include "orthocube/io.hpp"
#include "orthocube/moments.hpp"
#include "orthocube/runner.hpp"
#include "orthocube/verify.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::string out_dir;
  std::string case_name;
  int n_terms = -1;
  std::string grids;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "JSON configuration file");
  cmd->add_option("--out", flags.out_dir, "output directory (overrides outputs.dir)");
  cmd->add_option("--case", flags.case_name, "initial condition case")
      ->check(CLI::IsMember({"delta", "step", "gaussian", "plane"}));
  cmd->add_option("--n-terms", flags.n_terms, "series truncation per axis");
  cmd->add_option("--grids", flags.grids, "comma-separated FD cell counts, e.g. 20,40,80");
}

orthocube::RunConfig load_config(const CommonFlags& flags) {
  orthocube::RunConfig cfg = flags.config_path.empty()
                                 ? orthocube::parse_config(nlohmann::json::object())
                                 : orthocube::parse_config_file(flags.config_path);
  if (!flags.out_dir.empty()) cfg.out_dir = flags.out_dir;
  if (!flags.case_name.empty()) cfg.ic_case = flags.case_name;
  if (flags.n_terms >= 0) cfg.n_terms = flags.n_terms;
  if (!flags.grids.empty()) {
    cfg.fd_grids.clear();
    std::stringstream ss(flags.grids);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        cfg.fd_grids.push_back(std::stoi(item));
      } catch (const std::exception&) {
        throw orthocube::ConfigError("fd.grids", "bad --grids entry '" + item + "'");
      }
      if (cfg.fd_grids.back() < 4) throw orthocube::ConfigError("fd.grids", "grids must be >= 4");
    }
  }
  return cfg;
}

int run_gci_from_csvs(const std::vector<std::string>& paths, const orthocube::RunConfig& cfg,
                      double r21, double r32) {
  using namespace orthocube;
  const auto fine = read_moments_csv(paths[0]);
  const auto med = read_moments_csv(paths[1]);
  const auto coarse = read_moments_csv(paths[2]);
  if (fine.size() != med.size() || fine.size() != coarse.size() || fine.empty()) {
    throw Error("gci: the three CSVs must have the same nonzero number of rows");
  }
  const OrthotropicModel model = cfg.model();
  const double Minf = m_infinity(model);
  struct Obs {
    const char* name;
    double (*get)(const MomentCsvRow&);
    bool second;
  };
  const Obs observables[] = {
      {"mx", [](const MomentCsvRow& r) { return r.mx_star; }, false},
      {"my", [](const MomentCsvRow& r) { return r.my_star; }, false},
      {"mz", [](const MomentCsvRow& r) { return r.mz_star; }, false},
      {"Mxx", [](const MomentCsvRow& r) { return r.Mxx_star; }, true},
      {"Myy", [](const MomentCsvRow& r) { return r.Myy_star; }, true},
      {"Mzz", [](const MomentCsvRow& r) { return r.Mzz_star; }, true},
  };
  for (const auto& obs : observables) {
    GridTriple triple;
    triple.r21 = r21;
    triple.r32 = r32;
    double spread = 0.0;
    for (std::size_t i = 0; i < fine.size(); ++i) {
      triple.phi1.push_back(obs.get(fine[i]));
      triple.phi2.push_back(obs.get(med[i]));
      triple.phi3.push_back(obs.get(coarse[i]));
      spread = std::max(spread, std::abs(triple.phi1[i] - triple.phi1[0]));
    }
    if (!obs.second && spread < 1e-12) continue;  // constant history
    try {
      // star-normalized second moments: mu2 percentages still follow from
      // M_inf-normalized phi, since gci is relative and |phi*|*Minf = |phi|
      GciReport rep = local_gci_field(
          triple, obs.second ? std::optional<double>(1.0) : std::nullopt);
      write_gci_report(std::filesystem::path(cfg.out_dir) / (std::string("gci_") + obs.name +
                                                             ".json"),
                       rep);
    } catch (const AllPointsDegenerateError&) {
      continue;
    }
  }
  (void)Minf;
  std::cout << "gci reports written to " << cfg.out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact series benchmarks and GCI verification for orthotropic diffusion in a cube"};
  app.require_subcommand(1);

  CommonFlags flags;
  CLI::App* solve = app.add_subcommand("solve", "series fields and analytic moments");
  CLI::App* fd = app.add_subcommand("fd", "reference finite-difference solver");
  CLI::App* gci = app.add_subcommand("gci", "grid-convergence report from three FD moment CSVs");
  CLI::App* verify = app.add_subcommand("verify", "run the full verification suite");
  CLI::App* transform = app.add_subcommand("transform", "parallelepiped-to-cube mapping report");
  for (CLI::App* cmd : {solve, fd, gci, verify, transform}) add_common(cmd, flags);

  std::vector<std::string> gci_csvs;
  double r21 = 2.0, r32 = 2.0;
  gci->add_option("csv", gci_csvs, "moment CSVs ordered fine, medium, coarse")
      ->expected(3)
      ->required();
  gci->add_option("--r21", r21, "fine-to-medium refinement ratio");
  gci->add_option("--r32", r32, "medium-to-coarse refinement ratio");

  CLI11_PARSE(app, argc, argv);

  try {
    const orthocube::RunConfig cfg = load_config(flags);
    if (solve->parsed()) {
      const orthocube::RunReport rep = orthocube::run_case(cfg, {true, false, false});
      std::cout << rep.to_json().dump(2) << "\n";
      return rep.all_passed() ? 0 : 2;
    }
    if (fd->parsed()) {
      if (cfg.fd_grids.empty()) {
        throw orthocube::ConfigError("fd.grids", "fd subcommand needs at least one grid");
      }
      const orthocube::RunReport rep = orthocube::run_case(cfg, {false, true, false});
      std::cout << rep.to_json().dump(2) << "\n";
      return rep.all_passed() ? 0 : 2;
    }
    if (gci->parsed()) {
      return run_gci_from_csvs(gci_csvs, cfg, r21, r32);
    }
    if (verify->parsed()) {
      const auto results = orthocube::run_acceptance(cfg, &std::cout);
      bool ok = true;
      for (const auto& r : results) ok = ok && r.pass;
      nlohmann::ordered_json j = nlohmann::ordered_json::array();
      for (const auto& r : results) {
        j.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
      }
      std::filesystem::create_directories(cfg.out_dir);
      std::ofstream out(std::filesystem::path(cfg.out_dir) / "verify_report.json",
                        std::ios::binary);
      out << j.dump(2) << "\n";
      return ok ? 0 : 2;
    }
    if (transform->parsed()) {
      const nlohmann::ordered_json j = orthocube::transform_report(cfg);
      std::cout << j.dump(2) << "\n";
      std::filesystem::create_directories(cfg.out_dir);
      std::ofstream out(std::filesystem::path(cfg.out_dir) / "transform.json", std::ios::binary);
      out << j.dump(2) << "\n";
      return 0;
    }
  } catch (const orthocube::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
