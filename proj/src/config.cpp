#include "orthocube/config.hpp"

#include <fstream>
#include <set>

#include "orthocube/errors.hpp"

namespace orthocube {

namespace {

using nlohmann::json;

void require_keys(const json& j, const std::string& path,
                  const std::set<std::string>& allowed) {
  if (!j.is_object()) throw ConfigError(path.empty() ? "config" : path, "expected an object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) {
      throw ConfigError(path.empty() ? key : path + "." + key, "unknown key");
    }
  }
}

double get_num(const json& j, const std::string& path, const std::string& key, double dflt) {
  if (!j.contains(key)) return dflt;
  const auto& v = j.at(key);
  if (!v.is_number()) throw ConfigError(path + "." + key, "expected a number");
  return v.get<double>();
}

}  // namespace

OrthotropicModel RunConfig::model() const {
  if (tensor) {
    const PrincipalDecomposition p = principal_decomposition(*tensor);
    return orthotropic_from_principal(p, L);
  }
  return OrthotropicModel(L, Dxx, dyy2, dzz2);
}

InitialCondition RunConfig::ic() const {
  if (ic_case == "delta") return DeltaIc{};
  if (ic_case == "step") return StepIc{a};
  if (ic_case == "gaussian") return TruncatedGaussianIc{sigma_x};
  if (ic_case == "plane") return PlaneIc{kappa_y, kappa_z};
  throw ConfigError("ic.case", "unknown case '" + ic_case + "'");
}

nlohmann::ordered_json RunConfig::echo() const {
  nlohmann::ordered_json j;
  j["model"] = {{"L", L}, {"Dxx", Dxx}, {"dyy2", dyy2}, {"dzz2", dzz2}};
  if (tensor) {
    j["model"]["tensor"] = {{"a", tensor->a}, {"b", tensor->b}, {"c", tensor->c},
                            {"d", tensor->d}, {"e", tensor->e}, {"f", tensor->f}};
  }
  j["ic"] = {{"case", ic_case}, {"a", a},        {"sigma_x", sigma_x},
             {"kappa_y", kappa_y}, {"kappa_z", kappa_z}};
  j["series"] = {{"n_terms", n_terms}};
  j["fd"] = {{"grids", fd_grids}, {"safety", fd_safety}};
  j["times"] = {{"t_star", times_star}};
  j["outputs"] = {{"dir", out_dir},
                  {"vtk_t_star", vtk_times_star},
                  {"vtk_dims", vtk_dims},
                  {"write_coefficients", write_coefficients}};
  if (parallelepiped) {
    j["parallelepiped"] = {{"Lx", parallelepiped->Lx},         {"Ly", parallelepiped->Ly_bar},
                           {"Lz", parallelepiped->Lz_bar},     {"Dxx", parallelepiped->Dxx_bar},
                           {"Dyy", parallelepiped->Dyy_bar},   {"Dzz", parallelepiped->Dzz_bar}};
  }
  return j;
}

RunConfig parse_config(const json& j) {
  RunConfig cfg;
  require_keys(j, "",
               {"model", "ic", "series", "fd", "times", "outputs", "parallelepiped"});

  if (j.contains("model")) {
    const auto& m = j.at("model");
    require_keys(m, "model", {"L", "Dxx", "dyy2", "dzz2", "tensor"});
    cfg.L = get_num(m, "model", "L", cfg.L);
    cfg.Dxx = get_num(m, "model", "Dxx", cfg.Dxx);
    cfg.dyy2 = get_num(m, "model", "dyy2", cfg.dyy2);
    cfg.dzz2 = get_num(m, "model", "dzz2", cfg.dzz2);
    if (m.contains("tensor")) {
      const auto& t = m.at("tensor");
      require_keys(t, "model.tensor", {"a", "b", "c", "d", "e", "f"});
      SymmetricTensor3 st;
      st.a = get_num(t, "model.tensor", "a", 0.0);
      st.b = get_num(t, "model.tensor", "b", 0.0);
      st.c = get_num(t, "model.tensor", "c", 0.0);
      st.d = get_num(t, "model.tensor", "d", 0.0);
      st.e = get_num(t, "model.tensor", "e", 0.0);
      st.f = get_num(t, "model.tensor", "f", 0.0);
      cfg.tensor = st;
    }
    if (!(cfg.L > 0.0)) throw ConfigError("model.L", "must be > 0");
  }

  if (j.contains("ic")) {
    const auto& ic = j.at("ic");
    require_keys(ic, "ic", {"case", "a", "sigma_x", "kappa_y", "kappa_z"});
    if (ic.contains("case")) {
      if (!ic.at("case").is_string()) throw ConfigError("ic.case", "expected a string");
      cfg.ic_case = ic.at("case").get<std::string>();
    }
    cfg.a = get_num(ic, "ic", "a", 0.5 * cfg.L);
    cfg.sigma_x = get_num(ic, "ic", "sigma_x", 0.1 * cfg.L);
    cfg.kappa_y = get_num(ic, "ic", "kappa_y", cfg.kappa_y);
    cfg.kappa_z = get_num(ic, "ic", "kappa_z", cfg.kappa_z);
  }
  // defaults track the model's L when the ic block did not pin them
  if (!j.contains("ic") || !j.at("ic").contains("a")) cfg.a = 0.5 * cfg.L;
  if (!j.contains("ic") || !j.at("ic").contains("sigma_x")) cfg.sigma_x = 0.1 * cfg.L;

  if (j.contains("series")) {
    const auto& s = j.at("series");
    require_keys(s, "series", {"n_terms"});
    cfg.n_terms = static_cast<int>(get_num(s, "series", "n_terms", cfg.n_terms));
    if (cfg.n_terms < 0) throw ConfigError("series.n_terms", "must be >= 0");
  }

  if (j.contains("fd")) {
    const auto& f = j.at("fd");
    require_keys(f, "fd", {"grids", "safety"});
    if (f.contains("grids")) {
      if (!f.at("grids").is_array()) throw ConfigError("fd.grids", "expected an array");
      cfg.fd_grids.clear();
      std::size_t idx = 0;
      for (const auto& g : f.at("grids")) {
        if (!g.is_number_integer() || g.get<int>() < 4) {
          throw ConfigError("fd.grids[" + std::to_string(idx) + "]", "expected an integer >= 4");
        }
        cfg.fd_grids.push_back(g.get<int>());
        ++idx;
      }
    }
    cfg.fd_safety = get_num(f, "fd", "safety", cfg.fd_safety);
    if (!(cfg.fd_safety > 0.0) || cfg.fd_safety > 1.0) {
      throw ConfigError("fd.safety", "must be in (0, 1]");
    }
  }

  if (j.contains("times")) {
    const auto& t = j.at("times");
    require_keys(t, "times", {"t_star", "seconds"});
    if (t.contains("t_star") && t.contains("seconds")) {
      throw ConfigError("times", "give either t_star or seconds, not both");
    }
    const double Tx = (cfg.L / 2.0) * (cfg.L / 2.0) / cfg.Dxx;
    auto read_list = [&](const char* key, double scale) {
      if (!t.at(key).is_array()) throw ConfigError(std::string("times.") + key, "expected an array");
      cfg.times_star.clear();
      for (const auto& v : t.at(key)) {
        if (!v.is_number()) throw ConfigError(std::string("times.") + key, "expected numbers");
        cfg.times_star.push_back(v.get<double>() * scale);
      }
    };
    if (t.contains("t_star")) read_list("t_star", 1.0);
    if (t.contains("seconds")) read_list("seconds", 1.0 / Tx);
    for (std::size_t i = 0; i < cfg.times_star.size(); ++i) {
      if (cfg.times_star[i] < 0.0) throw ConfigError("times", "times must be >= 0");
      if (i > 0 && cfg.times_star[i] < cfg.times_star[i - 1]) {
        throw ConfigError("times", "times must be ascending");
      }
    }
  }

  if (j.contains("outputs")) {
    const auto& o = j.at("outputs");
    require_keys(o, "outputs", {"dir", "vtk_t_star", "vtk_dims", "write_coefficients"});
    if (o.contains("dir")) {
      if (!o.at("dir").is_string()) throw ConfigError("outputs.dir", "expected a string");
      cfg.out_dir = o.at("dir").get<std::string>();
    }
    if (o.contains("vtk_t_star")) {
      if (!o.at("vtk_t_star").is_array()) throw ConfigError("outputs.vtk_t_star", "expected an array");
      for (const auto& v : o.at("vtk_t_star")) cfg.vtk_times_star.push_back(v.get<double>());
    }
    if (o.contains("vtk_dims")) {
      const auto& d = o.at("vtk_dims");
      if (!d.is_array() || d.size() != 3) throw ConfigError("outputs.vtk_dims", "expected [nx,ny,nz]");
      for (int axis = 0; axis < 3; ++axis) {
        cfg.vtk_dims[axis] = d[axis].get<int>();
        if (cfg.vtk_dims[axis] < 2) throw ConfigError("outputs.vtk_dims", "dims must be >= 2");
      }
    }
    if (o.contains("write_coefficients")) {
      if (!o.at("write_coefficients").is_boolean()) {
        throw ConfigError("outputs.write_coefficients", "expected a boolean");
      }
      cfg.write_coefficients = o.at("write_coefficients").get<bool>();
    }
  }

  if (j.contains("parallelepiped")) {
    const auto& p = j.at("parallelepiped");
    require_keys(p, "parallelepiped", {"Lx", "Ly", "Lz", "Dxx", "Dyy", "Dzz"});
    ParallelepipedSpec spec{};
    spec.Lx = get_num(p, "parallelepiped", "Lx", cfg.L);
    spec.Ly_bar = get_num(p, "parallelepiped", "Ly", cfg.L);
    spec.Lz_bar = get_num(p, "parallelepiped", "Lz", cfg.L);
    spec.Dxx_bar = get_num(p, "parallelepiped", "Dxx", cfg.Dxx);
    spec.Dyy_bar = get_num(p, "parallelepiped", "Dyy", cfg.Dxx);
    spec.Dzz_bar = get_num(p, "parallelepiped", "Dzz", cfg.Dxx);
    cfg.parallelepiped = spec;
  }

  const std::set<std::string> cases = {"delta", "step", "gaussian", "plane"};
  if (!cases.count(cfg.ic_case)) throw ConfigError("ic.case", "unknown case '" + cfg.ic_case + "'");
  if (!(cfg.a > 0.0) || cfg.a > cfg.L) throw ConfigError("ic.a", "must satisfy 0 < a <= L");
  if (!(cfg.sigma_x > 0.0)) throw ConfigError("ic.sigma_x", "must be > 0");
  if (cfg.kappa_y < 0.0) throw ConfigError("ic.kappa_y", "must be >= 0");
  if (cfg.kappa_z < 0.0) throw ConfigError("ic.kappa_z", "must be >= 0");
  return cfg;
}

RunConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("config", std::string("invalid JSON: ") + e.what());
  }
  return parse_config(j);
}

}  // namespace orthocube
