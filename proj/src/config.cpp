#include "kinsim/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "kinsim/errors.hpp"

namespace kinsim {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& v, const std::string& where) {
  try {
    size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw ConfigError(where + ": expected a number, got '" + v + "'");
  }
}

int parse_int(const std::string& v, const std::string& where) {
  try {
    size_t pos = 0;
    const int x = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw ConfigError(where + ": expected an integer, got '" + v + "'");
  }
}

std::vector<double> parse_list(const std::string& v, const std::string& where) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw ConfigError(where + ": empty list entry");
    out.push_back(parse_double(item, where));
  }
  if (out.empty()) throw ConfigError(where + ": empty list");
  return out;
}

}  // namespace

RunConfig parse_run_config(std::istream& in, const std::string& source_name) {
  RunConfig cfg;
  bool has_flux = false, has_L = false, has_nx = false, has_nv = false, has_T = false,
       has_init = false;
  std::vector<double> atom_weights, atom_values;

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const size_t eq = line.find('=');
    const std::string where = source_name + ":" + std::to_string(lineno);
    if (eq == std::string::npos) {
      throw ConfigError(where + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(where + ": empty key");
    if (val.empty()) throw ConfigError(where + ": empty value for key '" + key + "'");

    if (key == "flux.kind") {
      cfg.flux_kind = flux_kind_from_string(val);
      has_flux = true;
    } else if (key == "flux.coeffs") {
      cfg.flux_coeffs = parse_list(val, where);
    } else if (key == "grid.L") {
      cfg.L = parse_double(val, where);
      has_L = true;
    } else if (key == "grid.nx") {
      cfg.nx = parse_int(val, where);
      has_nx = true;
    } else if (key == "grid.nv") {
      cfg.nv = parse_int(val, where);
      has_nv = true;
    } else if (key == "init.kind") {
      if (val == "piecewise") {
        cfg.init_kind = RunConfig::InitKind::piecewise;
      } else if (val == "mixture") {
        cfg.init_kind = RunConfig::InitKind::mixture;
      } else {
        throw ConfigError(where + ": init.kind must be 'piecewise' or 'mixture', got '" + val +
                          "'");
      }
      has_init = true;
    } else if (key == "init.breakpoints") {
      cfg.breakpoints = parse_list(val, where);
    } else if (key == "init.values") {
      cfg.values = parse_list(val, where);
    } else if (key == "init.weights") {
      atom_weights = parse_list(val, where);
    } else if (key == "init.atoms") {
      atom_values = parse_list(val, where);
    } else if (key == "mollify.epsilon") {
      cfg.epsilon = parse_double(val, where);
    } else if (key == "mollify.kernel") {
      cfg.kernel = kernel_from_string(val);
    } else if (key == "time.T") {
      cfg.T = parse_double(val, where);
      has_T = true;
    } else if (key == "time.cfl") {
      cfg.cfl = parse_double(val, where);
    } else if (key == "time.output") {
      cfg.output_times = parse_list(val, where);
    } else if (key == "cone.tau_flat") {
      cfg.tau_flat = (val == "auto") ? kAutoTau : parse_double(val, where);
    } else if (key == "output.dir") {
      cfg.output_dir = val;
    } else {
      throw ConfigError(where + ": unknown key '" + key + "'");
    }
  }

  if (!has_flux) throw ConfigError(source_name + ": missing required key 'flux.kind'");
  if (!has_L || !has_nx || !has_nv) {
    throw ConfigError(source_name + ": missing required grid keys (grid.L, grid.nx, grid.nv)");
  }
  if (!has_T) throw ConfigError(source_name + ": missing required key 'time.T'");
  if (!has_init) throw ConfigError(source_name + ": missing required key 'init.kind'");

  if (cfg.init_kind == RunConfig::InitKind::mixture) {
    if (atom_weights.size() != atom_values.size() || atom_weights.empty()) {
      throw ConfigError(source_name +
                        ": init.weights and init.atoms must be non-empty lists of equal length");
    }
    cfg.mixture.clear();
    for (size_t k = 0; k < atom_weights.size(); ++k) {
      cfg.mixture.push_back({atom_weights[k], atom_values[k]});
    }
  }
  if (cfg.output_times.empty()) cfg.output_times = {cfg.T};

  validate(cfg);
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  return parse_run_config(in, path.string());
}

void validate(const RunConfig& cfg) {
  Grid grid;
  try {
    grid = Grid(cfg.L, cfg.nx, cfg.nv);
  } catch (const Error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  try {
    make_flux(cfg.flux_kind, cfg.flux_coeffs);
  } catch (const Error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }

  if (cfg.init_kind == RunConfig::InitKind::piecewise) {
    if (cfg.values.empty() || cfg.values.size() != cfg.breakpoints.size() + 1) {
      throw ConfigError("config: init.values must hold one more entry than init.breakpoints");
    }
    for (size_t k = 0; k + 1 < cfg.breakpoints.size(); ++k) {
      if (!(cfg.breakpoints[k] < cfg.breakpoints[k + 1])) {
        throw ConfigError("config: init.breakpoints must be strictly increasing");
      }
    }
    for (double b : cfg.breakpoints) {
      if (!(b >= -cfg.L && b <= cfg.L)) {
        throw ConfigError("config: init.breakpoints must lie within [-L, L]");
      }
    }
    for (double v : cfg.values) {
      if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("config: init.values must lie in [0,1]");
    }
  } else {
    double total = 0.0;
    for (const Atom& a : cfg.mixture) {
      if (a.weight < 0.0) throw ConfigError("config: init.weights must be nonnegative");
      if (!(a.value >= 0.0 && a.value <= 1.0)) {
        throw ConfigError("config: init.atoms must lie in [0,1]");
      }
      total += a.weight;
    }
    if (std::abs(total - 1.0) > 1e-9) {
      throw ConfigError("config: init.weights must sum to 1");
    }
  }

  if (cfg.epsilon < 0.0) throw ConfigError("config: mollify.epsilon must be nonnegative");
  if (cfg.epsilon > 0.0) {
    if (!(cfg.epsilon < cfg.L / 8.0)) {
      throw ConfigError("config: mollify.epsilon must be smaller than L/8");
    }
    if (cfg.epsilon < 2.0 * grid.dx()) {
      throw ConfigError("config: mollify.epsilon must be at least 2 dx");
    }
  }
  if (!(cfg.T > 0.0)) throw ConfigError("config: time.T must be positive");
  if (!(cfg.cfl > 0.0 && cfg.cfl <= 1.0)) throw ConfigError("config: time.cfl must lie in (0,1]");
}

nlohmann::ordered_json RunConfig::to_json() const {
  nlohmann::ordered_json j;
  j["flux.kind"] = to_string(flux_kind);
  if (!flux_coeffs.empty()) j["flux.coeffs"] = flux_coeffs;
  j["grid.L"] = L;
  j["grid.nx"] = nx;
  j["grid.nv"] = nv;
  j["init.kind"] = init_kind == InitKind::piecewise ? "piecewise" : "mixture";
  if (init_kind == InitKind::piecewise) {
    j["init.breakpoints"] = breakpoints;
    j["init.values"] = values;
  } else {
    std::vector<double> w, a;
    for (const Atom& at : mixture) {
      w.push_back(at.weight);
      a.push_back(at.value);
    }
    j["init.weights"] = w;
    j["init.atoms"] = a;
  }
  j["mollify.epsilon"] = epsilon;
  j["mollify.kernel"] = to_string(kernel);
  j["time.T"] = T;
  j["time.cfl"] = cfl;
  j["time.output"] = output_times;
  if (tau_flat < 0.0) {
    j["cone.tau_flat"] = "auto";
  } else {
    j["cone.tau_flat"] = tau_flat;
  }
  j["output.dir"] = output_dir;
  return j;
}

}  // namespace kinsim
