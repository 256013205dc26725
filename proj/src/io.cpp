#include "kinsim/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <vector>

#include "kinsim/errors.hpp"

namespace kinsim {

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_field_csv(const KineticField& field, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("write_field_csv: cannot open " + path.string());
  out << "x,v,Y\n";
  const Grid& g = field.grid;
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.nv; ++j) {
      out << format_double(g.x_center(i)) << ',' << format_double(g.v_center(j)) << ','
          << format_double(field.at(i, j)) << '\n';
    }
  }
}

KineticField read_field_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("read_field_csv: cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "x,v,Y") {
    throw ConfigError("read_field_csv: bad header in " + path.string());
  }
  std::vector<double> xs, vs, ys;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const char* p = line.c_str();
    char* end = nullptr;
    const double x = std::strtod(p, &end);
    if (end == p || *end != ',') throw ConfigError("read_field_csv: bad row in " + path.string());
    p = end + 1;
    const double v = std::strtod(p, &end);
    if (end == p || *end != ',') throw ConfigError("read_field_csv: bad row in " + path.string());
    p = end + 1;
    const double y = std::strtod(p, &end);
    if (end == p) throw ConfigError("read_field_csv: bad row in " + path.string());
    xs.push_back(x);
    vs.push_back(v);
    ys.push_back(y);
  }
  if (xs.empty()) throw ConfigError("read_field_csv: no data rows in " + path.string());
  size_t nv = 1;
  while (nv < xs.size() && xs[nv] == xs[0]) ++nv;
  if (xs.size() % nv != 0) throw ConfigError("read_field_csv: ragged layout in " + path.string());
  const size_t nx = xs.size() / nv;
  if (nx < 4 || nv < 4) throw ConfigError("read_field_csv: grid too small in " + path.string());
  const double dx = nx > 1 ? xs[nv] - xs[0] : 1.0;
  const double L = 0.5 * dx - xs[0];
  KineticField field(Grid(L, static_cast<int>(nx), static_cast<int>(nv)));
  field.values = std::move(ys);
  return field;
}

void write_diagnostics_csv(const Diagnostics& diag, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("write_diagnostics_csv: cannot open " + path.string());
  out << "t,l2_squared,mass,interaction_total,grad_x_norm,dt_velocity_norm,defect_min\n";
  for (const DiagnosticsRow& r : diag.rows) {
    out << format_double(r.time) << ',' << format_double(r.l2_squared) << ','
        << format_double(r.mass) << ',' << format_double(r.interaction_total) << ','
        << format_double(r.grad_x_norm) << ',' << format_double(r.dt_velocity_norm) << ','
        << format_double(r.defect_min) << '\n';
  }
}

void write_profile_csv(const ScalarProfile& profile, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("write_profile_csv: cannot open " + path.string());
  out << "x,u\n";
  for (int i = 0; i < profile.grid.nx; ++i) {
    out << format_double(profile.grid.x_center(i)) << ',' << format_double(profile.u[i]) << '\n';
  }
}

}  // namespace kinsim
