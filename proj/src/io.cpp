#include "turnstile/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace turnstile {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {

// commas and newlines never appear in our error strings, but quote defensively
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string green_csv(const std::vector<GreenRow>& rows, bool with_oracle) {
  std::ostringstream os;
  os << "E,eta,re_g0_onsite,im_g0_onsite,re_g0_offdiag,im_g0_offdiag,"
        "re_g0_plus,im_g0_plus,re_g0_minus,im_g0_minus";
  if (with_oracle) os << ",oracle_rel_err";
  os << ",err\n";
  for (const auto& r : rows) {
    os << format_double(r.e) << ',' << format_double(r.eta);
    if (r.ok) {
      os << ',' << format_double(r.greens.g0.real()) << ','
         << format_double(r.greens.g0.imag()) << ','
         << format_double(r.greens.gd.real()) << ','
         << format_double(r.greens.gd.imag()) << ','
         << format_double(r.greens.gp.real()) << ','
         << format_double(r.greens.gp.imag()) << ','
         << format_double(r.greens.gm.real()) << ','
         << format_double(r.greens.gm.imag());
    } else {
      os << ",nan,nan,nan,nan,nan,nan,nan,nan";
    }
    if (with_oracle) {
      os << ',' << (r.has_oracle ? format_double(r.oracle_rel_err) : "nan");
    }
    os << ',' << csv_field(r.err) << '\n';
  }
  return os.str();
}

std::string fig2b_csv(const std::vector<FootprintCell>& cells) {
  std::ostringstream os;
  os << "u_min,u_max,q_singlets\n";
  for (const auto& c : cells) {
    os << format_double(c.u_min) << ',' << format_double(c.u_max) << ','
       << format_double(c.q_singlets) << '\n';
  }
  return os.str();
}

std::string fig3_csv(const std::vector<EnergyCell>& cells) {
  std::ostringstream os;
  os << "e_max,m,q_singlets\n";
  for (const auto& c : cells) {
    os << format_double(c.e_max) << ',' << c.m << ','
       << format_double(c.q_singlets) << '\n';
  }
  return os.str();
}

std::string oracle_csv(const std::vector<OracleRow>& rows) {
  std::ostringstream os;
  os << "quantity,m,E,eta,re_quad,im_quad,re_oracle,im_oracle,rel_err\n";
  for (const auto& r : rows) {
    const double rel = std::abs(r.quad - r.oracle) /
                       std::max(std::abs(r.quad), 1e-300);
    os << csv_field(r.quantity) << ',' << r.m << ',' << format_double(r.e)
       << ',' << format_double(r.eta) << ',' << format_double(r.quad.real())
       << ',' << format_double(r.quad.imag()) << ','
       << format_double(r.oracle.real()) << ','
       << format_double(r.oracle.imag()) << ',' << format_double(rel) << '\n';
  }
  return os.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot open output file '" + path + "'");
  f << content;
  if (!f) throw ConfigError("failed writing output file '" + path + "'");
}

}  // namespace turnstile
