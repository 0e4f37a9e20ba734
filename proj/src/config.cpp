#include "tpro/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>
#include <openssl/evp.h>

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "tpro/units.hpp"

namespace tpro {

namespace {

using Setter = std::function<void(RunConfig&, const std::string& key, const std::string& value)>;
using KeyTable = std::map<std::string, Setter, std::less<>>;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

double to_double(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) {
    throw ConfigError(ConfigErrorKind::syntax, key,
                      "config: key '" + key + "' expects a number, got '" + v + "'");
  }
  return out;
}

int to_int(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) {
    throw ConfigError(ConfigErrorKind::syntax, key,
                      "config: key '" + key + "' expects an integer, got '" + v + "'");
  }
  return out;
}

bool to_bool(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(ConfigErrorKind::syntax, key,
                    "config: key '" + key + "' expects true/false, got '" + v + "'");
}

template <class F>
Setter number(F&& assign) {
  return [assign](RunConfig& c, const std::string& key, const std::string& v) {
    assign(c, to_double(key, v));
  };
}

GeometrySection& geometry_of(RunConfig& c) {
  if (!c.geometry) c.geometry = GeometrySection{};
  return *c.geometry;
}

const std::map<std::string, KeyTable, std::less<>>& sections() {
  static const std::map<std::string, KeyTable, std::less<>> table = {
      {"materials",
       {{"eps_inf", number([](RunConfig& c, double v) { c.materials.drude.eps_inf = v; })},
        {"hbar_omega_p_eV",
         number([](RunConfig& c, double v) { c.materials.drude.plasma_energy_eV = v; })},
        {"hbar_gamma_p_eV",
         number([](RunConfig& c, double v) { c.materials.drude.damping_energy_eV = v; })},
        {"eps_b", number([](RunConfig& c, double v) { c.materials.eps_b = v; })}}},
      {"sqd",
       {{"hbar_omega2_eV", number([](RunConfig& c, double v) { c.sqd.hbar_omega2_eV = v; })},
        {"hbar_delta_B_meV", number([](RunConfig& c, double v) { c.sqd.hbar_delta_B_meV = v; })},
        {"gamma21", number([](RunConfig& c, double v) { c.sqd.gamma21 = v; })},
        {"gamma32", number([](RunConfig& c, double v) { c.sqd.gamma32 = v; })},
        {"mu21", number([](RunConfig& c, double v) { c.sqd.mu21 = v; })},
        {"mu32", number([](RunConfig& c, double v) { c.sqd.mu32 = v; })},
        {"eps_s", number([](RunConfig& c, double v) { c.sqd.eps_s = v; })}}},
      {"geometry",
       {{"radius_nm",
         number([](RunConfig& c, double v) { geometry_of(c).geometry.radius_nm = v; })},
        {"distance_nm",
         number([](RunConfig& c, double v) { geometry_of(c).geometry.distance_nm = v; })},
        {"n_max", [](RunConfig& c, const std::string& k, const std::string& v) {
           geometry_of(c).n_max = to_int(k, v);
         }}}},
      {"pulse",
       {{"area_pi", number([](RunConfig& c, double v) { c.pulse.area_pi = v; })},
        {"t0_ps", number([](RunConfig& c, double v) { c.pulse.t0_ps = v; })},
        {"td_ps", number([](RunConfig& c, double v) { c.pulse.td_ps = v; })},
        {"hbar_omega0_eV", number([](RunConfig& c, double v) { c.pulse.hbar_omega0_eV = v; })},
        {"carrier", [](RunConfig& c, const std::string& k, const std::string& raw) {
           const std::string v = trim(raw);
           if (v == "two_photon_resonance") {
             c.pulse.carrier = CarrierMode::two_photon_resonance;
           } else if (v == "explicit") {
             c.pulse.carrier = CarrierMode::explicit_frequency;
           } else {
             throw ConfigError(ConfigErrorKind::out_of_range, k,
                               "config: carrier must be two_photon_resonance or explicit");
           }
         }}}},
      {"integrator",
       {{"mode",
         [](RunConfig& c, const std::string& k, const std::string& raw) {
           const std::string v = trim(raw);
           if (v == "adaptive") {
             c.integrator.mode = IntegratorMode::adaptive;
           } else if (v == "rk4") {
             c.integrator.mode = IntegratorMode::fixed_rk4;
           } else {
             throw ConfigError(ConfigErrorKind::out_of_range, k,
                               "config: mode must be adaptive or rk4");
           }
         }},
        {"dt_ps", number([](RunConfig& c, double v) { c.integrator.dt_ps = v; })},
        {"rel_tol", number([](RunConfig& c, double v) { c.integrator.rel_tol = v; })},
        {"abs_tol", number([](RunConfig& c, double v) { c.integrator.abs_tol = v; })},
        {"readout_t0", number([](RunConfig& c, double v) { c.integrator.readout_t0 = v; })}}},
      {"output",
       {{"directory",
         [](RunConfig& c, const std::string&, const std::string& v) {
           c.output.directory = trim(v);
         }},
        {"sample_interval_ps",
         number([](RunConfig& c, double v) { c.output.sample_interval_ps = v; })}}},
  };
  return table;
}

void require(bool ok, const char* key, const std::string& what) {
  if (!ok) {
    throw ConfigError(ConfigErrorKind::out_of_range, key,
                      std::string("config: '") + key + "' out of range: " + what);
  }
}

std::string num(double v) { return fmt::format("{:.17g}", v); }

}  // namespace

SqdParams SqdSection::to_params() const {
  SqdParams p;
  p.omega2 = units::ev_to_rad_per_ps(hbar_omega2_eV);
  p.delta_B = units::mev_to_rad_per_ps(hbar_delta_B_meV);
  p.gamma21 = gamma21;
  p.gamma32 = gamma32;
  p.mu21 = mu21;
  p.mu32 = mu32;
  p.eps_s = eps_s;
  return p;
}

void RunConfig::validate() const {
  require(materials.drude.eps_inf >= 1.0, "eps_inf", "must be >= 1");
  require(materials.drude.plasma_energy_eV > 0.0, "hbar_omega_p_eV", "must be > 0");
  require(materials.drude.damping_energy_eV >= 0.0, "hbar_gamma_p_eV", "must be >= 0");
  require(materials.eps_b > 0.0, "eps_b", "must be > 0");

  require(sqd.hbar_omega2_eV > 0.0, "hbar_omega2_eV", "must be > 0");
  require(sqd.hbar_delta_B_meV > 0.0, "hbar_delta_B_meV", "must be > 0");
  require(sqd.hbar_delta_B_meV * 1e-3 < 2.0 * sqd.hbar_omega2_eV, "hbar_delta_B_meV",
          "must be below twice the exciton energy");
  require(sqd.gamma21 > 0.0, "gamma21", "must be > 0");
  require(sqd.gamma32 > 0.0, "gamma32", "must be > 0");
  require(sqd.mu21 > 0.0, "mu21", "must be > 0");
  require(sqd.mu32 > 0.0, "mu32", "must be > 0");
  require(sqd.eps_s > 0.0, "eps_s", "must be > 0");

  if (geometry) {
    require(geometry->geometry.radius_nm > 0.0, "radius_nm", "must be > 0");
    require(geometry->geometry.distance_nm > geometry->geometry.radius_nm, "distance_nm",
            "must exceed radius_nm");
    require(geometry->n_max >= 1, "n_max", "must be >= 1");
  }

  require(pulse.area_pi >= 0.0, "area_pi", "must be >= 0");
  require(pulse.t0_ps > 0.0, "t0_ps", "must be > 0");
  require(pulse.carrier != CarrierMode::explicit_frequency || pulse.hbar_omega0_eV > 0.0,
          "hbar_omega0_eV", "must be > 0 for an explicit carrier");
  require(pulse.hbar_omega0_eV >= 0.0, "hbar_omega0_eV", "must be >= 0");

  require(integrator.dt_ps >= 0.0, "dt_ps", "must be >= 0");
  require(integrator.rel_tol > 0.0, "rel_tol", "must be > 0");
  require(integrator.abs_tol > 0.0, "abs_tol", "must be > 0");
  require(integrator.readout_t0 > 0.0, "readout_t0", "must be > 0");

  require(output.sample_interval_ps >= 0.0, "sample_interval_ps", "must be >= 0");
}

RunConfig parse_config_text(std::string_view text) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(ConfigErrorKind::syntax, "",
                      fmt::format("config: syntax error on line {}: {}", e.line(), e.message()));
  }

  RunConfig c;
  bool isolated = false;
  bool has_geometry_section = false;
  const auto& table = sections();
  for (const auto& [name, node] : tree) {
    const auto sec = table.find(name);
    if (sec == table.end()) {
      if (!node.empty()) {
        throw ConfigError(ConfigErrorKind::unknown_key, name,
                          "config: unknown section [" + name + "]");
      }
      if (name != "isolated") {
        throw ConfigError(ConfigErrorKind::unknown_key, name, "config: unknown key '" + name + "'");
      }
      isolated = to_bool(name, node.data());
      continue;
    }
    if (name == "geometry") has_geometry_section = true;
    for (const auto& [key, leaf] : node) {
      const auto setter = sec->second.find(key);
      if (setter == sec->second.end()) {
        throw ConfigError(ConfigErrorKind::unknown_key, key,
                          "config: unknown key '" + key + "' in [" + name + "]");
      }
      setter->second(c, key, leaf.data());
    }
  }
  if (isolated && has_geometry_section) {
    throw ConfigError(ConfigErrorKind::conflict, "isolated",
                      "config: 'isolated = true' conflicts with a [geometry] section");
  }
  if (isolated) c.geometry.reset();
  c.validate();
  return c;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError(ConfigErrorKind::missing_file, "", "config: cannot open '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::string_view to_string(IntegratorMode mode) {
  return mode == IntegratorMode::fixed_rk4 ? "rk4" : "adaptive";
}

std::string_view to_string(CarrierMode mode) {
  return mode == CarrierMode::explicit_frequency ? "explicit" : "two_photon_resonance";
}

std::string serialize_config(const RunConfig& c) {
  std::string out;
  auto line = [&out](std::string_view key, const std::string& value) {
    out += fmt::format("{} = {}\n", key, value);
  };
  line("isolated", c.isolated() ? "true" : "false");

  out += "\n[materials]\n";
  line("eps_inf", num(c.materials.drude.eps_inf));
  line("hbar_omega_p_eV", num(c.materials.drude.plasma_energy_eV));
  line("hbar_gamma_p_eV", num(c.materials.drude.damping_energy_eV));
  line("eps_b", num(c.materials.eps_b));

  out += "\n[sqd]\n";
  line("hbar_omega2_eV", num(c.sqd.hbar_omega2_eV));
  line("hbar_delta_B_meV", num(c.sqd.hbar_delta_B_meV));
  line("gamma21", num(c.sqd.gamma21));
  line("gamma32", num(c.sqd.gamma32));
  line("mu21", num(c.sqd.mu21));
  line("mu32", num(c.sqd.mu32));
  line("eps_s", num(c.sqd.eps_s));

  if (c.geometry) {
    out += "\n[geometry]\n";
    line("radius_nm", num(c.geometry->geometry.radius_nm));
    line("distance_nm", num(c.geometry->geometry.distance_nm));
    line("n_max", std::to_string(c.geometry->n_max));
  }

  out += "\n[pulse]\n";
  line("area_pi", num(c.pulse.area_pi));
  line("t0_ps", num(c.pulse.t0_ps));
  if (c.pulse.td_ps) line("td_ps", num(*c.pulse.td_ps));
  line("carrier", std::string(to_string(c.pulse.carrier)));
  line("hbar_omega0_eV", num(c.pulse.hbar_omega0_eV));

  out += "\n[integrator]\n";
  line("mode", std::string(to_string(c.integrator.mode)));
  line("dt_ps", num(c.integrator.dt_ps));
  line("rel_tol", num(c.integrator.rel_tol));
  line("abs_tol", num(c.integrator.abs_tol));
  line("readout_t0", num(c.integrator.readout_t0));

  out += "\n[output]\n";
  line("directory", c.output.directory);
  line("sample_interval_ps", num(c.output.sample_interval_ps));
  return out;
}

std::string config_hash(const RunConfig& config) {
  // Where the files go does not change what is in them.
  RunConfig hashed = config;
  hashed.output.directory = OutputSection{}.directory;
  const std::string text = serialize_config(hashed);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("config_hash: SHA-256 failed");
  }
  std::string hex;
  for (unsigned int i = 0; i < 8 && i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

}  // namespace tpro
