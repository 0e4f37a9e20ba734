#pragma once

// Run configuration: an INI-style file with sections, every key optional and
// defaulted to the CdSe/ZnSe dot next to a 12 nm gold sphere at d = 18 nm.
//
//   isolated = false            # top level; true forbids a [geometry] section
//   [materials] eps_inf hbar_omega_p_eV hbar_gamma_p_eV eps_b
//   [sqd]       hbar_omega2_eV hbar_delta_B_meV gamma21 gamma32 mu21 mu32 eps_s
//   [geometry]  radius_nm distance_nm n_max
//   [pulse]     area_pi t0_ps td_ps carrier hbar_omega0_eV
//   [integrator] mode dt_ps rel_tol abs_tol readout_t0
//   [output]    directory sample_interval_ps

#include <optional>
#include <string>
#include <string_view>

#include "tpro/dynamics.hpp"
#include "tpro/hybrid.hpp"
#include "tpro/materials.hpp"

namespace tpro {

struct MaterialsSection {
  DrudeModel drude;
  double eps_b = 2.16;
  bool operator==(const MaterialsSection&) const = default;
};

struct SqdSection {
  double hbar_omega2_eV = 2.36;
  double hbar_delta_B_meV = 20.0;
  double gamma21 = 1.0 / 220.0;  ///< 1/ps
  double gamma32 = 1.0 / 120.0;
  double mu21 = 0.6;  ///< e*nm
  double mu32 = 0.8;
  double eps_s = 6.0;

  SqdParams to_params() const;
  bool operator==(const SqdSection&) const = default;
};

struct GeometrySection {
  HybridGeometry geometry;
  int n_max = kDefaultMultipoleOrders;
  bool operator==(const GeometrySection&) const = default;
};

struct PulseSection {
  double area_pi = 9.0;
  double t0_ps = 2.0 / 3.0;
  std::optional<double> td_ps;  ///< unset: 6 t0, so the window starts at t = 0
  CarrierMode carrier = CarrierMode::two_photon_resonance;
  double hbar_omega0_eV = 0.0;

  double delay() const { return td_ps ? *td_ps : kWindowHalfWidth * t0_ps; }
  bool operator==(const PulseSection&) const = default;
};

struct IntegratorSection {
  IntegratorMode mode = IntegratorMode::adaptive;
  double dt_ps = 0.0;
  double rel_tol = 1e-12;
  double abs_tol = 1e-14;
  double readout_t0 = kWindowHalfWidth;  ///< readout at td + readout_t0 * t0
  bool operator==(const IntegratorSection&) const = default;
};

struct OutputSection {
  std::string directory = ".";
  double sample_interval_ps = 0.0;  ///< 0: t0 / 50
  bool operator==(const OutputSection&) const = default;
};

struct RunConfig {
  MaterialsSection materials;
  SqdSection sqd;
  /// Absent for an isolated dot; the two cases are mutually exclusive.
  std::optional<GeometrySection> geometry = GeometrySection{};
  PulseSection pulse;
  IntegratorSection integrator;
  OutputSection output;

  bool isolated() const { return !geometry.has_value(); }

  /// Range checks; throws ConfigError(out_of_range) naming the key.
  void validate() const;
  bool operator==(const RunConfig&) const = default;
};

enum class ConfigErrorKind { missing_file, syntax, unknown_key, out_of_range, conflict };

class ConfigError : public std::runtime_error {
 public:
  ConfigError(ConfigErrorKind kind, std::string key, const std::string& message)
      : std::runtime_error(message), kind_(kind), key_(std::move(key)) {}
  ConfigErrorKind kind() const { return kind_; }
  const std::string& key() const { return key_; }
  /// Process exit code for this error class (10..14).
  int exit_code() const { return 10 + static_cast<int>(kind_); }

 private:
  ConfigErrorKind kind_;
  std::string key_;
};

RunConfig parse_config_text(std::string_view text);
RunConfig parse_config_file(const std::string& path);

/// Canonical text form; parse_config_text(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& config);

/// First 16 hex digits of SHA-256 over the canonical serialization, with the
/// output directory reset to its default.
std::string config_hash(const RunConfig& config);

std::string_view to_string(IntegratorMode mode);
std::string_view to_string(CarrierMode mode);

}  // namespace tpro
