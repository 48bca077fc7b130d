#pragma once

// Locale-independent text output (CSV, JSON) and the flat key-value run
// configuration format.

#include <iosfwd>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "gdnls/linearized.hpp"
#include "gdnls/moments.hpp"
#include "gdnls/params.hpp"
#include "gdnls/profile.hpp"
#include "gdnls/simulator.hpp"

namespace gdnls {

/// Shortest decimal form that round-trips to the same double.
std::string format_double(double v);

class CsvWriter {
 public:
  using Cell = std::variant<double, long long, std::string>;

  CsvWriter(std::ostream& out, const std::vector<std::string>& header);
  void row(const std::vector<Cell>& cells);

 private:
  std::ostream& out_;
  std::size_t columns_;
};

using KeyValues = std::map<std::string, std::string>;

/// `key = value` lines; `#` starts a comment; blank lines ignored.
/// Throws DomainError (with line number) on malformed lines or duplicate keys.
KeyValues parse_key_values(std::istream& in);
KeyValues read_key_values(const std::string& path);

/// Builds a SimConfig from keys sigma, omega0, omega1 (a number or
/// "degenerate" for 2z₀√ω₀), length, points, dt, t_end, dealias, perturbation,
/// amplitude, sign, xi0, xi1, seed, tube_epsilon, sample_every, cfl.
/// Missing grid keys fall back to default_grid.
SimConfig sim_config_from(const KeyValues& kv);
KeyValues to_key_values(const SimConfig& config);

struct RunManifest {
  std::string command;
  KeyValues parameters;
  std::string tool_version;
  std::string timestamp;  // UTC, ISO 8601
};

RunManifest make_manifest(std::string command, KeyValues parameters);

// JSON documents (one object each, pretty-printed).
std::string z0_json(const Sigma& sigma, const Z0Result& r, const RunManifest* manifest = nullptr);
std::string hessian_json(const HessianReport& r, const RunManifest* manifest = nullptr);
std::string degeneracy_json(const DegeneracyReport& r, const RunManifest* manifest = nullptr);
std::string summary_json(const SimConfig& config, const OrbitalTrace& trace, double wall_seconds,
                         const RunManifest* manifest = nullptr);
std::string manifest_json(const RunManifest& m);

void write_trace_csv(std::ostream& out, const OrbitalTrace& trace);
void write_profile_csv(std::ostream& out, const SolitonProfile& p);
void write_spectrum_csv(std::ostream& out, const SpectrumReport& s);
void write_stability_csv(std::ostream& out, const std::vector<StabilityRow>& rows);

}  // namespace gdnls
