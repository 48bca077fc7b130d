#include "gdnls/io.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "gdnls/errors.hpp"

#ifndef GDNLS_VERSION
#define GDNLS_VERSION "unknown"
#endif

namespace gdnls {

using nlohmann::ordered_json;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(std::ostream& out, const std::vector<std::string>& header)
    : out_(out), columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
  out_ << '\n';
}

void CsvWriter::row(const std::vector<Cell>& cells) {
  if (cells.size() != columns_) throw DomainError("CSV row width does not match header");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    std::visit(
        [&](const auto& c) {
          using T = std::decay_t<decltype(c)>;
          if constexpr (std::is_same_v<T, double>)
            out_ << format_double(c);
          else
            out_ << c;
        },
        cells[i]);
  }
  out_ << '\n';
}

// ---------------------------------------------------------------------------
// key-value configuration

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) throw DomainError("'" + key + "' expects a number, got '" + text + "'");
  return v;
}

long long to_integer(const std::string& key, const std::string& text) {
  long long v = 0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) throw DomainError("'" + key + "' expects an integer, got '" + text + "'");
  return v;
}

}  // namespace

KeyValues parse_key_values(std::istream& in) {
  KeyValues kv;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw DomainError("line " + std::to_string(lineno) + ": expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw DomainError("line " + std::to_string(lineno) + ": empty key or value");
    if (!kv.emplace(key, value).second)
      throw DomainError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
  }
  return kv;
}

KeyValues read_key_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open config file '" + path + "'");
  return parse_key_values(in);
}

SimConfig sim_config_from(const KeyValues& kv) {
  static const std::vector<std::string> known = {
      "sigma", "omega0", "omega1", "length", "points", "dt", "t_end", "dealias", "perturbation", "amplitude",
      "sign", "xi0", "xi1", "seed", "tube_epsilon", "sample_every", "cfl"};
  for (const auto& [k, v] : kv)
    if (std::find(known.begin(), known.end(), k) == known.end()) throw DomainError("unknown config key '" + k + "'");

  auto get = [&](const std::string& k) -> const std::string* {
    const auto it = kv.find(k);
    return it == kv.end() ? nullptr : &it->second;
  };
  auto number = [&](const std::string& k, double fallback) {
    const auto* v = get(k);
    return v ? to_double(k, *v) : fallback;
  };

  if (!get("sigma")) throw DomainError("config requires 'sigma'");
  const Sigma sigma(number("sigma", 0.0));
  const double omega0 = number("omega0", 1.0);
  double omega1 = 0.0;
  if (const auto* v = get("omega1"); v && *v == "degenerate") {
    omega1 = 2.0 * find_z0(sigma).z0 * std::sqrt(omega0);
  } else {
    omega1 = number("omega1", 0.0);
  }
  const Omega omega{omega0, omega1};
  omega.require_admissible();

  Grid grid = default_grid(sigma, omega);
  if (get("length") || get("points")) {
    const double length = number("length", grid.length());
    const auto points = get("points") ? to_integer("points", *get("points")) : static_cast<long long>(grid.points());
    if (points < 16) throw DomainError("'points' must be at least 16");
    grid = Grid(length, static_cast<std::size_t>(points));
  }

  SimConfig c;
  c.sigma = sigma;
  c.omega = omega;
  c.grid = grid;
  c.dt = number("dt", c.dt);
  c.t_end = number("t_end", c.t_end);
  c.dealias = number("dealias", c.dealias);
  c.tube_epsilon = number("tube_epsilon", c.tube_epsilon);
  c.cfl = number("cfl", c.cfl);
  if (const auto* v = get("sample_every")) c.sample_every = static_cast<int>(to_integer("sample_every", *v));
  if (const auto* v = get("perturbation")) c.perturbation.kind = parse_perturbation_kind(*v);
  c.perturbation.amplitude = number("amplitude", 0.0);
  if (const auto* v = get("sign")) c.perturbation.sign = static_cast<int>(to_integer("sign", *v));
  c.perturbation.direction = {number("xi0", 0.0), number("xi1", 0.0)};
  if (const auto* v = get("seed")) {
    const auto s = to_integer("seed", *v);
    if (s < 0) throw DomainError("'seed' must be non-negative");
    c.perturbation.seed = static_cast<std::uint64_t>(s);
  }
  c.validate();
  return c;
}

KeyValues to_key_values(const SimConfig& c) {
  return {{"sigma", format_double(c.sigma.value())},
          {"omega0", format_double(c.omega.omega0)},
          {"omega1", format_double(c.omega.omega1)},
          {"length", format_double(c.grid.length())},
          {"points", std::to_string(c.grid.points())},
          {"dt", format_double(c.dt)},
          {"t_end", format_double(c.t_end)},
          {"dealias", format_double(c.dealias)},
          {"perturbation", to_string(c.perturbation.kind)},
          {"amplitude", format_double(c.perturbation.amplitude)},
          {"sign", std::to_string(c.perturbation.sign)},
          {"xi0", format_double(c.perturbation.direction[0])},
          {"xi1", format_double(c.perturbation.direction[1])},
          {"seed", std::to_string(c.perturbation.seed)},
          {"tube_epsilon", format_double(c.tube_epsilon)},
          {"sample_every", std::to_string(c.sample_every)},
          {"cfl", format_double(c.cfl)}};
}

RunManifest make_manifest(std::string command, KeyValues parameters) {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return {std::move(command), std::move(parameters), GDNLS_VERSION, buf};
}

// ---------------------------------------------------------------------------
// JSON

namespace {

// nlohmann writes non-finite doubles as null; keep them visible instead.
ordered_json num(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

ordered_json manifest_object(const RunManifest& m) {
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : m.parameters) params[k] = v;
  return {{"command", m.command}, {"parameters", params}, {"tool_version", m.tool_version}, {"timestamp", m.timestamp}};
}

ordered_json sym2(const Sym2& s) { return {{"d00", num(s.a00)}, {"d01", num(s.a01)}, {"d11", num(s.a11)}}; }

ordered_json eigen(const SymEigen2& e) {
  return {{"values", {num(e.values[0]), num(e.values[1])}},
          {"vectors", {{num(e.vectors[0][0]), num(e.vectors[0][1])}, {num(e.vectors[1][0]), num(e.vectors[1][1])}}}};
}

std::string finish(ordered_json j, const RunManifest* manifest) {
  if (manifest) j["manifest"] = manifest_object(*manifest);
  return j.dump(2) + "\n";
}

}  // namespace

std::string z0_json(const Sigma& sigma, const Z0Result& r, const RunManifest* manifest) {
  ordered_json j = {{"sigma", num(sigma.value())},
                    {"z0", num(r.z0)},
                    {"f_residual", num(r.f_residual)},
                    {"bracket_width", num(r.bracket_width)},
                    {"sign_changes", r.sign_changes}};
  return finish(std::move(j), manifest);
}

std::string hessian_json(const HessianReport& r, const RunManifest* manifest) {
  ordered_json j = {{"sigma", num(r.sigma.value())},
                    {"omega0", num(r.omega.omega0)},
                    {"omega1", num(r.omega.omega1)},
                    {"d_grad", {num(r.d_grad[0]), num(r.d_grad[1])}},
                    {"hessian", sym2(r.hessian)},
                    {"hessian_fd", sym2(r.hessian_fd)},
                    {"det", num(r.det)},
                    {"eigen", eigen(r.eigen)},
                    {"f_value", num(r.f_value)},
                    {"fd_residual", num(r.fd_residual)}};
  return finish(std::move(j), manifest);
}

std::string degeneracy_json(const DegeneracyReport& r, const RunManifest* manifest) {
  ordered_json j = {{"sigma", num(r.sigma.value())},
                    {"omega0", num(r.omega0)},
                    {"z0", num(r.z0)},
                    {"f_residual", num(r.f_residual)},
                    {"omega_star", {num(r.omega_star.omega0), num(r.omega_star.omega1)}},
                    {"hessian", sym2(r.hessian)},
                    {"eigen", eigen(r.eigen)},
                    {"xi", {num(r.xi[0]), num(r.xi[1])}},
                    {"branch", to_string(r.branch)},
                    {"squared_identity_residual", num(r.squared_identity_residual)},
                    {"nu", num(r.nu)},
                    {"nu_contracted", num(r.nu_contracted)},
                    {"nu_fd", num(r.nu_fd)},
                    {"nu_reduced", num(r.nu_reduced)},
                    {"kernel_residual", num(r.kernel_residual)},
                    {"fd_relative_error", num(r.fd_relative_error)},
                    {"reduced_relative_error", num(r.reduced_relative_error)},
                    {"energy_is_c3", r.energy_is_c3},
                    {"invariants_hold", r.invariants_hold()}};
  return finish(std::move(j), manifest);
}

std::string summary_json(const SimConfig& config, const OrbitalTrace& trace, double wall_seconds,
                         const RunManifest* manifest) {
  ordered_json cfg = ordered_json::object();
  for (const auto& [k, v] : to_key_values(config)) cfg[k] = v;
  ordered_json j = {{"config", cfg},
                    {"exit_time", trace.exit_time ? ordered_json(*trace.exit_time) : ordered_json(nullptr)},
                    {"final_time", trace.rows.empty() ? 0.0 : trace.rows.back().t},
                    {"final_distance", trace.rows.empty() ? 0.0 : trace.rows.back().distance},
                    {"initial_distance", num(trace.initial_distance)},
                    {"direction", {num(trace.direction[0]), num(trace.direction[1])}},
                    {"seed", config.perturbation.seed},
                    {"max_energy_drift", num(trace.max_energy_drift)},
                    {"max_q0_drift", num(trace.max_q0_drift)},
                    {"max_q1_drift", num(trace.max_q1_drift)},
                    {"initial_ledger",
                     {{"energy", num(trace.initial.energy)}, {"q0", num(trace.initial.q0)}, {"q1", num(trace.initial.q1)}}},
                    {"steps", trace.steps},
                    {"retries", trace.retries},
                    {"samples", trace.rows.size()},
                    {"wall_seconds", num(wall_seconds)}};
  return finish(std::move(j), manifest);
}

std::string manifest_json(const RunManifest& m) { return manifest_object(m).dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// CSV

void write_trace_csv(std::ostream& out, const OrbitalTrace& trace) {
  CsvWriter w(out, {"t", "distance", "s0", "s1", "energy_drift", "q0_drift", "q1_drift"});
  for (const auto& r : trace.rows) w.row({r.t, r.distance, r.s0, r.s1, r.energy_drift, r.q0_drift, r.q1_drift});
}

void write_profile_csv(std::ostream& out, const SolitonProfile& p) {
  CsvWriter w(out, {"x", "re_phi", "im_phi", "abs_phi", "theta"});
  for (std::size_t j = 0; j < p.grid.points(); ++j)
    w.row({p.grid.x(j), p.field[j].real(), p.field[j].imag(), p.amplitude[j], p.phase[j]});
}

void write_spectrum_csv(std::ostream& out, const SpectrumReport& s) {
  CsvWriter w(out, {"index", "eigenvalue"});
  for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) w.row({static_cast<long long>(i), s.eigenvalues[i]});
}

void write_stability_csv(std::ostream& out, const std::vector<StabilityRow>& rows) {
  CsvWriter w(out, {"sigma", "omega0", "omega1", "det", "F", "classification"});
  for (const auto& r : rows) w.row({r.sigma, r.omega0, r.omega1, r.det, r.f_value, to_string(r.classification)});
}

}  // namespace gdnls
