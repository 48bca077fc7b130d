// gdnls: command-line front end for the solitary-wave stability laboratory.
//
// Exit codes: 0 success, 2 domain error or missing root, 64 usage error,
// 70 numerical failure.

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "gdnls/errors.hpp"
#include "gdnls/io.hpp"
#include "gdnls/linearized.hpp"
#include "gdnls/moments.hpp"
#include "gdnls/profile.hpp"
#include "gdnls/simulator.hpp"

namespace {

using namespace gdnls;

constexpr int kExitDomain = 2;
constexpr int kExitUsage = 64;
constexpr int kExitNumerical = 70;

// Writes to `path`, or stdout for "-" / empty. CSV files get a sidecar manifest.
void emit(const std::string& path, const std::string& text, const RunManifest* csv_manifest = nullptr) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write '" + path + "'");
  out << text;
  if (csv_manifest) {
    std::ofstream side(path + ".manifest.json");
    side << manifest_json(*csv_manifest);
  }
}

std::string num(double v) { return format_double(v); }

// ω₁ is a number or "degenerate" (2z₀√ω₀); unset means degenerate for 1 < σ < 2, else 0.
double resolve_omega1(const Sigma& sigma, double omega0, const std::string& text) {
  if (text == "degenerate" || (text.empty() && sigma.value() > 1.0 && sigma.value() < 2.0))
    return 2.0 * find_z0(sigma).z0 * std::sqrt(omega0);
  if (text.empty()) return 0.0;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size()) throw CLI::ValidationError("--omega1", "expected a number or 'degenerate'");
  return v;
}

Grid resolve_grid(const Sigma& sigma, const Omega& omega, double length, std::size_t points, std::size_t min_points) {
  if (length <= 0.0 && points == 0) return default_grid(sigma, omega, min_points);
  const Grid fallback = default_grid(sigma, omega, min_points);
  return Grid(length > 0.0 ? length : fallback.length(), points > 0 ? points : fallback.points());
}

struct SweepRange {
  double lo;
  double hi;
  int count;
};

// "a" or "a:b:n"
SweepRange parse_range(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  try {
    if (parts.size() == 1) return {std::stod(parts[0]), std::stod(parts[0]), 1};
    if (parts.size() == 3) {
      const SweepRange r{std::stod(parts[0]), std::stod(parts[1]), std::stoi(parts[2])};
      if (r.count >= 1 && r.lo <= r.hi) return r;
    }
  } catch (const std::exception&) {
  }
  throw CLI::ValidationError("--sigma-range", "expected 'sigma' or 'lo:hi:count'");
}

std::vector<StabilityRow> stability_map(const SweepRange& range, double omega0, int steps, unsigned jobs) {
  if (!(omega0 > 0.0)) throw CLI::ValidationError("--omega0", "must be positive");
  if (steps < 1) throw CLI::ValidationError("--omega1-steps", "must be at least 1");

  struct Task {
    double sigma;
    double omega1;
    std::optional<double> z0;
  };
  std::vector<Task> tasks;
  const double edge = 2.0 * std::sqrt(omega0);
  for (int i = 0; i < range.count; ++i) {
    const double s = range.count == 1 ? range.lo : range.lo + (range.hi - range.lo) * i / (range.count - 1);
    const Sigma sigma(s);
    std::optional<double> z0;
    if (s > 1.0 && s < 2.0) z0 = find_z0(sigma).z0;
    std::vector<double> omega1;
    // interior points of (−2√ω₀, 2√ω₀), plus the degenerate line when it exists
    for (int j = 0; j < steps; ++j) omega1.push_back(-edge + 2.0 * edge * (j + 0.5) / steps);
    if (z0) {
      const double star = *z0 * edge;
      omega1.insert(std::upper_bound(omega1.begin(), omega1.end(), star), star);
    }
    for (double w : omega1) tasks.push_back({s, w, z0});
  }

  std::vector<StabilityRow> rows(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < tasks.size();) {
      try {
        rows[i] = classify(Sigma(tasks[i].sigma), Omega{omega0, tasks[i].omega1}, tasks[i].z0);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < std::max(1u, jobs); ++t) pool.emplace_back(worker);
  pool.clear();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

int run(int argc, char** argv) {
  CLI::App app{"Solitary waves of the generalized derivative NLS: stability calculus and simulation", "gdnls"};
  app.set_version_flag("--version", std::string(GDNLS_VERSION));
  app.require_subcommand(1);
  app.fallthrough();
  std::string output;
  app.add_option("-o,--output", output, "Output file (default stdout)");

  double sigma = 0.0;
  double omega0 = 1.0;
  std::string omega1;
  double length = 0.0;
  std::size_t points = 0;

  auto* z0 = app.add_subcommand("z0", "Root z0 of F_sigma in (-1, 1)");
  z0->add_option("--sigma", sigma)->required();

  auto* prof = app.add_subcommand("profile", "Sample phi_omega on a grid (CSV: x, re_phi, im_phi, abs_phi, theta)");
  auto* hess = app.add_subcommand("hessian", "d''(omega) with eigen-decomposition and FD cross-check (JSON)");
  auto* spec = app.add_subcommand("spectrum", "Lowest eigenvalues of the linearized operator (CSV)");
  int count = 6;
  spec->add_option("--count", count, "Number of eigenvalues")->check(CLI::PositiveNumber);
  for (auto* sub : {prof, hess, spec}) {
    sub->add_option("--sigma", sigma)->required();
    sub->add_option("--omega0", omega0)->capture_default_str();
    sub->add_option("--omega1", omega1, "Number or 'degenerate' (default: degenerate for 1<sigma<2, else 0)");
  }
  for (auto* sub : {prof, spec}) {
    sub->add_option("--length", length, "Period L (default from decay of the profile)");
    sub->add_option("--points", points, "Grid points, a power of two");
  }

  auto* third = app.add_subcommand("third-derivative", "Degeneracy report at omega1 = 2 z0 sqrt(omega0) (JSON)");
  third->add_option("--sigma", sigma)->required();
  third->add_option("--omega0", omega0)->capture_default_str();

  auto* smap = app.add_subcommand("stability-map", "Classify omega across a sigma range (CSV)");
  std::string sigma_range;
  int omega1_steps = 50;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  smap->add_option("--sigma-range", sigma_range, "sigma or lo:hi:count")->required();
  smap->add_option("--omega0", omega0)->capture_default_str();
  smap->add_option("--omega1-steps", omega1_steps)->capture_default_str();
  smap->add_option("--jobs", jobs, "Worker threads")->capture_default_str();

  auto* sim = app.add_subcommand("simulate", "Integrate from phi_omega plus a perturbation; trace CSV and summary JSON");
  std::string config_path;
  std::string trace_path = "trace.csv";
  std::string summary_path = "summary.json";
  sim->add_option("--config", config_path, "Key-value run file")->check(CLI::ExistingFile);
  sim->add_option("--trace", trace_path)->capture_default_str();
  sim->add_option("--summary", summary_path)->capture_default_str();
  KeyValues overrides;
  for (const char* key : {"sigma", "omega0", "omega1", "length", "points", "dt", "t_end", "dealias", "perturbation",
                          "amplitude", "sign", "xi0", "xi1", "seed", "tube_epsilon", "sample_every", "cfl"}) {
    std::string flag = std::string("--") + key;
    std::replace(flag.begin() + 2, flag.end(), '_', '-');
    sim->add_option_function<std::string>(flag, [&overrides, key](const std::string& v) { overrides[key] = v; },
                                          "Overrides '" + std::string(key) + "' from --config");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  auto params = [&](std::initializer_list<std::pair<const std::string, std::string>> kv) { return KeyValues(kv); };

  if (z0->parsed()) {
    const Sigma s(sigma);
    if (!(sigma < 2.0)) throw PreconditionError("z0 requires 1 <= sigma < 2; every omega is unstable for sigma >= 2");
    const auto r = find_z0(s);
    const auto m = make_manifest("z0", params({{"sigma", num(sigma)}}));
    emit(output, z0_json(s, r, &m));
  } else if (prof->parsed() || hess->parsed() || spec->parsed()) {
    const Sigma s(sigma);
    const Omega w{omega0, resolve_omega1(s, omega0, omega1)};
    w.require_admissible();
    if (prof->parsed()) {
      const auto p = sample_profile(s, w, resolve_grid(s, w, length, points, 1024));
      const auto m = make_manifest("profile", params({{"sigma", num(sigma)}, {"omega0", num(w.omega0)},
                                                      {"omega1", num(w.omega1)}, {"length", num(p.grid.length())},
                                                      {"points", std::to_string(p.grid.points())}}));
      std::ostringstream csv;
      write_profile_csv(csv, p);
      emit(output, csv.str(), &m);
    } else if (hess->parsed()) {
      const auto m = make_manifest("hessian", params({{"sigma", num(sigma)}, {"omega0", num(w.omega0)},
                                                      {"omega1", num(w.omega1)}}));
      emit(output, hessian_json(hessian_report(s, w), &m));
    } else {
      const auto p = sample_profile(s, w, resolve_grid(s, w, length, points, 256));
      const auto op = assemble(p);
      const auto r = lowest_spectrum(op, count);
      const auto m = make_manifest("spectrum", params({{"sigma", num(sigma)}, {"omega0", num(w.omega0)},
                                                       {"omega1", num(w.omega1)}, {"count", std::to_string(count)},
                                                       {"length", num(p.grid.length())},
                                                       {"points", std::to_string(p.grid.points())}}));
      std::ostringstream csv;
      write_spectrum_csv(csv, r);
      emit(output, csv.str(), &m);
    }
  } else if (third->parsed()) {
    const auto r = degeneracy_report(Sigma(sigma), omega0);
    const auto m = make_manifest("third-derivative", params({{"sigma", num(sigma)}, {"omega0", num(omega0)}}));
    emit(output, degeneracy_json(r, &m));
  } else if (smap->parsed()) {
    const auto range = parse_range(sigma_range);
    const auto rows = stability_map(range, omega0, omega1_steps, jobs);
    const auto m = make_manifest("stability-map", params({{"sigma-range", sigma_range}, {"omega0", num(omega0)},
                                                          {"omega1-steps", std::to_string(omega1_steps)}}));
    std::ostringstream csv;
    write_stability_csv(csv, rows);
    emit(output, csv.str(), &m);
  } else if (sim->parsed()) {
    KeyValues kv = config_path.empty() ? KeyValues{} : read_key_values(config_path);
    for (const auto& [k, v] : overrides) kv[k] = v;
    const SimConfig config = sim_config_from(kv);
    const auto start = std::chrono::steady_clock::now();
    const auto trace = run_experiment(config);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    auto m = make_manifest("simulate", to_key_values(config));
    std::ostringstream csv;
    write_trace_csv(csv, trace);
    emit(trace_path, csv.str(), &m);
    emit(summary_path, summary_json(config, trace, wall, &m));
    std::cerr << "simulate: " << trace.rows.size() << " samples, exit_time "
              << (trace.exit_time ? num(*trace.exit_time) : std::string("none")) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CLI::Error& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const gdnls::PreconditionError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const gdnls::DomainError& e) {
    std::cerr << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}
