#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace {

struct Result {
  int code;
  std::string out;
};

// Runs the tool with stderr folded into the captured output.
Result run(const std::string& args) {
  const std::string cmd = std::string(GDNLS_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (const auto n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("z0 subcommand") {
  const auto ok = run("z0 --sigma 1.5");
  REQUIRE(ok.code == 0);
  const auto j = nlohmann::json::parse(ok.out);
  CHECK(j.at("sigma").get<double>() == 1.5);
  CHECK(j.at("z0").get<double>() == doctest::Approx(0.0618302632).epsilon(1e-8));
  CHECK(std::abs(j.at("f_residual").get<double>()) <= 1e-10);

  const auto none = run("z0 --sigma 1.0");
  CHECK(none.code == 2);
  CHECK(none.out.find("no root: F_1 ≡ −1") != std::string::npos);

  CHECK(run("z0 --sigma 2.5").code == 64);
  CHECK(run("z0").code == 64);
  CHECK(run("z0 --sigma abc").code == 64);
  CHECK(run("frobnicate").code == 64);
  CHECK(run("z0 --sigma 0.5").code == 64);
}

TEST_CASE("stability-map subcommand") {
  const auto mid = run("stability-map --sigma-range 1.5 --omega0 1 --omega1-steps 50");
  REQUIRE(mid.code == 0);
  const auto rows = parse_csv(mid.out);
  REQUIRE(rows.size() == 52);  // header, 50 steps, degenerate row
  CHECK(rows[0] == std::vector<std::string>{"sigma", "omega0", "omega1", "det", "F", "classification"});
  int degenerate = 0;
  double last = -3.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& c = rows[i][5];
    CHECK((c == "stable" || c == "unstable" || c == "degenerate-unstable"));
    degenerate += c == "degenerate-unstable";
    const double w1 = std::stod(rows[i][2]);
    CHECK(w1 > last);
    last = w1;
  }
  CHECK(degenerate == 1);

  for (const auto& [sigma, label] : {std::pair{"2.2", "unstable"}, {"1", "stable"}}) {
    const auto r = run(std::string("stability-map --sigma-range ") + sigma + " --omega0 1 --omega1-steps 20");
    REQUIRE(r.code == 0);
    const auto t = parse_csv(r.out);
    REQUIRE(t.size() == 21);
    for (std::size_t i = 1; i < t.size(); ++i) CHECK(t[i][5] == label);
  }

  // ordering is independent of the number of workers
  CHECK(run("stability-map --sigma-range 1.2:1.8:4 --omega1-steps 8 --jobs 1").out ==
        run("stability-map --sigma-range 1.2:1.8:4 --omega1-steps 8 --jobs 4").out);
  CHECK(run("stability-map --sigma-range 1.8:1.2:3").code == 64);
}

TEST_CASE("report subcommands") {
  const auto third = run("third-derivative --sigma 1.6 --omega0 1");
  REQUIRE(third.code == 0);
  const auto j = nlohmann::json::parse(third.out);
  CHECK(j.at("invariants_hold").get<bool>());
  CHECK(j.at("branch") == "minus");
  CHECK(j.at("nu").get<double>() < 0.0);

  const auto hess = run("hessian --sigma 1.5 --omega0 1 --omega1 0.4");
  REQUIRE(hess.code == 0);
  const auto h = nlohmann::json::parse(hess.out);
  CHECK(h.at("fd_residual").get<double>() < 1e-6);

  CHECK(run("hessian --sigma 1.5 --omega0 1 --omega1 3").code == 2);
  CHECK(run("hessian --sigma 1.5 --omega1 fast").code == 64);
  CHECK(run("third-derivative --sigma 2.2").code == 64);

  const auto spec = run("spectrum --sigma 1.6 --omega0 1 --count 6");
  REQUIRE(spec.code == 0);
  const auto rows = parse_csv(spec.out);
  REQUIRE(rows.size() == 7);
  CHECK(rows[0] == std::vector<std::string>{"index", "eigenvalue"});
  CHECK(std::stod(rows[1][1]) < -1e-3);

  const auto prof = run("profile --sigma 1.5 --omega0 1 --omega1 0.4 --points 256 -o profile.csv");
  REQUIRE(prof.code == 0);
  const auto p = parse_csv(slurp("profile.csv"));
  CHECK(p.size() == 257);
  CHECK(p[0] == std::vector<std::string>{"x", "re_phi", "im_phi", "abs_phi", "theta"});
  CHECK_FALSE(slurp("profile.csv.manifest.json").empty());
}

TEST_CASE("simulate is deterministic under a fixed seed") {
  {
    std::ofstream cfg("run.cfg");
    cfg << "# short random-perturbation run\n"
           "sigma = 1.5\nomega0 = 1\nomega1 = 0.4\npoints = 1024\n"
           "dt = 1e-3\nt_end = 0.2\nsample_every = 50\n"
           "perturbation = random_h1\namplitude = 1e-3\nseed = 7\n";
  }
  const auto a = run("simulate --config run.cfg --trace a.csv --summary a.json");
  REQUIRE(a.code == 0);
  const auto b = run("simulate --config run.cfg --trace b.csv --summary b.json");
  REQUIRE(b.code == 0);
  CHECK(slurp("a.csv") == slurp("b.csv"));
  CHECK(parse_csv(slurp("a.csv")).size() == 6);
  const auto s = nlohmann::json::parse(slurp("a.json"));
  CHECK(s.at("seed").get<int>() == 7);
  CHECK(s.at("exit_time").is_null());
  CHECK(s.at("config").at("sigma") == "1.5");
  CHECK(s.at("max_q0_drift").get<double>() < 1e-8);

  const auto c = run("simulate --config run.cfg --seed 8 --trace c.csv --summary c.json");
  REQUIRE(c.code == 0);
  CHECK(slurp("a.csv") != slurp("c.csv"));
  CHECK(nlohmann::json::parse(slurp("c.json")).at("seed").get<int>() == 8);

  CHECK(run("simulate --config missing.cfg").code == 64);
  CHECK(run("simulate --config run.cfg --dt -1").code == 2);
}
