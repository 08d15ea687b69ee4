#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "frontlab/config.hpp"
#include "frontlab/io.hpp"
#include "frontlab/manifest.hpp"

using namespace frontlab;
namespace fs = std::filesystem;

namespace {

const char* kMinimalConfig = R"(
[hypotheses]
M = 1.0
theta1 = 0.25
m1 = 2.0
alpha1 = 1.0
d = 1
)";

std::string cli_path() {
#ifdef FRONTLAB_CLI
  return FRONTLAB_CLI;
#else
  return "";
#endif
}

int run_cli(const std::string& args) {
  const std::string cmd = cli_path() + " " + args + " >/dev/null 2>&1";
  return std::system(cmd.c_str());
}

}  // namespace

TEST_CASE("minimal config echoes the worked exponents") {
  const ParsedConfig cfg = parse_config_text(kMinimalConfig);
  REQUIRE(cfg.exponents.beta == Catch::Approx(0.75).margin(1e-15));
  REQUIRE(cfg.echo.find("beta=0.75") != std::string::npos);
  REQUIRE(cfg.experiment.hyp.lipschitz == 1.0);
  REQUIRE(cfg.config_hash != 0);
}

TEST_CASE("invalid configuration names the violated invariant") {
  std::string bad = kMinimalConfig;
  bad += "theta1 = 0.6\n";
  // Duplicate key is its own error.
  REQUIRE_THROWS_MATCHES(parse_config_text(bad), ConfigError,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("duplicate")));
  std::string bad2 = "[hypotheses]\nM = 1.0\ntheta1 = 0.6\nm1 = 2.0\nalpha1 = 1.0\nd = 1\n";
  REQUIRE_THROWS_MATCHES(parse_config_text(bad2), ConfigError,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("theta1")));
}

TEST_CASE("unknown keys are rejected by name") {
  std::string bad = kMinimalConfig;
  bad += "typo_key = 1\n";
  REQUIRE_THROWS_MATCHES(parse_config_text(bad), ConfigError,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("typo_key")));
}

TEST_CASE("approximation-block exponents") {
  std::string cfg_text = kMinimalConfig;
  cfg_text += "m3 = 1.0\nalpha3 = 1.0\nm4 = 1.0\nn4 = 4.0\nalpha4 = 1.0\n";
  const ParsedConfig cfg = parse_config_text(cfg_text);
  REQUIRE_FALSE(cfg.exponents.finite_range);
  REQUIRE(cfg.exponents.beta ==
          Catch::Approx(1.0 - std::min(0.25, 1.0 / 3.0)).margin(1e-15));
}

TEST_CASE("body descriptors") {
  const auto dirs = direction_grid<2>(64);
  const auto ball = make_body<2>("ball:2.0", dirs);
  REQUIRE(ball.contains({1.9, 0.0}));
  const auto off = make_body<2>("ball:1.0,2.0,0.5", dirs);
  REQUIRE(off.contains({1.0, 2.0}));
  REQUIRE_FALSE(off.contains({1.0, 2.6}));
  const auto box = make_body<2>("box:-1,1,-2,2", dirs);
  REQUIRE(box.contains({0.9, -1.9}));
  REQUIRE_THROWS_AS(make_body<2>("blob:1", dirs), ConfigError);
  REQUIRE_THROWS_AS(make_body<2>("box:1,-1,0,1", dirs), ConfigError);
}

TEST_CASE("manifest round trip") {
  RunManifest m;
  m.config_hash = 0xabcd;
  m.jobs.push_back({"homogenize", "eps=0.2 seed=1", 42, "report.jsonl", 1.5, "done"});
  m.jobs.push_back({"speed", "directions=32", 7, "speeds.csv", 2.5, "pending"});
  const std::string path = "manifest_roundtrip.json";
  m.save(path);
  const RunManifest r = RunManifest::load(path);
  std::remove(path.c_str());
  REQUIRE(r.config_hash == m.config_hash);
  REQUIRE(r.jobs.size() == 2);
  REQUIRE(r.jobs[0].module == "homogenize");
  REQUIRE(r.jobs[1].status == "pending");
  REQUIRE(r.jobs[0].wall_time_s == 1.5);
}

TEST_CASE("number formatting round-trips doubles") {
  for (double v : {0.1, 1.0 / 3.0, 1e-17, 123456.789012345678, 2.0}) {
    REQUIRE(std::stod(format_number(v)) == v);
  }
}

TEST_CASE("snapshot persistence round trip") {
  Grid<2> grid;
  grid.origin = {-1.0, -2.0};
  grid.n = {8, 6};
  grid.h = 0.5;
  grid.bc[1] = BoundaryRule::periodic;
  GridState<2> s(grid);
  for (std::size_t i = 0; i < s.u.size(); ++i) s.u[i] = 1.0 / (1.0 + static_cast<double>(i));
  s.t = 3.25;
  const std::string path = "snapshot_roundtrip.bin";
  save_snapshot<2>(s, 99, path, 0x1234);
  std::uint64_t seed = 0;
  const GridState<2> r = load_snapshot<2>(path, &seed);
  std::remove(path.c_str());
  REQUIRE(seed == 99);
  REQUIRE(r.t == s.t);
  REQUIRE(r.grid.bc[1] == BoundaryRule::periodic);
  REQUIRE(r.u == s.u);
}

TEST_CASE("body CSV round trip") {
  const auto body = ConvexBody<2>::box({-1.0, -0.5}, {2.0, 1.5}, direction_grid<2>(32));
  const auto back = body_from_csv<2>(body_to_csv<2>(body));
  REQUIRE(back.dirs().size() == body.dirs().size());
  for (std::size_t i = 0; i < body.support().size(); ++i)
    REQUIRE(back.support()[i] == body.support()[i]);
}

TEST_CASE("command line: smoke experiment is reproducible and resumable") {
  REQUIRE_FALSE(cli_path().empty());
  const fs::path dir = fs::temp_directory_path() / "frontlab_cli_test";
  fs::remove_all(dir);
  const std::string base = "--out-dir " + dir.string() + " --threads 2 ";

  // Write a tiny config next to the outputs.
  const std::string cfg_path = (dir / "cfg.cfg").string();
  fs::create_directories(dir);
  std::ofstream(cfg_path) << R"([hypotheses]
M = 4.0
theta1 = 0.25
m1 = 2.0
alpha1 = 1.8
rho = 1.0
d = 1
nu = 1.0
delta_theta = 0.02
ramp_width = 0.42
amp_max = 1.25
theta_star = 0.05
[geometry]
body = ball:1.0
theta = 0.5
domain = -8,8
[ladder]
eps = 0.2,0.1
seeds_per_eps = 10
T0 = 1.0
checkpoints = 2
profile_lengths = 12,24,48
profile_seeds = 8
[runtime]
threads = 2
root_seed = 5
)";

  REQUIRE(run_cli(base + "homogenize --config " + cfg_path + " --out report.jsonl") == 0);
  const std::string first = read_text_file((dir / "report.jsonl").string());
  REQUIRE(first.find("\"eps\":0.2") != std::string::npos);

  // Identical rerun: byte-identical report.
  REQUIRE(run_cli(base + "homogenize --config " + cfg_path + " --out report.jsonl") == 0);
  REQUIRE(read_text_file((dir / "report.jsonl").string()) == first);

  // Resume: everything is already complete, and the bytes still match.
  REQUIRE(run_cli(base + "--resume homogenize --config " + cfg_path + " --out report.jsonl") == 0);
  REQUIRE(read_text_file((dir / "report.jsonl").string()) == first);

  // Manifest marks every job done and points at the report.
  const RunManifest m = RunManifest::load((dir / "manifest.json").string());
  REQUIRE(m.jobs.size() == 20);
  for (const auto& j : m.jobs) {
    REQUIRE(j.status == "done");
    REQUIRE(fs::exists(dir / j.output));
  }

  // Summary over the rows.
  REQUIRE(run_cli(base + "report --in " + (dir / "report.jsonl").string() + " --out summary.csv") == 0);
  REQUIRE(read_text_file((dir / "summary.csv").string()).find("success_frequency") !=
          std::string::npos);

  // Partial file: drop the last job's rows, resume re-computes just that job
  // and restores the identical canonical bytes.
  {
    std::istringstream in(first);
    std::ostringstream out;
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(in, line)) lines.push_back(line);
    for (std::size_t i = 0; i + 2 < lines.size(); ++i) out << lines[i] << "\n";
    write_text_file((dir / "report.jsonl").string(), out.str());
  }
  REQUIRE(run_cli(base + "--resume homogenize --config " + cfg_path + " --out report.jsonl") == 0);
  REQUIRE(read_text_file((dir / "report.jsonl").string()) == first);

  // Field sampling and a short solve complete through the CLI as well.
  REQUIRE(run_cli(base + "sample-field --config " + cfg_path + " --seed 3 --out f.bin") == 0);
  REQUIRE(run_cli(base + "solve --field " + (dir / "f.bin").string() +
                  " --init halfspace:1,-4 --until 2 --checkpoint-every 1") == 0);
  REQUIRE(fs::exists(dir / "snapshot_t0002.000.bin"));

  // Unknown config key: nonzero exit.
  std::ofstream(cfg_path, std::ios::app) << "bogus = 1\n";
  REQUIRE(run_cli(base + "homogenize --config " + cfg_path + " --out report.jsonl") != 0);
  fs::remove_all(dir);
}
