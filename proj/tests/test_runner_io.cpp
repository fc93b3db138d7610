#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qtraj/runner.hpp"

using namespace qtraj;
namespace fs = std::filesystem;

namespace {

RunConfig short_free_run(const std::string& out_dir) {
  RunConfig c = preset("free");
  c.n_steps = 1000;  // t_final = 0.004, enough to exercise every code path
  c.snapshot_stride = 100;
  c.traj_stride = 100;
  c.norm_check_stride = 100;
  c.out_dir = out_dir;
  return c;
}

std::string slurp(const fs::path& p) {
  std::ostringstream ss;
  ss << std::ifstream(p).rdbuf();
  return ss.str();
}

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char ch : s) n += ch == '\n';
  return n;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("qtraj_test_" + tag);
    fs::remove_all(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_SUITE("runner-io") {

TEST_CASE("short free run: outputs, shapes and report content") {
  TempDir dir("short_free");
  const RunConfig config = short_free_run(dir.path.string());
  const RunResult result = run_to_files(config);

  CHECK(fs::exists(dir.path / "fields.csv"));
  CHECK(fs::exists(dir.path / "trajectories.csv"));
  CHECK(fs::exists(dir.path / "report.txt"));
  CHECK_FALSE(fs::exists(dir.path / ".lock"));  // released on completion

  // Snapshots at steps 0, 100, ..., 1000: 11 blocks of 2500 rows.
  const std::string fields = slurp(dir.path / "fields.csv");
  CHECK(count_lines(fields) == 1 + 11 * 2500);
  CHECK(fields.rfind("t,q,re,im,R,S,Q,V\n", 0) == 0);

  // 19 trajectories, 11 recorded points each.
  const std::string traj = slurp(dir.path / "trajectories.csv");
  CHECK(count_lines(traj) == 1 + 19 * 11);
  CHECK(traj.rfind("traj_id,t,q,v,Q,FQ,FC,Feff\n", 0) == 0);

  const std::string report = slurp(dir.path / "report.txt");
  CHECK(report.find("scenario = free") != std::string::npos);
  CHECK(report.find("scheme = cn") != std::string::npos);
  CHECK(report.find("transmission T = ") != std::string::npos);
  CHECK(report.find("norm_history:") != std::string::npos);
  CHECK(report.find("onset_time = none") != std::string::npos);

  CHECK(result.report.transmission + result.report.reflection ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(result.snapshots.snapshots.size() == 11);
  CHECK(result.obs_times.size() == 11);
  CHECK(result.ensemble.ordered());
  CHECK(!result.report.onset_time.has_value());  // free run has no baseline
}

TEST_CASE("trajectory CSV round-trips the in-memory ensemble") {
  TempDir dir("roundtrip");
  const RunConfig config = short_free_run(dir.path.string());
  const RunResult result = run_to_files(config);

  std::ifstream in(dir.path / "trajectories.csv");
  std::string line;
  std::getline(in, line);  // header
  for (std::size_t j = 0; j < result.ensemble.size(); ++j) {
    for (const TrajectoryPoint& p : result.ensemble.series[j]) {
      REQUIRE(std::getline(in, line));
      std::istringstream row(line);
      std::string cell;
      std::vector<std::string> cells;
      while (std::getline(row, cell, ',')) cells.push_back(cell);
      REQUIRE(cells.size() == 8);
      CHECK(std::stoul(cells[0]) == j);
      CHECK(std::stod(cells[1]) == p.t);  // %.17g is lossless for doubles
      CHECK(std::stod(cells[2]) == p.q);
      CHECK(std::stod(cells[3]) == p.v);
      CHECK(std::stod(cells[4]) == p.Q);
      CHECK(std::stod(cells[7]) == p.Feff);
    }
  }
  CHECK_FALSE(std::getline(in, line));
}

TEST_CASE("reruns are byte-identical") {
  TempDir a("determinism_a"), b("determinism_b");
  run_to_files(short_free_run(a.path.string()));
  run_to_files(short_free_run(b.path.string()));
  for (const char* name : {"fields.csv", "trajectories.csv", "report.txt"}) {
    CHECK(slurp(a.path / name) == slurp(b.path / name));
  }
}

TEST_CASE("a held lockfile blocks a second run") {
  TempDir dir("locked");
  fs::create_directories(dir.path);
  std::ofstream(dir.path / ".lock") << "";
  CHECK_THROWS_AS(run_to_files(short_free_run(dir.path.string())),
                  std::runtime_error);
  // The foreign lockfile is left in place.
  CHECK(fs::exists(dir.path / ".lock"));
}

TEST_CASE("barrier run fills the onset field from the free baseline") {
  RunConfig c = preset("eckart");
  c.n_steps = 500;  // t_final = 0.002: packet still far from the barrier
  c.snapshot_stride = 500;
  c.traj_stride = 100;
  c.norm_check_stride = 500;
  const RunResult result = simulate(c);
  // Far from the barrier the twin runs agree, so no onset is detected yet.
  CHECK(!result.report.onset_time.has_value());
  CHECK(result.report.reflection == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(result.report.ehrenfest_q_residual < 1e-3);
}

}  // TEST_SUITE
