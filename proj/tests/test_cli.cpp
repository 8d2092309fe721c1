#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("swcycle_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run(const std::string& args, const fs::path& dir) {
  const std::string cmd = std::string("\"") + SWCYCLE_CLI + "\" " + args + " > \"" +
                          (dir / "stdout.txt").string() + "\" 2> \"" +
                          (dir / "stderr.txt").string() + "\"";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("cycle on the symmetric builtin") {
  const fs::path dir = scratch("cycle");
  REQUIRE(run("cycle --builtin symmetric-test --out \"" + dir.string() + "\"", dir) == 0);
  const auto doc = nlohmann::json::parse(slurp(dir / "cycle.json"));
  CHECK(doc["period"].get<double>() == doctest::Approx(0.4).epsilon(1e-10));
  CHECK(doc["stable"].get<bool>());
  CHECK(fs::exists(dir / "cycle.csv"));
}

TEST_CASE("converter-design prints the threshold constant") {
  const fs::path dir = scratch("design");
  REQUIRE(run("converter-design --builtin converter --out \"" + dir.string() + "\"", dir) == 0);
  CHECK(slurp(dir / "stdout.txt").find("c = 7.978") != std::string::npos);
  const auto doc = nlohmann::json::parse(slurp(dir / "design.json"));
  CHECK(doc["u_c"].get<double>() == doctest::Approx(18.0));
}

TEST_CASE("simulate and sweep write their files") {
  const fs::path dir = scratch("simulate");
  REQUIRE(run("simulate --builtin converter --set stop.switches=10 --out \"" + dir.string() + "\"",
              dir) == 0);
  CHECK(fs::exists(dir / "trajectory.csv"));
  CHECK(fs::exists(dir / "events.csv"));
  CHECK(slurp(dir / "converter_trajectory.csv").rfind("t,i_l,u_c,mode,arc_index", 0) == 0);

  REQUIRE(run("sweep --set sweep.half_widths=\"0.1 0.05\" --workers 2 --out \"" + dir.string() +
                  "\"",
              dir) == 0);
  CHECK(slurp(dir / "sweep.csv").find("0.05,0.2,") != std::string::npos);
}

TEST_CASE("check fails with status 3 when the hypotheses fail") {
  const fs::path dir = scratch("check");
  std::ofstream(dir / "parallel.ini") << "[system]\ntype = affine\n"
                                         "[plus]\nmatrix = 0 0 0 0\noffset = 1 1\n"
                                         "[minus]\nmatrix = 0 0 0 0\noffset = 2 2\n"
                                         "[cycle]\neq_guess = 0\n";
  const int status = run("check --scenario \"" + (dir / "parallel.ini").string() + "\" --out \"" +
                             dir.string() + "\"",
                         dir);
  CHECK(status == 3);
  CHECK_FALSE(nlohmann::json::parse(slurp(dir / "check.json"))["hypotheses"]["transversal"].get<bool>());

  REQUIRE(run("check --builtin symmetric-test --out \"" + dir.string() + "\"", dir) == 0);
  const auto doc = nlohmann::json::parse(slurp(dir / "check.json"));
  CHECK(doc["hypotheses"]["transversal"].get<bool>());
}

TEST_CASE("bad command lines and scenarios exit with status 2") {
  const fs::path dir = scratch("usage");
  CHECK(run("frobnicate", dir) == 2);
  CHECK(run("cycle --set system.width=1 --out \"" + dir.string() + "\"", dir) == 2);
  CHECK(run("cycle --scenario /nonexistent.ini", dir) == 2);
}

TEST_CASE("numeric failures exit with status 3 and an error record") {
  const fs::path dir = scratch("numeric");
  std::ostringstream y;
  y.precision(17);
  y << 1.0 + std::cbrt(0.6);
  CHECK(run("cycle --builtin tangency-test --set cycle.eq_guess=0 --set cycle.y_guess=" + y.str() +
                " --out \"" + dir.string() + "\"",
            dir) == 3);
  const auto doc = nlohmann::json::parse(slurp(dir / "error.json"));
  CHECK(doc["error"].get<std::string>() == "tangency");
}

TEST_CASE("outputs are byte-identical across runs") {
  const fs::path a = scratch("repeat_a"), b = scratch("repeat_b");
  for (const fs::path& dir : {a, b}) {
    REQUIRE(run("converter-case-study --builtin converter --set converter.transient_switches=20 "
                "--out \"" + dir.string() + "\"",
                dir) == 0);
  }
  for (const char* name : {"case_study.json", "case_study_trajectory.csv", "case_study_cycle.csv"})
    CHECK(slurp(a / name) == slurp(b / name));
}
