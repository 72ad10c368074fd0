#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gifs/cloud_io.hpp"
#include "gifs/limitset.hpp"
#include "support.hpp"

using gifs::testing::run_command;

namespace {

const std::string kCli = GIFS_CLI_PATH;

std::string cli(const std::string& args) { return "'" + kCli + "' " + args; }

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "gifs_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("exit codes") {
  CHECK(run_command(cli("certify cantor")).exit_code == 0);
  CHECK(run_command(cli("")).exit_code == 1);
  CHECK(run_command(cli("render no-such-preset --depth 2")).exit_code == 1);
  CHECK(run_command(cli("project contfrac --word 0,1")).exit_code == 1);
  CHECK(run_command(cli("examples 1dimex")).exit_code == 2);
  CHECK(run_command(cli("render polyfastconvexample --depth 2 --exp-rate")).exit_code == 2);
  CHECK(run_command("GIFS_POINT_CAP=10 " + cli("render cantor --depth 5")).exit_code == 3);
}

TEST_CASE("errors are single JSON lines on stderr") {
  const auto r = run_command(cli("project contfrac --word 0,1"), gifs::testing::Capture::Stderr);
  CHECK(r.out.find("\"error\":\"prefix\"") != std::string::npos);
  CHECK(r.out.find("\"position\":1") != std::string::npos);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 1);
}

TEST_CASE("bad spec files name the offending path") {
  const auto path = scratch("bad.json");
  std::string text = gifs::spec::preset("cantor");
  text.replace(text.find("\"slope\": 0.3333333333333333"), 27, "\"slope\": 1.0");
  std::ofstream(path) << text;
  const auto r = run_command(cli("certify " + path.string()), gifs::testing::Capture::Stderr);
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("/maps/0/slope") != std::string::npos);
}

TEST_CASE("preset render has 1024 points at depth 10") {
  const auto path = scratch("cantor10.csv");
  const auto r = run_command(cli("render cantor --depth 10 --out " + path.string()));
  REQUIRE(r.exit_code == 0);
  const auto cloud = gifs::io::read_cloud_file(path.string());
  CHECK(cloud.points.size() == 1024);
  CHECK(r.out.find("\"points\":1024") != std::string::npos);
}

TEST_CASE("output is deterministic and independent of the thread hint") {
  const auto a = run_command(cli("render contfrac:2.5 --depth 5"));
  const auto b = run_command(cli("--threads 8 render contfrac:2.5 --depth 5"));
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(run_command(cli("examples cantor")).out == run_command(cli("examples cantor")).out);
}

TEST_CASE("CSV and JSON exports agree and feed the distance command") {
  const auto csv = scratch("cf.csv"), json = scratch("cf.json");
  REQUIRE(run_command(cli("render contfrac:2 --depth 6 --out " + csv.string())).exit_code == 0);
  REQUIRE(run_command(cli("render contfrac:2 --depth 6 --out " + json.string())).exit_code == 0);
  const auto a = gifs::io::read_cloud_file(csv.string());
  const auto b = gifs::io::read_cloud_file(json.string());
  CHECK(a.points == b.points);
  CHECK(a.labels == b.labels);
  const auto d = run_command(cli("hausdorff " + csv.string() + " " + json.string()));
  CHECK(d.exit_code == 0);
  CHECK(d.out.find("\"distance\":0") != std::string::npos);
}

TEST_CASE("projection, tree and dimension commands") {
  const auto p = run_command(cli("project cantor --word '(0,1)'"));
  CHECK(p.exit_code == 0);
  CHECK(p.out.find("\"point\":[0.2499999") != std::string::npos);
  const auto t = run_command(cli("tree contfrac:2.5 --depth 3"));
  CHECK(t.exit_code == 0);
  CHECK(t.out.find("19") != std::string::npos);
  const auto d = run_command(cli("dimension contfrac:2 --depth 10"));
  CHECK(d.exit_code == 0);
  CHECK(d.out.find("\"slope\"") != std::string::npos);
  CHECK(d.out.find("\"counts\"") != std::string::npos);
}

TEST_CASE("raster output") {
  const auto pgm = scratch("cantor.pgm");
  REQUIRE(run_command(cli("render cantor --depth 6 --image " + pgm.string() + " --px 64")).exit_code == 0);
  std::ifstream in(pgm, std::ios::binary);
  std::string magic;
  in >> magic;
  CHECK(magic == "P5");
  CHECK(std::filesystem::file_size(pgm) == std::string("P5\n64 64\n255\n").size() + 64 * 64);
}
