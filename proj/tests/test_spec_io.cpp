#include <catch_amalgamated.hpp>

#include <sstream>

#include "gifs/cloud_io.hpp"
#include "gifs/error.hpp"
#include "gifs/spec.hpp"

using namespace gifs;

namespace {

const std::string kCantorText = spec::preset("cantor");

std::string replaced(std::string text, const std::string& from, const std::string& to) {
  const auto at = text.find(from);
  REQUIRE(at != std::string::npos);
  return text.replace(at, from.size(), to);
}

std::string error_path(const std::string& text) {
  try {
    (void)spec::parse_spec(text);
  } catch (const SpecError& e) {
    return e.path();
  }
  return "<none>";
}

}  // namespace

TEST_CASE("Cantor spec parses") {
  const auto s = spec::parse_spec(kCantorText);
  CHECK(s.name == "cantor");
  CHECK(s.maps.entries.size() == 2);
  CHECK(s.tree.kind == "full");
  CHECK(s.certificate.mode == "geometric");
  const auto built = spec::build(s);
  CHECK(built.ifs.uniform_c() == Catch::Approx(1.0 / 3.0));
}

TEST_CASE("non-contracting maps are rejected at their path") {
  const auto bad = replaced(kCantorText, R"("slope": 0.3333333333333333, "offset": 0})",
                            R"("slope": 1.0, "offset": 0})");
  CHECK(error_path(bad) == "/maps/0/slope");
}

TEST_CASE("unknown fields and dangling symbols are rejected") {
  CHECK(error_path(replaced(kCantorText, R"("name": "cantor",)", R"("name": "cantor", "colour": 1,)")) ==
        "/colour");
  CHECK(error_path(replaced(kCantorText, R"("alphabet": [0, 1])", R"("alphabet": [0, 1, 2])")) ==
        "/tree/alphabet/2");
  CHECK_THROWS_AS(spec::parse_spec("{not json"), SpecError);
  CHECK_THROWS_AS(spec::parse_spec(replaced(kCantorText, R"("uniform_c": 0.3333333333333333)",
                                            R"("uniform_c": 1.5)")),
                  SpecError);
}

TEST_CASE("continued-fraction preset") {
  const auto s = spec::parse_spec(spec::preset("contfrac", "2.5"));
  CHECK(s.maps.kind == "moebius-digit");
  CHECK(s.tree.kind == "sum-bounded");
  CHECK(s.tree.alpha == "2.5");
  CHECK(s.uniform_c == 0.8);
  CHECK(spec::build(s).ifs.tree().children({}) == std::vector<Symbol>{1, 2});
}

TEST_CASE("every preset survives a serialization round trip") {
  for (const auto& name : spec::preset_names()) {
    const auto s = spec::parse_spec(spec::preset(name));
    const auto again = spec::parse_spec(spec::serialize(s));
    CHECK(again == s);
    CHECK(spec::serialize(again) == spec::serialize(s));
  }
  CHECK_THROWS(spec::preset("no-such-preset"));
}

TEST_CASE("CSV clouds round trip with labels") {
  PointCloud cloud;
  cloud.dimension = 1;
  cloud.points = {{0.1, 0.0}, {1.0 / 3.0, 0.0}, {2.5e-17, 0.0}};
  cloud.labels = {{0, 1}, {1}, {12, 0, 3}};
  std::stringstream buf;
  io::write_csv(buf, cloud);
  const auto back = io::read_cloud(buf);
  CHECK(back.points == cloud.points);
  CHECK(back.labels == cloud.labels);
  CHECK(back.dimension == 1);
}

TEST_CASE("JSON clouds round trip in two dimensions") {
  PointCloud cloud;
  cloud.dimension = 2;
  cloud.points = {{0.1, -0.2}, {0.7, 1e-300}};
  cloud.labels = {{1, 2}, {3}};
  std::stringstream buf;
  io::write_json(buf, cloud, 1e-3, 2, {});
  const auto back = io::read_cloud(buf);
  CHECK(back.points == cloud.points);
  CHECK(back.labels == cloud.labels);
  CHECK(back.dimension == 2);
}

TEST_CASE("headerless CSV is accepted") {
  std::stringstream one("0.5\n0.25\n");
  CHECK(io::read_cloud(one).points == std::vector<Point>{{0.5, 0.0}, {0.25, 0.0}});
  std::stringstream two("0.5,1\n0.25,2\n");
  const auto pts = io::read_cloud(two);
  CHECK(pts.dimension == 2);
  CHECK(pts.points[1] == Point{0.25, 2.0});
  std::stringstream bad("0.5,abc\n");
  CHECK_THROWS(io::read_cloud(bad));
}

TEST_CASE("PGM raster marks occupied pixels") {
  PointCloud cloud;
  cloud.points = {{0.0, 0.0}, {1.0, 1.0}};
  cloud.dimension = 2;
  std::stringstream buf;
  io::write_pgm(buf, cloud, 4, {0.0, 1.0, 0.0, 1.0});
  const std::string s = buf.str();
  const std::string header = "P5\n4 4\n255\n";
  REQUIRE(s.substr(0, header.size()) == header);
  const std::string body = s.substr(header.size());
  REQUIRE(body.size() == 16);
  CHECK(std::count(body.begin(), body.end(), static_cast<char>(255)) == 2);
}

TEST_CASE("shortest round-trip formatting") {
  CHECK(io::format_double(0.1) == "0.1");
  CHECK(std::stod(io::format_double(1.0 / 3.0)) == 1.0 / 3.0);
}
