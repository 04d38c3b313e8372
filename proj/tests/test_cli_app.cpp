#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dmorse/cloud_io.hpp"
#include "dmorse/plot.hpp"
#include "dmorse/report.hpp"
#include "support/oracles.hpp"

using namespace dmorse;
namespace fs = std::filesystem;

namespace {
const fs::path kData = DMORSE_DATA_DIR;
const fs::path kGolden = DMORSE_GOLDEN_DIR;

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("dmorse_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(const std::string& args) {
  auto out = scratch() / "stdout.txt", err = scratch() / "stderr.txt";
  std::string cmd = std::string("\"") + DMORSE_CLI + "\" " + args + " >\"" + out.string() + "\" 2>\"" + err.string() + "\"";
  int status = std::system(cmd.c_str());
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, slurp(out), slurp(err)};
}

std::string data(const char* name) { return "\"" + (kData / name).string() + "\""; }

std::string strip_generator(std::string svg) {
  auto pos = svg.find(kGeneratorComment);
  if (pos != std::string::npos) svg.erase(pos, std::string(kGeneratorComment).size() + 1);
  return svg;
}
}  // namespace

TEST_CASE("parse_point_cloud examples") {
  auto sq = parse_point_cloud<Rational>("1,1\n1,-1\n-1,1\n-1,-1");
  CHECK(sq.size() == 4);
  CHECK(sq.ambient() == 2);

  try {
    parse_point_cloud<Rational>("0,0\n0,0\n");
    FAIL("expected duplicate error");
  } catch (const CloudFileError& e) {
    CHECK(e.lines() == std::vector<std::size_t>{1, 2});
    CHECK(std::string(e.what()).find("1,2") != std::string::npos);
  }

  auto q = parse_point_cloud<Rational>("1/2,1/3\n-2,7\n");
  CHECK(q[0][0] == oracle::frac(1, 2));
  CHECK(q[0][1] == oracle::frac(1, 3));
  CHECK(q[1][1] == 7);

  auto skipped = parse_point_cloud<Rational>("# header\n\n0.25, 1e1\n");
  CHECK(skipped.size() == 1);
  CHECK(skipped[0][0] == oracle::frac(1, 4));
  CHECK(skipped[0][1] == 10);

  CHECK_THROWS_AS(parse_point_cloud<Rational>("1,2\n3\n"), CloudFileError);
  CHECK_THROWS_AS(parse_point_cloud<Rational>("# nothing\n"), CloudFileError);
  CHECK_THROWS_AS(parse_point_cloud<Rational>("1,x\n"), CloudFileError);
  CHECK_THROWS_AS(load_point_cloud<Rational>(kData / "missing.csv"), CloudFileError);

  auto f = load_point_cloud<double>(kData / "rational.csv");
  CHECK(f[0][1] == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("report JSON round-trips through classify") {
  for (const char* name : {"square.csv", "tee.csv", "collinear4.csv", "triangle.csv"}) {
    auto cloud = load_point_cloud<Rational>(kData / name);
    auto recs = enumerate_critical(cloud);
    auto j = Json::parse(dump_json(analysis_report(cloud, recs, AnalysisSettings{})));
    REQUIRE(j["records"].size() == recs.size());
    for (const auto& r : j["records"]) {
      Point<Rational> z;
      for (const auto& s : r["location"]) {
        auto q = parse_rational(s.get<std::string>());
        CHECK(to_exact_string(q) == s.get<std::string>());
        z.push_back(q);
      }
      auto c = classify(cloud, z);
      CHECK(kind_name(c.kind) == r["kind"].get<std::string>());
      if (c.is_topological_critical()) CHECK(r["index"].get<std::size_t>() == c.index);
      CHECK(parse_rational(r["squared_value"].get<std::string>()) == projection_set(cloud, z).squared_value);
    }
  }
}

TEST_CASE("analyze command") {
  auto r = cli("analyze --input " + data("square.csv"));
  REQUIRE(r.code == 0);
  auto j = Json::parse(r.out);
  REQUIRE(j["records"].size() == 9);
  std::map<std::size_t, int> by_index;
  for (const auto& rec : j["records"]) by_index[rec["index"].get<std::size_t>()]++;
  CHECK(by_index == std::map<std::size_t, int>{{0, 4}, {1, 4}, {2, 1}});
  CHECK(j["records"][8]["squared_value"] == "2/1");
  CHECK(j["records"][8]["value"].get<double>() == doctest::Approx(std::sqrt(2.0)));

  r = cli("analyze --input " + data("single.csv"));
  REQUIRE(r.code == 0);
  j = Json::parse(r.out);
  REQUIRE(j["records"].size() == 1);
  CHECK(j["records"][0]["kind"] == "min");

  r = cli("analyze --input " + data("tee.csv"));
  j = Json::parse(r.out);
  CHECK(j["records"][5]["kind"] == "regular_certificate");
  CHECK(j["records"][5].contains("certificate_v"));

  auto out = scratch() / "report.json";
  r = cli("analyze --input " + data("collinear4.csv") + " --mode float --out \"" + out.string() + "\"");
  REQUIRE(r.code == 0);
  j = Json::parse(slurp(out));
  CHECK(j["input"]["mode"] == "float");
  CHECK(j["records"].size() == 7);
}

TEST_CASE("analyze input errors") {
  oracle::Rng rng(26);
  std::string big;
  for (const auto& p : oracle::random_cloud(rng, 2, 26, 50, 1))
    big += p[0].get_str() + "," + p[1].get_str() + "\n";
  write(scratch() / "big.csv", big);
  auto r = cli("analyze --input \"" + (scratch() / "big.csv").string() + "\"");
  CHECK(r.code == 2);
  CHECK(r.err.find("25") != std::string::npos);

  write(scratch() / "dup.csv", "0,0\n0,0\n");
  r = cli("analyze --input \"" + (scratch() / "dup.csv").string() + "\"");
  CHECK(r.code == 2);
  CHECK(r.err.find("lines 1,2") != std::string::npos);

  CHECK(cli("analyze --input " + data("missing.csv")).code == 2);
  CHECK(cli("analyze --input " + data("square.csv") + " --mode fuzzy").code == 2);
  CHECK(cli("frobnicate").code == 2);
}

TEST_CASE("gradient command") {
  auto r = cli("gradient --input " + data("square.csv") + " --at 0,0");
  REQUIRE(r.code == 0);
  auto j = Json::parse(r.out);
  CHECK(j["pi_indices"] == Json::array({0, 1, 2, 3}));
  CHECK(j["gradient_unnormalized_exact"] == Json::array({"0/1", "0/1"}));

  r = cli("gradient --input " + data("single.csv") + " --at 8,9");
  j = Json::parse(r.out);
  CHECK(j["gradient_normalized_float"][0].get<double>() == doctest::Approx(0.6));
  CHECK(j["gradient_normalized_float"][1].get<double>() == doctest::Approx(0.8));

  r = cli("gradient --input " + data("square.csv") + " --at 3,0");
  j = Json::parse(r.out);
  CHECK(j["pi_indices"] == Json::array({0, 1}));
  CHECK(j["sigma"] == Json::array({"1/1", "0/1"}));
  CHECK(j["gradient_unnormalized_exact"] == Json::array({"2/1", "0/1"}));
  CHECK(j["gradient_normalized_float"][0].get<double>() == doctest::Approx(2 / std::sqrt(5.0)));
  CHECK(j["gradient_normalized_float"][1].get<double>() == 0.0);

  CHECK(cli("gradient --input " + data("square.csv") + " --at 1,2,3").code == 2);
}

TEST_CASE("verify command") {
  for (const char* name : {"square.csv", "collinear4.csv", "tee.csv", "single.csv", "triangle.csv"}) {
    auto r = cli(std::string("verify --input ") + data(name));
    CHECK(r.code == 0);
    auto j = Json::parse(r.out);
    CHECK(j["verification"]["all_pass"] == true);
  }
  auto j = Json::parse(cli("verify --input " + data("tee.csv")).out);
  CHECK(j["verification"]["rules"]["R1_isotopy"] == true);
  CHECK(j["verification"]["isotopy_checks"].size() == 1);
}

TEST_CASE("plot command") {
  auto out = scratch() / "two.svg";
  auto r = cli("plot --input " + data("two_point.csv") + " --out \"" + out.string() + "\" --grid 60 --levels 4");
  REQUIRE(r.code == 0);
  auto svg = slurp(out);
  CHECK(strip_generator(svg) == strip_generator(slurp(kGolden / "two_point.svg")));
  CHECK(svg.find("class=\"critical index-1\" points=\"300.00,143.00") != std::string::npos);

  r = cli("plot --input " + data("triangle.csv") + " --out \"" + out.string() + "\"");
  REQUIRE(r.code == 0);
  svg = slurp(out);
  CHECK(svg.find("critical index-2") != std::string::npos);
  auto again = scratch() / "again.svg";
  cli("plot --input " + data("triangle.csv") + " --out \"" + again.string() + "\"");
  CHECK(slurp(again) == svg);

  r = cli("plot --input " + data("tee.csv") + " --out \"" + out.string() + "\"");
  svg = slurp(out);
  CHECK(svg.find("class=\"regular-critical\"") != std::string::npos);

  write(scratch() / "space.csv", "0,0,0\n1,1,1\n");
  CHECK(cli("plot --input \"" + (scratch() / "space.csv").string() + "\" --out \"" + out.string() + "\"").code == 2);
}

TEST_CASE("plot markers map records") {
  auto cloud = load_point_cloud<Rational>(kData / "tee.csv");
  auto m = plot_markers(enumerate_critical(cloud));
  REQUIRE(m.size() == 3);
  CHECK(m[2].kind == PointKind::RegularCertificate);
  CHECK(m[2].x == 0.0);
  CHECK(m[2].y == 0.0);
}
