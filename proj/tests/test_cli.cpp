#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "tangentrep/cli.hpp"
#include "tangentrep/io.hpp"

using tangentrep::io::Json;
namespace cli = tangentrep::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("tangentrep_test_" + name);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("represent sine on [0, 6.2832] at resolution 201") {
  const auto csv = temp_file("rep.csv");
  const Result r = run({"represent", "--field", "sine_1d", "--domain", "box:0,6.2832", "--resolution", "201",
                        "--csv", csv.string()});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["sites"] == 201);
  CHECK(j["representation"]["sites"].size() == 201);
  CHECK(j["max_abs_err"].get<double>() <= 5e-3);
  const std::string text = slurp(csv);
  CHECK(text.rfind("x1,f,rep,abs_err\n", 0) == 0);
  // The JSON maximum equals the largest abs_err in the CSV.
  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);
  double worst = 0.0;
  std::size_t rows = 0;
  while (std::getline(lines, line)) {
    worst = std::max(worst, std::stod(line.substr(line.rfind(',') + 1)));
    ++rows;
  }
  CHECK(rows == 2001);
  CHECK(worst == j["max_abs_err"].get<double>());
  std::filesystem::remove(csv);
}

TEST_CASE("represent then eval reproduces the error") {
  const auto path = temp_file("rep.json");
  REQUIRE(run({"represent", "--field", "peanut_phi", "--resolution", "11", "--format", "none", "--json",
               path.string()})
              .code == 0);
  const Json built = Json::parse(slurp(path));
  const Result e = run({"eval", "--rep", path.string(), "--resolution", "101"});
  REQUIRE(e.code == 0);
  CHECK(Json::parse(e.out)["max_abs_err"] == built["max_abs_err"]);
  const Result one = run({"eval", "--rep", path.string(), "--point", "0.25,-0.5", "--format", "csv"});
  CHECK(one.code == 0);
  CHECK(one.out.rfind("x1,x2,rep,f,abs_err\n", 0) == 0);
  CHECK(run({"eval", "--rep", path.string(), "--point", "9,9"}).code == 1);
  std::filesystem::remove(path);
}

TEST_CASE("identical configs give identical bytes") {
  const std::vector<std::string> args{"represent", "--field", "x1^2 - x1*x2", "--domain", "ball:0,0,1",
                                      "--resolution", "9", "--format", "csv"};
  const Result a = run(args);
  const Result b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const Result ja = run({"domain-rep", "--shape", "peanut", "--base-resolution", "7", "--ray-count", "16"});
  const Result jb = run({"domain-rep", "--shape", "peanut", "--base-resolution", "7", "--ray-count", "16"});
  CHECK(ja.out == jb.out);
}

TEST_CASE("lemma commands") {
  const Result l1 = run({"lemma1", "--expr", "-sin(2*3.141592653589793*x1)"});
  REQUIRE(l1.code == 0);
  const Json j1 = Json::parse(l1.out);
  CHECK(std::abs(j1["result"]["lambda0"].get<double>() - 0.5) <= 1e-10);
  CHECK(run({"lemma1", "--expr", "x1^2", "--format", "csv"}).out.rfind("lambda,chord_gap\n", 0) == 0);

  const Result l2 = run({"lemma2", "--field", "x1^3", "--a", "-1", "--b", "1"});
  REQUIRE(l2.code == 0);
  const Json j2 = Json::parse(l2.out);
  CHECK(j2["c"] == Json::array({-1.0}));
  CHECK(j2["g_c_at_a"].get<double>() <= j2["f_a"].get<double>());
  CHECK(j2["g_c_at_b"].get<double>() >= j2["f_b"].get<double>());
}

TEST_CASE("legendre command with dual curve output") {
  const auto dual = temp_file("dual.csv");
  const Result r = run({"legendre", "--field", "half_square_1d", "--resolution", "1001", "--dual", dual.string()});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["sites"] == 1001);
  CHECK(j["max_roundtrip_err"].get<double>() <= 2.1e-6);
  CHECK(j["injectivity"]["duplicate_p"] == 0);
  const std::string text = slurp(dual);
  CHECK(text.rfind("t1,p1,H\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 1002);
  std::filesystem::remove(dual);
}

TEST_CASE("domain-rep and counterexample commands") {
  const Result d = run({"domain-rep", "--shape", "disk", "--base-resolution", "3", "--ray-count", "64"});
  REQUIRE(d.code == 0);
  const Json dj = Json::parse(d.out);
  CHECK(dj["agreement"]["rate"] == 1.0);
  CHECK(dj["representation"]["clauses"].size() == 1);

  const Result c = run({"counterexample"});
  REQUIRE(c.code == 0);
  const Json cj = Json::parse(c.out);
  CHECK(cj["certificate"]["f_a"] == 0.09);
  CHECK(cj["certificate"]["f_b"] == 0.0);
  CHECK(cj["certificate"]["max_site_discrepancy"].get<double>() <= 1e-12);
  CHECK(cj["demo"]["worst_error"].get<double>() >= 0.0899);
}

TEST_CASE("config file supplies options and the command") {
  const auto cfg = temp_file("cfg.json");
  std::ofstream(cfg) << R"({"command":"lemma2","field":"x1^2","a":[0],"b":[1]})";
  const Result r = run({"--config", cfg.string()});
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["c"] == Json::array({1.0}));
  // Command-line flags override the file.
  const Result o = run({"lemma2", "--config", cfg.string(), "--field", "-(x1^2)"});
  CHECK(Json::parse(o.out)["c"] == Json::array({0.0}));

  std::ofstream(cfg) << R"({"command":"lemma2","bogus":1})";
  CHECK(run({"--config", cfg.string()}).code == 2);
  CHECK(run({"lemma2", "--config", temp_file("missing.json").string()}).code == 2);
  std::filesystem::remove(cfg);
}

TEST_CASE("configuration errors exit with 2") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {},
           {"nonsense"},
           {"represent", "--field", "no_such_field"},
           {"represent", "--field", "abs(x1)", "--domain", "box:0,1"},
           {"represent", "--field", "sine_1d", "--domain", "box:0,1,0,1"},
           {"represent", "--field", "quadratic_bowl", "--resolution", "1000"},
           {"represent", "--field", "sine_1d", "--tau", "-1"},
           {"domain-rep", "--shape", "triangle"},
           {"domain-rep", "--ray-count", "2"},
           {"lemma1"},
           {"verify", "--module", "nope"},
           {"represent", "--field", "sine_1d", "--format", "xml"},
       }) {
    const Result r = run(args);
    const std::string label = args.empty() ? std::string("<none>") : args[0];
    CHECK_MESSAGE(r.code == 2, label);
    CHECK_FALSE(r.err.empty());
  }
}

TEST_CASE("verify on one module") {
  const Result r = run({"verify", "--module", "tangent"});
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS tangent.tangency_at_sites") != std::string::npos);
  const Result j = run({"verify", "--module", "geometry", "--format", "json"});
  CHECK(Json::parse(j.out)["ok"] == true);
}
