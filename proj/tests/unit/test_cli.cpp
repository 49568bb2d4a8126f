#include <doctest.h>

#include <filesystem>
#include <random>
#include <sstream>

#include "dirprior/app/cli.hpp"
#include "dirprior/app/io.hpp"

using namespace dirprior;
using namespace dirprior::app;
namespace fs = std::filesystem;

namespace {

const std::string kFixtures = DIRPRIOR_FIXTURE_DIR;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path temp_file(const std::string& stem) {
  std::random_device rd;
  return fs::temp_directory_path() / ("dirprior-cli-" + stem + "-" + std::to_string(rd()) + ".json");
}

}  // namespace

TEST_CASE("elicit on the two-cell example") {
  const Run r = cli({"elicit", "--bounds", kFixtures + "/ex2.json", "--seed", "1"});
  REQUIRE(r.code == kExitOk);
  const json j = parse_json(r.out);
  const auto alpha = j["params"].get<std::vector<double>>();
  REQUIRE(alpha.size() == 2);
  CHECK(alpha[0] == alpha[1]);
  CHECK(alpha[0] >= 11.5);
  CHECK(alpha[0] <= 13.5);
  CHECK(j["achieved_content"].get<double>() >= 0.985);
}

TEST_CASE("elicit is deterministic for a seed and writes --out") {
  const fs::path path = temp_file("elicit");
  const Run a = cli({"elicit", "--bounds", kFixtures + "/ex4.json", "--draws", "2000", "--seed", "9"});
  const Run b = cli({"elicit", "--bounds", kFixtures + "/ex4.json", "--draws", "2000", "--seed", "9",
                     "--out", path.string()});
  REQUIRE(a.code == kExitOk);
  REQUIRE(b.code == kExitOk);
  CHECK(b.out.find("wrote") != std::string::npos);
  CHECK(read_file(path.string()) == a.out);
  fs::remove(path);
}

TEST_CASE("invalid bounds exit 1 and name the inequality") {
  const Run r = cli({"elicit", "--bounds", kFixtures + "/invalid_sum.json"});
  CHECK(r.code == kExitInvalidInput);
  CHECK(r.err.find("ineq1") != std::string::npos);
  CHECK(r.out.empty());
}

TEST_CASE("usage errors exit 1") {
  CHECK(cli({}).code == kExitInvalidInput);
  CHECK(cli({"elicit"}).code == kExitInvalidInput);
  CHECK(cli({"frobnicate"}).code == kExitInvalidInput);
  CHECK(cli({"elicit", "--bounds", "/nonexistent/bounds.json"}).code == kExitInvalidInput);
  CHECK(cli({"reproduce", "example9"}).code == kExitInvalidInput);
  CHECK(cli({"--help"}).code == kExitOk);
}

TEST_CASE("numerical failures exit 2") {
  // One iteration cannot bracket the target content.
  const fs::path path = temp_file("tight");
  write_file(path.string(), R"({"lower": [0.3, 0.3, 0.3]})");
  const Run r = cli({"elicit", "--bounds", path.string(), "--draws", "1000", "--gamma", "0.9999",
                     "--epsilon", "0.00001"});
  CHECK(r.code == kExitNumerical);
  fs::remove(path);
}

TEST_CASE("infer and check on the Example 1 table") {
  const std::string prior = kFixtures + "/ex4_prior.json";
  const std::string data = kFixtures + "/table1.csv";
  const Run inf = cli({"infer", "--prior", prior, "--data", data, "--draws", "4000", "--seed", "3"});
  REQUIRE(inf.code == kExitOk);
  const json j = parse_json(inf.out);
  CHECK(j["chi_squared"]["statistic"].get<double>() == doctest::Approx(40.5434).epsilon(1e-4));
  CHECK(j["raw_psi"].get<double>() == doctest::Approx(0.002318).epsilon(1e-3));
  CHECK(j["verdict"] == "evidence in favor");
  CHECK(j["seed"] == 3);

  const Run chk = cli({"check", "--prior", prior, "--data", data, "--draws", "500", "--seed", "3"});
  REQUIRE(chk.code == kExitOk);
  const json c = parse_json(chk.out);
  CHECK(c["p_value"].get<double>() >= 0.0);
  CHECK(c["p_value"].get<double>() <= 1.0);
  CHECK(c["seed"] == 3);

  CHECK(cli({"check", "--prior", prior, "--data", data, "--deflate"}).code == kExitInvalidInput);
}

TEST_CASE("bias with a synthetic shape") {
  const Run r = cli({"bias", "--prior", kFixtures + "/ex4_prior.json", "--rows", "3", "--cols", "3",
                     "--n", "200", "--draws", "40", "--posterior-draws", "400",
                     "--prior-content-draws", "2000", "--delta-sweep", "0.02,0.05"});
  REQUIRE(r.code == kExitOk);
  const json j = parse_json(r.out);
  CHECK(j.contains("against"));
  CHECK(j.contains("in_favor"));
  CHECK(j["sweep"].size() == 2);
  CHECK(cli({"bias", "--prior", kFixtures + "/ex4_prior.json", "--rows", "2", "--cols", "2",
             "--n", "10"})
            .code == kExitInvalidInput);
}

TEST_CASE("plotdata kinds") {
  const std::string prior = kFixtures + "/ex4_prior.json";
  const Run m = cli({"plotdata", "--prior", prior, "--kind", "marginal-density", "--index", "1",
                     "--grid-points", "21"});
  REQUIRE(m.code == kExitOk);
  CHECK(parse_json(m.out)["series"][0]["x"].size() == 21);

  const Run s = cli({"plotdata", "--prior", prior, "--kind", "scatter-pairs", "--pairs", "1-2",
                     "--n-points", "50"});
  REQUIRE(s.code == kExitOk);
  CHECK(parse_json(s.out)["series"][0]["label"] == "p1,p2");

  const Run h = cli({"plotdata", "--prior", prior, "--kind", "psi-histogram", "--data",
                     kFixtures + "/table1.csv", "--draws", "2000"});
  REQUIRE(h.code == kExitOk);
  const json hj = parse_json(h.out);
  double area = 0.0;
  for (const auto& y : hj["series"][0]["y"]) area += y.get<double>() * hj["delta"].get<double>();
  CHECK(area == doctest::Approx(1.0));

  CHECK(cli({"plotdata", "--prior", prior, "--kind", "psi-histogram"}).code == kExitInvalidInput);
  CHECK(cli({"plotdata", "--prior", prior, "--kind", "pie"}).code != kExitOk);
}

TEST_CASE("reproduce is deterministic and reports a comparison table") {
  const Run a = cli({"reproduce", "example2", "--seed", "4"});
  const Run b = cli({"reproduce", "example2", "--seed", "4"});
  CHECK(a.out == b.out);
  CHECK(a.code == b.code);
  CHECK((a.code == kExitOk || a.code == kExitMismatch));
  CHECK(a.out.find("tau") != std::string::npos);
}
