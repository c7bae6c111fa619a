#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "isospin/cli.hpp"
#include "isospin/io.hpp"

using namespace isospin;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "isospin");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path tmp_dir() {
  const char* env = std::getenv("ISOSPIN_TEST_TMP");
  return env ? std::filesystem::path(env) : std::filesystem::temp_directory_path();
}

}  // namespace

TEST_CASE("min-entropy for phi-half") {
  const Run r = run({"min-entropy", "--channel", "phi-half", "--seed", "42"});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(std::abs(j["min_entropy_nats"].get<double>() - 0.6365142) < 1e-7);
  CHECK(j["restarts"] == 64);
}

TEST_CASE("capacity for phi-one") {
  const Run r = run({"capacity", "--channel", "phi-one"});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(std::abs(j["chi_nats"].get<double>() - 0.4054651) < 1e-7);
}

TEST_CASE("bits divide by ln 2 and relabel") {
  const Json nats = Json::parse(run({"capacity", "--channel", "phi-half"}).out);
  const Json bits = Json::parse(run({"capacity", "--channel", "phi-half", "--units", "bits"}).out);
  CHECK(bits["chi_bits"].get<double>() ==
        doctest::Approx(nats["chi_nats"].get<double>() / std::numbers::ln2).epsilon(1e-15));
  CHECK_FALSE(bits.contains("chi_nats"));
  CHECK(bits["covariance_residual"] == nats["covariance_residual"]);
}

TEST_CASE("curve csv") {
  const Run r = run({"curve", "--grid", "3", "--format", "csv"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string header, line;
  std::getline(in, header);
  CHECK(header == "lambda1,r1,r2,r3,r4,entropy_nats");
  std::vector<double> entropies;
  while (std::getline(in, line)) entropies.push_back(std::stod(line.substr(line.rfind(',') + 1)));
  REQUIRE(entropies.size() == 3);
  CHECK(std::abs(entropies[0] - 1.2730283) < 1e-7);
  CHECK(std::abs(entropies[1] - 1.3689224) < 1e-7);
  CHECK(std::abs(entropies[2] - 1.2730283) < 1e-7);
}

TEST_CASE("identical invocations give identical bytes") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"min-entropy", "--channel", "phi-one-magnetic", "--seed", "7"},
           {"curve", "--grid", "11"},
           {"info", "--channel", "transpose-depolarizing", "--dim", "4"}}) {
    const Run a = run(args), b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"min-entropy", "--bogus"}).code == 2);
  CHECK(run({"min-entropy", "--channel", "transpose-depolarizing"}).code == 2);
  CHECK(run({"min-entropy", "--channel", "phi-half", "--dim", "3"}).code == 2);
  CHECK(run({"curve", "--grid", "2"}).code == 2);
  CHECK(run({"curve", "--channel", "phi-one"}).code == 2);
  CHECK(run({"min-entropy", "--channel", "phi-two"}).code == 2);
  const Run r = run({"capacity", "--units", "furlongs"});
  CHECK(r.code == 2);
  CHECK_FALSE(r.err.empty());
  CHECK(r.out.empty());
}

TEST_CASE("runtime errors exit with 1") {
  CHECK(run({"min-entropy", "--channel", "transpose-depolarizing", "--dim", "12"}).code == 1);
}

TEST_CASE("export and re-import a channel") {
  const auto path = tmp_dir() / "isospin_td3.json";
  const Run e = run({"export-channel", "--channel", "transpose-depolarizing", "--dim", "3",
                     "--output", path.string()});
  REQUIRE(e.code == 0);
  CHECK(e.out.empty());
  const Run m = run({"min-entropy", "--channel-file", path.string()});
  REQUIRE(m.code == 0);
  CHECK(std::abs(Json::parse(m.out)["min_entropy_nats"].get<double>() - std::numbers::ln2) < 1e-7);
  // Covariance is not known for imported channels.
  CHECK(run({"capacity", "--channel-file", path.string()}).code == 1);
  CHECK(run({"info", "--channel-file", path.string(), "--channel", "phi-one"}).code == 2);

  std::ofstream(path) << "{ not json";
  CHECK(run({"info", "--channel-file", path.string()}).code == 1);
  std::filesystem::remove(path);
  CHECK(run({"info", "--channel-file", path.string()}).code == 2);
}

TEST_CASE("info text") {
  const Run r = run({"info", "--channel", "phi-one", "--format", "text"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("label = \"phi-one\"") != std::string::npos);
  CHECK(r.out.find("dim = 3") != std::string::npos);
}
