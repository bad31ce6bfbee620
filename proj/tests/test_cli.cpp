#include <sys/wait.h>

#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

using Json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

const std::string cli = PGREEN_CLI;
const std::string data = PGREEN_DATA;

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("pgreen-cli-test-" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int run(const std::string& args, const std::string& stdout_file = "") {
  const std::string out = stdout_file.empty() ? (scratch() / "stdout").string() : stdout_file;
  const std::string cmd = cli + " " + args + " > " + out + " 2> " + (scratch() / "stderr").string();
  const int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string last_stdout() { return slurp(scratch() / "stdout"); }
Json last_error() { return Json::parse(slurp(scratch() / "stderr")); }

std::string worked(double level, const std::string& out) {
  std::ostringstream os;
  os << "construct --domain disc --domain disc --pole 0.5 --pole 0.3 --base 0 --base 0"
     << " --disc " << data << "/worked_disc.json --disc " << data << "/worked_disc.json"
     << " --level " << level << " --out " << out;
  return os.str();
}

}  // namespace

TEST_CASE("eval") {
  CHECK(run("eval --domain " + data + "/disc.json --pole 0.5 --base 0") == 0);
  CHECK(Json::parse(last_stdout())["value"].get<double>() == 0.5);
  CHECK(run("eval --domain " + data + "/bidisc.json --pole 0.5,0.3 --base 0,0") == 0);
  CHECK(Json::parse(last_stdout())["value"].get<double>() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(run("eval --domain disc --pole 0.5+0.1i --base 0.5+0.1i") == 0);
  CHECK(Json::parse(last_stdout())["value"].get<double>() == 0.0);
  CHECK(run("eval --domain " + data + "/ball2.json --pole 0.3i,-0.2 --base 0,0") == 0);
  CHECK(Json::parse(last_stdout())["value"].get<double>() == doctest::Approx(std::sqrt(0.13)));
}

TEST_CASE("eval failures") {
  CHECK(run("eval --domain '{\"kind\":\"sublevel\",\"params\":{\"dimension\":1,\"level\":1,\"terms\":[]}}' "
            "--pole 0.5 --base 0") != 0);
  CHECK(last_error()["error"] == "no-oracle");
  CHECK(run("eval --domain disc --pole 1.5 --base 0") == 3);
  CHECK(run("eval --domain disc --pole 0.5x --base 0") == 3);
  CHECK(last_error()["error"] == "invalid-input");
  CHECK(run("eval --domain nowhere.json --pole 0.5 --base 0") == 3);
  CHECK(run("eval --domain disc --pole 0.5") == 3);
  CHECK(run("frobnicate") == 3);
}

TEST_CASE("upper") {
  CHECK(run("upper --domain disc --pole 0.5 --base 0 --restarts 2 --seed 5") == 0);
  const Json r = Json::parse(last_stdout());
  CHECK(r["value"].get<double>() <= 0.501);
  CHECK(r["feasibility_margin"].get<double>() > 0.0);
  CHECK(run("upper --domain bidisc --pole 0.5,0.3 --base 0,0 --degree 2 --restarts 2") == 0);
  CHECK(Json::parse(last_stdout())["value"].get<double>() <= 0.51);
  CHECK(run("upper --domain disc --pole 0.5 --base 0 --degree 1 --preimages 2") == 3);
}

TEST_CASE("construct and verify") {
  const std::string cert = (scratch() / "w55.json").string();
  CHECK(run(worked(0.55, cert)) == 0);
  const Json c = Json::parse(slurp(cert));
  CHECK(c["achieved"].get<double>() < 0.55);
  CHECK(run("verify " + cert) == 0);
  CHECK(Json::parse(last_stdout())["accepted"] == true);

  Json tampered = c;
  tampered["achieved"] = 0.4;
  const std::string bad = (scratch() / "tampered.json").string();
  std::ofstream(bad) << tampered.dump(2);
  CHECK(run("verify " + bad) == 1);
  CHECK(Json::parse(last_stdout())["accepted"] == false);
  CHECK(last_error()["error"] == "verification-failure");

  Json dropped = c;
  dropped["gamma_zeros"] = Json::array();
  std::ofstream(bad) << dropped.dump(2);
  CHECK(run("verify " + bad) == 1);

  std::ofstream(bad) << "{ truncated";
  CHECK(run("verify " + bad) == 3);
  CHECK(run("verify " + (scratch() / "missing.json").string()) == 3);
}

TEST_CASE("engineered construct") {
  const std::string cert = (scratch() / "eng.json").string();
  CHECK(run("construct --domain disc --domain disc --pole 0 --pole 0.05 --base 0.072 --base 0 --disc " + data +
            "/engineered_disc1.json --disc " + data + "/engineered_disc2.json --level 0.45 --out " + cert) == 0);
  CHECK(Json::parse(slurp(cert))["gamma"]["punctures"].size() == 1);
  CHECK(run("verify " + cert) == 0);
}

TEST_CASE("unsupported construct falls back to the optimizer") {
  const std::string out = (scratch() / "fallback.json").string();
  CHECK(run("construct --domain disc --domain disc --pole 0 --pole 0 --base 0.072 --base 0.081 --disc " + data +
            "/engineered_disc1.json --disc " + data + "/unsupported_disc2.json --level 0.5 --restarts 2 --out " +
            out) == 2);
  const Json r = Json::parse(slurp(out));
  CHECK(r["fallback"]["value"].get<double>() >= 0.081 - 1e-9);
  CHECK(r["fallback"]["value"].get<double>() < 0.5);
  CHECK(last_error()["error"] == "unsupported-covering");
}

TEST_CASE("construct input errors") {
  CHECK(run(worked(0.45, (scratch() / "x.json").string())) == 3);
  CHECK(last_error()["error"] == "invalid-level");
  CHECK(run("construct --domain disc --pole 0.5 --pole 0.3 --base 0 --base 0 --disc a --disc b --level 0.5") == 3);
  const std::string cfg = (scratch() / "config.json").string();
  std::ofstream(cfg) << R"({"pipeline": {"max_radius_index": 1}})";
  CHECK(run(worked(0.55, (scratch() / "x.json").string()) + " --config " + cfg) == 4);
  std::ofstream(cfg) << R"({"pipelines": {}})";
  CHECK(run(worked(0.55, (scratch() / "x.json").string()) + " --config " + cfg) == 3);
}

TEST_CASE("gap") {
  const std::string csv = (scratch() / "gap.csv").string();
  CHECK(run("gap --domain disc --domain disc --pairs " + data + "/gap_pairs.json --restarts 2 --out " + csv) == 0);
  std::istringstream in(slurp(csv));
  std::string line;
  std::getline(in, line);
  CHECK(line == "pair_id,upper,lower,gap,iterations,margin");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    std::istringstream cells(line);
    std::string id, upper, lower, gap;
    std::getline(cells, id, ',');
    std::getline(cells, upper, ',');
    std::getline(cells, lower, ',');
    std::getline(cells, gap, ',');
    CHECK(upper.find('e') != std::string::npos);
    CHECK(std::stod(gap) >= -1e-9);
    CHECK(std::stod(gap) <= 0.05);
  }
  CHECK(rows == 3);
}
