#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gsqg/cli.hpp"
#include "gsqg/errors.hpp"
#include "gsqg/io.hpp"

using namespace gsqg;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("gsqg_test_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

struct Result {
  int code;
  std::string out, err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> small_run(const std::string& mode, const fs::path& out) {
  return {mode, "--alpha", "1.5", "--d", "1", "--eps", "0.005:0.03:4", "--geom", "--J", "12", "--N", "64", "--M", "64",
          "--out", out.string()};
}

}  // namespace

TEST_CASE("schedule parsing") {
  const auto lin = cli::parse_schedule("0.01:0.05:5", false);
  REQUIRE(lin.size() == 5);
  CHECK(lin.front() == 0.01);
  CHECK(lin.back() == 0.05);
  CHECK(lin[2] == doctest::Approx(0.03));
  const auto geo = cli::parse_schedule("0.001:0.1:3", true);
  REQUIRE(geo.size() == 3);
  CHECK(geo[1] == doctest::Approx(0.01));
  CHECK(geo.back() == 0.1);
  CHECK(cli::parse_schedule("0.02:0.02:1", false) == std::vector<double>{0.02});
  CHECK_THROWS_AS(cli::parse_schedule("0.01:0.05", false), DomainError);
  CHECK_THROWS_AS(cli::parse_schedule("a:b:3", false), DomainError);
  CHECK_THROWS_AS(cli::parse_schedule("0.01:0.05:0", false), DomainError);
}

TEST_CASE("multipliers subcommand") {
  const auto r = invoke({"multipliers", "--alpha", "1", "--jmax", "4"});
  CHECK(r.code == cli::kOk);
  std::istringstream lines(r.out);
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  CHECK(header == "j,beta_j,gamma_j");
  CHECK(first == "1,8,");
}

TEST_CASE("out-of-range alpha is a configuration error") {
  const auto r = invoke({"corotating", "--alpha", "2.5"});
  CHECK(r.code == cli::kConfigError);
  CHECK(r.err.find("(0,2)") != std::string::npos);
  const auto j = io::Json::parse(r.err);
  CHECK(j["error"] == "config");
  CHECK(invoke({"nonsense"}).code == cli::kConfigError);
  CHECK(invoke({"travelling", "--m", "3"}).code == cli::kConfigError);
  CHECK(invoke({"corotating", "--eps", "0.1:0.2:3"}).code == cli::kConfigError);
}

TEST_CASE("branch runs write reproducible output") {
  TempDir tmp("run");
  for (const std::string mode : {"corotating", "travelling"}) {
    const auto a = tmp.path / (mode + "_a"), b = tmp.path / (mode + "_b");
    REQUIRE(invoke(small_run(mode, a)).code == cli::kOk);
    REQUIRE(invoke(small_run(mode, b)).code == cli::kOk);
    const auto doc = io::Json::parse(slurp(a / "branch.json"));
    CHECK(doc["mode"] == mode);
    CHECK(doc["config"]["J"] == 12);
    CHECK(doc["config"]["alpha"] == 1.5);
    REQUIRE(doc["records"].size() == 4);
    CHECK(doc["failure"].is_null());
    for (const auto& r : doc["records"]) {
      CHECK(r["residual"].get<double>() <= 1e-10);
      const auto csv = slurp(a / r["boundary_file"].get<std::string>());
      CHECK(csv.rfind("patch_id,theta,x,y\n", 0) == 0);
      CHECK(csv == slurp(b / r["boundary_file"].get<std::string>()));
    }
    // Identical apart from the output directory recorded in the config.
    auto da = doc, db = io::Json::parse(slurp(b / "branch.json"));
    da["config"].erase("out");
    db["config"].erase("out");
    CHECK(io::dump(da) == io::dump(db));
  }
}

TEST_CASE("config file is overridden by explicit flags") {
  TempDir tmp("cfg");
  const auto cfg = tmp.path / "run.json";
  std::ofstream(cfg) << R"({"alpha": 1.2, "d": 2.0, "m": 3, "eps": "0.005:0.02:3", "J": 12, "N": 64, "M": 64})";
  const auto out = tmp.path / "o";
  REQUIRE(invoke({"corotating", "--config", cfg.string(), "--d", "1.5", "--out", out.string()}).code == cli::kOk);
  const auto doc = io::Json::parse(slurp(out / "branch.json"));
  CHECK(doc["alpha"] == 1.2);
  CHECK(doc["d"] == 1.5);
  CHECK(doc["m"] == 3);
  CHECK(doc["records"].size() == 3);

  std::ofstream(tmp.path / "bad.json") << "{ not json";
  CHECK(invoke({"corotating", "--config", (tmp.path / "bad.json").string()}).code == cli::kConfigError);
}

TEST_CASE("divergence exits with its own code and keeps the converged part") {
  TempDir tmp("div");
  const auto out = tmp.path / "o";
  const auto r = invoke({"corotating", "--alpha", "1", "--eps", "0.01:0.9999:2", "--J", "8", "--N", "64", "--M", "64",
                         "--max-iter", "6", "--out", out.string()});
  CHECK(r.code == cli::kDivergence);
  CHECK(io::Json::parse(r.err)["error"] == "divergence");
  const auto doc = io::Json::parse(slurp(out / "branch.json"));
  CHECK(doc["records"].size() == 1);
  CHECK(doc["last_converged_eps"] == 0.01);
  CHECK(doc["failure"]["eps"] == 0.9999);
}

TEST_CASE("json round trip of records") {
  solver::BranchRecord r;
  r.eps = 0.1 / 3.0;
  r.f = spectral::FourierCosSeries(4);
  r.f.set(2, 1.0 / 7.0);
  r.f.set(4, -2e-300);
  r.speed = -0.123456789012345678;
  r.residual = 3e-12;
  r.iterations = 4;
  r.residual_history = {1e-2, 1e-5, 3e-12};
  const auto back = io::record_from_json(io::Json::parse(io::dump(io::to_json(r))));
  CHECK(back.eps == r.eps);
  CHECK(back.f == r.f);
  CHECK(back.speed == r.speed);
  CHECK(back.residual_history == r.residual_history);
  CHECK(back.iterations == 4);
  io::Json nan = {{"x", std::nan("")}};
  CHECK(io::dump(nan).find("null") != std::string::npos);
}
