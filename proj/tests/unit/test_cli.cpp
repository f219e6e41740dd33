#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "m23bkm/cli.hpp"
#include "m23bkm/json_io.hpp"

using namespace m23bkm;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "m23bkm");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("m23bkm-test-" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("configuration text") {
    auto kv = cli::parse_config_text("# comment\nclass = 7\ntrunc=3  # inline\n\nsuites = roots,zhu\n");
    CHECK(kv.at("class") == "7");
    CHECK(kv.at("trunc") == "3");
    cli::RunConfig cfg;
    for (auto& [k, v] : kv) cli::apply_setting(cfg, k, v);
    CHECK(cfg.class_order == 7);
    CHECK(cfg.trunc_B == 3);
    CHECK(cli::expand_suites(cfg.suites) == std::vector<std::string>{"roots", "zhu"});
    CHECK(cli::selected_classes(cfg) == std::vector<std::int64_t>{7});
    CHECK_THROWS_AS(cli::apply_setting(cfg, "colour", "red"), cli::UsageError);
    cli::RunConfig bad = cfg;
    cli::apply_setting(bad, "class", "4");
    CHECK_THROWS_AS(cli::validate(bad), cli::UsageError);
    CHECK_THROWS_AS(cli::parse_config_text("novalue\n"), cli::UsageError);
    cli::RunConfig all;
    CHECK(cli::selected_classes(all).size() == 10);
    CHECK(cli::expand_suites({"all"}).size() == 6);
  }

  TEST_CASE("command-line options override the config file") {
    fs::path dir = scratch("config");
    {
      std::ofstream f(dir / "run.cfg");
      f << "class = 11\nformat = text\n";
    }
    Result r = run_cli({"--config", (dir / "run.cfg").string(), "--format", "csv", "--out", (dir / "out").string(),
                        "classes"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("m,cycle_shape", 0) == 0);
    CHECK(r.out.find("\n11,") != std::string::npos);
    CHECK(r.out.find("\n2,") == std::string::npos);
  }

  TEST_CASE("classes table") {
    fs::path dir = scratch("classes");
    Result r = run_cli({"--out", dir.string(), "classes"});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    REQUIRE(j.size() == 10);
    CHECK(j[1]["m"] == 2);
    CHECK(j[1]["k"] == 18);
    CHECK(j[1]["w"] == -8);
    CHECK(j[1]["rank_fixed"] == 16);
    CHECK(j[1]["disc_fixed"] == 256);
    CHECK(j[6]["m"] == 11);
    CHECK(j[6]["conformal_weight"] == "10/11");
    CHECK(j[9]["disc_K"] == 529);
  }

  TEST_CASE("verify writes verdicts") {
    fs::path dir = scratch("verify");
    Result r = run_cli({"--class", "2", "--trunc", "3", "--height-cap", "2", "--out", dir.string(), "verify"});
    CHECK(r.code == 0);
    json v = json::parse(read_file(dir / "class-2" / "verify.json"));
    CHECK(v.size() == 6);
    for (const auto& x : v) CHECK(x["status"] == "PASS");
    Result refl = run_cli({"--class", "23", "--suites", "reflectivity", "--out", dir.string(), "verify"});
    CHECK(refl.code == 0);
    Result zhu = run_cli({"--class", "5", "--suites", "zhu", "--out", dir.string(), "verify"});
    CHECK(zhu.code == 0);
    CHECK(zhu.out.find("SKIPPED") != std::string::npos);
  }

  TEST_CASE("a corrupted cache is an integrity error") {
    fs::path dir = scratch("cache");
    REQUIRE(run_cli({"--class", "3", "--out", dir.string(), "classes"}).code == 0);
    fs::path cache;
    for (const auto& e : fs::directory_iterator(dir / "cache")) cache = e.path();
    REQUIRE(!cache.empty());
    json j = json::parse(read_file(cache));
    j["fixed_gram"][0][0] = 6;
    write_file_atomic(cache, j.dump());
    Result r = run_cli({"--class", "3", "--out", dir.string(), "classes"});
    CHECK(r.code == 3);
    CHECK(r.err.find("integrity") != std::string::npos);

    write_file_atomic(cache, "{ not json");
    CHECK(run_cli({"--class", "3", "--out", dir.string(), "classes"}).code == 3);
  }

  TEST_CASE("emit is deterministic") {
    fs::path dir = scratch("emit");
    Result a = run_cli({"--class", "1", "--trunc", "3", "--out", dir.string(), "emit", "F"});
    REQUIRE(a.code == 0);
    std::string first = read_file(dir / "class-1" / "F.json");
    json f = json::parse(first);
    CHECK(f["m"] == 1);
    REQUIRE(run_cli({"--class", "1", "--trunc", "3", "--out", dir.string(), "emit", "F"}).code == 0);
    CHECK(read_file(dir / "class-1" / "F.json") == first);

    Result roots = run_cli({"--class", "6", "--norm-cap", "6", "--height-cap", "2", "--out", dir.string(), "emit", "roots"});
    REQUIRE(roots.code == 0);
    json rj = json::parse(read_file(dir / "class-6" / "roots.json"));
    for (const auto& [n, count] : rj["real_roots_by_norm"].items()) {
      std::int64_t nn = std::stoll(n);
      CHECK(6 % nn == 0);
    }
    CHECK(rj["real_roots"].size() > 0);
    std::string roots_text = read_file(dir / "class-6" / "roots.json");
    REQUIRE(run_cli({"--class", "6", "--norm-cap", "6", "--height-cap", "2", "--out", dir.string(), "emit", "roots"}).code == 0);
    CHECK(read_file(dir / "class-6" / "roots.json") == roots_text);

    REQUIRE(run_cli({"--class", "2", "--trunc", "2", "--format", "csv", "--out", dir.string(), "emit", "characters"}).code == 0);
    CHECK(read_file(dir / "class-2" / "characters.csv").rfind("element,j,component", 0) == 0);
    REQUIRE(run_cli({"--class", "23", "--out", dir.string(), "emit", "lattices"}).code == 0);
    json lat = json::parse(read_file(dir / "class-23" / "lattices.json"));
    CHECK(lat["fixed"]["gram"].size() == 2);
  }

  TEST_CASE("usage errors") {
    fs::path dir = scratch("usage");
    CHECK(run_cli({"--class", "4", "--out", dir.string(), "classes"}).code == 2);
    CHECK(run_cli({"--out", dir.string(), "emit", "nonsense"}).code == 2);
    CHECK(run_cli({"--format", "xml", "--out", dir.string(), "classes"}).code == 2);
    CHECK(run_cli({"--suites", "foo", "--out", dir.string(), "verify"}).code == 2);
    CHECK(run_cli({"--trunc", "-1", "--out", dir.string(), "classes"}).code == 2);
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"--config", (dir / "missing.cfg").string(), "classes"}).code == 2);
  }
}
