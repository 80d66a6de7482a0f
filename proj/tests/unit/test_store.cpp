#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "selsym/errors.hpp"
#include "selsym/store/cache.hpp"
#include "selsym/store/config.hpp"
#include "selsym/store/session.hpp"

using namespace selsym;
using namespace selsym::store;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        std::random_device rd;
        path = fs::temp_directory_path() / ("selsym_test_" + std::to_string(rd()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("sha256 of known strings") {
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("cache keys ignore json member order") {
    auto a = nlohmann::json::parse(R"({"p": 3, "curve": "x", "m": [7, 127]})");
    auto b = nlohmann::json::parse(R"({"m": [7, 127], "curve": "x", "p": 3})");
    CHECK(Cache::key("delta", a) == Cache::key("delta", b));
    CHECK(Cache::key("delta", a) != Cache::key("search", a));
    a["m"] = {127, 7};
    CHECK(Cache::key("delta", a) != Cache::key("delta", b));
}

TEST_CASE("cache round trip and corrupt entry eviction") {
    TempDir tmp;
    Cache c(tmp.path);
    nlohmann::json in = {{"x", 1}};
    CHECK(!c.get("op", in));
    c.put("op", in, {{"value", "83165"}});
    auto got = c.get("op", in);
    REQUIRE(got);
    CHECK((*got)["value"] == "83165");
    CHECK(c.hits() == 1);
    CHECK(c.misses() == 1);

    auto file = c.path_for(Cache::key("op", in));
    REQUIRE(fs::exists(file));
    {
        std::ifstream is(file);
        auto entry = nlohmann::json::parse(is);
        entry["payload"]["value"] = "0";
        std::ofstream os(file);
        os << entry.dump();
    }
    CHECK(!c.get("op", in));
    CHECK(c.evictions() == 1);
    CHECK(!fs::exists(file));

    c.put("op", in, {{"value", "1"}});
    { std::ofstream(file) << "{not json"; }
    CHECK(!c.get("op", in));
    CHECK(c.evictions() == 2);
}

TEST_CASE("disabled cache stores nothing") {
    Cache c;
    CHECK(!c.enabled());
    c.put("op", {{"x", 1}}, {{"y", 2}});
    CHECK(!c.get("op", {{"x", 1}}));
}

TEST_CASE("curve specs") {
    CHECK(parse_curve("11a1").conductor == 11);
    CHECK(parse_curve("11a1^157").label == curves::x0_11_twist(157).label);
    CHECK(parse_curve("11a1^-2963").a == curves::x0_11_twist(-2963).a);
    CHECK(parse_curve("563a1").conductor == 563);
    CHECK(parse_curve("[0,0,1,-1,0]/37").conductor == 37);
    CHECK_THROWS_AS(parse_curve("12a1"), Error);
    CHECK_THROWS_AS(parse_curve("[1,2]/5"), Error);
    CHECK_THROWS_AS(parse_curve("11a1^22"), Error);
}

TEST_CASE("config validation and exit codes") {
    Config cfg;
    cfg.p = 4;
    CHECK_THROWS_AS(cfg.validate(), Error);
    try {
        cfg.validate();
    } catch (const std::exception& e) {
        CHECK(exit_code_for(e) == kConfigError);
    }
    CHECK(exit_code_for(Error(ErrorKind::BudgetExceeded, "x")) == kBudgetExceeded);
    CHECK(exit_code_for(Error(ErrorKind::Io, "x")) == kIoError);
    CHECK(exit_code_for(Error(ErrorKind::InconsistentRoot, "x")) == kInconsistent);
}

TEST_CASE("session output is byte identical from a warm cache") {
    TempDir tmp;
    Config cfg;
    cfg.curve = "11a1^157";
    cfg.cache_dir = tmp.path.string();
    std::ostringstream log;
    std::string cold, warm;
    {
        Session s(cfg, log);
        cold = s.delta({{7, 127}});
        CHECK(s.cache().misses() > 0);
    }
    CHECK(cold.find(",83165,") != std::string::npos);
    {
        Session s(cfg, log);
        warm = s.delta({{7, 127}});
        CHECK(s.cache().hits() > 0);
        CHECK(s.cache().misses() == 0);
    }
    CHECK(cold == warm);
}

TEST_CASE("certify a bundle") {
    Config cfg;
    std::ostringstream log;
    Session s(cfg, log);
    auto bundle = nlohmann::json::parse(R"({
      "curve": "11a1^13",
      "hypotheses": {"tamagawa_prime_to_p": true, "surjective": true, "mu_zero": true},
      "lambda_prime": 1,
      "minimal": [[7]],
      "smaps": [{"m": [7], "points": [["7045/36", "-574201/216"]]}]
    })");
    auto out = nlohmann::json::parse(s.certify(bundle, false));
    CHECK(out["dim"] == 1);
    CHECK(out["rank_lower"] == 1);
    CHECK(out["sha"] == "0");
    CHECK(out["contradiction"] == false);
    CHECK(!s.contradiction());

    bundle["root_number"] = 1;
    Session t(cfg, log);
    CHECK(nlohmann::json::parse(t.certify(bundle, false))["contradiction"] == true);
    CHECK(t.contradiction());
}

TEST_CASE("point and matrix parsing") {
    auto pts = parse_points({"7045/36,-574201/216"});
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].x == mpq_class(7045, 36));
    CHECK(parse_matrix("3,0;0,0") == std::vector<std::vector<i64>>{{3, 0}, {0, 0}});
    CHECK_THROWS(parse_matrix("1,2;3"));
}
