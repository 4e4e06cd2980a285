#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cfk/cli.hpp"

using nlohmann::json;

namespace {

struct CliResult {
    int code;
    std::string out, err;
};

CliResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cfk::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
    return std::string("/tmp/cfk_test_") + std::to_string(::getpid()) + "_" + name;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("enumerate: summary, exit codes") {
    auto r = run({"enumerate", "--quiver", "A2"});
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["variables"] == 5);
    CHECK(j["clusters"] == 5);
    CHECK(j["exhausted"] == true);
    CHECK(r.err.find("5 variables, 5 clusters, exhausted") != std::string::npos);

    auto d4 = run({"enumerate", "--quiver", "D4"});
    json jd = json::parse(d4.out);
    CHECK(jd["variables"] == 16);
    CHECK(jd["clusters"] == 50);

    auto tr = run({"enumerate", "--quiver", "Atilde:1,2", "--max-clusters", "100"});
    CHECK(tr.code == 2);
    CHECK(json::parse(tr.out)["exhausted"] == false);
}

TEST_CASE("invalid inputs exit 1 with a message") {
    auto r = run({"trace", "--quiver", "A2", "--sink", "vertex:99", "--start", "cell:0,1"});
    CHECK(r.code == 1);
    CHECK(r.err.find("unknown variable") != std::string::npos);
    auto q = run({"enumerate", "--quiver", "NoSuchPreset"});
    CHECK(q.code == 1);
}

TEST_CASE("trace: sink vertex from a barycenter start") {
    auto r = run({"trace", "--quiver", "A3", "--sink", "vertex:0", "--start", "cell:0,1,2",
                  "--sense", "down"});
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["status"] == "ReachedSink");
    CHECK(j["sink"] == "vertex:0");
}

TEST_CASE("trace: point spec and up sense") {
    auto r = run({"trace", "--quiver", "A2", "--sink", "vertex:1", "--start",
                  "point:0=1/3,1=2/3", "--sense", "up"});
    CHECK(r.code == 0);
    CHECK(json::parse(r.out)["status"] == "ReachedSource");
}

TEST_CASE("foliate emits a report") {
    auto r = run({"foliate", "--quiver", "A2", "--sink", "vertex:2", "--samples", "1"});
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["classification"] == "Compact");
}

TEST_CASE("green, homology, polygons, verify") {
    CHECK(json::parse(run({"green", "--quiver", "A3"}).out)["pass"] == true);
    CHECK(json::parse(run({"homology", "--quiver", "A3"}).out)["betti"] ==
          json::array({0, 0, 1}));
    CHECK(json::parse(run({"polygons", "--quiver", "A2"}).out)["h1_rank"] == 0);
    auto v = run({"verify", "--quiver", "A3", "--which", "green", "--which", "homology",
                  "--which", "polygons"});
    CHECK(v.code == 0);
    CHECK(v.out.find("PASS green") != std::string::npos);
    CHECK(v.out.find("PASS homology") != std::string::npos);
    CHECK(v.out.find("PASS polygons") != std::string::npos);
    auto bad = run({"verify", "--quiver", "Atilde:1,2", "--max-clusters", "50", "--which",
                    "homology"});
    CHECK(bad.code == 1);
    CHECK(bad.out.find("FAIL homology") != std::string::npos);
}

TEST_CASE("output file, config file, and CFK_BUDGET precedence") {
    std::string out_path = temp_path("complex.json");
    auto r = run({"export-complex", "--quiver", "A2", "--output", out_path});
    CHECK(r.code == 0);
    json j = json::parse(slurp(out_path));
    CHECK(j["clusters"].size() == 5);
    std::remove(out_path.c_str());

    std::string cfg_path = temp_path("cfk.cfg");
    {
        std::ofstream f(cfg_path);
        f << "quiver = A3\n# comment\nsamples = 1\n";
    }
    auto c = run({"enumerate", "--config", cfg_path});
    CHECK(json::parse(c.out)["clusters"] == 14);
    // flags beat the config file
    auto c2 = run({"enumerate", "--config", cfg_path, "--quiver", "A2"});
    CHECK(json::parse(c2.out)["clusters"] == 5);
    std::remove(cfg_path.c_str());

    ::setenv("CFK_BUDGET", "5", 1);
    auto b = run({"foliate", "--quiver", "Atilde:1,2", "--max-clusters", "60", "--sink",
                  "vertex:0", "--samples", "0"});
    ::unsetenv("CFK_BUDGET");
    CHECK(json::parse(b.out)["budget"] == 5);
}

TEST_CASE("DOT and fan exports") {
    auto dot = run({"export-complex", "--quiver", "A2", "--format", "dot"});
    CHECK(dot.out.find("graph exchange") != std::string::npos);
    auto fan = run({"export-fan", "--quiver", "A2"});
    json j = json::parse(fan.out);
    CHECK(j["rays"].size() == 5);
    CHECK(j["cones"].size() == 5);
    auto svg = run({"export-fan", "--quiver", "A2", "--format", "svg"});
    CHECK(svg.out.find("<svg") != std::string::npos);
}

TEST_CASE("frozen A2 trace SVG fixture") {
    auto r = run({"trace", "--quiver", "A2", "--sink", "vertex:0", "--start", "cell:1,2",
                  "--format", "svg"});
    CHECK(r.code == 0);
    std::string fixture = slurp(std::string(CFK_FIXTURE_DIR) + "/a2_trace.svg");
    REQUIRE(!fixture.empty());
    CHECK(r.out == fixture);
}

TEST_CASE("B-matrix file input and verify foliation") {
    std::string bpath = temp_path("quiver.txt");
    {
        std::ofstream f(bpath);
        f << "2\n0 1\n-1 0\n";
    }
    auto r = run({"enumerate", "--quiver", bpath});
    CHECK(r.code == 0);
    CHECK(json::parse(r.out)["clusters"] == 5);
    std::remove(bpath.c_str());

    auto v = run({"verify", "--quiver", "A2", "--which", "foliation", "--samples", "1"});
    CHECK(v.code == 0);
    CHECK(v.out.find("PASS foliation") != std::string::npos);
}

TEST_CASE("SVG export refuses rank above 3") {
    auto r = run({"export-fan", "--quiver", "D4", "--format", "svg"});
    CHECK(r.code == 1);
    CHECK(r.err.find("rank") != std::string::npos);
}
