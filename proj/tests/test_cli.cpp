#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace {

using nlohmann::json;

struct CmdResult {
    int exit_code = -1;
    std::string out;
};

const char* cli_path() { return std::getenv("GST_CLI"); }

CmdResult run_cli(const std::string& args) {
    CmdResult res;
    const std::string cmd = std::string(cli_path()) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.out.append(buf.data(), got);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

}  // namespace

TEST_CASE("command line round trips" * doctest::skip(cli_path() == nullptr)) {
    SUBCASE("check reports the verdicts and exits zero either way") {
        auto res = run_cli("check -p 1,1/2,1/3");
        CHECK(res.exit_code == 0);
        auto j = json::parse(res.out);
        CHECK(j["in_gst"] == true);
        CHECK(j["psi"] == "0");

        res = run_cli("check -p 1,0,1");
        CHECK(res.exit_code == 0);
        j = json::parse(res.out);
        CHECK(j["in_ind"] == true);
        CHECK(j["in_inf"] == false);

        res = run_cli("check -p 0.3,0.3,0.3");
        j = json::parse(res.out);
        CHECK(j["in_inf"] == false);
    }
    SUBCASE("malformed input exits 2") {
        CHECK(run_cli("check -p 1,nope,3").exit_code == 2);
        CHECK(run_cli("check").exit_code == 2);
        CHECK(run_cli("frobnicate").exit_code == 2);
    }
    SUBCASE("manifest digests are stable across runs") {
        const auto a = json::parse(run_cli("check -p 1,1/2,1/3").out);
        const auto b = json::parse(run_cli("check -p 1,1/2,1/3").out);
        CHECK(a["manifest"]["config_digest"] == b["manifest"]["config_digest"]);
    }
    SUBCASE("find theta at n = 3 returns the exact root point") {
        const auto j = json::parse(run_cli("find 3 --family theta").out);
        REQUIRE(j["points"].size() == 1);
        CHECK(j["points"][0]["root"]["exact"] == "1/3");
        CHECK(j["points"][0]["membership"]["in_gst"] == true);
    }
    SUBCASE("find boundary at n = 4 certifies both points") {
        const auto j = json::parse(run_cli("find 4 --family boundary").out);
        REQUIRE(j["points"].size() == 2);
        for (const auto& pt : j["points"]) {
            CHECK(pt["membership"]["in_gst"] == true);
            CHECK(pt["certificates"].contains("coordinate_quadratic"));
        }
    }
    SUBCASE("inertia agrees between routes") {
        const auto j = json::parse(run_cli("inertia 6 --method both").out);
        CHECK(j["inertia"]["zero"] == 1);
        CHECK(j["inertia"]["positive"].get<int>() >= 2);
        CHECK(j["inertia"]["negative"].get<int>() >= 2);
    }
    SUBCASE("hessian dump carries the scaled integer form") {
        const auto j = json::parse(run_cli("hessian 4").out);
        CHECK(j["scaled_by"] == "2^{n-2}");
        CHECK(j["X_scaled"][1][1] == "3");
        CHECK(j["X_scaled"][0][2] == "1");
    }
    SUBCASE("ftheta grid is CSV") {
        const auto res = run_cli("ftheta 4 --emit-grid --grid 16");
        CHECK(res.exit_code == 0);
        CHECK(res.out.substr(0, 8) == "theta,f\n");
    }
    SUBCASE("simulate is reproducible end to end") {
        const std::string args = "simulate --gst 1,1/2,1/3 --rounds 20000 --seed 4";
        const auto a = json::parse(run_cli(args).out);
        const auto b = json::parse(run_cli(args + " --threads 4").out);
        CHECK(a["effect_count"] == b["effect_count"]);
        CHECK(a["pair_and_cause"] == b["pair_and_cause"]);
    }
    SUBCASE("simulate reads a spec file") {
        const std::string path = "/tmp/gst_test_spec.json";
        {
            std::FILE* f = std::fopen(path.c_str(), "w");
            REQUIRE(f != nullptr);
            std::fputs(R"({"n":3,"r":"1/2","p":["1","1/2","1/3"],"q":["1","1/2","1/3"]})", f);
            std::fclose(f);
        }
        const auto j = json::parse(run_cli("simulate --spec " + path + " --rounds 5000 --seed 6").out);
        CHECK(j["rounds"] == 5000);
        CHECK(j["n"] == 3);
        std::remove(path.c_str());
    }
    SUBCASE("find surface returns verified samples") {
        const auto j = json::parse(run_cli("find 8 --family surface --count 10 --seed 7").out);
        REQUIRE(j["points"].size() == 10);
        for (const auto& pt : j["points"]) CHECK(pt["membership"]["in_gst"] == true);
    }
    SUBCASE("ftheta 10 locates the documented roots") {
        const auto j = json::parse(run_cli("ftheta 10 --roots").out);
        REQUIRE(j["roots"].size() == 3);
        CHECK(std::abs(j["roots"][0]["approx"].get<double>() - 0.100499) < 1e-5);
        CHECK(std::abs(j["roots"][2]["approx"].get<double>() - 0.86659) < 1e-5);
    }
    SUBCASE("component labels flip under the mirror map") {
        const auto a = json::parse(run_cli("component -p 1,1/2,1/3").out);
        const auto b = json::parse(run_cli("component -p 0,1/2,2/3").out);
        CHECK(a["label"].get<int>() == -b["label"].get<int>());
    }
    SUBCASE("segment classifies the mirror pair") {
        const auto j = json::parse(run_cli("segment -p 1,1/2,1/3 -q 0,1/2,2/3").out);
        CHECK(j["kind"] == "AllInIndNotGST");
        CHECK(j["failure_ts"][0] == "1/2");
    }
    SUBCASE("path reports disconnection as data, timeout as exit 4") {
        const auto res = run_cli("path -p 1,1/2,1/3 -q 0,1/2,2/3");
        CHECK(res.exit_code == 0);
        CHECK(json::parse(res.out.substr(0, res.out.find('\n')))["disconnected"] == true);
        const auto to = run_cli(
            "path --mode float -p 1,0,0,0,0,0,0,0.09695833463767527 "
            "-q 0,1,1,1,1,1,1,0.9030416653623247 --budget 1");
        CHECK(to.exit_code == 4);
    }
    SUBCASE("--output writes the report to a file") {
        const std::string path = "/tmp/gst_test_out.json";
        const auto res = run_cli("check -p 1,1/2,1/3 --output " + path);
        CHECK(res.exit_code == 0);
        std::FILE* f = std::fopen(path.c_str(), "r");
        REQUIRE(f != nullptr);
        std::fclose(f);
        std::remove(path.c_str());
    }
    SUBCASE("homotopy emits exact zeros along the contraction") {
        const auto j = json::parse(run_cli("homotopy -p 1,1/2,1/3 --steps 4").out);
        for (const auto& w : j["waypoints"]) CHECK(w["psi"] == "0");
    }
}
