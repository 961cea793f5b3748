// Integration tests driving the ukadder binary end to end.  The binary path
// arrives through the UKADDER_BIN environment variable set by ctest.

#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string binary_path() {
    const char* path = std::getenv("UKADDER_BIN");
    REQUIRE(path != nullptr);
    return path;
}

struct RunOutput {
    int exit_code;
    std::string stdout_text;
};

RunOutput run(const std::string& args) {
    const std::string out_file = "cli_stdout.tmp";
    const std::string cmd = binary_path() + " " + args + " > " + out_file + " 2> cli_stderr.tmp";
    const int raw = std::system(cmd.c_str());
    std::ifstream in(out_file, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    RunOutput result;
    result.exit_code = WEXITSTATUS(raw);
    result.stdout_text = buf.str();
    return result;
}

}  // namespace

TEST_CASE("usage errors exit with code 2", "[cli]") {
    CHECK(run("").exit_code == 2);
    CHECK(run("bogus").exit_code == 2);
    CHECK(run("moments --m 3").exit_code == 2);        // missing --n
    CHECK(run("constants --m 40").exit_code == 2);     // beyond the guard
    CHECK(run("fit --lo 10 --hi 10").exit_code == 2);  // empty window
    CHECK(run("--help").exit_code == 0);
}

TEST_CASE("budget exhaustion exits with code 3", "[cli]") {
    CHECK(run("moments --m 4 --n 1000 --budget 100").exit_code == 3);
    CHECK(run("chains --target 70000").exit_code == 3);
}

TEST_CASE("moments payload carries exact rationals", "[cli]") {
    auto res = run("moments --m 3 --n 6 --format csv");
    CHECK(res.exit_code == 0);
    CHECK(res.stdout_text.find("schema_version,1") == 0);
    CHECK(res.stdout_text.find("6,6953959/720") != std::string::npos);
    CHECK(res.stdout_text.find("3,629/3") != std::string::npos);

    auto js = run("moments --m 1 --n 2");
    CHECK(js.exit_code == 0);
    auto parsed = nlohmann::json::parse(js.stdout_text);
    CHECK(parsed["schema_version"] == 1);
    auto rows = parsed["outputs"]["table"]["rows"];
    REQUIRE(rows.size() == 3);
    CHECK(rows[2][1] == "7/2");
}

TEST_CASE("enumerate reproduces the exact three-step distribution", "[cli]") {
    auto res = run("enumerate --n 3");
    CHECK(res.exit_code == 0);
    auto parsed = nlohmann::json::parse(res.stdout_text);
    auto rows = parsed["outputs"]["table"]["rows"];
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == nlohmann::json({4, "1/6"}));
    CHECK(rows[1] == nlohmann::json({5, "1/3"}));
    CHECK(rows[3] == nlohmann::json({8, "1/6"}));
    CHECK(parsed["outputs"]["pmf_total"] == "1");
}

TEST_CASE("simulate output is byte-reproducible", "[cli]") {
    const std::string args = "simulate --n 12 --samples 2000 --seed 42 --m 1 --m 2 --format json";
    auto first = run(args);
    auto second = run(args);
    CHECK(first.exit_code == 0);
    CHECK(first.stdout_text == second.stdout_text);
    CHECK(!first.stdout_text.empty());

    auto threaded = run(args + " --threads 4");
    auto a = nlohmann::json::parse(first.stdout_text);
    auto b = nlohmann::json::parse(threaded.stdout_text);
    CHECK(a["outputs"] == b["outputs"]);

    auto with_hist = run("simulate --n 12 --samples 500 --seed 7 --histogram");
    CHECK(with_hist.exit_code == 0);
    auto parsed = nlohmann::json::parse(with_hist.stdout_text);
    CHECK(parsed["outputs"]["histogram"]["normalization"] == "sample-fit");
}

TEST_CASE("constants table reports bound checks", "[cli]") {
    auto res = run("constants --m 3");
    CHECK(res.exit_code == 0);
    auto parsed = nlohmann::json::parse(res.stdout_text);
    auto checks = parsed["checks"];
    REQUIRE(checks.size() == 3);
    for (const auto& c : checks) CHECK(c["pass"] == true);
    auto rows = parsed["outputs"]["table"]["rows"];
    CHECK(rows[0][3].get<double>() == Catch::Approx(2.0).margin(1e-12));
    CHECK(rows[2][2].get<double>() == Catch::Approx(11.979293127704).margin(1e-9));
}

TEST_CASE("chains and fit emit tabular payloads", "[cli]") {
    auto chains = run("chains --target 15 --format csv");
    CHECK(chains.exit_code == 0);
    CHECK(chains.stdout_text.find("5,4") != std::string::npos);

    auto fit = run("fit --lo 100 --hi 200 --format csv");
    CHECK(fit.exit_code == 0);
    CHECK(fit.stdout_text.find("exact-rational") != std::string::npos);
}

TEST_CASE("verify fast level passes and omits the slope check", "[cli]") {
    auto res = run("verify --level fast");
    CHECK(res.exit_code == 0);
    auto parsed = nlohmann::json::parse(res.stdout_text);
    CHECK(parsed["outputs"]["summary"]["failed"] == 0);
    bool has_slope = false;
    for (const auto& c : parsed["checks"]) {
        if (c["name"].get<std::string>().find("slope") != std::string::npos) has_slope = true;
    }
    CHECK(!has_slope);
    CHECK(run("verify --level nope").exit_code == 2);
}

TEST_CASE("output lands in --out file", "[cli]") {
    const std::string path = "cli_payload.tmp";
    auto res = run("moments --m 2 --n 3 --out " + path);
    CHECK(res.exit_code == 0);
    CHECK(res.stdout_text.empty());
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str().find("25/2") != std::string::npos);
    std::remove(path.c_str());
}
