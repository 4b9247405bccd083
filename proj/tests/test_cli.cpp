#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <sys/wait.h>
#include <filesystem>
#include <fstream>
#include <string>

#include "srr/routing.hpp"
#include "srr/system_io.hpp"

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int status = -1;
    std::string output;  // stdout + stderr
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(SRR_CLI_PATH) + " " + args + " 2>&1";
    RunResult result;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 512> buf;
    while (fgets(buf.data(), buf.size(), pipe)) result.output += buf.data();
    const int rc = pclose(pipe);
    result.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return result;
}

fs::path write_spec(const char* name, const std::string& body) {
    fs::path path = fs::temp_directory_path() / name;
    std::ofstream os(path, std::ios::binary);
    os << body;
    return path;
}

const std::string kExample1 =
    R"({"K": 2, "mu": 1, "systematic": [2, 1], "coded": 1})";
const std::string kAllCoded33 =
    R"({"K": 3, "mu": 1, "systematic": [0, 0, 0], "coded": 3})";
const std::string kWorked =
    R"({"K": 3, "mu": 1, "systematic": [3, 1, 1], "coded": 3})";

}  // namespace

TEST_CASE("groups lists 1-based repair groups in canonical order") {
    auto spec = write_spec("cli_example1.json", kExample1);
    RunResult r = run("groups " + spec.string());
    CHECK(r.status == 0);
    // canonical layout: nodes 1,2 systematic f1; node 3 systematic f2; node 4 coded
    CHECK(r.output.find("f1 (gamma=3): {1},{2},{3,4}") != std::string::npos);
    CHECK(r.output.find("f2 (gamma=3): {3},{1,4},{2,4}") != std::string::npos);
}

TEST_CASE("groups warns when nothing is recoverable") {
    auto spec = write_spec("cli_degenerate.json",
                           R"({"K": 3, "systematic": [0, 0, 0], "coded": 2})");
    RunResult r = run("groups " + spec.string());
    CHECK(r.status == 0);
    CHECK(r.output.find("gamma=0") != std::string::npos);
    CHECK(r.output.find("no file recoverable") != std::string::npos);
}

TEST_CASE("feasible exit codes") {
    auto spec = write_spec("cli_allcoded.json", kAllCoded33);
    CHECK(run("feasible " + spec.string() + " 1/3 1/3 1/3").status == 0);
    CHECK(run("feasible " + spec.string() + " 1 1 1").status == 1);
    CHECK(run("feasible " + spec.string() + " 1/3 1/3").status == 2);
    CHECK(run("feasible " + spec.string() + " abc 0 0").status == 2);
    CHECK(run("feasible /no/such/spec.json 0 0 0").status == 2);
}

TEST_CASE("feasible writes a witness file") {
    auto spec = write_spec("cli_allcoded2.json", kAllCoded33);
    fs::path witness = fs::temp_directory_path() / "cli_witness.json";
    RunResult r = run("feasible " + spec.string() + " 1/3 1/3 1/3 --out " +
                      witness.string());
    CHECK(r.status == 0);
    std::ifstream in(witness);
    REQUIRE(in);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    CHECK(text.find("\"feasible\": true") != std::string::npos);
    CHECK(text.find("\"strategy\"") != std::string::npos);
}

TEST_CASE("maximize prints twelve significant digits and agreement") {
    auto spec = write_spec("cli_worked.json", kWorked);
    RunResult all = run("maximize " + spec.string() + " 3/2 2 --method all");
    CHECK(all.status == 0);
    CHECK(all.output.find("lp\t1.5") != std::string::npos);
    CHECK(all.output.find("closed\t1.5") != std::string::npos);
    CHECK(all.output.find("greedy\t1.5") != std::string::npos);
    CHECK(all.output.find("agreement") != std::string::npos);

    RunResult lp = run("maximize " + spec.string() + " 3/2 2");
    CHECK(lp.status == 0);
    CHECK(lp.output == "1.5\n");
}

TEST_CASE("maximize closed form out of domain exits 3") {
    auto spec = write_spec("cli_ood.json",
                           R"({"K": 3, "systematic": [5, 0, 0], "coded": 3})");
    RunResult r = run("maximize " + spec.string() + " 0 0 --method closed");
    CHECK(r.status == 3);
    CHECK(r.output.find("hypotheses") != std::string::npos);
}

TEST_CASE("maximize reports disagreement where the formula overclaims") {
    auto spec = write_spec("cli_break.json",
                           R"({"K": 3, "systematic": [3, 0, 0], "coded": 3})");
    RunResult r = run("maximize " + spec.string() + " 0 0 --method all");
    CHECK(r.status == 0);
    CHECK(r.output.find("lp\t1.5") != std::string::npos);
    CHECK(r.output.find("closed\t2\n") != std::string::npos);
    CHECK(r.output.find("DISAGREEMENT") != std::string::npos);
}

TEST_CASE("maximize infeasible demand exits 1") {
    auto spec = write_spec("cli_allcoded3.json", kAllCoded33);
    RunResult r = run("maximize " + spec.string() + " 2 2");
    CHECK(r.status == 1);
}

TEST_CASE("region writes files and reports a summary") {
    auto spec = write_spec("cli_mixed.json",
                           R"({"K": 2, "systematic": [1, 1], "coded": 1})");
    fs::path out = fs::temp_directory_path() / "cli_region.csv";
    RunResult r = run("region " + spec.string() + " --step 0.5 --out " +
                      out.string());
    CHECK(r.status == 0);
    CHECK(r.output.find("samples=5") != std::string::npos);
    CHECK(r.output.find("max_L=2") != std::string::npos);
    CHECK(fs::exists(out));

    fs::path svg = fs::temp_directory_path() / "cli_region.svg";
    RunResult rs = run("region " + spec.string() + " --step 0.5 --format svg --out " +
                       svg.string());
    CHECK(rs.status == 0);
    CHECK(fs::exists(svg));
}

TEST_CASE("region rejects svg beyond three files") {
    auto spec = write_spec("cli_k4.json",
                           R"({"K": 4, "systematic": [0, 0, 0, 0], "coded": 5})");
    RunResult r = run("region " + spec.string() + " --format svg --out /tmp/x.svg");
    CHECK(r.status == 2);
    CHECK(r.output.find("svg") != std::string::npos);
}

TEST_CASE("validate reports the parsed system") {
    auto spec = write_spec("cli_ok.json", kExample1);
    RunResult r = run("validate " + spec.string());
    CHECK(r.status == 0);
    CHECK(r.output.find("ok: K=2 N=4") != std::string::npos);

    auto bad = write_spec("cli_bad.json", R"({"K": 2, "systematic": [1, 1)");
    RunResult rb = run("validate " + bad.string());
    CHECK(rb.status == 2);
    CHECK(rb.output.find("line") != std::string::npos);
}

TEST_CASE("SRR_MODE environment variable changes the default mode") {
    auto spec = write_spec("cli_env.json", kAllCoded33);
    // float mode still decides membership correctly on this instance
    const std::string cmd = std::string("SRR_MODE=float ") + SRR_CLI_PATH +
                            " feasible " + spec.string() + " 1/3 1/3 1/3";
    CHECK(std::system((cmd + " > /dev/null 2>&1").c_str()) == 0);
    const std::string bad_mode = std::string("SRR_MODE=bogus ") + SRR_CLI_PATH +
                                 " feasible " + spec.string() + " 1/3 1/3 1/3";
    CHECK(WEXITSTATUS(std::system((bad_mode + " > /dev/null 2>&1").c_str())) == 2);
}

TEST_CASE("witness round-trips through the routing check") {
    auto spec = write_spec("cli_example1_rt.json", kExample1);
    fs::path witness = fs::temp_directory_path() / "cli_rt_witness.json";
    RunResult r =
        run("feasible " + spec.string() + " 2 1 --out " + witness.string());
    CHECK(r.status == 0);
    std::ifstream in(witness);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    CHECK(text.find("\"lambda\": [\"2\", \"1\"]") != std::string::npos);

    srr::WitnessFile parsed = srr::parse_witness_json(text);
    REQUIRE(parsed.feasible);
    REQUIRE(parsed.strategy.has_value());
    srr::SystemSpecFile sys_spec = srr::load_system_spec(spec);
    srr::RepairGroupTable table = srr::enumerate_repair_groups(sys_spec.system);
    CHECK(srr::is_feasible_with_strategy(table, *parsed.strategy, parsed.demand,
                                         sys_spec.system.node_count(),
                                         sys_spec.system.mu));
}
