// End-to-end checks of the installed CLI surface: flags, exit codes, output
// shape. Spawns the real binary.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <json.hpp>

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args, const std::string& env = "") {
    std::string cmd = (env.empty() ? "" : env + " ") + std::string(QREP_CLI_BIN) + " " +
                      args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

} // namespace

TEST_CASE("classify") {
    auto r = run_cli("classify -q q=5 -f 'diag(1,1,1,1)'");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("hyperbolic: yes") != std::string::npos);
    CHECK(r.out.find("canonical: 2*H") != std::string::npos);

    auto aniso = run_cli("classify -q q=2 -f 'bin(1,1)'");
    CHECK(aniso.exit_code == 0);
    CHECK(aniso.out.find("isotropic: no") != std::string::npos);

    auto degenerate = run_cli("classify -q q=2 -f 'diag(1)'");
    CHECK(degenerate.exit_code == 1);
}

TEST_CASE("predict") {
    auto r = run_cli("predict -q q=3 -f H -a 1 --no-timing");
    CHECK(r.exit_code == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["predicted"]["connected"] == false);
    CHECK(doc["predicted"]["diameter"] == "inf");

    auto tri = run_cli("predict -q q=5 -f 'diag(1,1,1,1)' -a 1 --no-timing");
    auto tri_doc = nlohmann::json::parse(tri.out);
    CHECK(tri_doc["predicted"]["triangles"]["total"] == 250000);

    auto four = run_cli("predict -q q=2 -f 'H+bin(1,1)' -a 1 --no-timing");
    auto four_doc = nlohmann::json::parse(four.out);
    CHECK(four_doc["predicted"]["four_cycles"] == 900);
}

TEST_CASE("verify") {
    auto r = run_cli("verify -q q=5 -f H -a 1 --no-timing");
    CHECK(r.exit_code == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["bruteforce"]["diameter"] == 4);
    CHECK(doc["match"]["diameter"] == true);

    auto disconnected = run_cli("verify -q q=4 -f H -a 1 --no-timing");
    CHECK(disconnected.exit_code == 0);
    auto ddoc = nlohmann::json::parse(disconnected.out);
    CHECK(ddoc["bruteforce"]["components"] == 4);
    CHECK(ddoc["match"]["connected"] == true);

    auto capped = run_cli("verify -q q=13 -f 'diag(1,1,1,1,1)' -a 1 --max-vertices 100");
    CHECK(capped.exit_code == 2);

    // the default cap can be overridden from the environment
    auto env_capped = run_cli("verify -q q=13 -f 'diag(1,1,1)' -a 1", "QREP_MAX_VERTICES=100");
    CHECK(env_capped.exit_code == 2);

    auto parse_err = run_cli("verify -q q=6 -f H -a 1");
    CHECK(parse_err.exit_code == 1);

    auto usage_err = run_cli("frobnicate");
    CHECK(usage_err.exit_code == 1);
}

TEST_CASE("verify output is deterministic with --no-timing") {
    auto a = run_cli("verify -q q=7 -f 'diag(1,2)' -a 1 --no-timing");
    auto b = run_cli("verify -q q=7 -f 'diag(1,2)' -a 1 --no-timing");
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());
}

TEST_CASE("sweep") {
    auto r = run_cli("sweep -f H --fields 5..13 -a 1 --mode diameter");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("5\t1\t3..4\t4\tyes") != std::string::npos);
    CHECK(r.out.find("11\t1\t3..4\t3\tyes") != std::string::npos);

    auto small = run_cli("sweep -f H --fields 2..4 -a 1");
    CHECK(small.exit_code == 0);
    CHECK(small.out.find("inf") != std::string::npos);

    auto empty = run_cli("sweep -f H --fields 14..15 -a 1");
    CHECK(empty.exit_code == 0);
}

TEST_CASE("export") {
    auto edges = run_cli("export -q q=2 -f H -a 1 --format edges");
    CHECK(edges.exit_code == 0);
    CHECK(edges.out == "0 3\n1 2\n");

    auto dot = run_cli("export -q q=2 -f 'bin(1,1)' -a 1 --format dot");
    CHECK(dot.exit_code == 0);
    CHECK(dot.out.find("graph G {") == 0);
    // K4: six edges
    int edge_count = 0;
    for (std::size_t pos = 0; (pos = dot.out.find(" -- ", pos)) != std::string::npos; ++pos)
        ++edge_count;
    CHECK(edge_count == 6);

    auto capped = run_cli("export -q q=9 -f '3*H' -a 1 --format dot");
    CHECK(capped.exit_code == 2);
}
