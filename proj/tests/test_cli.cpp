// End-to-end checks of the command-line surface: artifact files written by
// `embed`/`pivots` feed `solve` and agree with the library, exit codes
// distinguish unreachable queries from errors, and `bench` CSVs are stable.

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "pathlab/fastmap.hpp"
#include "pathlab/grid.hpp"

#ifndef PATHLAB_CLI_PATH
#define PATHLAB_CLI_PATH "pathlab"
#endif

using namespace pathlab;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    const std::string out_path = "cli_test_output.txt";
    const std::string command =
        std::string(PATHLAB_CLI_PATH) + " " + args + " > " + out_path + " 2>&1";
    const int status = std::system(command.c_str());
    RunResult result;
    result.exit_code = status == -1 ? -1 : WEXITSTATUS(status);
    std::ifstream in(out_path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    result.output = buffer.str();
    std::remove(out_path.c_str());
    return result;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

const char* kTinyMapPath = "cli_tiny.map";
const char* kSplitMapPath = "cli_split.map";

struct Fixture {
    Fixture() {
        write_file(kTinyMapPath, "type octile\nheight 3\nwidth 3\nmap\n...\n...\n...\n");
        write_file(kSplitMapPath, "type octile\nheight 3\nwidth 3\nmap\n.@.\n.@.\n.@.\n");
    }
    ~Fixture() {
        std::remove(kTinyMapPath);
        std::remove(kSplitMapPath);
    }
};

} // namespace

TEST_CASE("cli embed writes a loadable artifact and prints the span sequence") {
    Fixture fixture;
    const RunResult r = run_cli(std::string("embed --map ") + kTinyMapPath +
                                " --neighborhood four --kmax 1 --seed 3 --out cli_tiny.fme");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("farthest-pair distance per dimension: 4") != std::string::npos);

    std::ifstream in("cli_tiny.fme");
    const Embedding e = load_embedding(in);
    CHECK(e.node_count == 9);
    CHECK(e.k == 1);
    CHECK(e.dim_spans[0].d_ab == 4.0);
    std::remove("cli_tiny.fme");
}

TEST_CASE("cli embed on a single-cell map yields an empty embedding") {
    write_file("cli_one.map", "type octile\nheight 1\nwidth 1\nmap\n.\n");
    const RunResult r = run_cli("embed --map cli_one.map --kmax 3 --out cli_one.fme");
    CHECK(r.exit_code == 0);
    std::ifstream in("cli_one.fme");
    const Embedding e = load_embedding(in);
    CHECK(e.k == 0);
    CHECK(e.dim_spans.empty());
    std::remove("cli_one.map");
    std::remove("cli_one.fme");
}

TEST_CASE("cli solve returns the optimal cost and distinct exit codes") {
    Fixture fixture;

    const RunResult zero = run_cli(std::string("solve --map ") + kTinyMapPath +
                                   " --neighborhood four --start 0,0 --goal 2,2");
    CHECK(zero.exit_code == 0);
    CHECK(zero.output.find("cost 4") != std::string::npos);

    // FM(1) with artifacts from the embed subcommand: same cost. (One
    // dimension fully explains the open 4-neighbor grid metric, so the
    // build stops there no matter the requested k_max.)
    REQUIRE(run_cli(std::string("embed --map ") + kTinyMapPath +
                    " --neighborhood four --kmax 2 --seed 3 --out cli_tiny.fme")
                .exit_code == 0);
    const RunResult fm = run_cli(std::string("solve --map ") + kTinyMapPath +
                                 " --neighborhood four --heuristic \"FM(1)\" --embedding "
                                 "cli_tiny.fme --start 0,0 --goal 2,2");
    CHECK(fm.exit_code == 0);
    CHECK(fm.output.find("cost 4") != std::string::npos);
    std::remove("cli_tiny.fme");

    const RunResult unreachable = run_cli(std::string("solve --map ") + kSplitMapPath +
                                          " --start 0,0 --goal 2,2");
    CHECK(unreachable.exit_code == 2);
    CHECK(unreachable.output.find("unreachable") != std::string::npos);

    const RunResult blocked = run_cli(std::string("solve --map ") + kSplitMapPath +
                                      " --start 1,0 --goal 2,2");
    CHECK(blocked.exit_code == 1);

    const RunResult missing = run_cli("solve --map does_not_exist.map --start 0,0 --goal 1,1");
    CHECK(missing.exit_code == 1);
}

TEST_CASE("cli pivots artifact round-trips and solve accepts it") {
    Fixture fixture;
    REQUIRE(run_cli(std::string("pivots --map ") + kTinyMapPath +
                    " --neighborhood four --pivots 2 --seed 5 --out cli_tiny.dh")
                .exit_code == 0);
    std::ifstream in("cli_tiny.dh");
    const PivotTable t = load_pivot_table(in);
    CHECK(t.node_count == 9);
    CHECK(t.pivots.size() == 2);

    const RunResult dh = run_cli(std::string("solve --map ") + kTinyMapPath +
                                 " --neighborhood four --heuristic \"DH(2)\" --pivot-table "
                                 "cli_tiny.dh --start 0,0 --goal 2,2");
    CHECK(dh.exit_code == 0);
    CHECK(dh.output.find("cost 4") != std::string::npos);

    // Artifact for a different map is rejected.
    const RunResult mismatch = run_cli(std::string("solve --map ") + kSplitMapPath +
                                       " --heuristic \"DH(2)\" --pivot-table cli_tiny.dh "
                                       "--start 0,0 --goal 0,2");
    CHECK(mismatch.exit_code == 1);
    std::remove("cli_tiny.dh");
}

TEST_CASE("cli bench writes a CSV and a summary") {
    Fixture fixture;
    const RunResult r = run_cli(std::string("bench --map ") + kTinyMapPath +
                                " --neighborhood four --heuristic ZERO --heuristic MAN "
                                "--instances 10 --seed 4 --out cli_bench.csv");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("heuristic") != std::string::npos);

    std::ifstream in("cli_bench.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header == "instance,start_x,start_y,goal_x,goal_y,cost,ZERO_expanded,MAN_expanded");
    int rows = 0;
    for (std::string line; std::getline(in, line) && !line.empty();) ++rows;
    CHECK(rows == 10);
    std::remove("cli_bench.csv");
}

TEST_CASE("cli validate-scen reports mismatches with a distinct exit code") {
    Fixture fixture;
    write_file("cli_good.scen", "version 1\n0\tcli_tiny.map\t3\t3\t0\t0\t2\t0\t2\n");
    const RunResult good = run_cli(std::string("validate-scen --map ") + kTinyMapPath +
                                   " --neighborhood four --scen cli_good.scen");
    CHECK(good.exit_code == 0);
    CHECK(good.output.find("0 mismatches") != std::string::npos);

    write_file("cli_bad.scen", "version 1\n0\tcli_tiny.map\t3\t3\t0\t0\t2\t0\t7\n");
    const RunResult bad = run_cli(std::string("validate-scen --map ") + kTinyMapPath +
                                  " --neighborhood four --scen cli_bad.scen");
    CHECK(bad.exit_code == 4);
    CHECK(bad.output.find("1 mismatches") != std::string::npos);
    std::remove("cli_good.scen");
    std::remove("cli_bad.scen");
}
