#include <catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

using std::string;

namespace {

struct RunResult {
    int exit_code = -1;
    string output;
};

RunResult run_cli(const string& args) {
    const string out_path = "cli_test_stdout.tmp";
    const string cmd = string(TORUSBOUND_CLI_PATH) + " " + args + " > " + out_path + " 2>&1";
    const int rc = std::system(cmd.c_str());
    RunResult res;
    res.exit_code = WEXITSTATUS(rc);
    std::ifstream f(out_path);
    std::stringstream ss;
    ss << f.rdbuf();
    res.output = ss.str();
    std::remove(out_path.c_str());
    return res;
}

}  // namespace

TEST_CASE("help exits cleanly") {
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("bound --help").exit_code == 0);
}

TEST_CASE("bound warns outside the region but still evaluates") {
    const RunResult res = run_cli("bound --a 0.45 --b 0.8");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("outside the fundamental region") != string::npos);
    CHECK(res.output.find("\"U\"") != string::npos);
}

TEST_CASE("bound subcommand emits the breakdown JSON") {
    const RunResult res = run_cli("bound --a 0.5 --b 0.8660254037844386");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("\"U\"") != string::npos);
    CHECK(res.output.find("91.17") != string::npos);  // 16 pi^2 / sqrt(3)
    CHECK(res.output.find("\"low_branch\"") != string::npos);
    CHECK(res.output.find("\"r0\"") != string::npos);
}

TEST_CASE("invalid parameters exit with code 2") {
    CHECK(run_cli("bound --a 0 --b -1").exit_code == 2);
    CHECK(run_cli("scan --output x.csv --b_min -3 --b_max -1").exit_code == 2);
    CHECK(run_cli("galerkin --a 0 --b 1 --weight \"cos(\"").exit_code == 2);
}

TEST_CASE("threshold subcommand") {
    const RunResult res = run_cli("threshold --a 0.5");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("\"root\"") != string::npos);
    CHECK(res.output.find("\"bracket_lo\"") != string::npos);

    CHECK(run_cli("threshold --a 0.0 --target 1e9").exit_code == 4);
}

TEST_CASE("scan writes a CSV file and unwritable paths exit 3") {
    const string path = "cli_scan.tmp.csv";
    const RunResult res = run_cli("scan --a_steps 3 --b_steps 3 --b_min 1 --b_max 2 --output " +
                                  path);
    CHECK(res.exit_code == 0);
    std::ifstream f(path);
    REQUIRE(f.good());
    string header;
    std::getline(f, header);
    CHECK(header ==
          "a,b,in_region,U,A_c,four_Ac,ratio_U_over_Ac,flat_lambda2_bar,conjecture_margin,"
          "supports_conjecture");
    std::remove(path.c_str());

    CHECK(run_cli("scan --a_steps 2 --b_steps 2 --b_min 1 --b_max 2 --output "
                  "/nonexistent_dir_tb/x.csv")
              .exit_code == 3);
}

TEST_CASE("heatmap is deterministic for a fixed config") {
    const string p1 = "cli_heat1.tmp.svg", p2 = "cli_heat2.tmp.svg";
    const string flags = "heatmap --a_steps 4 --b_steps 5 --b_min 1 --b_max 2.5 --output ";
    CHECK(run_cli(flags + p1).exit_code == 0);
    CHECK(run_cli(flags + p2).exit_code == 0);
    std::ifstream f1(p1), f2(p2);
    std::stringstream s1, s2;
    s1 << f1.rdbuf();
    s2 << f2.rdbuf();
    CHECK(s1.str() == s2.str());
    CHECK(s1.str().find("<svg") != string::npos);
    std::remove(p1.c_str());
    std::remove(p2.c_str());
}

TEST_CASE("config file feeds the scan and flags override it") {
    const string cfg_path = "cli_cfg.tmp.json";
    {
        std::ofstream cfg(cfg_path);
        cfg << R"({"a_steps": 2, "b_steps": 2, "b_min": 1.0, "b_max": 2.0,)"
            << R"( "output": "ignored.csv"})";
    }
    const string out = "cli_cfg_scan.tmp.csv";
    const RunResult res =
        run_cli("scan --config " + cfg_path + " --b_steps 3 --output " + out);
    CHECK(res.exit_code == 0);
    std::ifstream f(out);
    int lines = 0;
    string line;
    while (std::getline(f, line)) ++lines;
    CHECK(lines == 1 + 2 * 3);  // header + a_steps * overridden b_steps
    std::remove(cfg_path.c_str());
    std::remove(out.c_str());
}

TEST_CASE("spectrum subcommand lists eigenvalues with multiplicities") {
    const RunResult res = run_cli("spectrum --a 0 --b 1 --k 2");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("\"multiplicity\": 4") != string::npos);
    CHECK(res.output.find("\"eigenvalue\": 0.0") != string::npos);
}

TEST_CASE("galerkin subcommand certifies a smooth weight") {
    const RunResult res =
        run_cli("galerkin --a 0 --b 1.2 --weight \"1 + 0.3*cos(2*pi*u)\" --cutoff-multiple 8");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("\"certified\": true") != string::npos);
}

TEST_CASE("verify bounds suite passes and emits JSON") {
    const RunResult res = run_cli("verify bounds");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("\"suite\": \"bounds\"") != string::npos);
    CHECK(res.output.find("\"fail\"") == string::npos);
    CHECK(res.output.find("conformal-area-ratio-scan") != string::npos);
}

TEST_CASE("identical seeds give identical output") {
    const string args = "trial-search --a 0 --b 1 --r 0.55 --grid 32 --density 4 --seed 99";
    const RunResult r1 = run_cli(args);
    const RunResult r2 = run_cli(args);
    CHECK(r1.exit_code == 0);
    CHECK(r1.output == r2.output);
}
