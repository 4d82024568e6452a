// End-to-end tests of the command-line tool, run as subprocesses. The binary
// path comes from the build system.

#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "stsurf/wdf.hpp"

#include "fixtures.hpp"

#ifndef STSURF_CLI_PATH
#error "STSURF_CLI_PATH must be defined by the build"
#endif

namespace {

struct RunResult {
    int exit_code;
    std::string output; // stdout + stderr
};

RunResult run_cli(const std::string& args)
{
    std::string cmd = std::string(STSURF_CLI_PATH) + " " + args + " 2>&1";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (fgets(buf.data(), buf.size(), pipe)) out += buf.data();
    int status = pclose(pipe);
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, out};
}

} // namespace

TEST_CASE("catalog writes WDF files that validate")
{
    RunResult cat = run_cli("catalog meeks --lambda 0 1 --m 1 -o cli_meeks.wdf");
    CHECK(cat.exit_code == 0);
    RunResult val = run_cli("validate cli_meeks.wdf --grid 192");
    CHECK(val.exit_code == 0);
    CHECK(val.output.find("VERDICT: PASS") != std::string::npos);
    CHECK(val.output.find("quotient: 6 pi") != std::string::npos);
    std::remove("cli_meeks.wdf");
}

TEST_CASE("catalog epsilon carries a0 = sqrt(0.21)")
{
    RunResult cat = run_cli("catalog epsilon --eps 0.1 -o cli_eps.wdf");
    CHECK(cat.exit_code == 0);
    std::ifstream is("cli_eps.wdf");
    std::stringstream ss;
    ss << is.rdbuf();
    // sqrt(0.21) = 0.458257569...
    CHECK(ss.str().find("0.4582575694") != std::string::npos);
    std::remove("cli_eps.wdf");
}

TEST_CASE("catalog usage errors exit 2")
{
    CHECK(run_cli("catalog nope").exit_code == 2);
    CHECK(run_cli("catalog meeks --lambda 0.5 0.5").exit_code == 2);
    CHECK(run_cli("catalog essential --p 1").exit_code == 2);
}

TEST_CASE("validate on section4 exits 1 naming the singular point")
{
    RunResult cat = run_cli("catalog section4 -o cli_s4.wdf");
    CHECK(cat.exit_code == 0);
    RunResult val = run_cli("validate cli_s4.wdf --grid 192");
    CHECK(val.exit_code == 1);
    CHECK(val.output.find("singular point") != std::string::npos);
    CHECK(val.output.find("VERDICT: FAIL") != std::string::npos);

    RunResult scan = run_cli("scan cli_s4.wdf --grid 192 --quiet");
    CHECK(scan.exit_code == 0);
    // header + four rows
    int rows = 0;
    std::istringstream lines(scan.output);
    std::string line;
    while (std::getline(lines, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 1 + 4);

    RunResult mesh = run_cli("mesh cli_s4.wdf -o cli_s4.obj --r-min 0.3 --r-max 0.8");
    CHECK(mesh.exit_code == 1);
    CHECK(mesh.output.find("singular point") != std::string::npos);
    std::remove("cli_s4.wdf");
}

TEST_CASE("scan on regular entries is empty")
{
    run_cli("catalog epsilon --eps 0.01 -o cli_eps2.wdf");
    RunResult scan = run_cli("scan cli_eps2.wdf --grid 192 --quiet");
    CHECK(scan.exit_code == 0);
    CHECK(scan.output == "z_re,z_im,residual,m,n,kind\n");
    std::remove("cli_eps2.wdf");
}

TEST_CASE("curvature subcommand: index, quad, both")
{
    run_cli("catalog meeks --lambda 0 1 --m 2 -o cli_m2.wdf");
    RunResult idx = run_cli("curvature cli_m2.wdf --method index");
    CHECK(idx.exit_code == 0);
    CHECK(idx.output.find("quotient): 10 pi") != std::string::npos);
    std::remove("cli_m2.wdf");

    run_cli("catalog essential --p 2 -o cli_ess.wdf");
    RunResult bad = run_cli("curvature cli_ess.wdf --method index");
    CHECK(bad.exit_code == 2);
    CHECK(bad.output.find("quad") != std::string::npos);
    RunResult quad = run_cli("curvature cli_ess.wdf --method quad --levels 3");
    CHECK(quad.exit_code == 0);
    CHECK(quad.output.find("quotient): 6 pi") != std::string::npos);
    std::remove("cli_ess.wdf");

    run_cli("catalog epsilon --eps 0.1 -o cli_eps3.wdf");
    RunResult both = run_cli("curvature cli_eps3.wdf --method both --levels 3");
    CHECK(both.exit_code == 0);
    CHECK(both.output.find("(agree)") != std::string::npos);
    std::remove("cli_eps3.wdf");
}

TEST_CASE("mesh writes OBJ with the contracted vertex count")
{
    run_cli("catalog meeks --lambda 0 1 --m 1 -o cli_mm.wdf");
    RunResult mesh = run_cli(
        "mesh cli_mm.wdf -o cli_mm.obj --r-min 0.5 --r-max 2 --nr 64 --ntheta 128 --quiet");
    CHECK(mesh.exit_code == 0);
    std::ifstream obj("cli_mm.obj");
    REQUIRE(obj.good());
    int vcount = 0;
    std::string line;
    while (std::getline(obj, line))
        if (line.rfind("v ", 0) == 0) ++vcount;
    CHECK(vcount == 64 * 128);
    std::ifstream csv("cli_mm.csv");
    REQUIRE(csv.good());
    std::getline(csv, line);
    CHECK(line == "z_re,z_im,x1,x2,x3,x4,e2w");
    std::remove("cli_mm.wdf");
    std::remove("cli_mm.obj");
    std::remove("cli_mm.csv");
}

TEST_CASE("curvature convergence table CSV")
{
    run_cli("catalog meeks --lambda 0 1 --m 1 -o cli_tab.wdf");
    RunResult r = run_cli("curvature cli_tab.wdf --method quad --levels 2 --table cli_tab.csv");
    CHECK(r.exit_code == 0);
    std::ifstream csv("cli_tab.csv");
    REQUIRE(csv.good());
    std::string line;
    std::getline(csv, line);
    CHECK(line == "level,n_r,n_t,totalK,totalKperp,total_abs");
    std::remove("cli_tab.wdf");
    std::remove("cli_tab.csv");
}

TEST_CASE("json output mode")
{
    run_cli("catalog meeks --lambda 0 1 --m 1 -o cli_j.wdf");
    RunResult val = run_cli("validate cli_j.wdf --grid 128 --json");
    CHECK(val.exit_code == 0);
    CHECK(val.output.find("\"pass\": true") != std::string::npos);
    std::remove("cli_j.wdf");
}

TEST_CASE("validate on the m = 2 fixture names the vertical period condition")
{
    stsurf::save_wdf(stsurf_tests::m2_rejected(), "cli_m2fix.wdf");
    RunResult val = run_cli("validate cli_m2fix.wdf --grid 128");
    CHECK(val.exit_code == 1);
    CHECK(val.output.find("vertical period condition") != std::string::npos);
    CHECK(val.output.find("-6.28") != std::string::npos); // Re loop = -2 pi
    std::remove("cli_m2fix.wdf");
}

TEST_CASE("commands are deterministic for identical flags")
{
    run_cli("catalog section4 -o cli_det.wdf");
    RunResult a = run_cli("scan cli_det.wdf --grid 128 --quiet");
    RunResult b = run_cli("scan cli_det.wdf --grid 128 --quiet");
    CHECK(a.output == b.output);
    RunResult c = run_cli("validate cli_det.wdf --grid 128 --json");
    RunResult d = run_cli("validate cli_det.wdf --grid 128 --json");
    CHECK(c.output == d.output);
    std::remove("cli_det.wdf");
}

TEST_CASE("parse failures exit 2")
{
    CHECK(run_cli("validate does_not_exist.wdf").exit_code == 2);
    std::ofstream bad("cli_bad.wdf");
    bad << "{ not json";
    bad.close();
    CHECK(run_cli("validate cli_bad.wdf").exit_code == 2);
    std::remove("cli_bad.wdf");
}
