#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

extern std::string g_qnl_cli_path;

namespace {

struct RunResult {
    int status = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    RunResult res;
    const std::string cmd = g_qnl_cli_path + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) res.out.append(buf.data(), n);
    res.status = pclose(pipe);
    return res;
}

// Strip the volatile header lines (timestamp and wall time).
std::string below_timestamp(const std::string& text) {
    auto pos = text.find('\n');
    if (pos != std::string::npos) pos = text.find('\n', pos + 1);
    return pos == std::string::npos ? text : text.substr(pos + 1);
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("help lists every subcommand") {
    REQUIRE(!g_qnl_cli_path.empty());
    const auto res = run("--help");
    for (const char* sub :
         {"variational", "perturb", "asymptotic", "lattice", "evolve", "relax", "check"})
        CHECK(res.out.find(sub) != std::string::npos);
}

TEST_CASE("asymptotic scan emits the schema and the minimizer") {
    const auto res = run("asymptotic --scan-eta 0.05:0.999:200");
    CHECK(res.status == 0);
    CHECK(res.out.find("eta,g,energy") != std::string::npos);
    CHECK(res.out.find("# eta_minimizer=0.9033") != std::string::npos);
    // 200 data rows
    int rows = 0;
    std::istringstream is(res.out);
    std::string line;
    while (std::getline(is, line))
        if (!line.empty() && line[0] != '#' && line.find(',') != std::string::npos &&
            line != "eta,g,energy")
            ++rows;
    CHECK(rows == 200);
}

TEST_CASE("eta validation rejects out-of-range values") {
    const auto res = run("perturb --n 5 --eta 1.5 --L 1e-3");
    CHECK(res.status != 0);
    CHECK(res.out.find("eta") != std::string::npos);
}

TEST_CASE("lattice run prints trajectory and classification summary") {
    const auto res = run("lattice --eta 1 --e-ratio 1 --p0 1 --p1 1 --window 200");
    CHECK(res.status == 0);
    CHECK(res.out.find("eta,e_ratio,index,p") != std::string::npos);
    CHECK(res.out.find("forward=BoundedDecaying") != std::string::npos);
    CHECK(res.out.find("backward=TruncatedAt") != std::string::npos);
    CHECK(res.out.find("truncation_index=-1") != std::string::npos);
}

TEST_CASE("determinism: identical runs agree below the timestamp header") {
    const std::string args = "variational --n 0 --eta 0.5,0.9 --eps 0.01,1";
    const auto a = run(args);
    const auto b = run(args);
    CHECK(a.status == 0);
    CHECK(below_timestamp(a.out) == below_timestamp(b.out));
    CHECK(a.out.find("n,eta,eps,c_star,E_star,restarts,converged") != std::string::npos);
}

TEST_CASE("check battery passes") {
    const auto res = run("check");
    CHECK(res.status == 0);
    CHECK(res.out.find("ALL CHECKS PASSED") != std::string::npos);
}

TEST_SUITE_END();
