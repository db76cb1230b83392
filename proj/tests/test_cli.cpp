// CLI surface tests: exit codes, output bytes, cache behavior. Spawns the
// binary passed as argv[1].
#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string g_cli;

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = g_cli + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    int status = pclose(pipe);
    return RunResult{WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace

TEST_CASE("spectrum rows and validation exits") {
    RunResult r = run("spectrum --n 5 --gen 1 --even");
    CHECK(r.exit_code == 0);
    CHECK(r.out.substr(0, 4) == "0,2\n");
    int rows = 0;
    for (char ch : r.out) rows += ch == '\n';
    CHECK(rows == 5);

    CHECK(run("spectrum --n 4 --gen 1").exit_code == 2);
    CHECK(run("spectrum --n 5 --gen 3").exit_code == 2);
    CHECK(run("spectrum --n 5 --gen 1 --even --odd").exit_code == 2);
    CHECK(run("nonsense").exit_code == 2);
}

TEST_CASE("density values and tolerance exit") {
    RunResult r = run("density --k 1 --c -1 --d 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\n1,-1,1,1,") == r.out.find('\n')); // value column = 1

    r = run("density --k 2 --c -2 --d 0");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find(",0.5") != std::string::npos);

    // seeded Monte Carlo reproducibility
    std::string a = run("density --k 2 --c -1 --d 1 --method mc --samples 200000 --seed 7").out;
    std::string b = run("density --k 2 --c -1 --d 1 --method mc --samples 200000 --seed 7").out;
    CHECK(a == b);

    CHECK(run("density --k 3 --c -1 --d 1 --tolerance 1e-14 --budget 200000").exit_code == 3);
}

TEST_CASE("prob rows") {
    RunResult r = run("prob --n 5 --k 1 --even --a 0 --b 2");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("5,1,2,0,2,0,1,6,10,0.59999999999999998,0.5,0.09") != std::string::npos);

    r = run("prob --n 9 --k 1 --even --a 0 --b 2");
    CHECK(r.out.find(",0.5,0.5,0,") != std::string::npos);

    r = run("prob --n 9 --k 1 --even --a -2 --b 2");
    CHECK(r.out.find(",1,1,0,") != std::string::npos);

    r = run("prob --n 45 --k 2 --even --a -2 --b 2 --path both");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("exact") != std::string::npos);
    CHECK(r.out.find("fast") != std::string::npos);
    CHECK(r.out.find("deviation") != std::string::npos);

    CHECK(run("prob --n 5 --k 1 --even --a -9 --b 2").exit_code == 2); // J outside [-r, r]
    CHECK(run("prob --n 2001 --k 2 --even --a 0 --b 2 --budget 1000").exit_code == 4);
}

TEST_CASE("sweep: cache reuse and byte-identical reruns across thread counts") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "cayley-cli-test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    fs::path out1 = dir / "t1.csv", out8 = dir / "t8.csv", warm = dir / "warm.csv";
    std::string common = "sweep --k 1 --even --a 0 --b 2 --n-list 5,9,21,45,101 --cache-dir " +
                         (dir / "cache").string();

    CHECK(run(common + " --threads 1 --out " + out1.string()).exit_code == 0);
    CHECK(run(common + " --threads 8 --out " + out8.string()).exit_code == 0);
    std::string bytes1 = slurp(out1);
    CHECK(bytes1 == slurp(out8));
    CHECK(bytes1.find("5,1,2,0,2,0,1,6,10,0.59999999999999998,0.5,0.09") != std::string::npos);
    CHECK(bytes1.find("slope") != std::string::npos);

    // warm rerun: identical bytes out of the cache
    CHECK(run(common + " --threads 4 --out " + warm.string()).exit_code == 0);
    CHECK(bytes1 == slurp(warm));
    CHECK(fs::exists(dir / "cache"));
    int entries = 0;
    for (auto& e : fs::directory_iterator(dir / "cache")) {
        (void)e;
        ++entries;
    }
    CHECK(entries == 5);

    // env var is honored when no flag is given
    fs::path envdir = dir / "env-cache";
    std::string cmd = "CAYLEY_CACHE_DIR=" + envdir.string() + " " + g_cli +
                      " sweep --k 1 --even --a 0 --b 2 --n-list 5,9 >/dev/null 2>&1";
    CHECK(std::system(cmd.c_str()) == 0);
    CHECK(fs::exists(envdir));

    CHECK(run("sweep --k 1 --even --a 0 --b 2 --n-list 5,8,9").exit_code == 2); // even n
    CHECK(run("sweep --k 2 --even --a 0 --b 2 --n-list 2001 --budget 1000 --cache off").exit_code ==
          4); // budget exit names the offending n

    fs::remove_all(dir);
}

TEST_CASE("sweep all-zero slope row") {
    RunResult r = run("sweep --k 1 --even --a -2 --b 2 --n-list 5,9,15 --cache off");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("slope_all_zero") != std::string::npos);
}

TEST_CASE("histogram output") {
    RunResult r = run("histogram --n 5 --k 1 --even --bins 4 --format tsv");
    CHECK(r.exit_code == 0);
    CHECK(r.out.substr(0, 2) == "# ");
    CHECK(r.out.find("0.4") != std::string::npos); // 4/10 frequency
    CHECK(r.out.find("0.2") != std::string::npos);

    r = run("histogram --n 5 --k 1 --even --bins 4 --format json");
    bool has_freq = r.out.find("\"empirical_frequency\":0.4") != std::string::npos;
    CHECK(has_freq);
}

TEST_CASE("ihara output") {
    RunResult r = run("ihara --n 5 --gen 1 --even");
    CHECK(r.exit_code == 0);
    // row for u^5: both h and zeta^-1 carry coefficient -2 up to expansion dust
    std::size_t pos = r.out.find("\n5,");
    REQUIRE(pos != std::string::npos);
    double h5 = 0, z5 = 0;
    CHECK(std::sscanf(r.out.c_str() + pos, "\n5,%lf,%lf", &h5, &z5) == 2);
    CHECK(std::abs(h5 + 2.0) <= 1e-9);
    CHECK(std::abs(z5 + 2.0) <= 1e-9);

    r = run("ihara --n 5 --gen 1 --even --poles");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("0,2,1,0,1,0") != std::string::npos); // alpha=2, r=2: double pole at 1
}

TEST_CASE("verify runs clean") {
    RunResult r = run("verify core");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("[ok]") != std::string::npos);
    CHECK(r.out.find("[FAIL]") == std::string::npos);
    CHECK(run("verify bogus").exit_code == 2);
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: test_cli <cayley-binary>\n");
        return 1;
    }
    g_cli = argv[1];
    doctest::Context ctx;
    return ctx.run();
}
