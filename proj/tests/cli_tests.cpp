// End-to-end checks of the cfam binary: exit codes, validation errors,
// format switches and byte-determinism of the report files.
// argv[1] must be the path to the binary.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

int failures = 0;

void expect(bool ok, const std::string& what) {
    std::printf("[%s] %s\n", ok ? "ok" : "FAIL", what.c_str());
    if (!ok) ++failures;
}

int run(const std::string& cmd) {
    const int rc = std::system((cmd + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: cli_tests <path-to-cfam>\n");
        return 2;
    }
    const std::string bin = argv[1];
    const std::string tmp = "cli_tests_tmp";

    expect(run(bin + " --version") == 0, "--version exits 0");
    expect(run(bin + " eval --c -1 --n 1 --x 0.5") == 0, "eval on the binary family exits 0");
    expect(run(bin + " eval --c -1 --n 2.5 --x 0.5") == 2, "NonIntegerL params exit 2");
    expect(run(bin + " eval --c 1 --n 0.5 --x 1") == 2, "n <= c exits 2");
    expect(run(bin + " eval --c 0 --n 1 --bogus-flag") == 2, "unknown flag exits 2");
    expect(run(bin + " eval") == 2, "missing required flags exit 2");

    expect(run(bin + " check theorem1 --c -1 --n 5") == 0, "check theorem1 passes");
    expect(run(bin + " check theorem2 --n 1") == 0, "check theorem2 passes");
    expect(run(bin + " check theorem3 --c 1 --n 2") == 0, "check theorem3 passes");
    expect(run(bin + " check corollary1 --c 0 --n 1") == 0, "check corollary1 passes");
    expect(run(bin + " check section3 --c -1 --n 6") == 0, "check section3 passes");
    expect(run(bin + " check representations") == 0, "check representations passes");
    expect(run(bin + " check theorem1 --c 1 --n 2") == 2, "theorem1 with c > 0 exits 2");
    expect(run(bin + " check theorem2 --c 1 --n 2") == 2, "theorem2 with c != 0 exits 2");
    expect(run(bin + " check nonsense") == 2, "unknown suite exits 2");

    expect(run(bin + " check theorem1 --inject-bug") == 1,
           "negated checker sign is detected (exit 1)");
    expect(run(bin + " check all --quick --inject-bug") == 1,
           "injected bug propagates through check all (exit 1)");

    expect(run(bin + " scan-conjecture --c -1 --n 10 --points 199") == 0,
           "scan-conjecture runs for c < 0");
    expect(run(bin + " scan-conjecture --c 1 --n 2") == 2, "scan-conjecture rejects c >= 0");

    expect(run(bin + " sweep --c-list -1,0,1 --n-list 2 --x 0.5") == 0, "sweep over c list");
    expect(run(bin + " sweep --c-list -1 --n-list 2.5 --x 0.5") == 2,
           "sweep validates every (c, n) pair");

    expect(run(bin + " deriv --c -1 --n 5 --order 3 --x 0.25") == 0, "deriv runs");
    expect(run(bin + " deriv --c -1 --n 5 --order 99 --x 0.25") == 2,
           "absurd derivative order is a usage error");

    // byte determinism of report files, including parallel vs serial
    expect(run(bin + " check all --quick --format json --output " + tmp + "1.json") == 0,
           "json report written");
    expect(run(bin + " check all --quick --format json --output " + tmp + "2.json") == 0,
           "json report written again");
    expect(run(bin + " check all --quick --serial --format json --output " + tmp + "3.json") == 0,
           "json report written serially");
    const std::string j1 = slurp(tmp + "1.json");
    expect(!j1.empty() && j1 == slurp(tmp + "2.json"), "json reports are byte-identical");
    expect(j1 == slurp(tmp + "3.json"), "serial and parallel reports are byte-identical");

    expect(run(bin + " eval --c -1 --n 6 --points 25 --format csv --output " + tmp + "1.csv") == 0,
           "csv eval written");
    expect(run(bin + " eval --c -1 --n 6 --points 25 --format csv --output " + tmp + "2.csv") == 0,
           "csv eval written again");
    const std::string c1 = slurp(tmp + "1.csv");
    expect(!c1.empty() && c1 == slurp(tmp + "2.csv"), "csv reports are byte-identical");
    expect(c1.find("x,p0,p1,p2,H,H_err,S,S_err,R,R_err,T,T_err") == 0, "csv carries a header row");

    std::remove((tmp + "1.json").c_str());
    std::remove((tmp + "2.json").c_str());
    std::remove((tmp + "3.json").c_str());
    std::remove((tmp + "1.csv").c_str());
    std::remove((tmp + "2.csv").c_str());

    if (failures) {
        std::printf("%d failure(s)\n", failures);
        return 1;
    }
    std::printf("all cli checks passed\n");
    return 0;
}
