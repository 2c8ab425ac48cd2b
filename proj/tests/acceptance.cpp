// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Exercises the library directly and the CLI as a subprocess.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "omegatri/analytics.hpp"
#include "omegatri/oracle.hpp"
#include "omegatri/tail.hpp"
#include "omegatri/triangle.hpp"

namespace {

namespace fs = std::filesystem;
using namespace omegatri;
using clock_type = std::chrono::steady_clock;

int g_failures = 0;

void report(int criterion, bool ok, double seconds, const std::string& detail) {
    std::printf("[%s] criterion %d: %s (%.2fs)\n", ok ? "PASS" : "FAIL", criterion,
                detail.c_str(), seconds);
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

struct Timer {
    clock_type::time_point start = clock_type::now();
    double seconds() const {
        return std::chrono::duration<double>(clock_type::now() - start).count();
    }
};

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = OMEGATRI_CLI_PATH " " + args;
    RunResult result;
    std::array<char, 65536> buf{};
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return result;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        result.out.append(buf.data(), got);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        std::string tmpl = (fs::temp_directory_path() / "omegatri-acc-XXXXXX").string();
        if (mkdtemp(tmpl.data()) == nullptr) std::abort();
        path = tmpl;
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string flag() const { return " --cache-dir " + path.string(); }
};

const fs::path kDataDir = OMEGATRI_TEST_DATA_DIR;

// Criterion 1: the emitted table matches the transcribed reference bytes.
void criterion_1() {
    Timer timer;
    TempDir dir;
    const auto r = run_cli("triangle --max-exp 23 --format tsv" + dir.flag() + " 2>/dev/null");
    const std::string expected = read_file(kDataDir / "triangle_n23.tsv");
    const double s = timer.seconds();
    const bool ok = r.exit_code == 0 && !expected.empty() && r.out == expected && s < 10.0;
    report(1, ok, s, "triangle --max-exp 23 --format tsv is byte-identical to the reference");
}

// Criterion 2: row sums equal 2^n through n = 26.
const Triangle& triangle26() {
    static const Triangle t = build_triangle(26);
    return t;
}

void criterion_2() {
    Timer timer;
    bool ok = true;
    std::string detail = "row sums equal 2^n for all n <= 26";
    for (const auto& row : triangle26().rows()) {
        if (row.sum() != (count_t{1} << row.exponent)) {
            ok = false;
            detail = "row 2^" + std::to_string(row.exponent) + " sum mismatch";
            break;
        }
    }
    const double s = timer.seconds();
    report(2, ok && s < 60.0, s, detail);
}

// Criterion 3: sieve rows equal trial-division rows for n <= 16.
void criterion_3() {
    Timer timer;
    bool ok = true;
    std::string detail = "sieve equals trial division for all n <= 16";
    for (unsigned n = 0; n <= 16; ++n) {
        if (count_dimensions(n).counts != oracle::row_by_bruteforce(n).counts) {
            ok = false;
            detail = "row 2^" + std::to_string(n) + " differs from the oracle";
            break;
        }
    }
    const double s = timer.seconds();
    report(3, ok && s < 120.0, s, detail);
}

// Criterion 4: enumerated tail limits and the convergence exponent at x=2.
void criterion_4() {
    Timer timer;
    const count_t expected[] = {1, 2, 7, 15, 37, 84, 187, 421, 914};
    bool ok = true;
    std::string detail = "tail limits for x=0..8 are 1,2,7,15,37,84,187,421,914; n*(2)=5";
    for (unsigned x = 0; x <= 8 && ok; ++x) {
        const auto limit = tail_limit(x);
        if (limit.limit != expected[x]) {
            ok = false;
            detail = "tail_limit(" + std::to_string(x) + ") != " + std::to_string(expected[x]);
            break;
        }
        const unsigned n_star = convergence_exponent(x);
        for (const auto& [n, value] : diagonal_series(triangle26(), x)) {
            if (n >= n_star && value != limit.limit) {
                ok = false;
                detail = "diagonal x=" + std::to_string(x) + " not stable at its limit";
                break;
            }
        }
    }
    if (ok && convergence_exponent(2) != 5) {
        ok = false;
        detail = "convergence_exponent(2) != 5";
    }
    const double s = timer.seconds();
    report(4, ok && s < 1.0, s, detail);
}

// Criterion 5: the openings of the x = 2, 3, 4 diagonals.
void criterion_5() {
    Timer timer;
    const std::vector<std::vector<count_t>> expected{
        {4, 6, 7, 7},
        {6, 10, 13, 14, 15, 15},
        {11, 22, 30, 34, 36, 37, 37},
    };
    bool ok = true;
    std::string detail = "diagonal openings for x=2,3,4 match the listed series";
    for (unsigned i = 0; i < 3 && ok; ++i) {
        const unsigned x = i + 2;
        const auto series = diagonal_series(triangle26(), x);
        for (std::size_t k = 0; k < expected[i].size(); ++k) {
            if (series[k].second != expected[i][k]) {
                ok = false;
                detail = "diagonal x=" + std::to_string(x) + " opening differs at position " +
                         std::to_string(k);
                break;
            }
        }
    }
    const double s = timer.seconds();
    report(5, ok && s < 1.0, s, detail);
}

// Criterion 6: every printed log value and difference is reproduced at the
// precision it was printed with (cells carry 4 to 6 decimals).
void criterion_6() {
    Timer timer;
    bool ok = true;
    std::string detail;
    std::size_t cells = 0;

    std::ifstream in(kDataDir / "log_counts_reference.tsv");
    std::string line;
    std::getline(in, line);  // header

    const auto decimals = [](const std::string& s) -> int {
        const auto dot = s.find('.');
        return dot == std::string::npos ? 0 : static_cast<int>(s.size() - dot - 1);
    };
    const auto close_enough = [&](const std::string& printed, double mine) {
        const double value = std::stod(printed);
        const int k = decimals(printed);
        const double tol = k >= 6 ? 1.5e-6 : 0.5 * std::pow(10.0, -k) + 1e-9;
        return std::abs(value - mine) <= tol;
    };

    const Triangle& t = triangle26();
    while (std::getline(in, line) && ok) {
        std::istringstream fields(line);
        std::string x_s, n_s, ln_s, diff_s;
        std::getline(fields, x_s, '\t');
        std::getline(fields, n_s, '\t');
        std::getline(fields, ln_s, '\t');
        std::getline(fields, diff_s, '\t');
        const unsigned x = std::stoul(x_s);
        const unsigned n = std::stoul(n_s);

        const double ln_mine = std::log(static_cast<double>(t.row(n).counts[x]));
        if (!ln_s.empty()) {
            ++cells;
            if (!close_enough(ln_s, ln_mine)) {
                ok = false;
                detail = "ln mismatch at x=" + x_s + ", 2^" + n_s + ": printed " + ln_s;
            }
        }
        if (!diff_s.empty() && ok) {
            ++cells;
            const double prev = std::log(static_cast<double>(t.row(n - 1).counts[x]));
            if (!close_enough(diff_s, ln_mine - prev)) {
                ok = false;
                detail = "diff mismatch at x=" + x_s + ", 2^" + n_s + ": printed " + diff_s;
            }
        }
    }
    if (ok && cells < 180) {
        ok = false;
        detail = "reference table unexpectedly small (" + std::to_string(cells) + " cells)";
    }

    // spot anchors
    if (ok) {
        const auto s1 = column_diffs(t, 1);
        ok = std::abs(s1.entries[4].ln_count - 2.397895) < 1e-6 &&
             std::abs(*s1.entries[4].diff - 0.606136) < 1e-6 &&
             std::abs(std::log(static_cast<double>(t.row(20).counts[13])) - 6.042633) < 1e-6 &&
             std::abs(std::log(static_cast<double>(t.row(13).counts[10])) - 2.708050) < 1e-6;
        if (!ok) detail = "a spot anchor failed";
    }

    const double s = timer.seconds();
    report(6, ok && s < 5.0, s,
           ok ? "all " + std::to_string(cells) + " printed log cells reproduced" : detail);
}

// Criterion 7: maximum-column transitions and the n=4 tie.
void criterion_7() {
    Timer timer;
    std::vector<DistributionRow> rows(triangle26().rows().begin(),
                                      triangle26().rows().begin() + 24);
    const Triangle t23(std::move(rows), triangle26().meta());

    const auto transitions = max_column_transitions(t23);
    bool ok = transitions.size() == 2 && transitions[0] == MaxColumnTransition{6, 2} &&
              transitions[1] == MaxColumnTransition{14, 3};
    std::string detail = "transitions at N=23 are exactly {6 -> 2, 14 -> 3} and n=4 ties";
    if (!ok) detail = "transition list differs";
    if (ok && !max_column(t23.row(4)).tied) {
        ok = false;
        detail = "the n=4 tie was not flagged";
    }
    const double s = timer.seconds();
    report(7, ok && s < 1.0, s, detail);
}

// Criterion 8: entropy properties over rows 0..23.
void criterion_8() {
    Timer timer;
    std::vector<DistributionRow> rows(triangle26().rows().begin(),
                                      triangle26().rows().begin() + 24);
    const Triangle t23(std::move(rows), triangle26().meta());
    const auto report_entries = entropy_report(t23).entries;

    bool ok = true;
    std::string detail =
        "s_dim strictly increasing (n=1..23), below the binomial row (n=4..23), within ln(n+1)";
    for (unsigned n = 1; n <= 23 && ok; ++n) {
        if (report_entries[n].dimension_entropy <= report_entries[n - 1].dimension_entropy) {
            ok = false;
            detail = "s_dim not increasing at n=" + std::to_string(n);
        }
    }
    for (unsigned n = 4; n <= 23 && ok; ++n) {
        if (report_entries[n].dimension_entropy >= report_entries[n].pascal_entropy) {
            ok = false;
            detail = "s_dim !< s_pascal at n=" + std::to_string(n);
        }
    }
    for (unsigned n = 0; n <= 23 && ok; ++n) {
        if (report_entries[n].dimension_entropy > std::log(n + 1.0) + 1e-12) {
            ok = false;
            detail = "s_dim above ln(n+1) at n=" + std::to_string(n);
        }
    }
    const double s = timer.seconds();
    report(8, ok && s < 1.0, s, detail);
}

// Criterion 9: the 2^30 build finishes in time, keeps the row-sum invariant,
// and the transition list at N=30 is emitted for inspection.
void criterion_9() {
    Timer timer;
    TempDir dir;
    const auto r = run_cli("triangle --max-exp 30" + dir.flag() + " 2>/dev/null");
    const double build_seconds = timer.seconds();

    bool ok = r.exit_code == 0 && build_seconds < 600.0;
    std::string detail;
    if (!ok) detail = "triangle --max-exp 30 failed or overran";

    if (ok) {
        // last data line is row 2^30; its cells must sum to 2^30
        std::istringstream lines(r.out);
        std::string line, last;
        while (std::getline(lines, line))
            if (!line.empty()) last = line;
        count_t sum = 0;
        std::istringstream cells(last);
        std::string cell;
        std::getline(cells, cell, '\t');  // label
        ok = cell == "2^30";
        while (std::getline(cells, cell, '\t')) sum += std::stoull(cell);
        if (sum != (count_t{1} << 30)) ok = false;
        if (!ok) detail = "row 2^30 sum check failed";
    }

    std::string transitions = "unavailable";
    if (ok) {
        const auto mc = run_cli("maxcol --max-exp 30" + dir.flag() + " 2>/dev/null");
        ok = mc.exit_code == 0 && mc.out.rfind("n\tcolumn\n", 0) == 0;
        if (ok) {
            transitions.clear();
            std::istringstream lines(mc.out);
            std::string line;
            std::getline(lines, line);  // header
            while (std::getline(lines, line)) {
                if (line.empty()) continue;
                if (!transitions.empty()) transitions += ", ";
                const auto tab = line.find('\t');
                transitions += "n=" + line.substr(0, tab) + " -> " + line.substr(tab + 1);
            }
        } else {
            detail = "maxcol --max-exp 30 failed";
        }
    }

    const double s = timer.seconds();
    report(9, ok, s,
           ok ? "2^30 built in " + std::to_string(static_cast<int>(build_seconds)) +
                    "s, row sum exact; max-column moves: " + transitions
              : detail);
}

// Criterion 10: identical bytes across 1, 2 and 8 worker threads.
void criterion_10() {
    Timer timer;
    std::string outputs[3];
    const char* threads[3] = {"1", "2", "8"};
    bool ok = true;
    for (int i = 0; i < 3; ++i) {
        TempDir dir;
        const auto r = run_cli("triangle --max-exp 23 --format tsv --threads " +
                               std::string(threads[i]) + dir.flag() + " 2>/dev/null");
        if (r.exit_code != 0) ok = false;
        outputs[i] = r.out;
    }
    ok = ok && outputs[0] == outputs[1] && outputs[1] == outputs[2] && !outputs[0].empty();
    ok = ok && outputs[0] == read_file(kDataDir / "triangle_n23.tsv");
    const double s = timer.seconds();
    report(10, ok, s, "triangle output is byte-identical across 1, 2 and 8 threads");
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();

    if (g_failures == 0)
        std::printf("all 10 acceptance criteria passed\n");
    else
        std::printf("%d acceptance criteria FAILED\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
