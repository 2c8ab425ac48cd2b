// omegatri: counts integers by number of prime factors (with multiplicity)
// over ranges [1, 2^n] and reports the derived analyses.
//
// Exit codes: 0 success, 2 usage error, 3 integrity failure, 4 resource
// exhaustion. Data goes to stdout, diagnostics to stderr.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "omegatri/analytics.hpp"
#include "omegatri/oracle.hpp"
#include "omegatri/sieve.hpp"
#include "omegatri/tail.hpp"
#include "omegatri/triangle.hpp"
#include "omegatri/version.hpp"

namespace {

using namespace omegatri;

struct CliConfig {
    unsigned max_exponent = 23;
    std::string format = "tsv";
    std::string cache_dir;  // empty: OMEGA_TRIANGLE_CACHE or the user cache dir
    std::uint64_t segment_size = std::uint64_t{1} << 22;
    std::string threads = "auto";
};

void add_common_options(CLI::App* cmd, CliConfig& cfg) {
    cmd->add_option("--max-exp", cfg.max_exponent, "Largest space exponent N (rows 0..N)")
        ->capture_default_str();
    cmd->add_option("--format", cfg.format, "Output format: tsv, csv or json")
        ->capture_default_str();
    cmd->add_option("--cache-dir", cfg.cache_dir,
                    "Triangle cache directory (overrides OMEGA_TRIANGLE_CACHE)");
    cmd->add_option("--segment-size", cfg.segment_size, "Integers per sieve segment")
        ->capture_default_str();
    cmd->add_option("--threads", cfg.threads, "Worker threads, or 'auto'")
        ->capture_default_str();
}

struct RunConfig {
    unsigned max_exponent;
    Format format;
    SieveOptions sieve;
    std::optional<std::filesystem::path> cache_dir;
};

RunConfig resolve(const CliConfig& cfg) {
    RunConfig run;
    run.max_exponent = cfg.max_exponent;
    run.format = parse_format(cfg.format);

    if (cfg.segment_size < 1024)
        throw usage_error("--segment-size must be at least 1024");
    run.sieve.segment_size = cfg.segment_size;

    if (cfg.threads == "auto") {
        run.sieve.threads = 0;
    } else {
        try {
            const unsigned long t = std::stoul(cfg.threads);
            if (t == 0) throw usage_error("--threads must be at least 1 (or 'auto')");
            run.sieve.threads = static_cast<unsigned>(t);
        } catch (const usage_error&) {
            throw;
        } catch (...) {
            throw usage_error("--threads expects a positive integer or 'auto'");
        }
    }

    if (!cfg.cache_dir.empty())
        run.cache_dir = std::filesystem::path(cfg.cache_dir);
    else
        run.cache_dir = default_cache_dir();
    return run;
}

Triangle obtain_triangle(const RunConfig& run) {
    bool cached = false;
    Triangle t = load_or_build_triangle(run.max_exponent, run.sieve, run.cache_dir, &cached);
    if (cached) std::cerr << "loaded cached triangle for n=" << run.max_exponent << "\n";
    return t;
}

char separator(Format f) { return f == Format::csv ? ',' : '\t'; }

std::string fixed6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

// ---- triangle ----

int cmd_triangle(const RunConfig& run) {
    std::cout << export_triangle(obtain_triangle(run), run.format);
    return 0;
}

// ---- tail ----

int cmd_tail(const RunConfig& run, unsigned offset, bool with_witnesses) {
    const Triangle t = obtain_triangle(run);
    const TailSeries series = tail_series(t, offset);
    const bool converged = series.convergence_exponent <= t.max_exponent();

    if (!converged)
        std::cerr << "note: diagonal " << offset << " reaches its limit at 2^"
                  << series.convergence_exponent << ", beyond the computed rows\n";

    if (run.format == Format::json) {
        nlohmann::ordered_json j;
        j["schema"] = 1;
        j["offset"] = series.offset;
        j["limit"] = series.limit;
        j["convergence_exponent"] = series.convergence_exponent;
        j["converged_within_rows"] = converged;
        auto& values = j["values"] = nlohmann::ordered_json::array();
        for (const auto& [n, count] : series.values)
            values.push_back({{"n", n}, {"count", count}});
        if (with_witnesses) {
            auto& w = j["witnesses"] = nlohmann::ordered_json::array();
            for (const auto& wit : series.witnesses)
                w.push_back({{"dimension", wit.dimension}, {"odd_part", wit.odd_part}});
        }
        std::cout << j.dump(2) << "\n";
        return 0;
    }

    const char sep = separator(run.format);
    std::cout << "offset" << sep << series.offset << "\n"
              << "limit" << sep << series.limit << "\n"
              << "convergence_exponent" << sep << series.convergence_exponent << "\n"
              << "converged_within_rows" << sep << (converged ? "true" : "false") << "\n";
    for (const auto& [n, count] : series.values)
        std::cout << "value" << sep << n << sep << count << "\n";
    if (with_witnesses)
        for (const auto& wit : series.witnesses)
            std::cout << "witness" << sep << wit.dimension << sep << wit.odd_part << "\n";
    return 0;
}

// ---- entropy ----

int cmd_entropy(const RunConfig& run) {
    const Triangle t = obtain_triangle(run);
    const EntropyReport report = entropy_report(t);

    if (run.format == Format::json) {
        nlohmann::ordered_json j;
        j["schema"] = 1;
        auto& entries = j["entries"] = nlohmann::ordered_json::array();
        for (const auto& e : report.entries)
            entries.push_back({{"n", e.exponent},
                               {"s_dim", e.dimension_entropy},
                               {"s_pascal", e.pascal_entropy}});
        std::cout << j.dump(2) << "\n";
        return 0;
    }

    const char sep = separator(run.format);
    std::cout << "n" << sep << "s_dim" << sep << "s_pascal\n";
    for (const auto& e : report.entries)
        std::cout << e.exponent << sep << fixed6(e.dimension_entropy) << sep
                  << fixed6(e.pascal_entropy) << "\n";
    return 0;
}

// ---- diffs ----

int cmd_diffs(const RunConfig& run, unsigned column, std::optional<unsigned> window) {
    const Triangle t = obtain_triangle(run);
    const DiffSeries series = column_diffs(t, column);
    std::optional<TailStats> stats;
    if (window) stats = diff_tail_stats(series, *window);

    if (run.format == Format::json) {
        nlohmann::ordered_json j;
        j["schema"] = 1;
        j["column"] = series.column;
        auto& entries = j["entries"] = nlohmann::ordered_json::array();
        for (const auto& e : series.entries) {
            nlohmann::ordered_json item{{"n", e.exponent}, {"ln", e.ln_count}};
            if (e.diff) item["diff"] = *e.diff;
            entries.push_back(item);
        }
        if (stats)
            j["tail_stats"] = {{"window", *window}, {"mean", stats->mean},
                               {"stddev", stats->stddev}};
        std::cout << j.dump(2) << "\n";
        return 0;
    }

    const char sep = separator(run.format);
    std::cout << "n" << sep << "ln" << sep << "diff\n";
    for (const auto& e : series.entries) {
        std::cout << e.exponent << sep << fixed6(e.ln_count) << sep;
        if (e.diff) std::cout << fixed6(*e.diff);
        std::cout << "\n";
    }
    if (stats)
        std::cout << "tail_mean" << sep << fixed6(stats->mean) << "\n"
                  << "tail_stddev" << sep << fixed6(stats->stddev) << "\n";
    return 0;
}

// ---- maxcol ----

int cmd_maxcol(const RunConfig& run) {
    const Triangle t = obtain_triangle(run);
    const auto transitions = max_column_transitions(t);

    if (run.format == Format::json) {
        nlohmann::ordered_json j;
        j["schema"] = 1;
        auto& items = j["transitions"] = nlohmann::ordered_json::array();
        for (const auto& tr : transitions)
            items.push_back({{"n", tr.exponent}, {"column", tr.column}});
        std::cout << j.dump(2) << "\n";
        return 0;
    }

    const char sep = separator(run.format);
    std::cout << "n" << sep << "column\n";
    for (const auto& tr : transitions)
        std::cout << tr.exponent << sep << tr.column << "\n";
    return 0;
}

// ---- verify ----

int cmd_verify(const RunConfig& run) {
    bool all_ok = true;
    const auto check = [&](const std::string& name, bool ok, const std::string& detail = "") {
        if (ok) {
            std::cout << "ok " << name << "\n";
        } else {
            std::cout << "FAIL " << name << (detail.empty() ? "" : ": " + detail) << "\n";
            all_ok = false;
        }
    };

    const Triangle t = obtain_triangle(run);

    {
        bool ok = true;
        std::string detail;
        for (const auto& row : t.rows()) {
            if (row.sum() != (count_t{1} << row.exponent)) {
                ok = false;
                detail = "row 2^" + std::to_string(row.exponent);
                break;
            }
        }
        check("row sums equal 2^n for n <= " + std::to_string(t.max_exponent()), ok, detail);
    }

    {
        bool ok = true;
        std::string detail;
        const unsigned limit = std::min(t.max_exponent(), 16u);
        for (unsigned n = 0; n <= limit; ++n) {
            const auto sieved = count_dimensions(n, run.sieve);
            const auto brute = oracle::row_by_bruteforce(n);
            if (sieved.counts != brute.counts || t.row(n).counts != brute.counts) {
                ok = false;
                detail = "row 2^" + std::to_string(n);
                break;
            }
        }
        check("sieve matches trial division for n <= " + std::to_string(limit), ok, detail);
    }

    if (t.max_exponent() >= 1) {
        bool ok = true;
        std::string detail;
        const unsigned x_top = std::min(8u, t.max_exponent() - 1);
        for (unsigned x = 0; x <= x_top && ok; ++x) {
            const auto limit = tail_limit(x);
            const unsigned n_star = x + std::max(limit.max_dimension, 1u);
            count_t prev = 0;
            for (const auto& [n, value] : diagonal_series(t, x)) {
                const bool good = value >= prev && value <= limit.limit &&
                                  (n < n_star || value == limit.limit);
                if (!good) {
                    ok = false;
                    detail = "offset " + std::to_string(x) + " at 2^" + std::to_string(n);
                    break;
                }
                prev = value;
            }
        }
        check("diagonals climb to their enumerated limits for x <= " + std::to_string(x_top),
              ok, detail);
    }

    return all_ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dimension-distribution triangle toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(omegatri::kToolVersion));

    CliConfig cfg;
    unsigned offset = 0;
    bool with_witnesses = false;
    std::optional<unsigned> window;

    auto* tri = app.add_subcommand("triangle", "Build and print the triangle");
    add_common_options(tri, cfg);

    auto* tail = app.add_subcommand("tail", "Diagonal series, its limit and witnesses");
    add_common_options(tail, cfg);
    tail->add_option("--x", offset, "Diagonal offset (column n - x)")->required();
    tail->add_flag("--witnesses", with_witnesses, "List the odd parts behind the limit");

    auto* entropy = app.add_subcommand("entropy", "Row entropies vs binomial rows");
    add_common_options(entropy, cfg);

    auto* diffs = app.add_subcommand("diffs", "Log-counts of a column and their differences");
    add_common_options(diffs, cfg);
    diffs->add_option("--x", offset, "Column index")->required();
    unsigned window_arg = 0;
    auto* window_opt = diffs->add_option("--window", window_arg,
                                         "Also report mean/stddev of the last W differences");

    auto* maxcol = app.add_subcommand("maxcol", "Exponents where the maximum column moves");
    add_common_options(maxcol, cfg);

    auto* verify = app.add_subcommand("verify", "Cross-check sieve, oracle and tail limits");
    add_common_options(verify, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (window_opt->count() > 0) window = window_arg;

    try {
        const RunConfig run = resolve(cfg);
        if (tri->parsed()) return cmd_triangle(run);
        if (tail->parsed()) return cmd_tail(run, offset, with_witnesses);
        if (entropy->parsed()) return cmd_entropy(run);
        if (diffs->parsed()) return cmd_diffs(run, offset, window);
        if (maxcol->parsed()) return cmd_maxcol(run);
        if (verify->parsed()) return cmd_verify(run);
        std::cerr << "error: no subcommand\n";
        return 2;
    } catch (const omegatri::usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const omegatri::integrity_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const omegatri::resource_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::bad_alloc&) {
        std::cerr << "error: out of memory\n";
        return 4;
    }
}
