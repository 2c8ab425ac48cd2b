#include "omegatri/triangle.hpp"

#include <cstdlib>
#include <ctime>
#include <fstream>
#include <new>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "omegatri/version.hpp"

namespace omegatri {

namespace {

constexpr unsigned kMaxExponentHard = 62;  // row sums are 64-bit

std::string row_name(unsigned n) { return "2^" + std::to_string(n); }

std::string build_timestamp() {
    std::time_t t = 0;
    if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
        t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
    } else {
        t = std::time(nullptr);
    }
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void validate_rows(const std::vector<DistributionRow>& rows) {
    if (rows.empty()) throw integrity_error("triangle: no rows");
    if (rows.size() - 1 > kMaxExponentHard)
        throw integrity_error("triangle: exponent above " + std::to_string(kMaxExponentHard));

    for (unsigned n = 0; n < rows.size(); ++n) {
        const auto& row = rows[n];
        const std::string name = "row " + row_name(n);
        if (row.exponent != n)
            throw integrity_error(name + ": exponent field is " + std::to_string(row.exponent));
        if (row.counts.size() != static_cast<std::size_t>(n) + 1)
            throw integrity_error(name + ": has " + std::to_string(row.counts.size()) +
                                  " cells, expected " + std::to_string(n + 1));
        const count_t expected = count_t{1} << n;
        if (row.sum() != expected)
            throw integrity_error(name + ": counts sum to " + std::to_string(row.sum()) +
                                  ", expected " + std::to_string(expected));
        if (row.counts[0] != 1)
            throw integrity_error(name + ": first cell is " + std::to_string(row.counts[0]));
        if (n >= 1 && row.counts[n] != 1)
            throw integrity_error(name + ": last cell is " + std::to_string(row.counts[n]));
        if (n >= 1) {
            const auto& prev = rows[n - 1].counts;
            for (std::size_t d = 0; d < prev.size(); ++d)
                if (row.counts[d] < prev[d])
                    throw integrity_error(name + ": column " + std::to_string(d) +
                                          " shrank versus the previous row");
        }
    }
}

}  // namespace

count_t DistributionRow::sum() const {
    return std::accumulate(counts.begin(), counts.end(), count_t{0});
}

DistributionRow count_dimensions(unsigned exponent, const SieveOptions& options) {
    if (exponent > kMaxExponentHard)
        throw usage_error("count_dimensions: exponent above " + std::to_string(kMaxExponentHard));
    const std::uint64_t hi = std::uint64_t{1} << exponent;
    BasePrimes primes;
    if (isqrt(hi) >= 2) primes = base_primes(isqrt(hi));
    return DistributionRow{exponent, dimension_histogram(1, hi, primes, options)};
}

Triangle::Triangle(std::vector<DistributionRow> rows, TriangleMeta meta)
    : rows_(std::move(rows)), meta_(std::move(meta)) {
    validate_rows(rows_);
}

const DistributionRow& Triangle::row(unsigned n) const {
    if (n >= rows_.size())
        throw usage_error("triangle: no row " + row_name(n) + ", max is " +
                          row_name(max_exponent()));
    return rows_[n];
}

Triangle build_triangle(unsigned max_exponent, const SieveOptions& options) {
    if (max_exponent > kMaxExponentHard)
        throw usage_error("build_triangle: exponent above " + std::to_string(kMaxExponentHard));

    BasePrimes primes;
    const std::uint64_t top = std::uint64_t{1} << max_exponent;
    if (isqrt(top) >= 2) primes = base_primes(isqrt(top));

    std::vector<DistributionRow> rows;
    rows.reserve(max_exponent + 1);
    rows.push_back(DistributionRow{0, {1}});

    for (unsigned n = 1; n <= max_exponent; ++n) {
        const std::uint64_t lo = (std::uint64_t{1} << (n - 1)) + 1;
        const std::uint64_t hi = std::uint64_t{1} << n;
        try {
            std::vector<count_t> counts = rows.back().counts;
            counts.resize(n + 1, 0);
            const auto part = dimension_histogram(lo, hi, primes, options);
            for (std::size_t d = 0; d < part.size(); ++d) counts[d] += part[d];
            rows.push_back(DistributionRow{n, std::move(counts)});
        } catch (const std::bad_alloc&) {
            throw resource_error("build_triangle: out of memory at row " + row_name(n));
        }
    }

    TriangleMeta meta{std::string(kToolVersion), build_timestamp(), options.segment_size};
    return Triangle(std::move(rows), std::move(meta));
}

Format parse_format(std::string_view name) {
    if (name == "tsv") return Format::tsv;
    if (name == "csv") return Format::csv;
    if (name == "json") return Format::json;
    throw usage_error("unknown format '" + std::string(name) + "', expected tsv, csv or json");
}

namespace {

std::string export_delimited(const Triangle& t, char sep) {
    std::ostringstream out;
    for (unsigned d = 0; d <= t.max_exponent(); ++d) out << sep << d;
    out << '\n';
    for (const auto& row : t.rows()) {
        out << row_name(row.exponent);
        for (count_t c : row.counts) out << sep << c;
        out << '\n';
    }
    return std::move(out).str();
}

std::string export_json(const Triangle& t) {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["max_exponent"] = t.max_exponent();
    j["meta"] = {{"tool_version", t.meta().tool_version},
                 {"built_at", t.meta().built_at},
                 {"segment_size", t.meta().segment_size}};
    auto& rows = j["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : t.rows()) rows.push_back(row.counts);
    return j.dump(2) + "\n";
}

std::vector<std::string> split(std::string_view line, char sep) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            fields.emplace_back(line.substr(start));
            return fields;
        }
        fields.emplace_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

count_t parse_count(const std::string& field, std::size_t line_no) {
    if (field.empty() || field.find_first_not_of("0123456789") != std::string::npos)
        throw parse_error("expected an unsigned integer, got '" + field + "'", line_no);
    errno = 0;
    const count_t value = std::strtoull(field.c_str(), nullptr, 10);
    if (errno != 0) throw parse_error("count out of range: '" + field + "'", line_no);
    return value;
}

Triangle import_delimited(std::string_view text, char sep) {
    std::vector<std::string_view> lines;
    for (std::size_t start = 0; start < text.size();) {
        std::size_t pos = text.find('\n', start);
        if (pos == std::string_view::npos) pos = text.size();
        lines.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    if (lines.size() < 2) throw parse_error("expected a header and at least one row", 1);

    const auto header = split(lines[0], sep);
    if (header.empty() || !header[0].empty())
        throw parse_error("header must start with an empty label cell", 1);
    for (std::size_t d = 1; d < header.size(); ++d)
        if (header[d] != std::to_string(d - 1))
            throw parse_error("header cell " + std::to_string(d) + " is '" + header[d] +
                                  "', expected '" + std::to_string(d - 1) + "'", 1);

    std::vector<DistributionRow> rows;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        const unsigned n = static_cast<unsigned>(i - 1);
        auto fields = split(lines[i], sep);
        // Hand-authored files may pad ragged rows with trailing empties.
        while (fields.size() > n + 2 && fields.back().empty()) fields.pop_back();
        if (fields.empty() || fields[0] != row_name(n))
            throw parse_error("row label '" + (fields.empty() ? "" : fields[0]) +
                                  "', expected '" + row_name(n) + "'", line_no);
        if (fields.size() != static_cast<std::size_t>(n) + 2)
            throw parse_error("row " + row_name(n) + " has " +
                                  std::to_string(fields.size() - 1) + " values, expected " +
                                  std::to_string(n + 1), line_no);
        DistributionRow row{n, {}};
        row.counts.reserve(n + 1);
        for (std::size_t f = 1; f < fields.size(); ++f)
            row.counts.push_back(parse_count(fields[f], line_no));
        rows.push_back(std::move(row));
    }

    return Triangle(std::move(rows), TriangleMeta{std::string(kToolVersion), "", 0});
}

Triangle import_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(std::string("invalid json: ") + e.what(), 1);
    }
    try {
        if (j.at("schema").get<int>() != 1)
            throw integrity_error("unsupported schema " + j.at("schema").dump());
        const auto max_exponent = j.at("max_exponent").get<unsigned>();
        const auto& jrows = j.at("rows");
        if (!jrows.is_array() || jrows.size() != static_cast<std::size_t>(max_exponent) + 1)
            throw integrity_error("rows array does not match max_exponent " +
                                  std::to_string(max_exponent));
        std::vector<DistributionRow> rows;
        rows.reserve(jrows.size());
        for (unsigned n = 0; n < jrows.size(); ++n)
            rows.push_back(DistributionRow{n, jrows[n].get<std::vector<count_t>>()});

        TriangleMeta meta;
        if (j.contains("meta")) {
            const auto& m = j["meta"];
            meta.tool_version = m.value("tool_version", "");
            meta.built_at = m.value("built_at", "");
            meta.segment_size = m.value("segment_size", std::uint64_t{0});
        }
        return Triangle(std::move(rows), std::move(meta));
    } catch (const nlohmann::json::exception& e) {
        throw integrity_error(std::string("malformed triangle json: ") + e.what());
    }
}

}  // namespace

std::string export_triangle(const Triangle& t, Format format) {
    switch (format) {
        case Format::tsv: return export_delimited(t, '\t');
        case Format::csv: return export_delimited(t, ',');
        case Format::json: return export_json(t);
    }
    throw usage_error("unknown format");
}

Triangle import_triangle(std::string_view text, Format format) {
    switch (format) {
        case Format::tsv: return import_delimited(text, '\t');
        case Format::csv: return import_delimited(text, ',');
        case Format::json: return import_json(text);
    }
    throw usage_error("unknown format");
}

std::optional<std::filesystem::path> default_cache_dir() {
    if (const char* dir = std::getenv("OMEGA_TRIANGLE_CACHE"); dir && *dir)
        return std::filesystem::path(dir);
    if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg)
        return std::filesystem::path(xdg) / "omegatri";
    if (const char* home = std::getenv("HOME"); home && *home)
        return std::filesystem::path(home) / ".cache" / "omegatri";
    return std::nullopt;
}

std::filesystem::path triangle_cache_file(const std::filesystem::path& dir,
                                          unsigned max_exponent) {
    return dir / ("triangle-n" + std::to_string(max_exponent) + ".json");
}

Triangle load_or_build_triangle(unsigned max_exponent, const SieveOptions& options,
                                const std::optional<std::filesystem::path>& cache_dir,
                                bool* loaded_from_cache) {
    if (loaded_from_cache) *loaded_from_cache = false;
    if (!cache_dir) return build_triangle(max_exponent, options);

    const auto file = triangle_cache_file(*cache_dir, max_exponent);
    std::error_code ec;
    if (std::filesystem::exists(file, ec)) {
        std::ifstream in(file);
        std::stringstream buffer;
        buffer << in.rdbuf();
        if (in.bad()) throw resource_error("cannot read cache file " + file.string());

        Triangle cached = import_triangle(buffer.str(), Format::json);
        if (cached.max_exponent() != max_exponent)
            throw integrity_error("cache file " + file.string() + " holds rows up to " +
                                  row_name(cached.max_exponent()) + ", expected " +
                                  row_name(max_exponent));
        if (cached.meta().tool_version == kToolVersion) {
            if (loaded_from_cache) *loaded_from_cache = true;
            return cached;
        }
        // Stale tool version: a sieve fix must invalidate cached counts.
    }

    Triangle built = build_triangle(max_exponent, options);

    // Best-effort store; an unwritable cache never fails the build.
    try {
        std::filesystem::create_directories(*cache_dir);
        const auto tmp = file.string() + ".tmp";
        {
            std::ofstream out(tmp, std::ios::trunc);
            out << export_triangle(built, Format::json);
            if (!out) throw resource_error("short write");
        }
        std::filesystem::rename(tmp, file);
    } catch (...) {
    }

    return built;
}

}  // namespace omegatri
