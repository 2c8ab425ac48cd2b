#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "omegatri/sieve.hpp"

namespace omegatri {

/// Counts of each dimension within one 2^n space: counts[d] is the number of
/// integers in [1, 2^n] with exactly d prime factors (with multiplicity).
struct DistributionRow {
    unsigned exponent = 0;
    std::vector<count_t> counts;  // length exponent + 1, sums to 2^exponent

    count_t sum() const;

    bool operator==(const DistributionRow&) const = default;
};

/// Histogram of omega over [1, 2^exponent], segment-partitioned and merged.
DistributionRow count_dimensions(unsigned exponent, const SieveOptions& options = {});

struct TriangleMeta {
    std::string tool_version;
    std::string built_at;  // ISO-8601 UTC; honors SOURCE_DATE_EPOCH
    std::uint64_t segment_size = 0;

    bool operator==(const TriangleMeta&) const = default;
};

/// Rows 0..N of the dimension-distribution triangle. Immutable once built;
/// every accessor is safe for concurrent use.
class Triangle {
public:
    /// Validates all row invariants and cross-row monotonicity; throws
    /// integrity_error naming the offending row.
    Triangle(std::vector<DistributionRow> rows, TriangleMeta meta);

    unsigned max_exponent() const { return static_cast<unsigned>(rows_.size() - 1); }
    const DistributionRow& row(unsigned n) const;
    const std::vector<DistributionRow>& rows() const { return rows_; }
    const TriangleMeta& meta() const { return meta_; }

    /// Compares counted data only; build metadata is not part of identity.
    friend bool operator==(const Triangle& a, const Triangle& b) { return a.rows_ == b.rows_; }

private:
    std::vector<DistributionRow> rows_;
    TriangleMeta meta_;
};

/// Builds rows 0..max_exponent incrementally: row n is row n-1 plus the sieve
/// of (2^(n-1), 2^n]; no part of the range is sieved twice.
Triangle build_triangle(unsigned max_exponent, const SieveOptions& options = {});

enum class Format { tsv, csv, json };

/// Maps "tsv" / "csv" / "json" to Format; anything else is a usage_error.
Format parse_format(std::string_view name);

/// tsv/csv: a header of dimension indices, then one left-aligned ragged row
/// per exponent labeled "2^n". json: rows as arrays plus build metadata.
/// All counts are plain unsigned decimal.
std::string export_triangle(const Triangle& t, Format format);

/// Inverse of export_triangle; re-validates every invariant on load and
/// rejects violations rather than repairing them.
Triangle import_triangle(std::string_view text, Format format);

/// Cache directory resolution: OMEGA_TRIANGLE_CACHE if set, otherwise
/// $XDG_CACHE_HOME/omegatri or $HOME/.cache/omegatri; nullopt when no
/// candidate exists (caching disabled).
std::optional<std::filesystem::path> default_cache_dir();

std::filesystem::path triangle_cache_file(const std::filesystem::path& dir,
                                          unsigned max_exponent);

/// Loads the cached triangle for this exponent if present and current, else
/// builds and stores it. A cache written by an older tool version is rebuilt;
/// a corrupt cache propagates as integrity/parse error. Storing is
/// best-effort: an unwritable directory does not fail the build.
Triangle load_or_build_triangle(unsigned max_exponent, const SieveOptions& options,
                                const std::optional<std::filesystem::path>& cache_dir,
                                bool* loaded_from_cache = nullptr);

}  // namespace omegatri
