#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "omegatri/triangle.hpp"

namespace omegatri {

struct MaxColumn {
    unsigned index = 0;  // smallest dimension index achieving the maximum
    bool tied = false;   // true when more than one index attains it
};

MaxColumn max_column(const DistributionRow& row);

struct MaxColumnTransition {
    unsigned exponent;
    unsigned column;

    bool operator==(const MaxColumnTransition&) const = default;
};

/// Exponents where the maximum column moves. Adopting a column that was
/// already tied for the previous row's maximum does not count as a move.
std::vector<MaxColumnTransition> max_column_transitions(const Triangle& t);

struct DiffEntry {
    unsigned exponent;
    double ln_count;             // natural log, full double precision
    std::optional<double> diff;  // vs the previous exponent; absent for first
};

struct DiffSeries {
    unsigned column = 0;
    std::vector<DiffEntry> entries;
};

/// Natural logs of one column down the triangle with neighbor differences.
/// Zero-count cells would be excluded rather than logged; triangle rows have
/// none, so entries run over n = column .. max_exponent.
DiffSeries column_diffs(const Triangle& t, unsigned column);

struct TailStats {
    double mean = 0.0;
    double stddev = 0.0;  // population form over the window
};

/// Mean and standard deviation of the last `window` differences. Descriptive
/// only; no convergence claim is made.
TailStats diff_tail_stats(const DiffSeries& series, std::size_t window);

/// -sum (c/total) ln (c/total) over nonzero counts; zero counts contribute 0.
/// Throws integrity_error when the counts do not sum to total.
double row_entropy(std::span<const count_t> counts, count_t total);

/// Binomial coefficients C(n, 0..n) as exact 64-bit tallies; n <= 60.
std::vector<count_t> pascal_row(unsigned n);

/// Entropy of the binomial row via exact tallies. n <= 60.
double pascal_row_entropy_exact(unsigned n);

/// Entropy of the binomial row via log-gamma; works for any n and agrees
/// with the exact route to ~1e-13 where both exist.
double pascal_row_entropy_log(unsigned n);

struct EntropyEntry {
    unsigned exponent;
    double dimension_entropy;  // triangle row, P_i = counts[i] / 2^n
    double pascal_entropy;     // binomial row, P_i = C(n,i) / 2^n
};

struct EntropyReport {
    std::vector<EntropyEntry> entries;
};

/// Per-exponent entropies of the triangle rows and the matching binomial
/// rows; switches to the log-gamma route past n = 60.
EntropyReport entropy_report(const Triangle& t);

}  // namespace omegatri
