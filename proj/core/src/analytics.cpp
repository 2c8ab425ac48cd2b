#include "omegatri/analytics.hpp"

#include <algorithm>
#include <cmath>

namespace omegatri {

MaxColumn max_column(const DistributionRow& row) {
    const count_t best = *std::max_element(row.counts.begin(), row.counts.end());
    MaxColumn out;
    out.index = static_cast<unsigned>(
        std::find(row.counts.begin(), row.counts.end(), best) - row.counts.begin());
    out.tied = std::count(row.counts.begin(), row.counts.end(), best) > 1;
    return out;
}

namespace {

std::vector<unsigned> argmax_set(const DistributionRow& row) {
    const count_t best = *std::max_element(row.counts.begin(), row.counts.end());
    std::vector<unsigned> out;
    for (unsigned d = 0; d < row.counts.size(); ++d)
        if (row.counts[d] == best) out.push_back(d);
    return out;
}

}  // namespace

std::vector<MaxColumnTransition> max_column_transitions(const Triangle& t) {
    std::vector<MaxColumnTransition> out;
    std::vector<unsigned> prev;
    for (const auto& row : t.rows()) {
        const auto winners = argmax_set(row);
        const unsigned index = winners.front();
        if (!prev.empty() && std::find(prev.begin(), prev.end(), index) == prev.end())
            out.push_back(MaxColumnTransition{row.exponent, index});
        prev = winners;
    }
    return out;
}

DiffSeries column_diffs(const Triangle& t, unsigned column) {
    if (column > t.max_exponent())
        throw usage_error("column_diffs: column " + std::to_string(column) +
                          " out of range, max is " + std::to_string(t.max_exponent()));
    DiffSeries series;
    series.column = column;
    for (unsigned n = column; n <= t.max_exponent(); ++n) {
        const count_t c = t.row(n).counts[column];
        if (c == 0) continue;  // excluded rather than logged
        DiffEntry entry{n, std::log(static_cast<double>(c)), std::nullopt};
        if (!series.entries.empty() && series.entries.back().exponent == n - 1)
            entry.diff = entry.ln_count - series.entries.back().ln_count;
        series.entries.push_back(entry);
    }
    return series;
}

TailStats diff_tail_stats(const DiffSeries& series, std::size_t window) {
    if (window < 2) throw usage_error("diff_tail_stats: window must be at least 2");
    std::vector<double> diffs;
    for (const auto& e : series.entries)
        if (e.diff) diffs.push_back(*e.diff);
    if (diffs.size() < window)
        throw usage_error("diff_tail_stats: series has " + std::to_string(diffs.size()) +
                          " differences, window needs " + std::to_string(window));

    TailStats stats;
    const auto first = diffs.end() - static_cast<std::ptrdiff_t>(window);
    for (auto it = first; it != diffs.end(); ++it) stats.mean += *it;
    stats.mean /= static_cast<double>(window);
    for (auto it = first; it != diffs.end(); ++it)
        stats.stddev += (*it - stats.mean) * (*it - stats.mean);
    stats.stddev = std::sqrt(stats.stddev / static_cast<double>(window));
    return stats;
}

double row_entropy(std::span<const count_t> counts, count_t total) {
    if (total == 0) throw usage_error("row_entropy: total must be positive");
    count_t sum = 0;
    for (count_t c : counts) sum += c;
    if (sum != total)
        throw integrity_error("row_entropy: counts sum to " + std::to_string(sum) +
                              ", expected " + std::to_string(total));
    double s = 0.0;
    for (count_t c : counts) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / static_cast<double>(total);
        s -= p * std::log(p);
    }
    return s;
}

std::vector<count_t> pascal_row(unsigned n) {
    if (n > 60)
        throw usage_error("pascal_row: tallies overflow past n=60; "
                          "use pascal_row_entropy_log for large rows");
    std::vector<count_t> row{1};
    for (unsigned k = 0; k < n; ++k) {
        std::vector<count_t> next(row.size() + 1, 0);
        for (std::size_t i = 0; i < row.size(); ++i) {
            next[i] += row[i];
            next[i + 1] += row[i];
        }
        row = std::move(next);
    }
    return row;
}

double pascal_row_entropy_exact(unsigned n) {
    return row_entropy(pascal_row(n), count_t{1} << n);
}

double pascal_row_entropy_log(unsigned n) {
    const double ln2 = std::log(2.0);
    double s = 0.0;
    for (unsigned i = 0; i <= n; ++i) {
        const double ln_p = std::lgamma(n + 1.0) - std::lgamma(i + 1.0) -
                            std::lgamma(n - i + 1.0) - n * ln2;
        s -= std::exp(ln_p) * ln_p;
    }
    return s;
}

EntropyReport entropy_report(const Triangle& t) {
    EntropyReport report;
    for (const auto& row : t.rows()) {
        const unsigned n = row.exponent;
        const double s_dim = row_entropy(row.counts, count_t{1} << n);
        const double s_pascal = n <= 60 ? pascal_row_entropy_exact(n) : pascal_row_entropy_log(n);
        report.entries.push_back(EntropyEntry{n, s_dim, s_pascal});
    }
    return report;
}

}  // namespace omegatri
