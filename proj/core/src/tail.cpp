#include "omegatri/tail.hpp"

#include <algorithm>

namespace omegatri {

namespace {

// For offset 24 the deepest witness is 3^41, which no longer fits 64 bits.
constexpr unsigned kMaxOffset = 23;

bool power_fits(std::uint64_t base, unsigned exp, std::uint64_t cap) {
    std::uint64_t v = 1;
    while (exp--) {
        if (v > cap / base) return false;
        v *= base;
    }
    return true;
}

// Odd q with exactly `remaining` more prime factors, all >= odd_primes[from],
// such that acc * q <= bound. Factors are taken non-decreasing, so every
// multiset is produced once.
void generate_odd_parts(const std::vector<std::uint64_t>& odd_primes, unsigned remaining,
                        std::size_t from, std::uint64_t acc, std::uint64_t bound,
                        std::vector<std::uint64_t>& out) {
    if (remaining == 0) {
        out.push_back(acc);
        return;
    }
    for (std::size_t i = from; i < odd_primes.size(); ++i) {
        const std::uint64_t p = odd_primes[i];
        if (!power_fits(p, remaining, bound / acc)) break;
        generate_odd_parts(odd_primes, remaining - 1, i, acc * p, bound, out);
    }
}

}  // namespace

TailLimit tail_limit(unsigned offset) {
    if (offset > kMaxOffset)
        throw usage_error("tail_limit: offsets above " + std::to_string(kMaxOffset) +
                          " overflow 64-bit odd parts");

    // Primes up to 2^(offset+1) suffice: a j-factor odd part below 2^(offset+j)
    // has largest factor at most 2^(offset+j) / 3^(j-1) <= 2^(offset+1).
    std::vector<std::uint64_t> odd_primes;
    {
        const auto primes = base_primes(std::uint64_t{1} << (offset + 1));
        for (std::uint64_t p : primes.values)
            if (p != 2) odd_primes.push_back(p);
    }

    TailLimit result;
    for (unsigned j = 0;; ++j) {
        const std::uint64_t bound = std::uint64_t{1} << (offset + j);
        if (!power_fits(3, j, bound)) break;  // 3^j is the smallest candidate

        std::vector<std::uint64_t> parts;
        generate_odd_parts(odd_primes, j, 0, 1, bound, parts);
        std::sort(parts.begin(), parts.end());
        for (std::uint64_t q : parts) result.witnesses.push_back(Witness{j, q});
        result.max_dimension = j;  // 3^j itself always qualifies, so j has a witness
    }
    result.limit = result.witnesses.size();
    return result;
}

unsigned convergence_exponent(unsigned offset) {
    const unsigned j_max = tail_limit(offset).max_dimension;
    // The series is defined from n = offset + 1, which only binds at offset 0.
    return offset + std::max(j_max, 1u);
}

std::vector<std::pair<unsigned, count_t>> diagonal_series(const Triangle& t,
                                                          unsigned offset) {
    if (t.max_exponent() < 1 || offset > t.max_exponent() - 1)
        throw usage_error("diagonal_series: offset " + std::to_string(offset) +
                          " out of range for a triangle of " +
                          std::to_string(t.max_exponent()) + " rows");
    std::vector<std::pair<unsigned, count_t>> values;
    for (unsigned n = offset + 1; n <= t.max_exponent(); ++n)
        values.emplace_back(n, t.row(n).counts[n - offset]);
    return values;
}

TailSeries tail_series(const Triangle& t, unsigned offset) {
    TailSeries series;
    series.offset = offset;
    series.values = diagonal_series(t, offset);
    auto limit = tail_limit(offset);
    series.limit = limit.limit;
    series.convergence_exponent = offset + std::max(limit.max_dimension, 1u);
    series.witnesses = std::move(limit.witnesses);
    return series;
}

}  // namespace omegatri
