#include "omegatri/sieve.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <mutex>
#include <numeric>
#include <thread>

namespace omegatri {

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

BasePrimes base_primes(std::uint64_t limit) {
    if (limit < 2) throw usage_error("base_primes: limit must be at least 2");

    std::vector<char> composite(limit + 1, 0);
    for (std::uint64_t i = 2; i * i <= limit; ++i)
        if (!composite[i])
            for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;

    BasePrimes out;
    out.limit = limit;
    for (std::uint64_t i = 2; i <= limit; ++i)
        if (!composite[i]) out.values.push_back(i);
    return out;
}

count_t Segment::total() const {
    return std::accumulate(counts.begin(), counts.end(), count_t{0});
}

std::vector<std::uint8_t> omega_values(std::uint64_t lo, std::uint64_t hi,
                                       const BasePrimes& primes) {
    if (lo < 1 || lo > hi) throw usage_error("omega_values: need 1 <= lo <= hi");
    const std::uint64_t root = isqrt(hi);
    if (primes.limit < root)
        throw usage_error("omega_values: base primes cover " +
                          std::to_string(primes.limit) + ", need " + std::to_string(root));

    const std::size_t len = static_cast<std::size_t>(hi - lo + 1);
    std::vector<std::uint64_t> remaining(len);
    std::iota(remaining.begin(), remaining.end(), lo);
    std::vector<std::uint8_t> omega(len, 0);

    // Factors of two in one pass: countr_zero(m) is the exact multiplicity.
    for (std::uint64_t m = lo + (lo & 1); m <= hi; m += 2) {
        const std::size_t i = static_cast<std::size_t>(m - lo);
        const int tz = std::countr_zero(m);
        omega[i] = static_cast<std::uint8_t>(tz);
        remaining[i] >>= tz;
    }

    // Odd primes by ascending prime powers: every multiple of p^k receives
    // one count and one division, which totals exactly the multiplicity.
    for (std::uint64_t p : primes.values) {
        if (p == 2) continue;
        if (p > root) break;
        for (std::uint64_t q = p;; q *= p) {
            for (std::uint64_t m = ((lo + q - 1) / q) * q; m <= hi; m += q) {
                const std::size_t i = static_cast<std::size_t>(m - lo);
                ++omega[i];
                remaining[i] /= p;
            }
            if (q > hi / p) break;
        }
    }

    // Whatever survived is 1 or a single prime above sqrt(hi).
    for (std::size_t i = 0; i < len; ++i)
        if (remaining[i] > 1) ++omega[i];

    return omega;
}

Segment sieve_segment(std::uint64_t lo, std::uint64_t hi, const BasePrimes& primes) {
    const auto omega = omega_values(lo, hi, primes);

    Segment seg;
    seg.lo = lo;
    seg.hi = hi;
    seg.counts.assign(std::bit_width(hi), 0);
    for (std::uint8_t d : omega) {
        // Dimensions are bounded by log2(hi); anything else is a sieve bug.
        if (d >= seg.counts.size())
            throw integrity_error("sieve_segment: dimension " + std::to_string(d) +
                                  " exceeds log2(" + std::to_string(hi) + ")");
        ++seg.counts[d];
    }
    return seg;
}

namespace {

std::vector<count_t>& fold_counts(std::vector<count_t>& into, const std::vector<count_t>& part) {
    if (into.size() < part.size()) into.resize(part.size(), 0);
    for (std::size_t d = 0; d < part.size(); ++d) into[d] += part[d];
    return into;
}

}  // namespace

std::vector<count_t> dimension_histogram(std::uint64_t lo, std::uint64_t hi,
                                         const BasePrimes& primes,
                                         const SieveOptions& options) {
    if (lo < 1 || lo > hi) throw usage_error("dimension_histogram: need 1 <= lo <= hi");
    if (options.segment_size == 0)
        throw usage_error("dimension_histogram: segment_size must be positive");

    const std::uint64_t seg_size = options.segment_size;
    const std::size_t n_segments =
        static_cast<std::size_t>((hi - lo) / seg_size) + 1;

    std::vector<count_t> result(std::bit_width(hi), 0);

    const auto segment_bounds = [&](std::size_t k) {
        const std::uint64_t s_lo = lo + k * seg_size;
        const std::uint64_t s_hi = std::min(hi, s_lo + seg_size - 1);
        return std::pair{s_lo, s_hi};
    };

    unsigned n_threads = options.threads;
    if (n_threads == 0) n_threads = std::max(1u, std::thread::hardware_concurrency());
    n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, n_segments));

    if (n_threads <= 1) {
        for (std::size_t k = 0; k < n_segments; ++k) {
            const auto [s_lo, s_hi] = segment_bounds(k);
            fold_counts(result, sieve_segment(s_lo, s_hi, primes).counts);
        }
        return result;
    }

    // Workers pull segment indices; per-segment counts land in fixed slots
    // and are folded in segment order afterwards.
    std::vector<std::vector<count_t>> slots(n_segments);
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto work = [&] {
        for (;;) {
            const std::size_t k = next.fetch_add(1, std::memory_order_relaxed);
            if (k >= n_segments) return;
            try {
                const auto [s_lo, s_hi] = segment_bounds(k);
                slots[k] = sieve_segment(s_lo, s_hi, primes).counts;
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();

    if (first_error) std::rethrow_exception(first_error);

    for (std::size_t k = 0; k < n_segments; ++k) fold_counts(result, slots[k]);
    return result;
}

}  // namespace omegatri
