#pragma once

#include <cstdint>
#include <vector>

#include "omegatri/errors.hpp"

namespace omegatri {

using count_t = std::uint64_t;

/// Floor of the square root.
std::uint64_t isqrt(std::uint64_t n);

/// Ascending primes in [2, limit]. The sieved-to limit travels with the list
/// so consumers can check that it covers sqrt of their range.
struct BasePrimes {
    std::uint64_t limit = 1;  // every prime <= limit is present
    std::vector<std::uint64_t> values;
};

/// Primes up to `limit` by a plain sieve of Eratosthenes. Requires limit >= 2.
BasePrimes base_primes(std::uint64_t limit);

/// Per-dimension tallies over one contiguous range.
struct Segment {
    std::uint64_t lo = 1;
    std::uint64_t hi = 1;
    std::vector<count_t> counts;  // counts[d] = #{m in [lo,hi] : omega(m) = d}

    count_t total() const;
};

/// omega(m) — the number of prime factors counted with multiplicity — for
/// every m in [lo, hi], in order. `primes` must cover all primes <= sqrt(hi);
/// whatever remains of m after dividing those out is either 1 or a single
/// prime, which contributes exactly one factor.
std::vector<std::uint8_t> omega_values(std::uint64_t lo, std::uint64_t hi,
                                       const BasePrimes& primes);

Segment sieve_segment(std::uint64_t lo, std::uint64_t hi, const BasePrimes& primes);

struct SieveOptions {
    std::uint64_t segment_size = std::uint64_t{1} << 22;
    unsigned threads = 0;  // 0 = one per hardware thread
};

/// Tallies omega over [lo, hi] by sieving independent segments and folding
/// their counts in segment order. Bit-identical for any thread count.
std::vector<count_t> dimension_histogram(std::uint64_t lo, std::uint64_t hi,
                                         const BasePrimes& primes,
                                         const SieveOptions& options = {});

}  // namespace omegatri
