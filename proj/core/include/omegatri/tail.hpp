#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "omegatri/triangle.hpp"

namespace omegatri {

// Every number counted at column n-x of row n has the form 2^(n-x-j) * q with
// q odd and omega(q) = j; the constraint q <= 2^(x+j) does not involve n, so
// once n-x >= j_max the column stops changing. Enumerating the odd parts q
// therefore yields the exact eventual value of the diagonal.

/// One odd part realizing the diagonal's limit.
struct Witness {
    unsigned dimension;       // j = omega(odd_part)
    std::uint64_t odd_part;   // q, odd, q <= 2^(offset + j)

    bool operator==(const Witness&) const = default;
};

struct TailLimit {
    count_t limit = 0;              // = witnesses.size()
    unsigned max_dimension = 0;     // largest j among witnesses
    std::vector<Witness> witnesses; // ordered by j ascending, then q ascending
};

/// Exact limiting value of the offset-x diagonal, with every witness.
/// Supported for offset <= 23 (odd parts fit 64 bits there).
TailLimit tail_limit(unsigned offset);

/// Smallest n from which the diagonal equals its limit. The series starts at
/// n = offset + 1, so the result is never below that.
unsigned convergence_exponent(unsigned offset);

/// (n, count) along column n - offset for n = offset+1 .. max_exponent.
std::vector<std::pair<unsigned, count_t>> diagonal_series(const Triangle& t,
                                                          unsigned offset);

struct TailSeries {
    unsigned offset = 0;
    std::vector<std::pair<unsigned, count_t>> values;
    count_t limit = 0;
    unsigned convergence_exponent = 0;
    std::vector<Witness> witnesses;
};

/// Assembles the diagonal values from `t` together with the enumerated limit.
TailSeries tail_series(const Triangle& t, unsigned offset);

}  // namespace omegatri
