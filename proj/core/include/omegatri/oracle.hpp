#pragma once

#include <cstdint>

#include "omegatri/triangle.hpp"

namespace omegatri {
namespace oracle {

// Deliberately naive reference path. It shares no code with the sieve so the
// two can check each other.

/// Number of prime factors with multiplicity, by trial division: divide out
/// 2, then odd candidates up to sqrt of the remaining cofactor; a cofactor
/// above 1 is prime and contributes one factor. Requires m >= 1.
unsigned omega_trial_division(std::uint64_t m);

/// Histogram of omega_trial_division over [1, 2^exponent]. Capped at
/// exponent <= 24; larger spaces belong to the sieve.
DistributionRow row_by_bruteforce(unsigned exponent);

}  // namespace oracle
}  // namespace omegatri
