#include "omegatri/oracle.hpp"

#include "omegatri/errors.hpp"

namespace omegatri {
namespace oracle {

unsigned omega_trial_division(std::uint64_t m) {
    if (m == 0) throw usage_error("omega is undefined for 0");
    unsigned factors = 0;
    while (m % 2 == 0) {
        m /= 2;
        ++factors;
    }
    for (std::uint64_t d = 3; d * d <= m; d += 2) {
        while (m % d == 0) {
            m /= d;
            ++factors;
        }
    }
    if (m > 1) ++factors;
    return factors;
}

DistributionRow row_by_bruteforce(unsigned exponent) {
    if (exponent > 24)
        throw usage_error("row_by_bruteforce is capped at 2^24; use the sieve path");
    DistributionRow row{exponent, std::vector<count_t>(exponent + 1, 0)};
    for (std::uint64_t m = 1; m <= (std::uint64_t{1} << exponent); ++m)
        ++row.counts[omega_trial_division(m)];
    return row;
}

}  // namespace oracle
}  // namespace omegatri
