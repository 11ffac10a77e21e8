// Brute-force reference computations for the test suites. Nothing here calls
// into the library, so agreement with it is an independent check.

#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace oracle {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<std::uint64_t> primes_upto(std::uint64_t limit) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = 2; n <= limit; ++n)
        if (is_prime(n)) out.push_back(n);
    return out;
}

inline std::uint64_t pi(std::uint64_t x) {
    std::uint64_t c = 0;
    for (std::uint64_t n = 2; n <= x; ++n) c += is_prime(n);
    return c;
}

/// Integers in [1, x] sharing no factor with the first r primes (1 counts).
inline std::uint64_t coprime_count(std::uint64_t x, const std::vector<std::uint64_t>& primes,
                                   std::size_t r) {
    std::uint64_t c = 0;
    for (std::uint64_t n = 1; n <= x; ++n) {
        bool ok = true;
        for (std::size_t i = 0; i < r && ok; ++i) ok = n % primes[i] != 0;
        c += ok;
    }
    return c;
}

/// Depth by counting trial-division primes below n at every step.
inline std::uint32_t depth(std::uint64_t n) {
    std::uint32_t d = 0;
    while (is_prime(n)) {
        ++d;
        n = pi(n);
    }
    return d;
}

/// Twin pairs (p, p+2) with p+2 <= x, by lesser member.
inline std::vector<std::uint64_t> twin_lesser(std::uint64_t x) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p + 2 <= x; ++p)
        if (is_prime(p) && is_prime(p + 2)) out.push_back(p);
    return out;
}

inline long double brun_pair_sum(std::uint64_t x) {
    long double s = 0;
    for (std::uint64_t p : twin_lesser(x)) s += 1.0L / p + 1.0L / (p + 2);
    return s;
}

}  // namespace oracle
