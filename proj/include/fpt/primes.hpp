/*
 * primes.hpp
 * ----------
 * Plain sieve, trial-division primality and Euler phi.  Sweep scale is
 * small (caps up to 10^6), so nothing clever is needed.
 */
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "fpt/rational.hpp"

namespace fpt {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<std::uint32_t> primes_up_to(std::uint32_t cap) {
    if (cap > 10'000'000) throw precondition_error("prime sieve cap exceeds supported range");
    std::vector<bool> composite(static_cast<std::size_t>(cap) + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint64_t i = 2; i <= cap; ++i) {
        if (composite[i]) continue;
        out.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= cap; j += i) composite[j] = true;
    }
    return out;
}

inline std::uint64_t euler_phi(std::uint64_t n) {
    if (n == 0) throw precondition_error("euler_phi(0) undefined");
    std::uint64_t result = n;
    std::uint64_t m = n;
    for (std::uint64_t d = 2; d * d <= m; ++d) {
        if (m % d == 0) {
            while (m % d == 0) m /= d;
            result -= result / d;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

}  // namespace fpt
