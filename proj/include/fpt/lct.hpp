/*
 * lct.hpp
 * -------
 * Log canonical thresholds of quasi-homogeneous isolated singularities,
 * two-sided bounds on lct - fpt, the residue criterion certifying a bad
 * prime, and finite-sample density estimates over prime sweeps.
 */
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "fpt/basep.hpp"
#include "fpt/gradedpoly.hpp"
#include "fpt/primes.hpp"
#include "fpt/rational.hpp"

namespace fpt {

// For a quasi-homogeneous polynomial with an isolated singularity over the
// rationals, the log canonical threshold is min{sum(w)/deg f, 1}.  The
// characteristic-zero hypotheses are attested by the caller; the mod-p model
// is what the gradedpoly checks see.
inline Rational lct_of(const Grading& g, std::int64_t deg_f) {
    if (deg_f < 1) throw precondition_error("lct_of: degree must be positive");
    Rational v(g.total(), deg_f);
    return v > Rational(1) ? Rational(1) : v;
}

struct DiffBounds {
    Rational lower;
    Rational upper;
};

// If fpt(f_p) differs from lct = a/b (lowest terms, p coprime to b), then
// b^{-1} p^{-ord_p(b)} <= lct - fpt <= (n - 1 - b^{-1})/p.
inline DiffBounds difference_bounds(int n, const BigInt& a, const BigInt& b, std::uint32_t p) {
    if (n < 2) throw precondition_error("difference_bounds: need n >= 2");
    if (a <= 0 || b < a) throw precondition_error("difference_bounds: lct must lie in (0,1]");
    if (boost::multiprecision::gcd(a, b) != 1)
        throw precondition_error("difference_bounds: a/b not in lowest terms");
    if (b % p == 0) throw precondition_error("difference_bounds: p divides b");
    std::uint64_t ord = mult_order(BigInt(p), b);
    DiffBounds out;
    out.lower = Rational(1, b * big_pow(BigInt(p), ord));
    out.upper = Rational(BigInt(n - 1) * b - 1, b * p);
    return out;
}

// True iff p^e * a = 1 mod b for some e in [1, ord_p(b)]; such primes make
// a/b impossible as an F-pure threshold of any polynomial, so fpt != lct.
// Inapplicable when a = 1.
inline bool is_certified_bad_prime(const BigInt& a, const BigInt& b, std::uint32_t p) {
    if (a == 1) throw precondition_error("is_certified_bad_prime: requires a != 1");
    if (a <= 0 || b < a) throw precondition_error("is_certified_bad_prime: lct must lie in (0,1]");
    if (boost::multiprecision::gcd(a, b) != 1)
        throw precondition_error("is_certified_bad_prime: a/b not in lowest terms");
    if (b % p == 0) throw precondition_error("is_certified_bad_prime: p divides b");
    std::uint64_t ord = mult_order(BigInt(p), b);
    BigInt r = lpr(BigInt(p), b) % b;
    for (std::uint64_t e = 1; e <= ord; ++e) {
        if ((r * a) % b == 1 % b) return true;
        r = (r * p) % b;
    }
    return false;
}

// Lower bound on the density of { p : fpt(f_p) != lct }: 1/phi(b) whenever
// the numerator a is at least 2.  For the shape lct = 1 - 1/d (degree d in
// d-1 standard-graded variables) the bound improves to 1 - 1/phi(d).
inline Rational bad_density_lower_bound(const BigInt& a, const BigInt& b,
                                        bool almost_calabi_yau = false) {
    if (a <= 0 || b < a) throw precondition_error("bad_density_lower_bound: lct must lie in (0,1]");
    if (boost::multiprecision::gcd(a, b) != 1)
        throw precondition_error("bad_density_lower_bound: a/b not in lowest terms");
    if (almost_calabi_yau) {
        if (a + 1 != b)
            throw precondition_error("bad_density_lower_bound: almost-CY shape needs a/b = 1 - 1/d");
        return Rational(1) - Rational(1, BigInt(euler_phi(static_cast<std::uint64_t>(b))));
    }
    if (a == 1) return Rational(0);  // the criterion is silent for unit numerators
    return Rational(1, BigInt(euler_phi(static_cast<std::uint64_t>(b))));
}

// Exact ratio #{p <= cap : pred(p)} / #{p <= cap}; a finite-sample stand-in
// for the Dirichlet density.
inline Rational empirical_density(const std::function<bool(std::uint32_t)>& predicate,
                                  std::uint32_t prime_cap) {
    if (prime_cap < 2) throw precondition_error("empirical_density: cap must be >= 2");
    std::vector<std::uint32_t> primes = primes_up_to(prime_cap);
    std::int64_t hits = 0;
    for (std::uint32_t q : primes)
        if (predicate(q)) ++hits;
    return Rational(hits, static_cast<std::int64_t>(primes.size()));
}

}  // namespace fpt
