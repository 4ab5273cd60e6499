/*
 * candidates.hpp
 * --------------
 * Finite candidate lists for the F-pure threshold of a quasi-homogeneous
 * polynomial with an isolated singularity, together with the digit filters
 * that whittle them down, and the ACC superset count.
 *
 * With lambda = min{sum(w)/deg f, 1} = a/b in lowest terms and p not
 * dividing b, every threshold other than lambda itself has the shape
 *
 *     trunc_L(lambda) - E / p^L,   0 <= E <= n - 1 - ceil((lpr(a p^L, b) + a)/b),
 *
 * where L is bounded by ord_p(b) for p > (n-2)*b and by the uniform bound
 * M = 2*phi(b) + ceil(log2(n-1)) otherwise.  In two variables E is forced to
 * zero and the extra residue condition 1 <= lpr(a p^L, b) <= b-a applies for
 * every p.
 */
#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fpt/basep.hpp"
#include "fpt/gradedpoly.hpp"
#include "fpt/primes.hpp"
#include "fpt/rational.hpp"

namespace fpt {

struct LEPair {
    std::uint64_t L;
    BigInt E;
    friend bool operator==(const LEPair& a, const LEPair& b) { return a.L == b.L && a.E == b.E; }
    friend bool operator<(const LEPair& a, const LEPair& b) {
        return a.L != b.L ? a.L < b.L : a.E < b.E;
    }
};

// A possible threshold value: lambda itself or trunc_L(lambda) - E/p^L.
// Distinct (L,E) pairs yielding the same value are merged, keeping every
// provenance; elimination works on values, not pairs.
struct Candidate {
    Rational value;
    bool from_lambda = false;
    std::vector<LEPair> pairs;
    std::vector<std::string> filters_passed;
};

inline Rational lambda_of(const Grading& g, std::int64_t deg_f) {
    if (deg_f < 1) throw precondition_error("lambda_of: degree must be positive");
    Rational lam(g.total(), deg_f);
    return lam > Rational(1) ? Rational(1) : lam;
}

// 2*phi(b) + ceil(log2(n-1)); caps the truncation depth independently of p.
inline std::uint64_t uniform_L_bound(int n, std::uint64_t b) {
    if (n < 2 || b < 1) throw precondition_error("uniform_L_bound: need n >= 2, b >= 1");
    std::uint64_t m = static_cast<std::uint64_t>(n) - 1;
    std::uint64_t log_term = m <= 1 ? 0 : std::bit_width(m - 1);
    return 2 * euler_phi(b) + log_term;
}

namespace detail {

inline void merge_candidate(std::map<Rational, Candidate>& pool, Rational value, bool from_lambda,
                            std::vector<LEPair> pairs) {
    auto it = pool.find(value);
    if (it == pool.end()) {
        pool.emplace(value, Candidate{value, from_lambda, std::move(pairs), {}});
        return;
    }
    it->second.from_lambda = it->second.from_lambda || from_lambda;
    auto& dst = it->second.pairs;
    dst.insert(dst.end(), pairs.begin(), pairs.end());
    std::sort(dst.begin(), dst.end());
    dst.erase(std::unique(dst.begin(), dst.end()), dst.end());
}

inline std::vector<Candidate> sorted_values(std::map<Rational, Candidate>&& pool) {
    std::vector<Candidate> out;
    out.reserve(pool.size());
    for (auto& [v, c] : pool) out.push_back(std::move(c));
    return out;
}

inline BigInt mu_ceiling(const BigInt& a, const BigInt& b, std::uint32_t p, std::uint64_t L) {
    BigInt t = lpr_scaled(a, b, p, L) + a;
    return (t + b - 1) / b;  // ceil(t/b), t > 0
}

}  // namespace detail

// Candidate list from the main characterization: lambda plus all admissible
// (L,E) values.  Requires gcd(a,b) = 1, 0 < a/b <= 1 and p coprime to b; for
// p | b no finite list exists and the engine falls back to nu bounds.
inline std::vector<Candidate> main_candidates(int n, const BigInt& a, const BigInt& b,
                                              std::uint32_t p) {
    if (n < 2) throw precondition_error("main_candidates: need n >= 2");
    if (a <= 0 || b < a) throw precondition_error("main_candidates: lambda must lie in (0,1]");
    if (boost::multiprecision::gcd(a, b) != 1)
        throw precondition_error("main_candidates: a/b not in lowest terms");
    if (b % p == 0) throw precondition_error("main_candidates: p divides b");

    const Rational lambda(a, b);
    const bool large_p = BigInt(p) > BigInt(n - 2) * b;
    const bool residue_condition = large_p && BigInt(p) > b;
    const std::uint64_t L_hi = large_p ? mult_order(BigInt(p), b)
                                       : uniform_L_bound(n, static_cast<std::uint64_t>(b));

    std::map<Rational, Candidate> pool;
    detail::merge_candidate(pool, lambda, true, {});

    for (std::uint64_t L = 1; L <= L_hi; ++L) {
        if (residue_condition) {
            bool violated = false;
            for (std::uint64_t e = 1; e < L; ++e)
                if (a >= detail::lpr_scaled(a, b, p, e)) {
                    violated = true;
                    break;
                }
            if (violated) continue;
        }
        BigInt e_max = BigInt(n) - 1 - detail::mu_ceiling(a, b, p, L);
        if (e_max < 0) continue;
        const Rational trunc = truncation(lambda, p, L);
        const BigInt pL = big_pow(p, L);
        for (BigInt E = 0; E <= e_max; ++E) {
            Rational value = trunc - Rational(E, pL);
            if (value.num() <= 0) continue;
            detail::merge_candidate(pool, value, false, {LEPair{L, E}});
        }
    }
    return detail::sorted_values(std::move(pool));
}

// Two-variable refinement: E is forced to zero and the residue window
// 1 <= lpr(a p^L, b) <= b-a holds for every p.  A finite list needs p
// coprime to b.
inline std::vector<Candidate> two_variable_candidates(const BigInt& a, const BigInt& b,
                                                      std::uint32_t p) {
    if (a <= 0 || b < a) throw precondition_error("two_variable_candidates: lambda must lie in (0,1]");
    if (boost::multiprecision::gcd(a, b) != 1)
        throw precondition_error("two_variable_candidates: a/b not in lowest terms");
    if (b % p == 0)
        throw precondition_error("two_variable_candidates: p divides b, no finite list applies");

    const Rational lambda(a, b);
    const std::uint64_t L_hi = mult_order(BigInt(p), b);
    const bool p_above_b = BigInt(p) > b;

    std::map<Rational, Candidate> pool;
    detail::merge_candidate(pool, lambda, true, {});

    for (std::uint64_t L = 1; L <= L_hi; ++L) {
        if (p_above_b) {
            bool violated = false;
            for (std::uint64_t e = 1; e < L; ++e)
                if (a >= detail::lpr_scaled(a, b, p, e)) {
                    violated = true;
                    break;
                }
            if (violated) continue;
        }
        if (detail::lpr_scaled(a, b, p, L) > b - a) continue;
        Rational value = truncation(lambda, p, L);
        if (value.num() <= 0) continue;
        detail::merge_candidate(pool, value, false, {LEPair{L, BigInt(0)}});
    }
    return detail::sorted_values(std::move(pool));
}

// Drops every candidate some of whose expansion tails .d_s : d_{s+1} : ...
// is strictly below the candidate itself; an F-pure threshold is bounded
// above by each of its tails.  Tails are exact rationals, never sampled.
inline std::vector<Candidate> digit_minimality_filter(const std::vector<Candidate>& cands,
                                                      std::uint32_t p, std::uint64_t depth) {
    if (depth < 1) throw precondition_error("digit_minimality_filter: depth must be >= 1");
    std::vector<Candidate> out;
    for (const Candidate& c : cands) {
        bool removed = false;
        for (std::uint64_t s = 2; s <= depth; ++s) {
            if (expansion_tail(c.value, p, s) < c.value) {
                removed = true;
                break;
            }
        }
        if (!removed) {
            out.push_back(c);
            out.back().filters_passed.push_back("digit-minimality");
        }
    }
    return out;
}

// deg f = sum(w) + 1 case: 1 - 1/d is possible only for p = 1 mod d, and the
// remaining values are 1 - 1/d - (A - lpr(p,d)/d)/p with A capped at d-2 for
// p = -1 mod d and d-3 otherwise.  Requires p > (n-2)*d.
inline std::vector<Candidate> almost_cy_candidates(int n, std::int64_t d, std::uint32_t p) {
    if (n < 2 || d < 2) throw precondition_error("almost_cy_candidates: need n >= 2, d >= 2");
    if (static_cast<std::int64_t>(p) <= (n - 2) * d)
        throw precondition_error("almost_cy_candidates: requires p > (n-2)*d");

    std::map<Rational, Candidate> pool;
    if (p % d == 1) detail::merge_candidate(pool, Rational(d - 1, d), true, {});

    const std::int64_t r = lpr(static_cast<std::int64_t>(p), d);
    const std::int64_t a_hi = (lpr(static_cast<std::int64_t>(p) + 1, d) == d) ? d - 2 : d - 3;
    for (std::int64_t A = 1; A <= a_hi; ++A) {
        // 1 - 1/d - (A - r/d)/p = (d-1)/d - (A*d - r)/(d*p)
        Rational value = Rational(d - 1, d) - Rational(A * d - r, d * static_cast<std::int64_t>(p));
        if (value.num() <= 0) continue;
        detail::merge_candidate(pool, value, false, {LEPair{1, BigInt(A - 1)}});
    }
    return detail::sorted_values(std::move(pool));
}

// fpt(f) = 1 is forced as soon as sum(w) > deg f and p > (n-3)/(rho-1) with
// rho = sum(w)/deg f; evaluated in exact integer arithmetic.
inline bool secondary_theorem_applies(const Grading& g, std::int64_t deg_f, std::uint32_t p) {
    if (deg_f < 1) throw precondition_error("secondary_theorem_applies: degree must be positive");
    const std::int64_t wsum = g.total();
    if (wsum <= deg_f) return false;
    const int n = static_cast<int>(g.nvars());
    // p > (n-3)/(rho-1)  <=>  p*(wsum - deg_f) > (n-3)*deg_f
    return BigInt(p) * (wsum - deg_f) > BigInt(n - 3) * deg_f;
}

struct AccSuperset {
    std::uint64_t M_max;
    BigInt superset_size;
};

// Finite superset of the thresholds above mu realized by polynomials that
// are quasi-homogeneous with weights <= N: denominators coprime to p are
// bounded by n*N/mu, and everything else lives in p^{-M_max} * Z.
inline AccSuperset acc_superset(int n, std::int64_t weight_cap, const Rational& mu,
                                std::uint32_t p) {
    if (n < 2 || weight_cap < 1) throw precondition_error("acc_superset: need n >= 2, N >= 1");
    if (mu.num() <= 0 || mu > Rational(1))
        throw precondition_error("acc_superset: mu must lie in (0,1]");

    const BigInt b_max = (Rational(BigInt(n) * weight_cap) / mu).floor();
    std::uint64_t m_max = 0;
    for (BigInt b = 1; b <= b_max; ++b) {
        if (b % p == 0) continue;
        m_max = std::max(m_max, uniform_L_bound(n, static_cast<std::uint64_t>(b)));
    }

    // #{ a : mu < a/p^M <= 1 } = p^M - floor(mu * p^M)
    const BigInt pM = big_pow(p, m_max);
    BigInt count = pM - (mu * Rational(pM)).floor();

    // coprime-denominator part of the superset, minus the overlap at 1
    BigInt s_count = 0;
    bool contains_one = false;
    for (BigInt b = 1; b <= b_max; ++b) {
        if (b % p == 0) continue;
        for (BigInt a = (mu * Rational(b)).floor() + 1; a <= b; ++a) {
            if (boost::multiprecision::gcd(a, b) != 1) continue;
            ++s_count;
            if (a == b) contains_one = true;
        }
    }
    if (contains_one) --s_count;  // 1 already counted among a/p^M
    return AccSuperset{m_max, count + s_count};
}

}  // namespace fpt
