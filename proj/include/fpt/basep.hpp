/*
 * basep.hpp
 * ---------
 * Exact base-p digit calculus for rationals in (0,1]: least positive
 * residues, multiplicative orders, digits and truncations of the unique
 * non-terminating expansion, and the Delta sequence comparing two
 * expansions digit by digit.
 *
 * Digits and truncations are evaluated by the closed formulas
 *
 *   digit_e(a/b)      = (lpr(a*p^(e-1), b)*p - lpr(a*p^e, b)) / b
 *   trunc_e(a/b)      = a/b - lpr(a*p^e, b) / (b*p^e)
 *
 * which stay cheap for large e; the long-division generator below is kept
 * only as an independent cross-check.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fpt/rational.hpp"

namespace fpt {

// Least positive residue: the unique r in {1,...,b} congruent to m mod b.
// Equals b (never 0) when b divides m.
inline BigInt lpr(const BigInt& m, const BigInt& b) {
    if (b <= 0) throw precondition_error("lpr: modulus must be positive");
    BigInt r = m % b;
    if (r < 0) r += b;
    return r == 0 ? b : r;
}

inline std::int64_t lpr(std::int64_t m, std::int64_t b) {
    if (b <= 0) throw precondition_error("lpr: modulus must be positive");
    std::int64_t r = m % b;
    if (r < 0) r += b;
    return r == 0 ? b : r;
}

// Least k >= 1 with p^k = 1 mod b; requires gcd(p,b) = 1.  ord_p(1) = 1.
inline std::uint64_t mult_order(const BigInt& p, const BigInt& b) {
    if (b <= 0) throw precondition_error("mult_order: modulus must be positive");
    if (boost::multiprecision::gcd(p < 0 ? BigInt(-p) : p, b) != 1)
        throw precondition_error("mult_order: p and b are not coprime");
    if (b == 1) return 1;
    BigInt r = lpr(p, b) % b;
    std::uint64_t k = 1;
    while (r != 1) {
        r = (r * p) % b;
        ++k;
    }
    return k;
}

// Truncation depth: a non-negative level or the infinity sentinel, matching
// the conventions trunc_0 = 0 and trunc_inf = identity.
struct TruncationDepth {
    static TruncationDepth infinity() { return TruncationDepth{true, 0}; }
    TruncationDepth(std::uint64_t level) : infinite(false), e(level) {}

    bool infinite;
    std::uint64_t e;

private:
    TruncationDepth(bool inf, std::uint64_t level) : infinite(inf), e(level) {}
};

namespace detail {

inline void check_unit_interval(const Rational& v, const char* who) {
    if (v.num() <= 0 || v > Rational(1))
        throw precondition_error(std::string(who) + ": value must lie in (0,1]");
}

// lpr(a*p^e, b) without forming a*p^e.
inline BigInt lpr_scaled(const BigInt& a, const BigInt& b, const BigInt& p, std::uint64_t e) {
    BigInt r = boost::multiprecision::powm(p % b, BigInt(e), b);
    r = (r * (a % b)) % b;
    if (r < 0) r += b;
    return r == 0 ? b : r;
}

}  // namespace detail

// e-th digit (e >= 1) of the non-terminating base-p expansion of lam in (0,1].
inline std::int64_t digit(const Rational& lam, std::uint32_t p, std::uint64_t e) {
    detail::check_unit_interval(lam, "digit");
    if (e == 0) throw precondition_error("digit: index starts at 1");
    const BigInt& a = lam.num();
    const BigInt& b = lam.den();
    BigInt up = detail::lpr_scaled(a, b, p, e - 1) * p - detail::lpr_scaled(a, b, p, e);
    BigInt d = up / b;
    return static_cast<std::int64_t>(d);
}

// p^e * trunc_e(lam) as an exact integer; the workhorse behind truncation
// and the Delta sequence.
inline BigInt scaled_truncation(const Rational& lam, std::uint32_t p, std::uint64_t e) {
    detail::check_unit_interval(lam, "truncation");
    const BigInt& a = lam.num();
    const BigInt& b = lam.den();
    BigInt pe = big_pow(p, e);
    return (a * pe - detail::lpr_scaled(a, b, p, e)) / b;
}

inline Rational truncation(const Rational& lam, std::uint32_t p, TruncationDepth depth) {
    detail::check_unit_interval(lam, "truncation");
    if (depth.infinite) return lam;
    if (depth.e == 0) return Rational(0);
    return Rational(scaled_truncation(lam, p, depth.e), big_pow(p, depth.e));
}

inline Rational truncation(const Rational& lam, std::uint32_t p, std::uint64_t e) {
    return truncation(lam, p, TruncationDepth(e));
}

// Value of the expansion read from position s onward, .d_s : d_{s+1} : ...,
// as an exact rational.  For lam = x/y this collapses to lpr(x*p^(s-1), y)/y.
inline Rational expansion_tail(const Rational& lam, std::uint32_t p, std::uint64_t s) {
    detail::check_unit_interval(lam, "expansion_tail");
    if (s == 0) throw precondition_error("expansion_tail: position starts at 1");
    return Rational(detail::lpr_scaled(lam.num(), lam.den(), p, s - 1), lam.den());
}

// Independent long-division digit generator, used as the test oracle for
// digit/truncation.  A zero remainder after an exact step is rewritten into
// the all-(p-1) tail so the stream is always the non-terminating expansion.
inline std::vector<std::int64_t> digit_stream_oracle(const Rational& lam, std::uint32_t p,
                                                     std::size_t count) {
    detail::check_unit_interval(lam, "digit_stream_oracle");
    std::vector<std::int64_t> digits;
    digits.reserve(count);
    if (lam == Rational(1)) {
        digits.assign(count, static_cast<std::int64_t>(p) - 1);
        return digits;
    }
    BigInt r = lam.num();
    const BigInt& b = lam.den();
    for (std::size_t k = 0; k < count; ++k) {
        BigInt t = r * p;
        BigInt d = t / b;
        r = t % b;
        if (r == 0) {
            digits.push_back(static_cast<std::int64_t>(d) - 1);
            while (digits.size() < count) digits.push_back(static_cast<std::int64_t>(p) - 1);
            return digits;
        }
        digits.push_back(static_cast<std::int64_t>(d));
    }
    return digits;
}

struct DeltaSequence {
    std::vector<BigInt> delta;          // Delta_1 .. Delta_e_max
    std::optional<std::uint64_t> ell;   // min { e : Delta_e >= 1 }, if within range
};

// Delta_e = p^e trunc_e(beta) - p^e trunc_e(alpha) for 0 < alpha <= beta <= 1.
inline DeltaSequence delta_sequence(const Rational& alpha, const Rational& beta,
                                    std::uint32_t p, std::uint64_t e_max) {
    detail::check_unit_interval(alpha, "delta_sequence");
    detail::check_unit_interval(beta, "delta_sequence");
    if (alpha > beta) throw precondition_error("delta_sequence: requires alpha <= beta");
    DeltaSequence out;
    out.delta.reserve(e_max);
    for (std::uint64_t e = 1; e <= e_max; ++e) {
        BigInt d = scaled_truncation(beta, p, e) - scaled_truncation(alpha, p, e);
        if (!out.ell && d >= 1) out.ell = e;
        out.delta.push_back(std::move(d));
    }
    return out;
}

// ". d1 : d2 : ..." rendering used by the CLI.
inline std::string format_digits(const std::vector<std::int64_t>& digits) {
    std::string out = ".";
    for (auto d : digits) {
        out += ' ';
        out += std::to_string(d);
        out += " :";
    }
    if (!digits.empty()) out.erase(out.size() - 2);
    return out;
}

}  // namespace fpt
