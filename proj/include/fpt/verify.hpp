/*
 * verify.hpp
 * ----------
 * The golden reproduction corpus: every table and worked value the library
 * is supposed to recover, expressed as runnable checks.  The CLI's
 * verify-paper subcommand and the acceptance suite both drive these.
 *
 * Each check returns pass/fail plus a short detail line; checks are fully
 * deterministic (fixed RNG seeds), so two runs produce identical reports.
 */
#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fpt/basep.hpp"
#include "fpt/candidates.hpp"
#include "fpt/fptengine.hpp"
#include "fpt/lct.hpp"
#include "fpt/polynomial.hpp"

namespace fpt::verify {

struct CheckResult {
    std::string name;
    bool passed = true;
    std::string detail;

    void fail(const std::string& what) {
        passed = false;
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
};

namespace detail {

constexpr std::uint64_t kInfinity = 0;  // table rows with fpt = lambda

struct Figure1Row {
    std::uint32_t p;
    std::uint64_t L;        // kInfinity encodes the lambda rows
    bool integral;          // (p^L - 1)/5 integral; meaningless for lambda rows
};

inline const std::vector<Figure1Row>& figure1_fast() {
    static const std::vector<Figure1Row> rows = {
        {11, 1, true}, {13, 1, false}, {17, 1, false}, {19, 2, true},
        {23, 4, true}, {29, kInfinity, false}, {31, 1, true},
    };
    return rows;
}

inline const std::vector<Figure1Row>& figure1_full() {
    // The p = 83 row is kept exactly as published even though the exact
    // computation contradicts it: nu_1 = 15 (the only surviving monomial of
    // f^15 is 37*x^71*y^77, and f^16 has none), which pins fpt = trunc_1,
    // not trunc_2.  The mismatch is expected to surface in the report.
    static const std::vector<Figure1Row> rows = {
        {37, 4, true},  {41, 1, true},  {43, kInfinity, false}, {47, 1, false},
        {53, 4, true},  {59, 2, true},  {61, 1, true},          {67, 1, false},
        {71, kInfinity, false}, {73, 3, false}, {79, 2, true},  {83, 2, false},
        {97, 1, false}, {101, 1, true},
    };
    return rows;
}

inline GradedPolynomial graded(const std::string& text, std::uint32_t p,
                               std::vector<std::int64_t> w) {
    return check_homogeneous(parse_polynomial(text, p, static_cast<int>(w.size())), Grading(w));
}

inline std::set<Rational> value_set(const std::vector<Candidate>& cands) {
    std::set<Rational> out;
    for (const auto& c : cands) out.insert(c.value);
    return out;
}

inline std::string rats(const std::set<Rational>& vals) {
    std::string out = "{";
    for (const auto& v : vals) out += v.str() + " ";
    out += "}";
    return out;
}

// Reusable exact-threshold rows: everything the bound suite sweeps over.
struct CorpusRow {
    std::string text;
    std::vector<std::int64_t> w;
    std::uint32_t p;
    FptResult result;
    GradedPolynomial f;
};

inline std::vector<CorpusRow> exact_corpus() {
    std::vector<CorpusRow> rows;
    auto add = [&rows](const std::string& text, std::vector<std::int64_t> w, std::uint32_t p) {
        GradedPolynomial f = graded(text, p, w);
        // the corpus sweeps whole prime ranges; rows that degenerate (such as
        // x^5 + x y^4 + 7 x^2 y^3 at p = 13) fall outside every bound's setup
        if (!has_isolated_singularity(f)) return;
        rows.push_back(CorpusRow{text, std::move(w), p, fpt_exact(f), f});
    };
    for (const auto& row : figure1_fast()) add("x^15 + x*y^7", {1, 2}, row.p);
    for (std::uint32_t p : {7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u, 41u, 43u, 47u})
        add("x^5 + x^3*y + x*y^2", {1, 2}, p);
    for (std::uint32_t p : {7u, 11u, 13u, 17u, 19u, 23u, 29u}) {
        add("x^5 + y^5", {1, 1}, p);
        add("x^5 + x*y^4", {1, 1}, p);
        add("x^5 + x*y^4 + 7*x^2*y^3", {1, 1}, p);
    }
    add("x1^7 + x2^7 + x3^7", {1, 1, 1}, 2);
    add("x1^15 + x2^15 + x3^15 + x4^15 + x5^15", {1, 1, 1, 1, 1}, 2);
    for (std::int64_t d : {3, 4, 5}) {
        std::string text;
        std::vector<std::int64_t> w(static_cast<std::size_t>(d), 1);
        for (std::int64_t i = 1; i <= d; ++i)
            text += (i > 1 ? " + x" : "x") + std::to_string(i) + "^" + std::to_string(d);
        for (std::uint32_t p : primes_up_to(31))
            if (p > d) add(text, w, p);
    }
    return rows;
}

}  // namespace detail

// Table reproduction for f = x^15 + x*y^7 under (deg x, deg y) = (1, 2).
inline CheckResult figure1(bool full) {
    CheckResult out{full ? "figure1-full" : "figure1-fast"};
    const auto& rows = full ? detail::figure1_full() : detail::figure1_fast();
    for (const auto& row : rows) {
        auto f = detail::graded("x^15 + x*y^7", row.p, {1, 2});
        FptResult r = fpt_exact(f);
        if (!r.exact()) {
            out.fail("p=" + std::to_string(row.p) + ": undetermined");
            continue;
        }
        const Rational lambda(1, 5);
        Rational expected =
            row.L == detail::kInfinity ? lambda : truncation(lambda, row.p, row.L);
        if (r.value != expected) {
            out.fail("p=" + std::to_string(row.p) + ": got " + r.value.str() + ", want " +
                     expected.str());
            continue;
        }
        if (row.L == detail::kInfinity) {
            if (!r.certificate.is_lambda)
                out.fail("p=" + std::to_string(row.p) + ": expected the lambda certificate");
        } else {
            if (r.certificate.is_lambda || r.certificate.pair.L != row.L)
                out.fail("p=" + std::to_string(row.p) + ": certificate L mismatch");
            bool integral = (big_pow(row.p, row.L) - 1) % 5 == 0;
            if (integral != row.integral)
                out.fail("p=" + std::to_string(row.p) + ": integrality flag mismatch");
        }
    }
    return out;
}

// Complete description of fpt(x^5 + x^3 y + x y^2) for 7 <= p <= 47.
inline CheckResult determined_example() {
    CheckResult out{"determined-example"};
    const Rational lambda(3, 5);
    for (std::uint32_t p : {7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u, 41u, 43u, 47u}) {
        auto f = detail::graded("x^5 + x^3*y + x*y^2", p, {1, 2});
        FptResult r = fpt_exact(f);
        Rational expected;
        switch (p % 5) {
            case 1: expected = lambda; break;
            case 2:
            case 4: expected = truncation(lambda, p, 1); break;
            case 3: expected = truncation(lambda, p, 2); break;
        }
        if (!r.exact() || r.value != expected)
            out.fail("p=" + std::to_string(p) + ": got " +
                     (r.exact() ? r.value.str() : "undetermined") + ", want " + expected.str());
    }
    return out;
}

// Degree-5 binary forms: thresholds land in the per-residue lists, and the
// three-polynomial corpus exhausts every listed value.
inline CheckResult hara_monsky() {
    CheckResult out{"hara-monsky"};
    const Rational lambda(2, 5);
    // candidate forms per residue class: 0 = lambda itself, k = trunc_k
    auto forms_for = [](std::uint32_t p) -> std::vector<std::uint64_t> {
        switch (p % 5) {
            case 1: return {0, 1};
            case 2: return {2, 3};
            case 3: return {1};
            default: return {0, 1, 2};
        }
    };
    auto value_of = [&](std::uint32_t p, std::uint64_t form) {
        return form == 0 ? lambda : truncation(lambda, p, form);
    };
    const char* polys[] = {"x^5 + y^5", "x^5 + x*y^4", "x^5 + x*y^4 + 7*x^2*y^3"};
    std::set<std::pair<std::uint32_t, std::uint64_t>> uncovered;
    for (std::uint32_t p : {7u, 11u, 13u, 17u, 19u, 23u, 29u})
        for (std::uint64_t form : forms_for(p)) uncovered.insert({p % 5, form});

    for (std::uint32_t p : {7u, 11u, 13u, 17u, 19u, 23u, 29u}) {
        for (const char* text : polys) {
            auto f = detail::graded(text, p, {1, 1});
            // x^5 + x y^4 + 7 x^2 y^3 degenerates at p = 13: the partials
            // vanish on the whole line y = -2x, so the quintic falls outside
            // the example's isolated-singularity hypothesis for that prime.
            if (!has_isolated_singularity(f)) {
                if (p == 13 && std::string(text) == polys[2]) continue;
                out.fail(std::string(text) + " at p=" + std::to_string(p) +
                         ": unexpectedly degenerate");
                continue;
            }
            FptResult r = fpt_exact(f);
            if (!r.exact()) {
                out.fail(std::string(text) + " at p=" + std::to_string(p) + ": undetermined");
                continue;
            }
            bool listed = false;
            for (std::uint64_t form : forms_for(p)) {
                if (r.value == value_of(p, form)) {
                    uncovered.erase({p % 5, form});
                    listed = true;
                }
            }
            if (!listed)
                out.fail(std::string(text) + " at p=" + std::to_string(p) + ": " + r.value.str() +
                         " not in the residue-class list");
        }
    }
    if (!uncovered.empty())
        out.fail(std::to_string(uncovered.size()) + " listed candidates never realized");
    return out;
}

// fpt = 1/4 and 1/8 for the characteristic-2 diagonals, with the Delta_4 = 4
// digit gap of the second example.
inline CheckResult char2_specials() {
    CheckResult out{"char2-specials"};
    FptResult cy = fpt_exact(detail::graded("x1^7 + x2^7 + x3^7", 2, {1, 1, 1}));
    if (!cy.exact() || cy.value != Rational(1, 4))
        out.fail("x1^7+x2^7+x3^7: want 1/4, got " +
                 (cy.exact() ? cy.value.str() : "undetermined"));

    FptResult weird =
        fpt_exact(detail::graded("x1^15 + x2^15 + x3^15 + x4^15 + x5^15", 2, {1, 1, 1, 1, 1}));
    if (!weird.exact() || weird.value != Rational(1, 8))
        out.fail("quindecimic diagonal: want 1/8, got " +
                 (weird.exact() ? weird.value.str() : "undetermined"));

    auto delta = delta_sequence(Rational(1, 8), Rational(1, 3), 2, 4);
    if (delta.delta.size() != 4 || delta.delta[3] != 4)
        out.fail("Delta_4 of (1/8, 1/3) base 2 is not 4");
    return out;
}

// (f+g)^{p fpt(f)} stays outside m^[p] for the listed perturbations,
// certifying the strict increase fpt(f+g) > fpt(f).
inline CheckResult perturbations() {
    CheckResult out{"perturbations"};
    {
        auto f = detail::graded("x^15 + x*y^7", 17, {1, 2});
        for (const char* gtext : {"x^14*y", "x^12*y^2", "y^8", "x^13*y^2", "x^14*y^2"}) {
            Polynomial fg = f.poly() + parse_polynomial(gtext, 17, 2);
            if (membership_test(fg, 3, 1))
                out.fail(std::string("p=17, g=") + gtext + ": (f+g)^3 unexpectedly in m^[17]");
            auto rep = perturbation_report(f, parse_polynomial(gtext, 17, 2));
            if (!rep.upper_ok.has_value() || *rep.upper_ok)
                out.fail(std::string("p=17, g=") + gtext + ": increase not certified");
        }
    }
    {
        auto f = detail::graded("x^15 + x*y^7", 47, {1, 2});
        for (const char* gtext :
             {"x^12*y^2", "x^10*y^3", "x^8*y^4", "x^4*y^6", "x^9*y^4", "x^10*y^4"}) {
            auto rep = perturbation_report(f, parse_polynomial(gtext, 47, 2));
            if (rep.fpt_f != Rational(9, 47))
                out.fail(std::string("p=47: fpt(f) is not 9/47"));
            if (!rep.upper_ok.has_value() || *rep.upper_ok)
                out.fail(std::string("p=47, g=") + gtext + ": increase not certified");
        }
    }
    return out;
}

// Every bound the threshold description rests on, swept over the corpus.
inline CheckResult bound_suites() {
    CheckResult out{"bound-suites"};
    for (const auto& row : detail::exact_corpus()) {
        const std::uint32_t p = row.p;
        const int n = row.f.nvars();
        const Rational lambda = lambda_of(row.f.grading(), row.f.degree());
        const BigInt wsum = row.f.grading().total();
        const BigInt deg = row.f.degree();
        if (!row.result.exact()) {
            out.fail(row.text + " p=" + std::to_string(p) + ": undetermined");
            continue;
        }
        const Rational v = row.result.value;
        auto tag = [&]() { return row.text + " p=" + std::to_string(p); };

        if (v > lambda) out.fail(tag() + ": fpt above lambda");

        // nu_e <= floor((p^e - 1) sum(w)/deg f), and the sharper lower bound
        // ceil((p^e + 1) sum(w)/deg f - n) whenever p does not divide nu_e + 1
        for (std::size_t i = 0; i < row.result.nu_levels.size(); ++i) {
            std::uint64_t e = i + 1;
            const BigInt& nu = row.result.nu_levels[i];
            BigInt pe = big_pow(p, e);
            if (nu > ((pe - 1) * wsum) / deg) out.fail(tag() + ": upper nu bound fails");
            if ((nu + 1) % p != 0) {
                Rational lower = Rational(pe + 1) * Rational(wsum, deg) - Rational(n);
                BigInt lower_int = -((-lower).floor());  // ceil
                if (nu < lower_int) out.fail(tag() + ": lower nu bound fails");
            }
        }

        // first-digit minimality of the threshold expansion
        for (std::uint64_t e = 2; e <= 12; ++e)
            if (digit(v, p, 1) > digit(v, p, e)) out.fail(tag() + ": first digit not minimal");

        if (v == lambda || lambda.den() % p == 0) continue;
        const BigInt &a = lambda.num(), &b = lambda.den();
        std::uint64_t ord = mult_order(BigInt(p), b);

        // window of the first digit disagreement
        auto delta = delta_sequence(v, lambda, p, ord);
        if (!delta.ell.has_value())
            out.fail(tag() + ": Delta stays zero through ord_p(b)");

        // digit-gap bound at levels where the fpt digit is not p-1
        for (std::uint64_t e = 1; e <= 2 * ord + 2; ++e) {
            if (digit(v, p, e) == static_cast<std::int64_t>(p) - 1) continue;
            BigInt gap = scaled_truncation(lambda, p, e) - scaled_truncation(v, p, e);
            BigInt mu = (lpr(a * big_pow(p, e), b) + a + b - 1) / b;
            if (gap > n - mu) out.fail(tag() + ": digit-gap bound fails at e=" + std::to_string(e));
        }

        // two-sided difference bounds
        DiffBounds bounds = difference_bounds(n, a, b, p);
        Rational diff = lambda - v;
        if (diff < bounds.lower || diff > bounds.upper)
            out.fail(tag() + ": difference bounds fail");
    }

    // diagonal sharpness: lct - fpt = (lpr(p,d) - 1)/p for x_1^d + ... + x_d^d
    for (std::int64_t d : {3, 4, 5}) {
        std::string text;
        for (std::int64_t i = 1; i <= d; ++i)
            text += (i > 1 ? " + x" : "x") + std::to_string(i) + "^" + std::to_string(d);
        std::vector<std::int64_t> w(static_cast<std::size_t>(d), 1);
        for (std::uint32_t p : primes_up_to(31)) {
            if (p <= d) continue;
            FptResult r = fpt_exact(detail::graded(text, p, w));
            Rational want = Rational(1) - Rational(lpr(static_cast<std::int64_t>(p), d) - 1,
                                                   static_cast<std::int64_t>(p));
            if (!r.exact() || r.value != want)
                out.fail("diagonal d=" + std::to_string(d) + " p=" + std::to_string(p) +
                         ": sharp identity fails");
        }
    }
    return out;
}

// Digit calculus against the long-division oracle plus the Delta laws.
inline CheckResult basep_calculus() {
    CheckResult out{"basep-calculus"};
    std::mt19937 rng(97);
    const std::uint32_t primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23};
    int triples = 0;
    while (triples < 500) {
        std::uint32_t p = primes[rng() % 9];
        std::int64_t b = 1 + static_cast<std::int64_t>(rng() % 50);
        std::int64_t a = 1 + static_cast<std::int64_t>(rng() % b);
        Rational lam(a, b);
        std::uint64_t span =
            lam.den() % p == 0 ? 8 : 3 * mult_order(BigInt(p), lam.den());
        auto stream = digit_stream_oracle(lam, p, span);
        for (std::uint64_t e = 1; e <= span; ++e)
            if (digit(lam, p, e) != stream[e - 1]) {
                out.fail("digit mismatch for " + lam.str() + " base " + std::to_string(p));
                break;
            }
        if (lam.den() % p != 0 && lam.den() > 1) {
            std::uint64_t s = mult_order(BigInt(p), lam.den());
            for (std::uint64_t e = 1; e <= s + 2; ++e)
                if (digit(lam, p, e) != digit(lam, p, e + s)) {
                    out.fail("period mismatch for " + lam.str());
                    break;
                }
        }
        ++triples;
    }

    int pairs = 0;
    while (pairs < 200) {
        std::uint32_t p = primes[rng() % 5];
        std::int64_t bb = 2 + static_cast<std::int64_t>(rng() % 30);
        std::int64_t ba = 2 + static_cast<std::int64_t>(rng() % 30);
        Rational alpha(1 + static_cast<std::int64_t>(rng() % ba), ba);
        Rational beta(1 + static_cast<std::int64_t>(rng() % bb), bb);
        if (beta < alpha) std::swap(alpha, beta);
        if (alpha == beta || beta.den() % p == 0) continue;
        std::uint64_t s = mult_order(BigInt(p), beta.den());
        std::uint64_t e_max = s + 12;
        auto seq = delta_sequence(alpha, beta, p, e_max);
        for (std::uint64_t e = 1; e < e_max; ++e) {
            BigInt expect = seq.delta[e - 1] * p + digit(beta, p, e + 1) - digit(alpha, p, e + 1);
            if (seq.delta[e] != expect) {
                out.fail("Delta recursion fails for (" + alpha.str() + "," + beta.str() + ")");
                break;
            }
        }
        if (seq.ell) {
            for (std::uint64_t k = 0; k <= 2 && *seq.ell + s + k <= e_max; ++k)
                if (seq.delta[*seq.ell + s + k - 1] < big_pow(p, k) + 1) {
                    out.fail("Delta growth bound fails for (" + alpha.str() + "," + beta.str() +
                             ")");
                    break;
                }
        }
        ++pairs;
    }
    return out;
}

// Exact per-residue candidate lists from the worked examples.
inline CheckResult candidate_lists() {
    CheckResult out{"candidate-lists"};
    auto filtered2 = [](std::int64_t a, std::int64_t b, std::uint32_t p) {
        return detail::value_set(digit_minimality_filter(two_variable_candidates(a, b, p), p, 10));
    };
    auto tr = [](std::int64_t a, std::int64_t b, std::uint32_t p, std::uint64_t L) {
        return truncation(Rational(a, b), p, L);
    };
    auto expect = [&out](const std::set<Rational>& got, const std::set<Rational>& want,
                         const std::string& tag) {
        if (got != want)
            out.fail(tag + ": got " + detail::rats(got) + ", want " + detail::rats(want));
    };

    // six linear forms, lambda = 1/3
    for (std::uint32_t p : {7u, 13u})
        expect(filtered2(1, 3, p), {Rational(1, 3), tr(1, 3, p, 1)},
               "lambda=1/3 p=" + std::to_string(p));
    for (std::uint32_t p : {5u, 11u})
        expect(filtered2(1, 3, p), {Rational(1, 3), tr(1, 3, p, 1), tr(1, 3, p, 2)},
               "lambda=1/3 p=" + std::to_string(p));

    // seven linear forms, lambda = 2/7, one prime per residue class
    expect(filtered2(2, 7, 29), {Rational(2, 7), tr(2, 7, 29, 1)}, "lambda=2/7 p=29");
    expect(filtered2(2, 7, 23), {tr(2, 7, 23, 1), tr(2, 7, 23, 2)}, "lambda=2/7 p=23");
    expect(filtered2(2, 7, 17), {tr(2, 7, 17, 2), tr(2, 7, 17, 3), tr(2, 7, 17, 4)},
           "lambda=2/7 p=17");
    expect(filtered2(2, 7, 11), {tr(2, 7, 11, 1)}, "lambda=2/7 p=11");
    expect(filtered2(2, 7, 19), {tr(2, 7, 19, 1), tr(2, 7, 19, 2)}, "lambda=2/7 p=19");
    expect(filtered2(2, 7, 13), {Rational(2, 7), tr(2, 7, 13, 1), tr(2, 7, 13, 2)},
           "lambda=2/7 p=13");

    // determined case, lambda = 3/5
    expect(filtered2(3, 5, 11), {Rational(3, 5)}, "lambda=3/5 p=11");
    expect(filtered2(3, 5, 7), {tr(3, 5, 7, 1)}, "lambda=3/5 p=7");
    expect(filtered2(3, 5, 13), {tr(3, 5, 13, 2)}, "lambda=3/5 p=13");
    expect(filtered2(3, 5, 19), {tr(3, 5, 19, 1)}, "lambda=3/5 p=19");

    // n = 3, lambda = 2/3
    auto filtered3 = [](std::uint32_t p) {
        return detail::value_set(digit_minimality_filter(main_candidates(3, 2, 3, p), p, 10));
    };
    for (std::uint32_t p : {7u, 13u})
        expect(filtered3(p), {Rational(2, 3), tr(2, 3, p, 1)}, "n=3 lambda=2/3 p=" + std::to_string(p));
    for (std::uint32_t p : {5u, 11u})
        expect(filtered3(p), {tr(2, 3, p, 1), tr(2, 3, p, 1) - Rational(1, p)},
               "n=3 lambda=2/3 p=" + std::to_string(p));
    return out;
}

// Finite-sample densities sit within 0.05 of 1/phi(b) at the 10^4 cap.
inline CheckResult density_estimates() {
    CheckResult out{"density-estimates"};
    const Rational tol(1, 20);
    for (std::int64_t b : {3, 5, 7}) {
        Rational target(1, BigInt(euler_phi(static_cast<std::uint64_t>(b))));
        for (std::int64_t c = 1; c < b; ++c) {
            if (std::gcd(c, b) != 1) continue;
            Rational density = empirical_density(
                [b, c](std::uint32_t q) { return q % b == static_cast<std::uint64_t>(c); }, 10000);
            if ((density - target).abs() > tol)
                out.fail("class " + std::to_string(c) + " mod " + std::to_string(b) +
                         " density off: " + density.str());
        }
    }
    Rational bad25 = empirical_density(
        [](std::uint32_t q) { return q != 5 && is_certified_bad_prime(2, 5, q); }, 10000);
    if (bad25 < Rational(1, 4) - tol)
        out.fail("certified-bad density for 2/5 below 1/4 - 0.05: " + bad25.str());
    return out;
}

inline std::vector<CheckResult> run_paper_checks(bool full_figure1) {
    std::vector<CheckResult> out;
    out.push_back(figure1(false));
    if (full_figure1) out.push_back(figure1(true));
    out.push_back(determined_example());
    out.push_back(hara_monsky());
    out.push_back(char2_specials());
    out.push_back(perturbations());
    out.push_back(bound_suites());
    out.push_back(basep_calculus());
    out.push_back(candidate_lists());
    out.push_back(density_estimates());
    return out;
}

}  // namespace fpt::verify
