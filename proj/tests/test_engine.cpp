#include <doctest.h>

#include <random>

#include "fpt/fptengine.hpp"
#include "oracles.hpp"

using namespace fpt;

namespace {

GradedPolynomial graded(const char* text, std::uint32_t p, std::vector<std::int64_t> w) {
    return check_homogeneous(parse_polynomial(text, p, static_cast<int>(w.size())), Grading(w));
}

}  // namespace

TEST_CASE("nu_first basics") {
    CHECK(nu_first(parse_polynomial("x1^7 + x2^7 + x3^7", 2)).nu() == 0);
    CHECK(nu_first(parse_polynomial("x^2", 7, 1)).nu() == 3);
    CHECK(nu_first(parse_polynomial("x*y", 5)).nu() == 4);
    CHECK_THROWS_AS(nu_first(parse_polynomial("x + 1", 5)), precondition_error);

    // nu_e = 0 keeps the constant 1 as witness
    auto rec = nu_first(parse_polynomial("x1^7 + x2^7 + x3^7", 2));
    CHECK(rec.reduced_power() == Polynomial::one(2, 3));
}

TEST_CASE("nu levels for the characteristic-2 diagonal") {
    auto seq = nu_sequence(parse_polynomial("x1^7 + x2^7 + x3^7", 2), 3);
    CHECK(seq[0].nu() == 0);
    CHECK(seq[1].nu() == 0);
    CHECK(seq[2].nu() == 1);
    CHECK(fpt_lower_bound(seq[0]) == Rational(0));
    CHECK(fpt_lower_bound(seq[2]) == Rational(1, 8));
}

TEST_CASE("nu digits stay within one base-p digit per level") {
    std::mt19937 rng(52);
    const std::uint32_t primes[] = {2, 3, 5, 7};
    int checked = 0;
    while (checked < 20) {
        std::uint32_t p = primes[rng() % 4];
        auto item = testing::random_homogeneous(rng, p, {1, 1}, 3 + (rng() % 5));
        if (!item || !item->poly.in_maximal_ideal()) continue;
        auto seq = nu_sequence(item->poly, 4);
        for (int e = 0; e + 1 < 4; ++e) {
            REQUIRE(seq[e + 1].nu() >= seq[e].nu() * p);
            REQUIRE(seq[e + 1].nu() <= seq[e].nu() * p + p - 1);
        }
        ++checked;
    }
}

TEST_CASE("nu_next advances one level from a record") {
    // sparse carrier
    auto f2 = parse_polynomial("x1^7 + x2^7 + x3^7", 2);
    auto rec = nu_first(f2);
    rec = nu_next(rec, f2);
    rec = nu_next(rec, f2);
    CHECK(rec.level() == 3);
    CHECK(rec.nu() == 1);

    // dense carrier via graded input, stepped against nu_sequence
    auto g = graded("x^15 + x*y^7", 19, {1, 2});
    NuEngine engine(g);
    auto step = engine.advance();
    auto whole = nu_sequence(g, 3);
    for (int e = 1; e < 3; ++e) {
        step = nu_next(step, g.poly());
        CHECK(step.nu() == whole[static_cast<std::size_t>(e)].nu());
    }

    // brute-force agreement for x^5 + y^5 at p = 3 through level 4
    auto f3 = parse_polynomial("x^5 + y^5", 3);
    auto oracle = testing::nu_by_expansion(f3, 4);
    auto chain = nu_first(f3);
    CHECK(chain.nu() == oracle[0]);
    for (std::size_t e = 1; e < 4; ++e) {
        chain = nu_next(chain, f3);
        CHECK(chain.nu() == oracle[e]);
    }
}

TEST_CASE("two-variable graded input above the dense coefficient range") {
    // primes >= 257 stay on the sparse carrier; results are unaffected
    auto g = graded("x^2 + y^2", 257, {1, 1});
    auto seq = nu_sequence(g, 1);
    CHECK(seq[0].nu() == 256);  // lambda = 1, nu_1 = p - 1
}

TEST_CASE("nu of a monomial is p^e - 1") {
    auto seq = nu_sequence(parse_polynomial("x*y", 3), 3);
    CHECK(seq[0].nu() == 2);
    CHECK(seq[1].nu() == 8);
    CHECK(seq[2].nu() == 26);
    CHECK(fpt_lower_bound(seq[1]) == Rational(8, 9));
}

TEST_CASE("nu of x^2 at p=7") {
    auto seq = nu_sequence(parse_polynomial("x^2", 7, 1), 2);
    CHECK(seq[0].nu() == 3);
    CHECK(seq[1].nu() == 24);  // 7*3 + 3
}

TEST_CASE("nu_1 for x^15 + x*y^7, oracle-confirmed values") {
    // fpt = trunc_1(1/5), so nu_e = p^e trunc_e(fpt) with the non-terminating
    // expansion of the truncated value: nu_1 = 1 at p = 11 and 2 at p = 17.
    auto f11 = parse_polynomial("x^15 + x*y^7", 11);
    CHECK(nu_first(f11).nu() == 1);
    CHECK(testing::nu_by_expansion(f11, 1)[0] == 1);

    auto f17 = parse_polynomial("x^15 + x*y^7", 17);
    CHECK(nu_first(f17).nu() == 2);
    CHECK(testing::nu_by_expansion(f17, 1)[0] == 2);
}

TEST_CASE("dense and sparse carriers agree") {
    std::mt19937 rng(1123);
    const std::uint32_t primes[] = {3, 5, 7, 11};
    int checked = 0;
    while (checked < 30) {
        std::uint32_t p = primes[rng() % 4];
        bool weighted = rng() % 2 == 0;
        std::int64_t deg = 2 + static_cast<std::int64_t>(rng() % 7);
        auto item = testing::random_homogeneous(
            rng, p, weighted ? std::vector<std::int64_t>{1, 2} : std::vector<std::int64_t>{1, 1},
            deg);
        if (!item || !item->poly.in_maximal_ideal()) continue;
        auto g = check_homogeneous(item->poly, item->grading);
        auto dense = nu_sequence(g, 3);          // graded two-variable: dense carrier
        auto sparse = nu_sequence(item->poly, 3);  // plain polynomial: sparse carrier
        for (int e = 0; e < 3; ++e) {
            REQUIRE(dense[e].nu() == sparse[e].nu());
            REQUIRE(dense[e].reduced_power() == sparse[e].reduced_power());
        }
        ++checked;
    }
}

TEST_CASE("dense and sparse carriers agree on the reference binomial") {
    for (std::uint32_t p : {11u, 13u, 19u}) {
        auto g = graded("x^15 + x*y^7", p, {1, 2});
        auto dense = nu_sequence(g, 4);
        auto sparse = nu_sequence(g.poly(), 4);
        for (int e = 0; e < 4; ++e) {
            REQUIRE(dense[e].nu() == sparse[e].nu());
            REQUIRE(dense[e].reduced_power() == sparse[e].reduced_power());
        }
    }
}

TEST_CASE("capping the level depth yields an undetermined verdict") {
    auto g = graded("x^15 + x*y^7", 23, {1, 2});
    auto r = fpt_exact(g, FptOptions{1});
    CHECK_FALSE(r.exact());
    CHECK(r.levels_computed == 1);
    CHECK(r.survivors.size() > 1);
    // the lower bound nu_1/p and the survivor agreement invariant
    CHECK(r.value == Rational(4, 23));
    for (const auto& c : r.survivors)
        CHECK(scaled_truncation(c.value, 23, 1) == 4);
}

TEST_CASE("nu_sequence matches the exact-expansion oracle on a random corpus") {
    std::mt19937 rng(60301);
    const std::uint32_t primes[] = {2, 3, 5, 7};
    int checked = 0;
    while (checked < 25) {
        std::uint32_t p = primes[rng() % 4];
        int shape = static_cast<int>(rng() % 3);
        std::vector<std::int64_t> w =
            shape == 0 ? std::vector<std::int64_t>{1, 1}
                       : (shape == 1 ? std::vector<std::int64_t>{1, 2}
                                     : std::vector<std::int64_t>{1, 1, 1});
        std::int64_t deg = 2 + static_cast<std::int64_t>(rng() % (shape == 2 ? 4 : 7));
        auto item = testing::random_homogeneous(rng, p, w, deg);
        if (!item || !item->poly.in_maximal_ideal()) continue;
        auto oracle = testing::nu_by_expansion(item->poly, 3);
        auto seq = nu_sequence(item->poly, 3);
        for (int e = 0; e < 3; ++e) REQUIRE(seq[e].nu() == oracle[e]);
        ++checked;
    }
}

TEST_CASE("membership_test") {
    auto fg = parse_polynomial("x^15 + x*y^7 + x^14*y", 17);
    CHECK_FALSE(membership_test(fg, 3, 1));  // (f+g)^3 stays outside m^[17]
    auto f = parse_polynomial("x^15 + x*y^7", 17);
    CHECK(membership_test(f, 3, 1));  // while f^3 falls in

    CHECK_FALSE(membership_test(parse_polynomial("x*y", 5), 0, 2));
    CHECK(membership_test(parse_polynomial("x*y", 5), big_pow(5, 9), 9));
    CHECK_FALSE(membership_test(parse_polynomial("x*y", 5), big_pow(5, 9) - 1, 9));
}

TEST_CASE("fpt_exact on the paper's two-variable examples") {
    auto r7 = fpt_exact(graded("x^5 + x^3*y + x*y^2", 7, {1, 2}));
    REQUIRE(r7.exact());
    CHECK(r7.value == Rational(4, 7));  // trunc_1(3/5) at p = 2 mod 5
    CHECK_FALSE(r7.certificate.is_lambda);
    CHECK(r7.certificate.pair.L == 1);
    CHECK(r7.certificate.pair.E == 0);

    auto r29 = fpt_exact(graded("x^15 + x*y^7", 29, {1, 2}));
    REQUIRE(r29.exact());
    CHECK(r29.value == Rational(1, 5));
    CHECK(r29.certificate.is_lambda);

    auto r19 = fpt_exact(graded("x^15 + x*y^7", 19, {1, 2}));
    REQUIRE(r19.exact());
    CHECK(r19.value == Rational(72, 361));  // trunc_2(1/5)
    CHECK(r19.certificate.pair.L == 2);

    auto r17 = fpt_exact(graded("x^15 + x*y^7", 17, {1, 2}));
    REQUIRE(r17.exact());
    CHECK(r17.value == Rational(3, 17));
    CHECK(r17.certificate.pair.L == 1);
}

TEST_CASE("fpt_exact in characteristic 2") {
    auto cy = fpt_exact(graded("x1^7 + x2^7 + x3^7", 2, {1, 1, 1}));
    REQUIRE(cy.exact());
    CHECK(cy.value == Rational(1, 4));
    // non-uniqueness: 1/4 = trunc_2(3/7) = trunc_3(3/7) - 1/8; the engine
    // reports the constructive pair (2,0)
    CHECK(cy.certificate.pair.L == 2);
    CHECK(cy.certificate.pair.E == 0);

    auto weird = fpt_exact(graded("x1^15 + x2^15 + x3^15 + x4^15 + x5^15", 2, {1, 1, 1, 1, 1}));
    REQUIRE(weird.exact());
    CHECK(weird.value == Rational(1, 8));
}

TEST_CASE("fpt_exact via the secondary theorem and its failure for small p") {
    auto line = fpt_exact(graded("x + y^2", 3, {2, 1}));
    REQUIRE(line.exact());
    CHECK(line.value == Rational(1));

    // n > d > p: fpt <= 1/p, so the engine must not report 1
    CHECK_FALSE(secondary_theorem_applies(Grading({1, 1, 1, 1}), 3, 2));
    auto small = fpt_exact(graded("x1^3 + x2^3 + x3^3 + x4^3", 2, {1, 1, 1, 1}));
    REQUIRE(small.exact());
    CHECK(small.value == Rational(1, 2));
    CHECK(small.value <= Rational(1, 2));
}

TEST_CASE("p dividing deg f never passes the singularity gate") {
    // When p | deg f, Euler's relation degenerates into a syzygy of the
    // partials that a regular sequence cannot carry, so such inputs always
    // fail the isolated-singularity precondition; the p | b fallback inside
    // fpt_exact is defensive only.
    CHECK_THROWS_AS((void)fpt_exact(graded("x^3 + y^3", 3, {1, 1})), precondition_error);
    CHECK_THROWS_AS((void)fpt_exact(graded("x^9 + x^7*y + x*y^4", 3, {1, 2})),
                    precondition_error);
    CHECK_FALSE(has_isolated_singularity(graded("x^9 + x^7*y + x*y^4", 3, {1, 2})));
}

TEST_CASE("fpt_exact rejects non-isolated input") {
    CHECK_THROWS_AS((void)fpt_exact(graded("x^2*y", 5, {1, 1})), precondition_error);
}

TEST_CASE("thresholds confirmed by membership on the other route") {
    // fpt = trunc_L(1/5) means exactly that f^{p^L fpt} falls into m^[L]
    // while f^{p^L fpt - 1} stays out; square-and-multiply is independent of
    // the digit engine.
    struct Row {
        std::uint32_t p;
        std::uint64_t L;
    };
    for (Row row : {Row{13, 1}, Row{17, 1}, Row{19, 2}}) {
        auto f = parse_polynomial("x^15 + x*y^7", row.p, 2);
        Rational t = truncation(Rational(1, 5), row.p, row.L);
        BigInt exponent = (Rational(big_pow(row.p, row.L)) * t).num();
        CAPTURE(row.p);
        CHECK(membership_test(f, exponent, row.L));
        CHECK_FALSE(membership_test(f, exponent - 1, row.L));
    }
}

TEST_CASE("truncation identity") {
    auto f = graded("x^15 + x*y^7", 17, {1, 2});
    CHECK(verify_truncation_identity(f, Rational(3, 17), 3).ok);
    auto bad = verify_truncation_identity(f, Rational(1, 5), 1);
    CHECK_FALSE(bad.ok);
    CHECK(bad.first_failure == 1);

    CHECK(verify_truncation_identity(parse_polynomial("x*y", 7), Rational(1), 3).ok);
}

TEST_CASE("random corpus: fpt values verify and bounds hold") {
    std::mt19937 rng(171717);
    const std::uint32_t primes[] = {2, 3, 5, 7};
    int exact_seen = 0;
    int trials = 0;
    while (exact_seen < 20 && trials < 4000) {
        ++trials;
        std::uint32_t p = primes[rng() % 4];
        int shape = static_cast<int>(rng() % 3);
        std::vector<std::int64_t> w =
            shape == 0 ? std::vector<std::int64_t>{1, 1}
                       : (shape == 1 ? std::vector<std::int64_t>{1, 2}
                                     : std::vector<std::int64_t>{1, 1, 1});
        std::int64_t deg = 3 + static_cast<std::int64_t>(rng() % (shape == 2 ? 3 : 6));
        auto item = testing::random_homogeneous(rng, p, w, deg);
        if (!item || !item->poly.in_maximal_ideal()) continue;
        auto g = check_homogeneous(item->poly, item->grading);
        if (!has_isolated_singularity(g)) continue;

        Rational lambda = lambda_of(g.grading(), g.degree());
        if (lambda.den() % p == 0) continue;
        auto result = fpt_exact(g, FptOptions{14});
        REQUIRE(result.exact());
        CHECK(verify_truncation_identity(g, result.value, 4).ok);
        CHECK(result.value <= lambda);
        ++exact_seen;
    }
    CHECK(exact_seen >= 20);
}

TEST_CASE("weighted three-variable example realizes its whole candidate list") {
    // x^9 + x y^4 + z^3 under (1,2,3), lambda = 2/3: thresholds land in the
    // per-class lists and every listed form occurs for some p <= 23
    const Rational lambda(2, 3);
    std::set<std::pair<std::uint32_t, int>> uncovered = {{1, 0}, {1, 1}, {2, 1}, {2, 2}};
    for (std::uint32_t p : {5u, 7u, 11u, 13u, 17u, 19u, 23u}) {
        auto f = graded("x^9 + x*y^4 + z^3", p, {1, 2, 3});
        auto r = fpt_exact(f);
        REQUIRE(r.exact());
        Rational t1 = truncation(lambda, p, 1);
        if (p % 3 == 1) {
            bool is_lambda = r.value == lambda;
            REQUIRE((is_lambda || r.value == t1));
            uncovered.erase({1, is_lambda ? 0 : 1});
        } else {
            bool is_t1 = r.value == t1;
            REQUIRE((is_t1 || r.value == t1 - Rational(1, p)));
            uncovered.erase({2, is_t1 ? 1 : 2});
        }
    }
    CHECK(uncovered.empty());
}

TEST_CASE("perturbation report for the p=17 counterexample family") {
    auto f = graded("x^15 + x*y^7", 17, {1, 2});
    for (const char* gtext : {"x^14*y", "x^12*y^2", "y^8", "x^13*y^2", "x^14*y^2"}) {
        auto g = parse_polynomial(gtext, 17, 2);
        auto rep = perturbation_report(f, g);
        CHECK(rep.fpt_f == Rational(3, 17));
        CHECK(rep.lower_ok);
        REQUIRE(rep.upper_ok.has_value());
        CHECK_FALSE(*rep.upper_ok);  // certifies fpt(f+g) > 3/17
        CHECK_FALSE(rep.constancy_guaranteed);
        CHECK(rep.min_perturbation_degree == 28);  // 2*15 - 3 + 1
    }
}

TEST_CASE("perturbation constancy at p=11 via integral (p^L - 1) lambda") {
    auto f = graded("x^15 + x*y^7", 11, {1, 2});
    auto rep = perturbation_report(f, parse_polynomial("x^16", 11, 2));
    CHECK(rep.fpt_f == Rational(2, 11));
    CHECK(rep.constancy_guaranteed);  // L = 1 and (11 - 1)/5 is integral
    REQUIRE(rep.upper_ok.has_value());
    CHECK(*rep.upper_ok);
}

TEST_CASE("perturbation report rejects low-degree g") {
    auto f = graded("x^15 + x*y^7", 17, {1, 2});
    CHECK_THROWS_AS((void)perturbation_report(f, parse_polynomial("x^15", 17, 2)),
                    precondition_error);
}
