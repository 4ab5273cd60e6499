#include <doctest.h>

#include <random>

#include "fpt/gradedpoly.hpp"
#include "oracles.hpp"

using namespace fpt;

TEST_CASE("weighted degree") {
    Grading g12({1, 2});
    CHECK(weighted_degree({0, 0}, g12) == 0);
    CHECK(weighted_degree({1, 7}, g12) == 15);
    CHECK(weighted_degree({3, 4, 5}, Grading({1, 1, 1})) == 12);
    CHECK_THROWS_AS(weighted_degree({1, 2, 3}, g12), precondition_error);
    CHECK_THROWS_AS(Grading({1, 0}), precondition_error);
}

TEST_CASE("homogeneity validation") {
    auto f = check_homogeneous(parse_polynomial("x^15 + x*y^7", 17), Grading({1, 2}));
    CHECK(f.degree() == 15);
    auto g = check_homogeneous(parse_polynomial("x^5 + x^3*y + x*y^2", 7), Grading({1, 2}));
    CHECK(g.degree() == 5);
    CHECK_THROWS_WITH_AS(
        (void)check_homogeneous(parse_polynomial("x^2 + y^3", 5), Grading({1, 1})),
        doctest::Contains("inhomogeneous"), precondition_error);
    CHECK_THROWS_WITH_AS((void)check_homogeneous(parse_polynomial("x + 1", 5), Grading({1})),
                         doctest::Contains("not in m"), precondition_error);
    CHECK_THROWS_AS((void)check_homogeneous(Polynomial(5, 2), Grading({1, 1})),
                    precondition_error);
}

TEST_CASE("graded dimension and enumeration") {
    CHECK(graded_dim(Grading({1, 1}), 3) == 4);
    CHECK(graded_dim(Grading({1, 2}), 4) == 3);  // x^4, x^2 y, y^2
    CHECK(graded_dim(Grading({1, 2}), 0) == 1);
    CHECK(graded_dim(Grading({2, 3}), 1) == 0);
    auto ms = graded_monomials(Grading({1, 2}), 4);
    CHECK(ms == std::vector<Monomial>{{0, 2}, {2, 1}, {4, 0}});
}

TEST_CASE("isolated singularity, named cases") {
    CHECK(has_isolated_singularity(
        check_homogeneous(parse_polynomial("x^3 + y^3", 7), Grading({1, 1}))));
    CHECK_FALSE(has_isolated_singularity(
        check_homogeneous(parse_polynomial("x^2*y", 5), Grading({1, 1}))));
    CHECK(has_isolated_singularity(
        check_homogeneous(parse_polynomial("x1^7 + x2^7 + x3^7", 2), Grading({1, 1, 1}))));
    // zero partial short-circuits
    CHECK_FALSE(has_isolated_singularity(
        check_homogeneous(parse_polynomial("x^5 + y^5", 5), Grading({1, 1}))));
    // diagonal with huge graded pieces takes the monomial-Jacobian path
    CHECK(has_isolated_singularity(check_homogeneous(
        parse_polynomial("x1^15 + x2^15 + x3^15 + x4^15 + x5^15", 2), Grading({1, 1, 1, 1, 1}))));
    // window path on a non-monomial Jacobian
    CHECK(has_isolated_singularity(
        check_homogeneous(parse_polynomial("x^5 + x^3*y + x*y^2", 7), Grading({1, 2}))));
    CHECK(has_isolated_singularity(
        check_homogeneous(parse_polynomial("x^9 + x*y^4 + z^3", 5), Grading({1, 2, 3}))));
}

TEST_CASE("isolated singularity agrees with the pure-power oracle") {
    std::mt19937 rng(31337);
    const std::uint32_t primes[] = {2, 3, 5, 7};
    int checked = 0;
    while (checked < 120) {
        std::uint32_t p = primes[rng() % 4];
        bool weighted = rng() % 3 == 0;
        std::int64_t deg = 2 + static_cast<std::int64_t>(rng() % 7);
        auto item = testing::random_homogeneous(
            rng, p, weighted ? std::vector<std::int64_t>{1, 2} : std::vector<std::int64_t>{1, 1},
            deg);
        if (!item) continue;
        auto graded = check_homogeneous(item->poly, item->grading);
        CHECK(has_isolated_singularity(graded) == testing::isolated_by_pure_powers(graded));
        ++checked;
    }
}

TEST_CASE("isolated singularity, exhaustive small sweep") {
    // every nonzero binary form of degree <= 4 over F_2 and F_3
    for (std::uint32_t p : {2u, 3u}) {
        for (std::int64_t deg = 2; deg <= 4; ++deg) {
            Grading g({1, 1});
            auto monomials = graded_monomials(g, deg);
            std::size_t combos = 1;
            for (std::size_t i = 0; i < monomials.size(); ++i) combos *= p;
            for (std::size_t code = 1; code < combos; ++code) {
                Polynomial f(p, 2);
                std::size_t c = code;
                for (const auto& m : monomials) {
                    f.add_term(m, static_cast<std::int64_t>(c % p));
                    c /= p;
                }
                if (f.is_zero()) continue;
                auto graded = check_homogeneous(f, g);
                CAPTURE(f.str());
                CAPTURE(p);
                REQUIRE(has_isolated_singularity(graded) ==
                        testing::isolated_by_pure_powers(graded));
            }
        }
    }
}

TEST_CASE("euler identity") {
    auto f = check_homogeneous(parse_polynomial("x^5 + x^3*y + x*y^2", 7), Grading({1, 2}));
    CHECK(euler_membership_check(f));
    auto g = check_homogeneous(parse_polynomial("x^15 + x*y^7", 11), Grading({1, 2}));
    CHECK(euler_membership_check(g));
    auto h = check_homogeneous(parse_polynomial("x^15 + x*y^7", 5), Grading({1, 2}));
    CHECK_THROWS_AS((void)euler_membership_check(h), precondition_error);  // 5 | 15
}

TEST_CASE("euler identity holds on random homogeneous polynomials") {
    std::mt19937 rng(808);
    const std::uint32_t primes[] = {3, 5, 7, 11};
    int checked = 0;
    while (checked < 60) {
        std::uint32_t p = primes[rng() % 4];
        std::int64_t deg = 2 + static_cast<std::int64_t>(rng() % 8);
        bool weighted = rng() % 2 == 0;
        auto item = testing::random_homogeneous(
            rng, p, weighted ? std::vector<std::int64_t>{1, 2} : std::vector<std::int64_t>{1, 1, 1},
            deg);
        if (!item) continue;
        if (deg % p == 0) continue;
        auto graded = check_homogeneous(item->poly, item->grading);
        CHECK(euler_membership_check(graded));
        ++checked;
    }
}

TEST_CASE("homogeneous survivors of reduction respect the degree bound") {
    // deg h <= (p^e - 1) * sum(w) whenever the reduction of h is nonzero
    std::mt19937 rng(2718);
    int checked = 0;
    while (checked < 60) {
        std::uint32_t p = 2 + (rng() % 2) * 3;  // 2 or 5
        std::int64_t deg = 2 + static_cast<std::int64_t>(rng() % 12);
        auto item = testing::random_homogeneous(rng, p, {1, 2}, deg);
        if (!item) continue;
        for (std::uint64_t e = 1; e <= 3; ++e) {
            if (!reduce_mod_frobenius(item->poly, e).is_zero()) {
                CHECK(BigInt(deg) <= (big_pow(p, e) - 1) * item->grading.total());
            }
        }
        ++checked;
    }
}
