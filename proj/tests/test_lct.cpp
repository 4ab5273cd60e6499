#include <doctest.h>

#include "fpt/fptengine.hpp"
#include "fpt/lct.hpp"

using namespace fpt;

TEST_CASE("lct values") {
    CHECK(lct_of(Grading({1, 1, 1}), 3) == Rational(1));
    CHECK(lct_of(Grading({1, 2}), 15) == Rational(1, 5));
    CHECK(lct_of(Grading({1, 1, 1, 1, 1, 1}), 7) == Rational(6, 7));  // 1 - 1/d shape
}

TEST_CASE("difference bounds") {
    auto diag = difference_bounds(4, 1, 1, 7);  // diagonal case: 1/p and (d-2)/p
    CHECK(diag.lower == Rational(1, 7));
    CHECK(diag.upper == Rational(2, 7));

    auto hm = difference_bounds(2, 2, 5, 13);  // ord_13(5) = 4
    CHECK(hm.lower == Rational(1, BigInt(5) * 13 * 13 * 13 * 13));
    CHECK(hm.upper == Rational(4, 5 * 13));

    CHECK_THROWS_AS(difference_bounds(2, 2, 5, 5), precondition_error);
}

TEST_CASE("certified bad primes") {
    CHECK(is_certified_bad_prime(2, 5, 13));        // 13*2 = 26 = 1 mod 5
    CHECK_FALSE(is_certified_bad_prime(2, 5, 11));  // 11 = 1 mod 5 keeps 2 p^e = 2
    CHECK(is_certified_bad_prime(3, 5, 7));         // 3*7 = 21 = 1 mod 5
    CHECK_THROWS_AS(is_certified_bad_prime(1, 4, 7), precondition_error);
}

TEST_CASE("certified bad primes really miss lambda") {
    // whenever the residue criterion fires, the computed threshold drops below lct
    struct Row {
        const char* text;
        std::vector<std::int64_t> w;
    };
    const Row rows[] = {{"x^5 + y^5", {1, 1}}, {"x^5 + x^3*y + x*y^2", {1, 2}}};
    for (const auto& row : rows) {
        for (std::uint32_t p : {7u, 11u, 13u, 17u, 19u, 23u, 29u}) {
            auto f = check_homogeneous(parse_polynomial(row.text, p, 2), Grading(row.w));
            Rational lam = lambda_of(f.grading(), f.degree());
            if (lam.num() == 1 || lam.den() % p == 0) continue;
            if (!is_certified_bad_prime(lam.num(), lam.den(), p)) continue;
            auto r = fpt_exact(f);
            REQUIRE(r.exact());
            CHECK(r.value != lam);
        }
    }
}

TEST_CASE("density lower bounds") {
    CHECK(bad_density_lower_bound(2, 5) == Rational(1, 4));
    CHECK(bad_density_lower_bound(2, 3) == Rational(1, 2));
    CHECK(bad_density_lower_bound(1, 1) == Rational(0));
    CHECK(bad_density_lower_bound(6, 7, true) == Rational(5, 6));
    CHECK_THROWS_AS(bad_density_lower_bound(3, 7, true), precondition_error);
}

TEST_CASE("empirical densities near 1/phi(b)") {
    const Rational tol(1, 20);
    for (std::int64_t b : {3, 5, 7}) {
        Rational target(1, BigInt(euler_phi(static_cast<std::uint64_t>(b))));
        for (std::int64_t c = 1; c < b; ++c) {
            if (std::gcd(c, b) != 1) continue;
            Rational d = empirical_density(
                [b, c](std::uint32_t q) { return q % b == static_cast<std::uint64_t>(c); },
                10000);
            CHECK((d - target).abs() <= tol);
        }
    }
    CHECK(empirical_density([](std::uint32_t) { return true; }, 100) == Rational(1));
    Rational bad = empirical_density(
        [](std::uint32_t q) { return q != 5 && is_certified_bad_prime(2, 5, q); }, 10000);
    CHECK(bad >= Rational(1, 4) - tol);
}

TEST_CASE("diagonal sharpness against the engine") {
    for (std::int64_t d : {3, 4, 5}) {
        std::string text;
        for (std::int64_t i = 1; i <= d; ++i)
            text += (i > 1 ? " + x" : "x") + std::to_string(i) + "^" + std::to_string(d);
        std::vector<std::int64_t> w(static_cast<std::size_t>(d), 1);
        for (std::uint32_t p : primes_up_to(31)) {
            if (p <= d) continue;
            auto f = check_homogeneous(parse_polynomial(text, p, static_cast<int>(d)), Grading(w));
            auto r = fpt_exact(f);
            REQUIRE(r.exact());
            Rational gap = lct_of(f.grading(), f.degree()) - r.value;
            CHECK(gap == Rational(lpr(static_cast<std::int64_t>(p), d) - 1,
                                  static_cast<std::int64_t>(p)));
            if (gap != Rational(0)) {
                auto b = difference_bounds(f.nvars(), 1, 1, p);
                CHECK(gap >= b.lower);
                CHECK(gap <= b.upper);
            }
        }
    }
}
