#include <doctest.h>

#include <numeric>

#include "fpt/cli.hpp"
#include "fpt/report.hpp"

using namespace fpt;

TEST_CASE("json output round-trips exact rationals") {
    auto f = check_homogeneous(parse_polynomial("x^15 + x*y^7", 19, 2), Grading({1, 2}));
    FptResult r = fpt_exact(f);
    Json j = fpt_result_json(19, f.grading(), "x^15 + x*y^7", lambda_of(f.grading(), 15), r);

    Json parsed = Json::parse(j.dump());
    CHECK(rational_from_json(parsed["lambda"]) == Rational(1, 5));
    CHECK(rational_from_json(parsed["result"]) == Rational(72, 361));
    CHECK(parsed["result"]["kind"] == "exact");
    CHECK(parsed["result"]["L"] == "2");
    CHECK(parsed["prime"] == "19");
    // nu levels serialize as decimal strings
    for (const auto& v : parsed["nu"]) CHECK_FALSE(v.get<std::string>().empty());
}

TEST_CASE("json output for an undetermined verdict lists survivors") {
    auto f = check_homogeneous(parse_polynomial("x^15 + x*y^7", 23, 2), Grading({1, 2}));
    FptResult r = fpt_exact(f, FptOptions{1});
    REQUIRE_FALSE(r.exact());
    Json j = fpt_result_json(23, f.grading(), "x^15 + x*y^7", Rational(1, 5), r);
    Json parsed = Json::parse(j.dump());
    CHECK(parsed["result"]["kind"] == "undetermined");
    CHECK(parsed["result"]["survivors"].size() == r.survivors.size());
    CHECK(rational_from_json(parsed["result"]["survivors"][0]) == r.survivors[0].value);
}

TEST_CASE("prime expansion") {
    CHECK(expand_primes("17") == std::vector<std::uint32_t>{17});
    CHECK(expand_primes("7,11,13") == std::vector<std::uint32_t>{7, 11, 13});
    CHECK(expand_primes("7..31") == std::vector<std::uint32_t>{7, 11, 13, 17, 19, 23, 29, 31});
    CHECK_THROWS_AS(expand_primes("15"), precondition_error);  // composites are rejected
    CHECK_THROWS_AS(expand_primes("x"), parse_error);
}

TEST_CASE("run: fpt command over a prime range") {
    JobSpec spec;
    spec.command = JobSpec::Command::fpt;
    spec.primes = {11, 13, 17};
    spec.weights = {1, 2};
    spec.poly = "x^15 + x*y^7";
    auto rep = run(spec);
    REQUIRE(rep.exit_code == 0);
    CHECK(rep.out.find("p=11  lambda=1/5  fpt=2/11  (L=1, E=0)") != std::string::npos);
    CHECK(rep.out.find("p=17  lambda=1/5  fpt=3/17") != std::string::npos);

    // deterministic and order-stable, also across worker counts
    auto again = run(spec);
    CHECK(again.out == rep.out);
    spec.threads = 2;
    CHECK(run(spec).out == rep.out);
}

TEST_CASE("run: json fpt output parses back") {
    JobSpec spec;
    spec.command = JobSpec::Command::fpt;
    spec.primes = {17};
    spec.weights = {1, 2};
    spec.poly = "x^15 + x*y^7";
    spec.json = true;
    auto rep = run(spec);
    REQUIRE(rep.exit_code == 0);
    Json j = Json::parse(rep.out);
    CHECK(rational_from_json(j["result"]) == Rational(3, 17));
}

TEST_CASE("run: nu and candidates commands") {
    JobSpec spec;
    spec.command = JobSpec::Command::nu;
    spec.primes = {2};
    spec.poly = "x1^7 + x2^7 + x3^7";
    spec.levels = 3;
    auto rep = run(spec);
    REQUIRE(rep.exit_code == 0);
    CHECK(rep.out.find("nu: 0 0 1") != std::string::npos);

    JobSpec cand;
    cand.command = JobSpec::Command::candidates;
    cand.primes = {11};
    cand.lambda = "2/7";
    cand.nvars = 2;
    auto crep = run(cand);
    REQUIRE(crep.exit_code == 0);
    // p = 4 mod 7: only trunc_1(2/7) = 21/77 = 3/11 survives the filter
    CHECK(crep.out.find("3/11") != std::string::npos);
    CHECK(crep.out.find("(L=1,E=0)") != std::string::npos);
}

TEST_CASE("run: error exit codes") {
    JobSpec spec;
    spec.command = JobSpec::Command::fpt;
    spec.primes = {7};
    spec.weights = {1, 1};
    spec.poly = "x^2 +";  // malformed
    CHECK(run(spec).exit_code == 2);

    spec.poly = "x^2*y";  // not an isolated singularity
    CHECK(run(spec).exit_code == 3);

    spec.poly = "x^2 + y^3";  // inhomogeneous
    CHECK(run(spec).exit_code == 3);
}

TEST_CASE("run: bad-primes sweep produces CSV") {
    JobSpec spec;
    spec.command = JobSpec::Command::bad_primes;
    spec.primes = expand_primes("7..29");
    spec.lambda = "2/5";
    spec.poly = "x^5 + y^5";
    spec.weights = {1, 1};
    auto rep = run(spec);
    REQUIRE(rep.exit_code == 0);
    CHECK(rep.out.find("prime,residue,certified_bad,fpt,lct,difference") != std::string::npos);
    CHECK(rep.out.find("13,3,yes") != std::string::npos);
    CHECK(rep.out.find("11,1,no") != std::string::npos);
    CHECK(rep.out.find("density lower bound 1/4") != std::string::npos);
}

TEST_CASE("run: perturb command") {
    JobSpec spec;
    spec.command = JobSpec::Command::perturb;
    spec.primes = {17};
    spec.weights = {1, 2};
    spec.poly = "x^15 + x*y^7";
    spec.perturb_g = "x^14*y";
    auto rep = run(spec);
    REQUIRE(rep.exit_code == 0);
    CHECK(rep.out.find("fpt(f)=3/17") != std::string::npos);
    CHECK(rep.out.find("upper_ok=no") != std::string::npos);
    CHECK(rep.out.find("min_perturbation_degree=28") != std::string::npos);
}

TEST_CASE("candidate table serialization") {
    auto cands = two_variable_candidates(2, 7, 11);
    std::string table = candidates_table(cands);
    CHECK(table.find("value\tprovenance\tfilters") != std::string::npos);
    CHECK(table.find("lambda") != std::string::npos);
}

TEST_CASE("digit list serialization") {
    CHECK(format_digits({0, 1, 1}) == ". 0 : 1 : 1");
    CHECK(format_digits({}) == ".");
}

TEST_CASE("verify-paper is deterministic") {
    JobSpec spec;
    spec.command = JobSpec::Command::verify_paper;
    auto first = run(spec);
    auto second = run(spec);
    CHECK(first.exit_code == 0);
    CHECK(first.out == second.out);
    CHECK(first.out.find("verify-paper: all checks passed") != std::string::npos);
}
