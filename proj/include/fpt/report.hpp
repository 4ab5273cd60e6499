/*
 * report.hpp
 * ----------
 * Machine and human output: the JSON schema for threshold computations
 * (every integer serialized as a decimal string), the candidate table, and
 * the CSV rows of a bad-prime sweep.  Parsing the emitted JSON reproduces
 * the exact rationals.
 */
#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fpt/candidates.hpp"
#include "fpt/fptengine.hpp"

namespace fpt {

using Json = nlohmann::ordered_json;

inline Json rational_json(const Rational& r) {
    return Json{{"num", r.num().str()}, {"den", r.den().str()}};
}

inline Rational rational_from_json(const Json& j) {
    return Rational(BigInt(j.at("num").get<std::string>()),
                    BigInt(j.at("den").get<std::string>()));
}

inline Json fpt_result_json(std::uint32_t p, const Grading& grading, const std::string& poly_text,
                            const Rational& lambda, const FptResult& result) {
    Json j;
    j["prime"] = std::to_string(p);
    Json weights = Json::array();
    for (auto w : grading.weights) weights.push_back(std::to_string(w));
    j["weights"] = weights;
    j["poly"] = poly_text;
    j["lambda"] = rational_json(lambda);

    Json res;
    res["kind"] = result.exact() ? "exact" : "undetermined";
    res["num"] = result.value.num().str();
    res["den"] = result.value.den().str();
    if (result.exact()) {
        if (result.certificate.is_lambda) {
            res["L"] = "inf";
            res["E"] = "0";
        } else {
            res["L"] = std::to_string(result.certificate.pair.L);
            res["E"] = result.certificate.pair.E.str();
        }
    } else {
        Json survivors = Json::array();
        for (const Candidate& c : result.survivors) {
            Json s = rational_json(c.value);
            if (!c.pairs.empty()) {
                s["L"] = std::to_string(c.pairs.front().L);
                s["E"] = c.pairs.front().E.str();
            }
            survivors.push_back(s);
        }
        res["survivors"] = survivors;
    }
    j["result"] = res;

    Json nu = Json::array();
    for (const auto& v : result.nu_levels) nu.push_back(v.str());
    j["nu"] = nu;
    return j;
}

inline std::string candidate_provenance(const Candidate& c) {
    std::string out;
    if (c.from_lambda) out += "lambda";
    for (const auto& le : c.pairs) {
        if (!out.empty()) out += ", ";
        out += "(L=" + std::to_string(le.L) + ",E=" + le.E.str() + ")";
    }
    return out;
}

inline std::string candidates_table(const std::vector<Candidate>& cands) {
    std::ostringstream os;
    os << "value\tprovenance\tfilters\n";
    for (const Candidate& c : cands) {
        os << c.value.str() << '\t' << candidate_provenance(c) << '\t';
        for (std::size_t i = 0; i < c.filters_passed.size(); ++i)
            os << (i ? "," : "") << c.filters_passed[i];
        os << '\n';
    }
    return os.str();
}

inline Json candidates_json(const std::vector<Candidate>& cands) {
    Json arr = Json::array();
    for (const Candidate& c : cands) {
        Json j = rational_json(c.value);
        j["lambda"] = c.from_lambda;
        Json pairs = Json::array();
        for (const auto& le : c.pairs)
            pairs.push_back(Json{{"L", std::to_string(le.L)}, {"E", le.E.str()}});
        j["pairs"] = pairs;
        Json filters = Json::array();
        for (const auto& f : c.filters_passed) filters.push_back(f);
        j["filters"] = filters;
        arr.push_back(j);
    }
    return arr;
}

struct BadPrimeRow {
    std::uint32_t prime;
    std::int64_t residue;
    bool certified_bad;
    std::string fpt;  // empty when not computed
    Rational lct;
    std::string difference;
};

inline std::string bad_prime_csv_row(const BadPrimeRow& r) {
    std::ostringstream os;
    os << r.prime << ',' << r.residue << ',' << (r.certified_bad ? "yes" : "no") << ',' << r.fpt
       << ',' << r.lct.str() << ',' << r.difference << '\n';
    return os.str();
}

inline std::string bad_primes_csv(const std::vector<BadPrimeRow>& rows) {
    std::string out = "prime,residue,certified_bad,fpt,lct,difference\n";
    for (const auto& r : rows) out += bad_prime_csv_row(r);
    return out;
}

}  // namespace fpt
