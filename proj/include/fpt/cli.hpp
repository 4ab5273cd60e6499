/*
 * cli.hpp
 * -------
 * Job execution behind the command-line front end.  A JobSpec names the
 * subcommand and its inputs; run() produces the full report text and the
 * process exit code (0 ok, 1 verification mismatch, 2 parse error,
 * 3 precondition violation).
 *
 * Independent (polynomial, prime) jobs fan out across a small worker pool
 * capped by FPT_THREADS; reports are assembled in input order.
 */
#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "fpt/candidates.hpp"
#include "fpt/fptengine.hpp"
#include "fpt/lct.hpp"
#include "fpt/report.hpp"
#include "fpt/verify.hpp"

namespace fpt {

struct JobSpec {
    enum class Command { fpt, nu, candidates, lct, bad_primes, perturb, verify_paper };
    Command command = Command::fpt;

    std::vector<std::uint32_t> primes;
    std::vector<std::int64_t> weights;
    std::string poly;
    std::string perturb_g;
    std::string lambda;  // "a/b" input for candidates and bad-primes
    int nvars = 0;
    std::uint64_t e_cap = 12;
    std::uint64_t levels = 4;
    std::uint64_t depth = 10;
    bool json = false;
    bool full_suite = false;
    bool unfiltered = false;
    std::uint32_t density_cap = 10000;
    unsigned threads = 0;  // 0 = FPT_THREADS env, then hardware
};

struct RunReport {
    int exit_code = 0;
    std::string out;
};

// "17", "7,11,13" or "7..31"; single values must be prime, ranges expand
// through the sieve.
inline std::vector<std::uint32_t> expand_primes(const std::string& text) {
    std::vector<std::uint32_t> out;
    auto parse_u32 = [](const std::string& s) -> std::uint32_t {
        try {
            unsigned long v = std::stoul(s);
            if (v < 2 || v > 1'000'000) throw parse_error("prime out of range: " + s);
            return static_cast<std::uint32_t>(v);
        } catch (const std::logic_error&) {
            throw parse_error("malformed prime: " + s);
        }
    };
    auto dots = text.find("..");
    if (dots != std::string::npos) {
        std::uint32_t lo = parse_u32(text.substr(0, dots));
        std::uint32_t hi = parse_u32(text.substr(dots + 2));
        for (std::uint32_t q : primes_up_to(hi))
            if (q >= lo) out.push_back(q);
        return out;
    }
    std::stringstream ss(text);
    std::string piece;
    while (std::getline(ss, piece, ',')) {
        std::uint32_t v = parse_u32(piece);
        if (!is_prime(v)) throw precondition_error("not a prime: " + piece);
        out.push_back(v);
    }
    if (out.empty()) throw parse_error("no primes given");
    return out;
}

namespace detail {

inline unsigned worker_count(const JobSpec& spec) {
    if (spec.threads > 0) return spec.threads;
    if (const char* env = std::getenv("FPT_THREADS")) {
        long v = std::atol(env);
        if (v > 0) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

// Order-stable parallel map over indices [0, count).
template <class Fn>
std::vector<std::string> fan_out(std::size_t count, unsigned workers, Fn&& fn) {
    std::vector<std::string> results(count);
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) results[i] = fn(i);
        return results;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    for (unsigned w = 0; w < workers && w < count; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    results[i] = fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
    return results;
}

inline GradedPolynomial graded_input(const JobSpec& spec, std::uint32_t p) {
    if (spec.weights.empty()) throw precondition_error("missing --weights");
    for (auto w : spec.weights)
        if (w < 1) throw precondition_error("weights must be >= 1");
    Polynomial f = parse_polynomial(spec.poly, p, static_cast<int>(spec.weights.size()));
    return check_homogeneous(f, Grading(spec.weights));
}

inline std::string certificate_text(const FptCertificate& cert) {
    if (cert.is_lambda) return "lambda";
    return "L=" + std::to_string(cert.pair.L) + ", E=" + cert.pair.E.str();
}

inline std::string run_fpt(const JobSpec& spec) {
    auto one = [&](std::size_t i) -> std::string {
        std::uint32_t p = spec.primes[i];
        GradedPolynomial f = graded_input(spec, p);
        FptResult r = fpt_exact(f, FptOptions{spec.e_cap});
        Rational lam = lambda_of(f.grading(), f.degree());
        if (spec.json) return fpt_result_json(p, f.grading(), spec.poly, lam, r).dump();
        std::ostringstream os;
        os << "p=" << p << "  lambda=" << lam.str() << "  ";
        if (r.exact()) {
            os << "fpt=" << r.value.str() << "  (" << certificate_text(r.certificate) << ")";
        } else {
            os << "undetermined  lower_bound=" << r.value.str() << "  survivors=";
            for (std::size_t k = 0; k < r.survivors.size(); ++k)
                os << (k ? "," : "") << r.survivors[k].value.str();
        }
        return os.str();
    };
    auto lines = fan_out(spec.primes.size(), worker_count(spec), one);
    std::string out;
    for (const auto& l : lines) out += l + "\n";
    return out;
}

inline std::string run_nu(const JobSpec& spec) {
    std::string out;
    for (std::uint32_t p : spec.primes) {
        std::vector<NuRecord> seq;
        if (!spec.weights.empty()) {
            seq = nu_sequence(graded_input(spec, p), spec.levels);
        } else {
            seq = nu_sequence(parse_polynomial(spec.poly, p, spec.nvars), spec.levels);
        }
        if (spec.json) {
            Json j;
            j["prime"] = std::to_string(p);
            j["poly"] = spec.poly;
            Json nu = Json::array();
            for (const auto& rec : seq) nu.push_back(rec.nu().str());
            j["nu"] = nu;
            out += j.dump() + "\n";
        } else {
            std::ostringstream os;
            os << "p=" << p << "  nu:";
            for (const auto& rec : seq) {
                os << ' ' << rec.nu().str();
                Rational lb = fpt_lower_bound(rec);
                if (&rec == &seq.back()) os << "  (nu_e/p^e = " << lb.str() << ")";
            }
            out += os.str() + "\n";
        }
    }
    return out;
}

inline std::string run_candidates(const JobSpec& spec) {
    Rational lam = Rational::parse(spec.lambda);
    if (lam.num() <= 0 || lam > Rational(1))
        throw precondition_error("lambda must lie in (0,1]");
    int n = spec.nvars > 0 ? spec.nvars : 2;
    std::string out;
    for (std::uint32_t p : spec.primes) {
        std::vector<Candidate> cands =
            n == 2 ? two_variable_candidates(lam.num(), lam.den(), p)
                   : main_candidates(n, lam.num(), lam.den(), p);
        if (!spec.unfiltered) cands = digit_minimality_filter(cands, p, spec.depth);
        if (spec.json) {
            Json j;
            j["prime"] = std::to_string(p);
            j["n"] = std::to_string(n);
            j["lambda"] = rational_json(lam);
            j["candidates"] = candidates_json(cands);
            out += j.dump() + "\n";
        } else {
            out += "p=" + std::to_string(p) + "\n" + candidates_table(cands);
        }
    }
    return out;
}

inline std::string run_lct(const JobSpec& spec) {
    if (spec.weights.empty()) throw precondition_error("missing --weights");
    Grading g(spec.weights);
    GradedPolynomial f = graded_input(spec, spec.primes.front());
    Rational lct = lct_of(g, f.degree());
    std::string out;
    for (std::uint32_t p : spec.primes) {
        std::ostringstream os;
        if (lct.den() % p == 0) {
            os << "p=" << p << "  lct=" << lct.str() << "  (p divides the denominator)";
        } else {
            DiffBounds b = difference_bounds(f.nvars(), lct.num(), lct.den(), p);
            std::uint64_t period = mult_order(BigInt(p), lct.den());
            auto digits = digit_stream_oracle(lct, p, std::min<std::uint64_t>(period + 1, 12));
            os << "p=" << p << "  lct=" << lct.str() << "  digits=" << format_digits(digits)
               << "  diff_lower=" << b.lower.str() << "  diff_upper=" << b.upper.str();
        }
        out += os.str() + "\n";
    }
    return out;
}

inline std::string run_bad_primes(const JobSpec& spec) {
    Rational lam = Rational::parse(spec.lambda);
    if (lam.num() <= 0 || lam > Rational(1))
        throw precondition_error("lct must lie in (0,1]");
    const bool compute_fpt = !spec.poly.empty();
    auto one = [&](std::size_t i) -> std::string {
        std::uint32_t p = spec.primes[i];
        BadPrimeRow row;
        row.prime = p;
        row.residue = static_cast<std::int64_t>(lpr(BigInt(p), lam.den()) % lam.den());
        row.lct = lam;
        bool applicable = lam.num() != 1 && lam.den() % p != 0;
        row.certified_bad =
            applicable && is_certified_bad_prime(lam.num(), lam.den(), p);
        if (compute_fpt && lam.den() % p != 0) {
            FptResult r = fpt_exact(graded_input(spec, p), FptOptions{spec.e_cap});
            if (r.exact()) {
                row.fpt = r.value.str();
                row.difference = (lam - r.value).str();
            }
        }
        return bad_prime_csv_row(row);
    };
    auto rows = fan_out(spec.primes.size(), worker_count(spec), one);
    std::string out = "prime,residue,certified_bad,fpt,lct,difference\n";
    std::size_t certified = 0;
    for (const auto& r : rows) out += r;
    for (std::uint32_t p : spec.primes)
        if (lam.num() != 1 && lam.den() % p != 0 &&
            is_certified_bad_prime(lam.num(), lam.den(), p))
            ++certified;
    std::ostringstream tail;
    tail << "# certified " << certified << "/" << spec.primes.size() << " primes";
    if (lam.num() != 1) {
        Rational bound = bad_density_lower_bound(lam.num(), lam.den());
        tail << "; density lower bound " << bound.str();
    }
    out += tail.str() + "\n";
    return out;
}

inline std::string run_perturb(const JobSpec& spec) {
    std::string out;
    for (std::uint32_t p : spec.primes) {
        GradedPolynomial f = graded_input(spec, p);
        Polynomial g = parse_polynomial(spec.perturb_g, p, f.nvars());
        PerturbationReport rep = perturbation_report(f, g, FptOptions{spec.e_cap});
        if (spec.json) {
            Json j;
            j["prime"] = std::to_string(p);
            j["f"] = spec.poly;
            j["g"] = spec.perturb_g;
            j["fpt_f"] = rational_json(rep.fpt_f);
            j["lower_ok"] = rep.lower_ok;
            if (rep.upper_ok.has_value()) j["upper_ok"] = *rep.upper_ok;
            j["constancy_guaranteed"] = rep.constancy_guaranteed;
            j["min_perturbation_degree"] = std::to_string(rep.min_perturbation_degree);
            out += j.dump() + "\n";
        } else {
            std::ostringstream os;
            os << "p=" << p << "  fpt(f)=" << rep.fpt_f.str() << "  lower_ok=yes  upper_ok=";
            if (!rep.upper_ok.has_value())
                os << "n/a";
            else
                os << (*rep.upper_ok ? "yes (fpt(f+g) = fpt(f))" : "no (fpt(f+g) > fpt(f))");
            os << "  constancy=" << (rep.constancy_guaranteed ? "guaranteed" : "not guaranteed")
               << "  min_perturbation_degree=" << rep.min_perturbation_degree;
            out += os.str() + "\n";
        }
    }
    return out;
}

inline RunReport run_verify(const JobSpec& spec) {
    auto checks = verify::run_paper_checks(spec.full_suite);
    std::string out;
    bool all = true;
    for (const auto& c : checks) {
        out += (c.passed ? "PASS " : "FAIL ") + c.name;
        if (!c.detail.empty()) out += "  [" + c.detail + "]";
        out += "\n";
        all = all && c.passed;
    }
    out += all ? "verify-paper: all checks passed\n" : "verify-paper: MISMATCH\n";
    return RunReport{all ? 0 : 1, out};
}

}  // namespace detail

inline RunReport run(const JobSpec& spec) {
    try {
        switch (spec.command) {
            case JobSpec::Command::fpt:
                return {0, detail::run_fpt(spec)};
            case JobSpec::Command::nu:
                return {0, detail::run_nu(spec)};
            case JobSpec::Command::candidates:
                return {0, detail::run_candidates(spec)};
            case JobSpec::Command::lct:
                return {0, detail::run_lct(spec)};
            case JobSpec::Command::bad_primes:
                return {0, detail::run_bad_primes(spec)};
            case JobSpec::Command::perturb:
                return {0, detail::run_perturb(spec)};
            case JobSpec::Command::verify_paper:
                return detail::run_verify(spec);
        }
        return {2, "unknown command\n"};
    } catch (const parse_error& e) {
        return {2, std::string("parse error: ") + e.what() + "\n"};
    } catch (const precondition_error& e) {
        return {3, std::string("precondition error: ") + e.what() + "\n"};
    }
}

}  // namespace fpt
