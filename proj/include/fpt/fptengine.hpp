/*
 * fptengine.hpp
 * -------------
 * Exact computation of nu_e = max{ N : f^N not in m^[e] } by digit-by-digit
 * Frobenius powering, and of the F-pure threshold by candidate elimination.
 *
 * Level to level the engine carries the reduced representative of f^{nu_e}:
 * a Frobenius twist lifts it to f^{p*nu_e} mod m^[e+1] (exponent scaling is
 * free in characteristic p), and at most p-1 further multiplications by f
 * find the next digit, nu_{e+1} = p*nu_e + d.
 *
 * For two variables a homogeneous power is determined by one exponent, so
 * the carrier degenerates to a dense univariate vector; this is what makes
 * truncation depths up to ord_p(b) = 4 reachable for p around 100.  All
 * other shapes use the sparse map representation.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "fpt/basep.hpp"
#include "fpt/candidates.hpp"
#include "fpt/gradedpoly.hpp"
#include "fpt/polynomial.hpp"
#include "fpt/rational.hpp"

namespace fpt {

namespace detail {

// Dense carrier for reduced powers of a two-variable quasi-homogeneous
// polynomial: the coefficient of x^i y^j lives at slot j - jlo, with
// i = (degree - w2*j)/w1 determined by the common weighted degree.
struct DenseSlice {
    std::uint32_t p = 0;
    std::int64_t w1 = 1, w2 = 1;
    std::uint64_t level = 1;   // reduced mod m^[level]
    std::int64_t cutoff = 0;   // p^level, saturating
    std::int64_t degree = 0;   // weighted degree of the carried power
    std::int64_t jlo = 0;
    std::vector<std::uint8_t> c;  // empty <=> zero

    static constexpr std::int64_t max_cells = std::int64_t{1} << 31;

    bool is_zero() const { return c.empty(); }

    // smallest j keeping the determined x-exponent below the cutoff
    std::int64_t j_min(std::int64_t deg) const {
        __int128 room = static_cast<__int128>(cutoff - 1) * w1;
        if (deg <= room) return 0;
        __int128 excess = deg - room;
        return static_cast<std::int64_t>((excess + w2 - 1) / w2);
    }
    std::int64_t j_max(std::int64_t deg) const { return std::min(cutoff - 1, deg / w2); }

    void trim() {
        std::size_t lead = 0;
        while (lead < c.size() && c[lead] == 0) ++lead;
        if (lead == c.size()) {
            c.clear();
            jlo = 0;
            return;
        }
        std::size_t tail = c.size();
        while (tail > lead && c[tail - 1] == 0) --tail;
        if (lead > 0) c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(lead));
        c.resize(tail - lead);
        jlo += static_cast<std::int64_t>(lead);
    }
};

struct SliceTerm {
    std::int64_t dj;     // y-exponent of the factor term
    std::uint32_t coeff;
};

inline DenseSlice slice_of_one(const GradedPolynomial& f) {
    DenseSlice s;
    s.p = f.prime();
    s.w1 = f.grading().weights[0];
    s.w2 = f.grading().weights[1];
    s.level = 1;
    s.cutoff = frobenius_cutoff(s.p, 1);
    s.c = {1};
    return s;
}

inline std::vector<SliceTerm> slice_terms(const GradedPolynomial& f) {
    std::vector<SliceTerm> out;
    for (const auto& [m, c] : f.poly().terms()) out.push_back(SliceTerm{m[1], c});
    return out;
}

// carried power * f, reduced mod m^[level].  Every contribution to a slot j
// shares the x-exponent determined by j, so reduction is a pure range clip.
inline DenseSlice slice_mul(const DenseSlice& in, const std::vector<SliceTerm>& f_terms,
                            std::int64_t f_degree) {
    DenseSlice out;
    out.p = in.p;
    out.w1 = in.w1;
    out.w2 = in.w2;
    out.level = in.level;
    out.cutoff = in.cutoff;
    out.degree = checked_add(in.degree, f_degree);
    if (in.is_zero()) return out;

    const std::int64_t in_hi = in.jlo + static_cast<std::int64_t>(in.c.size()) - 1;
    std::int64_t lo = out.j_min(out.degree);
    std::int64_t hi = out.j_max(out.degree);
    std::int64_t reach_lo = in.jlo + f_terms.front().dj;
    std::int64_t reach_hi = in_hi + f_terms.front().dj;
    for (const auto& t : f_terms) {
        reach_lo = std::min(reach_lo, in.jlo + t.dj);
        reach_hi = std::max(reach_hi, in_hi + t.dj);
    }
    lo = std::max(lo, reach_lo);
    hi = std::min(hi, reach_hi);
    if (hi < lo) return out;
    if (hi - lo + 1 > DenseSlice::max_cells)
        throw std::overflow_error("dense power carrier exceeds the supported size");

    out.jlo = lo;
    out.c.assign(static_cast<std::size_t>(hi - lo + 1), 0);
    const std::uint32_t p = out.p;
    for (std::int64_t j = lo; j <= hi; ++j) {
        std::uint64_t acc = 0;
        for (const auto& t : f_terms) {
            std::int64_t src = j - t.dj;
            if (src < in.jlo || src > in_hi) continue;
            acc += static_cast<std::uint64_t>(t.coeff) *
                   in.c[static_cast<std::size_t>(src - in.jlo)];
        }
        out.c[static_cast<std::size_t>(j - lo)] = static_cast<std::uint8_t>(acc % p);
    }
    out.trim();
    return out;
}

inline void slice_twist(DenseSlice& s) {
    s.level += 1;
    s.cutoff = frobenius_cutoff(s.p, s.level);
    s.degree = checked_mul(s.degree, static_cast<std::int64_t>(s.p));
    if (s.is_zero()) return;
    std::int64_t new_len =
        checked_mul(static_cast<std::int64_t>(s.c.size()) - 1, static_cast<std::int64_t>(s.p)) + 1;
    if (new_len > DenseSlice::max_cells)
        throw std::overflow_error("dense power carrier exceeds the supported size");
    std::vector<std::uint8_t> next(static_cast<std::size_t>(new_len), 0);
    for (std::size_t k = 0; k < s.c.size(); ++k) next[k * s.p] = s.c[k];
    s.c = std::move(next);
    s.jlo = checked_mul(s.jlo, static_cast<std::int64_t>(s.p));
}

inline Polynomial slice_to_polynomial(const DenseSlice& s) {
    if (s.c.size() > (std::size_t{1} << 24))
        throw std::overflow_error("dense carrier too large to materialize as a sparse polynomial");
    Polynomial out(s.p, 2);
    Monomial m(2);
    for (std::size_t k = 0; k < s.c.size(); ++k) {
        if (s.c[k] == 0) continue;
        std::int64_t j = s.jlo + static_cast<std::int64_t>(k);
        std::int64_t num = s.degree - s.w2 * j;
        if (num < 0 || num % s.w1 != 0) continue;
        m[0] = num / s.w1;
        m[1] = j;
        out.add_term(m, s.c[k]);
    }
    return out;
}

using PowerCarrier = std::variant<Polynomial, DenseSlice>;

}  // namespace detail

// One level of the nu sequence: nu_e together with the reduced power of f
// witnessing f^{nu_e} not in m^[e] (the constant 1 when nu_e = 0).
class NuRecord {
public:
    std::uint64_t level() const { return e_; }
    const BigInt& nu() const { return nu_; }
    std::uint32_t prime() const { return p_; }

    Polynomial reduced_power() const {
        if (const auto* poly = std::get_if<Polynomial>(&witness_)) return *poly;
        return detail::slice_to_polynomial(std::get<detail::DenseSlice>(witness_));
    }

private:
    friend class NuEngine;
    NuRecord(std::uint32_t p, std::uint64_t e, BigInt nu, detail::PowerCarrier witness)
        : p_(p), e_(e), nu_(std::move(nu)), witness_(std::move(witness)) {}

    std::uint32_t p_;
    std::uint64_t e_;
    BigInt nu_;
    detail::PowerCarrier witness_;
};

inline Rational fpt_lower_bound(const NuRecord& rec) {
    return Rational(rec.nu(), big_pow(BigInt(rec.prime()), rec.level()));
}

// Incremental nu computation.  Construct once per polynomial; each advance()
// yields the next level.  Two-variable graded input selects the dense
// carrier automatically (primes above 255 stay on the sparse path).
class NuEngine {
public:
    explicit NuEngine(const Polynomial& f)
        : p_(f.prime()), carrier_(Polynomial::one(f.prime(), f.nvars())) {
        if (!f.in_maximal_ideal())
            throw precondition_error("nu: f must be a nonzero polynomial with no constant term");
        factor_poly_ = f;
    }

    explicit NuEngine(const GradedPolynomial& f)
        : p_(f.prime()),
          carrier_(f.nvars() == 2 && f.prime() < 256
                       ? detail::PowerCarrier(detail::slice_of_one(f))
                       : detail::PowerCarrier(Polynomial::one(f.prime(), f.nvars()))) {
        if (std::holds_alternative<detail::DenseSlice>(carrier_)) {
            factor_slice_ = detail::slice_terms(f);
            factor_degree_ = f.degree();
        } else {
            factor_poly_ = f.poly();
        }
    }

    // Resume from an existing level, e.g. to advance a single step.
    NuEngine(const NuRecord& prev, const Polynomial& f)
        : p_(f.prime()), e_(prev.level()), nu_(prev.nu()), carrier_(prev.witness_) {
        if (!f.in_maximal_ideal())
            throw precondition_error("nu: f must be a nonzero polynomial with no constant term");
        if (const auto* slice = std::get_if<detail::DenseSlice>(&carrier_)) {
            Grading g({slice->w1, slice->w2});
            GradedPolynomial graded = check_homogeneous(f, g);
            factor_slice_ = detail::slice_terms(graded);
            factor_degree_ = graded.degree();
        } else {
            factor_poly_ = f;
        }
    }

    // nu_1 on first call, then nu_{e+1} = p*nu_e + d with 0 <= d <= p-1.
    NuRecord advance() {
        if (e_ == 0) {
            e_ = 1;
        } else {
            ++e_;
            nu_ *= p_;
            twist_carrier();
        }
        for (std::uint32_t k = 1; k < p_; ++k) {
            detail::PowerCarrier next = multiplied();
            if (carrier_is_zero(next)) break;
            carrier_ = std::move(next);
            nu_ += 1;
        }
        return NuRecord(p_, e_, nu_, carrier_);
    }

    std::uint64_t level() const { return e_; }

private:
    void twist_carrier() {
        if (auto* slice = std::get_if<detail::DenseSlice>(&carrier_)) {
            detail::slice_twist(*slice);
            if (slice->is_zero())
                throw std::logic_error("twisted nu witness vanished; invariant violated");
        } else {
            auto& poly = std::get<Polynomial>(carrier_);
            poly = reduce_mod_frobenius(frobenius_twist(poly), e_);
            if (poly.is_zero())
                throw std::logic_error("twisted nu witness vanished; invariant violated");
        }
    }

    detail::PowerCarrier multiplied() const {
        if (const auto* slice = std::get_if<detail::DenseSlice>(&carrier_))
            return detail::slice_mul(*slice, factor_slice_, factor_degree_);
        return mul_mod_frobenius(std::get<Polynomial>(carrier_), *factor_poly_, e_);
    }

    static bool carrier_is_zero(const detail::PowerCarrier& c) {
        if (const auto* slice = std::get_if<detail::DenseSlice>(&c)) return slice->is_zero();
        return std::get<Polynomial>(c).is_zero();
    }

    std::uint32_t p_;
    std::uint64_t e_ = 0;
    BigInt nu_ = 0;
    detail::PowerCarrier carrier_;
    std::optional<Polynomial> factor_poly_;
    std::vector<detail::SliceTerm> factor_slice_;
    std::int64_t factor_degree_ = 0;
};

inline NuRecord nu_first(const Polynomial& f) { return NuEngine(f).advance(); }

// nu_{e+1} from the level-e record: twist the witness and multiply by f one
// factor at a time until the product vanishes.
inline NuRecord nu_next(const NuRecord& prev, const Polynomial& f) {
    return NuEngine(prev, f).advance();
}

inline std::vector<NuRecord> nu_sequence(const Polynomial& f, std::uint64_t e_max) {
    NuEngine engine(f);
    std::vector<NuRecord> out;
    for (std::uint64_t e = 1; e <= e_max; ++e) out.push_back(engine.advance());
    return out;
}

inline std::vector<NuRecord> nu_sequence(const GradedPolynomial& f, std::uint64_t e_max) {
    NuEngine engine(f);
    std::vector<NuRecord> out;
    for (std::uint64_t e = 1; e <= e_max; ++e) out.push_back(engine.advance());
    return out;
}

// f^N in m^[e]?  Square-and-multiply with reduction after every product;
// the exponent N stays in arbitrary precision.
inline bool membership_test(const Polynomial& f, const BigInt& N, std::uint64_t e) {
    if (e < 1) throw precondition_error("membership_test: level must be >= 1");
    if (N < 0) throw precondition_error("membership_test: exponent must be >= 0");
    if (N == 0) return false;  // f^0 = 1 never lies in m^[e]
    Polynomial base = reduce_mod_frobenius(f, e);
    Polynomial acc = Polynomial::one(f.prime(), f.nvars());
    for (std::size_t bit = boost::multiprecision::msb(N) + 1; bit-- > 0;) {
        acc = mul_mod_frobenius(acc, acc, e);
        if (boost::multiprecision::bit_test(N, static_cast<unsigned>(bit)))
            acc = mul_mod_frobenius(acc, base, e);
        if (acc.is_zero()) return true;
    }
    return false;
}

// ---- exact threshold --------------------------------------------------------

struct FptCertificate {
    bool is_lambda = false;
    LEPair pair{0, BigInt(0)};
};

struct FptResult {
    enum class Kind { exact, undetermined };
    Kind kind = Kind::undetermined;
    Rational value;                    // exact value, or the nu lower bound
    FptCertificate certificate;        // exact only
    std::vector<Candidate> survivors;  // undetermined only
    std::vector<BigInt> nu_levels;     // nu_1 .. nu_{levels_computed}
    std::uint64_t levels_computed = 0;

    bool exact() const { return kind == Kind::exact; }
};

struct FptOptions {
    std::uint64_t e_cap = 12;
};

// Exact F-pure threshold of a quasi-homogeneous polynomial with an isolated
// singularity.  Candidates from the main characterization are pruned against
// the computed nu levels (a candidate c survives level e iff
// p^e trunc_e(c) = nu_e) until a single value remains and every truncation
// depth appearing in the list has had its separating level.  When p divides
// the denominator of lambda no exactness theorem applies and the result is
// the nu-derived lower bound at e_cap.
inline FptResult fpt_exact(const GradedPolynomial& f, const FptOptions& opts = {}) {
    if (!has_isolated_singularity(f))
        throw precondition_error("fpt_exact: f does not have an isolated singularity at the origin");

    const std::uint32_t p = f.prime();
    const Rational lambda = lambda_of(f.grading(), f.degree());

    if (secondary_theorem_applies(f.grading(), f.degree(), p)) {
        FptResult r;
        r.kind = FptResult::Kind::exact;
        r.value = Rational(1);
        r.certificate.is_lambda = true;
        return r;
    }

    if (lambda.den() % p == 0) {
        NuEngine engine(f);
        FptResult r;
        r.kind = FptResult::Kind::undetermined;
        for (std::uint64_t e = 1; e <= opts.e_cap; ++e) {
            NuRecord rec = engine.advance();
            r.nu_levels.push_back(rec.nu());
            r.value = fpt_lower_bound(rec);
        }
        r.levels_computed = opts.e_cap;
        return r;
    }

    std::vector<Candidate> cands = main_candidates(f.nvars(), lambda.num(), lambda.den(), p);
    // Depth needed before a lone survivor may be declared: every truncation
    // depth still alive must have had its separating level.  (An eliminated
    // candidate was already positively distinguished, so the horizon shrinks
    // as the list does.)
    auto max_l = [&cands]() {
        std::uint64_t m = 0;
        for (const Candidate& c : cands)
            for (const LEPair& le : c.pairs) m = std::max(m, le.L);
        return m;
    };

    NuEngine engine(f);
    FptResult r;
    std::uint64_t levels = 0;
    BigInt last_nu = 0;
    while (!(cands.size() == 1 && levels >= max_l()) && levels < opts.e_cap) {
        NuRecord rec = engine.advance();
        levels = rec.level();
        last_nu = rec.nu();
        r.nu_levels.push_back(rec.nu());
        std::vector<Candidate> alive;
        for (Candidate& c : cands)
            if (scaled_truncation(c.value, p, levels) == rec.nu()) alive.push_back(std::move(c));
        if (alive.empty())
            throw std::logic_error("fpt_exact: every candidate was eliminated; theorem violated");
        cands = std::move(alive);
    }

    r.levels_computed = levels;
    if (cands.size() == 1 && levels >= max_l()) {
        const Candidate& winner = cands.front();
        r.kind = FptResult::Kind::exact;
        r.value = winner.value;
        if (winner.value == lambda) {
            r.certificate.is_lambda = true;
        } else {
            r.certificate.pair = winner.pairs.front();  // smallest L: the constructive pair
        }
    } else {
        r.kind = FptResult::Kind::undetermined;
        r.value = Rational(last_nu, big_pow(BigInt(p), levels));
        r.survivors = std::move(cands);
    }
    return r;
}

struct TruncationIdentityReport {
    bool ok = true;
    std::optional<std::uint64_t> first_failure;
};

namespace detail {

template <class Input>
TruncationIdentityReport check_truncation_identity(const Input& f, std::uint32_t p,
                                                   const Rational& fpt_value,
                                                   std::uint64_t e_max) {
    NuEngine engine(f);
    for (std::uint64_t e = 1; e <= e_max; ++e) {
        NuRecord rec = engine.advance();
        if (scaled_truncation(fpt_value, p, e) != rec.nu())
            return TruncationIdentityReport{false, e};
    }
    return TruncationIdentityReport{true, std::nullopt};
}

}  // namespace detail

// Checks nu_e = p^e * trunc_e(claimed fpt) for all e <= e_max.
inline TruncationIdentityReport verify_truncation_identity(const GradedPolynomial& f,
                                                           const Rational& fpt_value,
                                                           std::uint64_t e_max) {
    return detail::check_truncation_identity(f, f.prime(), fpt_value, e_max);
}

inline TruncationIdentityReport verify_truncation_identity(const Polynomial& f,
                                                           const Rational& fpt_value,
                                                           std::uint64_t e_max) {
    return detail::check_truncation_identity(f, f.prime(), fpt_value, e_max);
}

// ---- perturbation constancy ---------------------------------------------------

struct PerturbationReport {
    Rational fpt_f;
    FptCertificate certificate;
    bool lower_ok = true;          // deg g >= deg f + 1 forces fpt(f) <= fpt(f+g)
    std::optional<bool> upper_ok;  // (f+g)^{p^L fpt} in m^[L]; set when p^L fpt is integral
    bool constancy_guaranteed = false;
    std::int64_t min_perturbation_degree = 0;  // n*deg f - sum w + 1
};

// Reports what the constancy results certify for f+g when every term of g
// has weighted degree strictly above deg f.  upper_ok = false certifies the
// strict increase fpt(f+g) > fpt(f); upper_ok = true pins fpt(f+g) = fpt(f).
inline PerturbationReport perturbation_report(const GradedPolynomial& f, const Polynomial& g,
                                              const FptOptions& opts = {}) {
    if (g.prime() != f.prime() || g.nvars() != f.nvars())
        throw precondition_error("perturbation_report: f and g live in different rings");
    std::optional<std::int64_t> min_deg_g;
    for (const auto& [m, c] : g.terms()) {
        std::int64_t d = weighted_degree(m, f.grading());
        if (d <= f.degree())
            throw precondition_error("perturbation_report: g has a term of weighted degree <= deg f");
        min_deg_g = min_deg_g ? std::min(*min_deg_g, d) : d;
    }

    FptResult base = fpt_exact(f, opts);
    if (!base.exact())
        throw precondition_error("perturbation_report: fpt(f) could not be determined exactly");

    PerturbationReport rep;
    rep.fpt_f = base.value;
    rep.certificate = base.certificate;
    rep.min_perturbation_degree =
        detail::checked_mul(static_cast<std::int64_t>(f.nvars()), f.degree()) -
        f.grading().total() + 1;

    const std::uint32_t p = f.prime();
    const Rational lambda = lambda_of(f.grading(), f.degree());

    // minimal L >= 1 with p^L * fpt integral, available iff den(fpt) is a p-power
    std::optional<std::uint64_t> power_level;
    {
        BigInt d = base.value.den();
        std::uint64_t l = 0;
        while (d % p == 0) {
            d /= p;
            ++l;
        }
        if (d == 1) power_level = std::max<std::uint64_t>(l, 1);
    }
    if (power_level) {
        BigInt exponent = (Rational(big_pow(BigInt(p), *power_level)) * base.value).num();
        rep.upper_ok = membership_test(f.poly() + g, exponent, *power_level);
    }

    bool constancy = false;
    if (min_deg_g && *min_deg_g >= rep.min_perturbation_degree && f.degree() >= f.grading().total())
        constancy = true;
    if (base.value == lambda) constancy = true;
    if (!constancy && power_level && lambda.den() % p != 0) {
        std::uint64_t s = mult_order(BigInt(p), lambda.den());
        for (std::uint64_t L = *power_level; L <= *power_level + s; ++L) {
            if (truncation(lambda, p, L) != base.value) continue;
            if ((big_pow(BigInt(p), L) - 1) % lambda.den() == 0) {
                constancy = true;  // fpt = trunc_L(lambda) with (p^L - 1)*lambda integral
                break;
            }
        }
    }
    rep.constancy_guaranteed = constancy;
    return rep;
}

}  // namespace fpt
