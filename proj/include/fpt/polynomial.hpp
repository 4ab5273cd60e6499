/*
 * polynomial.hpp
 * --------------
 * Sparse multivariate polynomials over F_p.  Terms live in a std::map keyed
 * by exponent vectors, so iteration (and every serialized form) is
 * lexicographic and reproducible bit for bit.
 *
 * Coefficients are least non-negative residues in {1,...,p-1}; a stored
 * coefficient is never 0 mod p.  Exponents are machine words with checked
 * arithmetic; degrees and Frobenius cutoffs that can exceed the word are
 * handled with saturation, which is lossless because a stored exponent is
 * always far below the saturation point.
 *
 * Text grammar (CLI input and the serializer's output): terms joined by
 * `+`/`-`; a term is `[coeff*]var[^exp]` factors joined by `*`; variables
 * are x,y,z for n <= 3 and x1..xn otherwise.  Example: "x^15 + x*y^7".
 */
#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "fpt/basep.hpp"
#include "fpt/rational.hpp"

namespace fpt {

using Monomial = std::vector<std::int64_t>;

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("monomial exponent overflow");
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("monomial exponent overflow");
    return r;
}

// p^e saturated at int64 max.  Stored exponents are bounded by memory, so a
// saturated cutoff correctly means "nothing is dropped".
inline std::int64_t frobenius_cutoff(std::uint32_t p, std::uint64_t e) {
    constexpr std::int64_t cap = std::numeric_limits<std::int64_t>::max();
    std::int64_t v = 1;
    for (std::uint64_t i = 0; i < e; ++i) {
        if (v > cap / p) return cap;
        v *= p;
    }
    return v;
}

}  // namespace detail

class Polynomial {
public:
    Polynomial(std::uint32_t p, int nvars) : p_(p), n_(nvars) {
        if (p < 2) throw precondition_error("polynomial: characteristic must be a prime >= 2");
        if (nvars < 1) throw precondition_error("polynomial: need at least one variable");
    }

    std::uint32_t prime() const { return p_; }
    int nvars() const { return n_; }
    const std::map<Monomial, std::uint32_t>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    bool has_constant_term() const {
        return terms_.count(Monomial(static_cast<std::size_t>(n_), 0)) != 0;
    }

    // f in m = (x_1,...,x_n): nonzero with no constant term.
    bool in_maximal_ideal() const { return !is_zero() && !has_constant_term(); }

    void add_term(const Monomial& m, std::int64_t coeff) {
        if (static_cast<int>(m.size()) != n_)
            throw precondition_error("polynomial: monomial length does not match variable count");
        for (auto e : m)
            if (e < 0) throw precondition_error("polynomial: negative exponent");
        std::int64_t c = coeff % static_cast<std::int64_t>(p_);
        if (c < 0) c += p_;
        if (c == 0) return;
        auto [it, fresh] = terms_.emplace(m, static_cast<std::uint32_t>(c));
        if (!fresh) {
            std::uint64_t s = it->second + static_cast<std::uint64_t>(c);
            s %= p_;
            if (s == 0)
                terms_.erase(it);
            else
                it->second = static_cast<std::uint32_t>(s);
        }
    }

    static Polynomial one(std::uint32_t p, int nvars) {
        Polynomial f(p, nvars);
        f.add_term(Monomial(static_cast<std::size_t>(nvars), 0), 1);
        return f;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        a.require_compatible(b);
        Polynomial out = a;
        for (const auto& [m, c] : b.terms_) out.add_term(m, c);
        return out;
    }

    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        a.require_compatible(b);
        Polynomial out = a;
        for (const auto& [m, c] : b.terms_)
            out.add_term(m, static_cast<std::int64_t>(a.p_) - static_cast<std::int64_t>(c));
        return out;
    }

    // Exact product, no reduction.
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.require_compatible(b);
        Polynomial out(a.p_, a.n_);
        Monomial m(static_cast<std::size_t>(a.n_));
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                for (int i = 0; i < a.n_; ++i) m[i] = detail::checked_add(ma[i], mb[i]);
                out.add_term(m, static_cast<std::int64_t>(
                                    (static_cast<std::uint64_t>(ca) * cb) % a.p_));
            }
        }
        return out;
    }

    Polynomial scaled(std::int64_t c) const {
        Polynomial out(p_, n_);
        for (const auto& [m, cf] : terms_) {
            std::int64_t prod = static_cast<std::int64_t>(
                (static_cast<std::uint64_t>(lpr(c, p_) % p_) * cf) % p_);
            out.add_term(m, prod);
        }
        return out;
    }

    bool operator==(const Polynomial& o) const {
        return p_ == o.p_ && n_ == o.n_ && terms_ == o.terms_;
    }

    std::string str() const;

private:
    void require_compatible(const Polynomial& o) const {
        if (p_ != o.p_) throw precondition_error("polynomial: mixed characteristics");
        if (n_ != o.n_) throw precondition_error("polynomial: mixed variable counts");
    }

    std::uint32_t p_;
    int n_;
    std::map<Monomial, std::uint32_t> terms_;
};

// Canonical representative of f in R/m^[e]: drop every term with some
// exponent >= p^e.  Idempotent projection onto the monomial basis.
inline Polynomial reduce_mod_frobenius(const Polynomial& f, std::uint64_t e) {
    if (e < 1) throw precondition_error("reduce_mod_frobenius: level must be >= 1");
    const std::int64_t cutoff = detail::frobenius_cutoff(f.prime(), e);
    Polynomial out(f.prime(), f.nvars());
    for (const auto& [m, c] : f.terms()) {
        bool alive = std::all_of(m.begin(), m.end(), [&](std::int64_t a) { return a < cutoff; });
        if (alive) out.add_term(m, c);
    }
    return out;
}

inline Polynomial mul_mod_frobenius(const Polynomial& a, const Polynomial& b, std::uint64_t e) {
    return reduce_mod_frobenius(a * b, e);
}

// f^p via the characteristic-p identity: scale every exponent by p and keep
// coefficients (c^p = c over F_p).  Exact, no reduction.
inline Polynomial frobenius_twist(const Polynomial& f) {
    Polynomial out(f.prime(), f.nvars());
    Monomial m(static_cast<std::size_t>(f.nvars()));
    for (const auto& [mf, c] : f.terms()) {
        for (int i = 0; i < f.nvars(); ++i)
            m[i] = detail::checked_mul(mf[i], static_cast<std::int64_t>(f.prime()));
        out.add_term(m, c);
    }
    return out;
}

// Formal partial derivative with respect to variable i.
inline Polynomial derivative(const Polynomial& f, int var) {
    if (var < 0 || var >= f.nvars()) throw precondition_error("derivative: variable out of range");
    Polynomial out(f.prime(), f.nvars());
    Monomial m(static_cast<std::size_t>(f.nvars()));
    for (const auto& [mf, c] : f.terms()) {
        if (mf[var] == 0) continue;
        std::int64_t factor = mf[var] % f.prime();
        if (factor == 0) continue;
        m = mf;
        --m[var];
        out.add_term(m, static_cast<std::int64_t>((static_cast<std::uint64_t>(factor) * c) % f.prime()));
    }
    return out;
}

// All n formal partials; zero polynomials are kept in place.
inline std::vector<Polynomial> jacobian_generators(const Polynomial& f) {
    std::vector<Polynomial> out;
    out.reserve(static_cast<std::size_t>(f.nvars()));
    for (int i = 0; i < f.nvars(); ++i) out.push_back(derivative(f, i));
    return out;
}

// ---- text form ------------------------------------------------------------

inline std::string variable_name(int index, int nvars) {
    if (nvars <= 3) {
        static const char* names[] = {"x", "y", "z"};
        return names[index];
    }
    return "x" + std::to_string(index + 1);
}

inline std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        if (!out.empty()) out += " + ";
        std::string term;
        bool constant = std::all_of(m.begin(), m.end(), [](std::int64_t a) { return a == 0; });
        if (c != 1 || constant) term += std::to_string(c);
        for (int i = 0; i < n_; ++i) {
            if (m[i] == 0) continue;
            if (!term.empty()) term += "*";
            term += variable_name(i, n_);
            if (m[i] != 1) term += "^" + std::to_string(m[i]);
        }
        out += term;
    }
    return out;
}

namespace detail {

struct PolyParser {
    const std::string& text;
    std::size_t pos = 0;
    std::uint32_t p;
    int nvars;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    [[noreturn]] void fail(const std::string& what) {
        throw parse_error("polynomial parse error at position " + std::to_string(pos) + ": " + what);
    }

    std::int64_t parse_integer() {
        skip_ws();
        std::size_t start = pos;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(text[start]))))
            fail("expected integer");
        return std::stoll(text.substr(start, pos - start));
    }

    int parse_variable() {
        skip_ws();
        char c = text[pos];
        if (c == 'x' || c == 'y' || c == 'z') {
            ++pos;
            if (c == 'x' && pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                std::size_t start = pos;
                while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
                int idx = std::stoi(text.substr(start, pos - start));
                if (idx < 1) fail("variable index must be >= 1");
                return idx - 1;
            }
            return c == 'x' ? 0 : (c == 'y' ? 1 : 2);
        }
        fail("expected variable");
    }

    // ['-'|'+'] factor ('*' factor)*
    void parse_term(Polynomial& acc, int sign) {
        std::int64_t coeff = sign;
        Monomial m(static_cast<std::size_t>(nvars), 0);
        bool expect_factor = true;
        while (expect_factor) {
            skip_ws();
            if (pos >= text.size()) fail("unexpected end of input");
            char c = text[pos];
            if (std::isdigit(static_cast<unsigned char>(c))) {
                std::int64_t v = parse_integer() % static_cast<std::int64_t>(p);
                coeff = (coeff * v) % static_cast<std::int64_t>(p);
            } else if (c == 'x' || c == 'y' || c == 'z') {
                int var = parse_variable();
                if (var >= nvars) fail("variable index exceeds variable count");
                std::int64_t exp = 1;
                skip_ws();
                if (pos < text.size() && text[pos] == '^') {
                    ++pos;
                    exp = parse_integer();
                    if (exp < 0) fail("negative exponent");
                }
                m[var] = checked_add(m[var], exp);
            } else {
                fail("expected coefficient or variable");
            }
            skip_ws();
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
            } else {
                expect_factor = false;
            }
        }
        acc.add_term(m, coeff);
    }

    Polynomial run() {
        Polynomial acc(p, nvars);
        skip_ws();
        if (pos >= text.size()) fail("empty polynomial");
        int sign = 1;
        if (text[pos] == '-') {
            sign = -1;
            ++pos;
        } else if (text[pos] == '+') {
            ++pos;
        }
        parse_term(acc, sign);
        skip_ws();
        while (pos < text.size()) {
            char c = text[pos];
            if (c == '+')
                sign = 1;
            else if (c == '-')
                sign = -1;
            else
                fail("expected '+' or '-'");
            ++pos;
            parse_term(acc, sign);
            skip_ws();
        }
        return acc;
    }
};

// Largest variable index mentioned in the text, for inferring n.
inline int scan_variable_count(const std::string& text) {
    int n = 1;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c == 'y') n = std::max(n, 2);
        if (c == 'z') n = std::max(n, 3);
        if (c == 'x' && i + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
            std::size_t j = i + 1;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            n = std::max(n, std::stoi(text.substr(i + 1, j - i - 1)));
        }
    }
    return n;
}

}  // namespace detail

inline Polynomial parse_polynomial(const std::string& text, std::uint32_t p, int nvars = 0) {
    if (nvars == 0) nvars = detail::scan_variable_count(text);
    detail::PolyParser parser{text, 0, p, nvars};
    return parser.run();
}

}  // namespace fpt
