/*
 * gradedpoly.hpp
 * --------------
 * Positive weight vectors, validated quasi-homogeneous polynomials, graded
 * dimension counts and the isolated-singularity test.
 *
 * The singularity test works degree by degree: with N = n*deg(f) - 2*sum(w),
 * it row-reduces the span of { mu * df/dx_i } inside each graded piece of the
 * window [max(1, N+1), N + max(w)].  Passing every window degree pins
 * R_{>=N+1} inside the Jacobian ideal (stripping one variable at a time drops
 * the degree by at most max(w)), so the radical contains every variable;
 * failing any degree contradicts the Hilbert series of R/J when the partials
 * form a system of parameters.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "fpt/polynomial.hpp"

namespace fpt {

struct Grading {
    explicit Grading(std::vector<std::int64_t> w) : weights(std::move(w)) {
        if (weights.empty()) throw precondition_error("grading: need at least one weight");
        for (auto wi : weights)
            if (wi < 1) throw precondition_error("grading: weights must be positive");
    }

    std::size_t nvars() const { return weights.size(); }
    std::int64_t total() const {
        return std::accumulate(weights.begin(), weights.end(), std::int64_t{0});
    }
    std::int64_t max_weight() const { return *std::max_element(weights.begin(), weights.end()); }

    std::vector<std::int64_t> weights;
};

inline std::int64_t weighted_degree(const Monomial& m, const Grading& g) {
    if (m.size() != g.nvars())
        throw precondition_error("weighted_degree: monomial and grading dimensions differ");
    std::int64_t d = 0;
    for (std::size_t i = 0; i < m.size(); ++i)
        d = detail::checked_add(d, detail::checked_mul(m[i], g.weights[i]));
    return d;
}

class GradedPolynomial {
public:
    const Polynomial& poly() const { return poly_; }
    const Grading& grading() const { return grading_; }
    std::int64_t degree() const { return degree_; }
    std::uint32_t prime() const { return poly_.prime(); }
    int nvars() const { return poly_.nvars(); }
    std::int64_t weight_sum() const { return grading_.total(); }

private:
    friend GradedPolynomial check_homogeneous(const Polynomial&, const Grading&);
    GradedPolynomial(Polynomial f, Grading g, std::int64_t d)
        : poly_(std::move(f)), grading_(std::move(g)), degree_(d) {}

    Polynomial poly_;
    Grading grading_;
    std::int64_t degree_;
};

// Validates that every term of f has the same weighted degree and that f
// lies in m; returns the polynomial together with its common degree.
inline GradedPolynomial check_homogeneous(const Polynomial& f, const Grading& g) {
    if (f.is_zero()) throw precondition_error("check_homogeneous: zero polynomial");
    if (static_cast<std::size_t>(f.nvars()) != g.nvars())
        throw precondition_error("check_homogeneous: grading dimension mismatch");
    if (f.has_constant_term())
        throw precondition_error("check_homogeneous: f has a constant term, f is not in m");
    std::int64_t degree = -1;
    const Monomial* first = nullptr;
    for (const auto& [m, c] : f.terms()) {
        std::int64_t d = weighted_degree(m, g);
        if (degree == -1) {
            degree = d;
            first = &m;
        } else if (d != degree) {
            Polynomial a(f.prime(), f.nvars()), b(f.prime(), f.nvars());
            a.add_term(*first, 1);
            b.add_term(m, 1);
            throw precondition_error("check_homogeneous: inhomogeneous terms " + a.str() +
                                     " (degree " + std::to_string(degree) + ") and " + b.str() +
                                     " (degree " + std::to_string(d) + ")");
        }
    }
    return GradedPolynomial(f, g, degree);
}

// Monomials of weighted degree exactly d.  The count is the graded dimension
// of the polynomial ring in that degree.
inline std::vector<Monomial> graded_monomials(const Grading& g, std::int64_t d) {
    std::vector<Monomial> out;
    if (d < 0) return out;
    Monomial current(g.nvars(), 0);
    auto rec = [&](auto&& self, std::size_t var, std::int64_t remaining) -> void {
        if (var + 1 == g.nvars()) {
            if (remaining % g.weights[var] == 0) {
                current[var] = remaining / g.weights[var];
                out.push_back(current);
            }
            return;
        }
        for (std::int64_t a = 0; a * g.weights[var] <= remaining; ++a) {
            current[var] = a;
            self(self, var + 1, remaining - a * g.weights[var]);
        }
        current[var] = 0;
    };
    rec(rec, 0, d);
    return out;
}

inline std::size_t graded_dim(const Grading& g, std::int64_t d) {
    return graded_monomials(g, d).size();
}

namespace detail {

// Rank of a matrix over F_p, destructive Gaussian elimination.
inline std::size_t row_rank_mod_p(std::vector<std::vector<std::uint32_t>>& rows, std::uint32_t p) {
    std::size_t rank = 0;
    if (rows.empty()) return 0;
    const std::size_t cols = rows[0].size();
    for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        // scale pivot row to 1
        std::uint64_t inv = 1, base = rows[rank][col], exp = p - 2;
        while (exp) {  // Fermat inverse
            if (exp & 1) inv = inv * base % p;
            base = base * base % p;
            exp >>= 1;
        }
        for (auto& v : rows[rank]) v = static_cast<std::uint32_t>(v * inv % p);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            std::uint64_t factor = rows[r][col];
            for (std::size_t cidx = col; cidx < cols; ++cidx) {
                std::uint64_t v = rows[r][cidx] + (p - factor) * rows[rank][cidx] % p;
                rows[r][cidx] = static_cast<std::uint32_t>(v % p);
            }
        }
        ++rank;
    }
    return rank;
}

inline bool is_monomial(const Polynomial& f) { return f.term_count() == 1; }

// For a monomial Jacobian ideal, sqrt(J) = m iff every variable occurs as a
// pure power among the generators (a unit generator covers everything).
inline bool monomial_jacobian_is_isolated(const std::vector<Polynomial>& partials, int n) {
    std::vector<bool> covered(static_cast<std::size_t>(n), false);
    for (const auto& g : partials) {
        const Monomial& m = g.terms().begin()->first;
        int support_var = -1;
        bool pure = true;
        for (int i = 0; i < n; ++i) {
            if (m[i] == 0) continue;
            if (support_var != -1) {
                pure = false;
                break;
            }
            support_var = i;
        }
        if (!pure) continue;
        if (support_var == -1) return true;  // unit: J = R
        covered[static_cast<std::size_t>(support_var)] = true;
    }
    return std::all_of(covered.begin(), covered.end(), [](bool b) { return b; });
}

}  // namespace detail

// True iff the radical of the Jacobian ideal is the maximal ideal, decided
// by the window row-reduction described in the file header.
inline bool has_isolated_singularity(const GradedPolynomial& f) {
    const int n = f.nvars();
    const std::uint32_t p = f.prime();
    std::vector<Polynomial> partials = jacobian_generators(f.poly());
    for (const auto& g : partials)
        if (g.is_zero()) return false;  // fewer than n generators cannot have radical m

    if (std::all_of(partials.begin(), partials.end(), detail::is_monomial))
        return detail::monomial_jacobian_is_isolated(partials, n);

    const Grading& g = f.grading();
    const std::int64_t N = detail::checked_mul(n, f.degree()) - 2 * g.total();
    const std::int64_t lo = std::max<std::int64_t>(1, N + 1);
    const std::int64_t hi = N + g.max_weight();

    for (std::int64_t d = lo; d <= hi; ++d) {
        std::vector<Monomial> basis = graded_monomials(g, d);
        if (basis.empty()) continue;
        std::map<Monomial, std::size_t> index;
        for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], i);

        std::vector<std::vector<std::uint32_t>> rows;
        for (int i = 0; i < n; ++i) {
            std::int64_t shift = d - (f.degree() - g.weights[static_cast<std::size_t>(i)]);
            if (shift < 0) continue;
            for (const Monomial& mu : graded_monomials(g, shift)) {
                std::vector<std::uint32_t> row(basis.size(), 0);
                Monomial prod(static_cast<std::size_t>(n));
                for (const auto& [m, c] : partials[static_cast<std::size_t>(i)].terms()) {
                    for (int k = 0; k < n; ++k) prod[k] = detail::checked_add(mu[k], m[k]);
                    row[index.at(prod)] = c;
                }
                rows.push_back(std::move(row));
            }
        }
        if (detail::row_rank_mod_p(rows, p) < basis.size()) return false;
    }
    return true;
}

// Euler's relation deg(f)*f = sum w_i x_i df/dx_i, valid over F_p whenever
// p does not divide deg(f).  Doubles as a self-test of the derivative code.
inline bool euler_membership_check(const GradedPolynomial& f) {
    if (f.degree() % f.prime() == 0)
        throw precondition_error("euler_membership_check: p divides deg f");
    Polynomial rhs(f.prime(), f.nvars());
    for (int i = 0; i < f.nvars(); ++i) {
        Polynomial xi(f.prime(), f.nvars());
        Monomial m(static_cast<std::size_t>(f.nvars()), 0);
        m[static_cast<std::size_t>(i)] = 1;
        xi.add_term(m, f.grading().weights[static_cast<std::size_t>(i)] % f.prime());
        rhs = rhs + xi * derivative(f.poly(), i);
    }
    return f.poly().scaled(f.degree() % f.prime()) == rhs;
}

}  // namespace fpt
