/*
 * rational.hpp
 * ------------
 * Exact arbitrary-precision rationals, always kept in lowest terms with a
 * positive denominator.  These carry every threshold, truncation and bound
 * in the library; no floating point is used anywhere.
 *
 * Serialized form is the string "num/den" in lowest terms.
 */
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace fpt {

using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;

// Errors that map to distinct CLI exit codes.
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct precondition_error : std::domain_error {
    using std::domain_error::domain_error;
};

inline BigInt big_pow(const BigInt& base, std::uint64_t exp) {
    BigInt r = 1, b = base;
    while (exp) {
        if (exp & 1) r *= b;
        b *= b;
        exp >>= 1;
    }
    return r;
}

class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(BigInt n) : num_(std::move(n)), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }
    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    Rational operator-() const { return Rational(-num_, den_, raw_tag{}); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw precondition_error("division by zero rational");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num_ * b.den_ < b.num_ * a.den_;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    // Greatest integer <= num/den (floored, not truncated).
    BigInt floor() const {
        BigInt q = num_ / den_;
        if (num_ < 0 && q * den_ != num_) --q;
        return q;
    }

    Rational abs() const { return num_ < 0 ? -*this : *this; }

    std::string str() const {
        return num_.str() + "/" + den_.str();
    }

    // Accepts "a/b" or a bare integer "a".
    static Rational parse(const std::string& text) {
        auto slash = text.find('/');
        BigInt n, d = 1;
        try {
            if (slash == std::string::npos) {
                n = BigInt(text);
            } else {
                n = BigInt(text.substr(0, slash));
                d = BigInt(text.substr(slash + 1));
            }
        } catch (const std::runtime_error&) {
            throw parse_error("malformed rational: " + text);
        }
        if (d == 0) throw parse_error("rational with zero denominator: " + text);
        return Rational(std::move(n), std::move(d));
    }

private:
    struct raw_tag {};
    Rational(BigInt n, BigInt d, raw_tag) : num_(std::move(n)), den_(std::move(d)) {}

    void normalize() {
        if (den_ == 0) throw precondition_error("rational denominator is zero");
        if (den_ < 0) {
            den_ = -den_;
            num_ = -num_;
        }
        BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        if (num_ == 0) den_ = 1;
    }

    BigInt num_;
    BigInt den_;
};

}  // namespace fpt
