#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "amalgam/errors.hpp"

namespace amalgam {

/**
 * Arbitrary-precision signed rational. Always canonical: den > 0 and
 * gcd(|num|, den) == 1 after every construction, so equality is structural.
 */
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long n) : num_(n), den_(1) {}   // implicit: integers promote freely
    Rational(long n, long d) : Rational(mpz_class(n), mpz_class(d)) {}

    Rational(mpz_class n, mpz_class d) : num_(std::move(n)), den_(std::move(d)) {
        if (den_ == 0) throw Error("Rational: zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        canonicalize();
    }

    // Accepts "p", "-p", "p/q" with optional sign on p; q > 0.
    static Rational from_string(std::string_view s) {
        const auto slash = s.find('/');
        try {
            if (slash == std::string_view::npos)
                return Rational(mpz_class(std::string(s)), 1);
            mpz_class n{std::string(s.substr(0, slash))};
            mpz_class d{std::string(s.substr(slash + 1))};
            if (d <= 0) throw ParseError("rational: non-positive denominator in '" + std::string(s) + "'");
            return Rational(std::move(n), std::move(d));
        } catch (const std::invalid_argument&) {
            throw ParseError("rational: cannot parse '" + std::string(s) + "'");
        }
    }

    const mpz_class& num() const { return num_; }
    const mpz_class& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_negative() const { return num_ < 0; }
    bool is_positive() const { return num_ > 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return sgn(num_); }

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
        if (b.is_zero()) throw Error("Rational: division by zero");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }
    Rational operator-() const { return Rational(-num_, den_, canonical_tag{}); }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.num_ * b.den_, b.num_ * a.den_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    Rational abs() const { return is_negative() ? -*this : *this; }

    Rational reciprocal() const {
        if (is_zero()) throw Error("Rational: reciprocal of zero");
        return Rational(den_, num_);
    }

    // Integer power; k may be negative (base must be nonzero then).
    static Rational pow_int(const Rational& base, long k) {
        if (k == 0) return Rational(1);
        const bool invert = k < 0;
        const unsigned long e = invert ? static_cast<unsigned long>(-k) : static_cast<unsigned long>(k);
        mpz_class n, d;
        mpz_pow_ui(n.get_mpz_t(), base.num_.get_mpz_t(), e);
        mpz_pow_ui(d.get_mpz_t(), base.den_.get_mpz_t(), e);
        Rational r(std::move(n), std::move(d));
        return invert ? r.reciprocal() : r;
    }

    // Exact k-th root if this is a perfect k-th power (requires *this >= 0).
    std::optional<Rational> root(unsigned long k) const {
        if (is_negative() || k == 0) return std::nullopt;
        mpz_class rn, rd;
        const bool en = mpz_root(rn.get_mpz_t(), num_.get_mpz_t(), k) != 0;
        const bool ed = mpz_root(rd.get_mpz_t(), den_.get_mpz_t(), k) != 0;
        if (!en || !ed) return std::nullopt;
        return Rational(std::move(rn), std::move(rd));
    }

    mpz_class floor() const {
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), num_.get_mpz_t(), den_.get_mpz_t());
        return q;
    }

    double to_double() const {
        mpq_class q(num_, den_);   // already canonical
        return q.get_d();
    }

    std::string str() const {
        return is_integer() ? num_.get_str() : num_.get_str() + "/" + den_.get_str();
    }

private:
    struct canonical_tag {};
    Rational(mpz_class n, mpz_class d, canonical_tag) : num_(std::move(n)), den_(std::move(d)) {}

    void canonicalize() {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), num_.get_mpz_t(), den_.get_mpz_t());
        if (g > 1) { num_ /= g; den_ /= g; }
    }

    mpz_class num_;
    mpz_class den_;   // > 0
};

inline Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

// Compares r against base^e exactly (base > 0, r >= 0): sign of r - base^e.
// Clearing the rational exponent e = u/v reduces to an integer-power comparison.
inline int compare_with_power(const Rational& r, const Rational& base, const Rational& e) {
    if (base.sign() <= 0) throw Error("compare_with_power: base must be positive");
    if (r.is_negative()) return -1;
    if (r.is_zero()) return base.is_zero() ? 0 : -1;
    const long u = [&] {
        if (!e.num().fits_slong_p()) throw Error("compare_with_power: exponent too large");
        return e.num().get_si();
    }();
    if (!e.den().fits_ulong_p()) throw Error("compare_with_power: exponent too large");
    const unsigned long v = e.den().get_ui();
    // r ? base^(u/v)  <=>  r^v ? base^u
    const Rational lhs = Rational::pow_int(r, static_cast<long>(v));
    const Rational rhs = Rational::pow_int(base, u);
    return lhs < rhs ? -1 : (lhs == rhs ? 0 : 1);
}

} // namespace amalgam
