#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "amalgam/rational.hpp"

namespace amalgam {

/**
 * Non-negative extended real: an exact rational, a binary64 approximation
 * carrying a relative error bound, or +infinity. Norm functionals land here.
 *
 * Conventions: +infinity absorbs addition and positive scaling; 0 * inf = 0
 * (the Lebesgue-integral convention the associate-functional definitions use).
 */
class ExtReal {
public:
    enum class Kind { Exact, Approx, Infinite };

    ExtReal() : kind_(Kind::Exact), rat_() {}

    static ExtReal exact(Rational q) {
        if (q.is_negative()) throw Error("ExtReal: negative value");
        ExtReal r;
        r.kind_ = Kind::Exact;
        r.rat_ = std::move(q);
        return r;
    }
    static ExtReal approx(double v, double rel_err) {
        if (!(v >= 0) || !std::isfinite(v)) throw Error("ExtReal: bad approx value");
        ExtReal r;
        r.kind_ = Kind::Approx;
        r.val_ = v;
        r.err_ = rel_err;
        return r;
    }
    static ExtReal infinity() {
        ExtReal r;
        r.kind_ = Kind::Infinite;
        return r;
    }

    Kind kind() const { return kind_; }
    bool is_exact() const { return kind_ == Kind::Exact; }
    bool is_approx() const { return kind_ == Kind::Approx; }
    bool is_infinite() const { return kind_ == Kind::Infinite; }
    bool is_finite() const { return kind_ != Kind::Infinite; }
    bool is_zero() const { return is_exact() ? rat_.is_zero() : (is_approx() && val_ == 0.0); }

    const Rational& exact_value() const {
        if (!is_exact()) throw Error("ExtReal: not exact");
        return rat_;
    }

    // binary64 view; +inf for the infinite value.
    double value() const {
        switch (kind_) {
            case Kind::Exact: {
                const double d = rat_.to_double();
                if (!std::isfinite(d)) throw Error("ExtReal: exact value overflows binary64");
                return d;
            }
            case Kind::Approx: return val_;
            default: return std::numeric_limits<double>::infinity();
        }
    }

    double rel_error() const {
        switch (kind_) {
            case Kind::Exact: return eps_convert;
            case Kind::Approx: return err_;
            default: return 0.0;
        }
    }

    friend ExtReal operator+(const ExtReal& a, const ExtReal& b) {
        if (a.is_infinite() || b.is_infinite()) return infinity();
        if (a.is_exact() && b.is_exact()) return exact(a.rat_ + b.rat_);
        const double va = a.value(), vb = b.value();
        const double abs_err = a.rel_error() * va + b.rel_error() * vb;
        const double v = va + vb;
        return approx(v, v > 0 ? abs_err / v + eps_op : 0.0);
    }
    ExtReal& operator+=(const ExtReal& o) { return *this = *this + o; }

    friend ExtReal operator*(const ExtReal& a, const ExtReal& b) {
        if (a.is_zero() || b.is_zero()) return exact(Rational(0));
        if (a.is_infinite() || b.is_infinite()) return infinity();
        if (a.is_exact() && b.is_exact()) return exact(a.rat_ * b.rat_);
        return approx(a.value() * b.value(), a.rel_error() + b.rel_error() + eps_op);
    }

    friend ExtReal operator/(const ExtReal& a, const ExtReal& b) {
        if (b.is_zero()) throw Error("ExtReal: division by zero");
        if (a.is_infinite()) return infinity();
        if (b.is_infinite()) return exact(Rational(0));
        if (a.is_exact() && b.is_exact()) return exact(a.rat_ / b.rat_);
        return approx(a.value() / b.value(), a.rel_error() + b.rel_error() + eps_op);
    }

    // a - b for a >= b; relative error is propagated honestly, so it can
    // grow under cancellation.
    static ExtReal sub_nonneg(const ExtReal& a, const ExtReal& b) {
        if (b.is_infinite()) throw Error("ExtReal: sub_nonneg with infinite subtrahend");
        if (a.is_infinite()) return infinity();
        if (a.is_exact() && b.is_exact()) {
            const Rational d = a.rat_ - b.rat_;
            if (d.is_negative()) throw Error("ExtReal: sub_nonneg would be negative");
            return exact(d);
        }
        const double va = a.value(), vb = b.value();
        const double abs_err = a.rel_error() * va + b.rel_error() * vb;
        double v = va - vb;
        if (v < 0) {
            if (-v > abs_err + 1e-300) throw Error("ExtReal: sub_nonneg would be negative");
            v = 0;
        }
        return v > 0 ? approx(v, abs_err / v + eps_op) : approx(0.0, 0.0);
    }

    ExtReal scaled(const Rational& k) const {
        if (k.is_negative()) throw Error("ExtReal: negative scale");
        if (k.is_zero()) return exact(Rational(0));
        switch (kind_) {
            case Kind::Exact: return exact(rat_ * k);
            case Kind::Approx: return approx(val_ * k.to_double(), err_ + eps_op);
            default: return infinity();
        }
    }

    std::string str() const {
        switch (kind_) {
            case Kind::Exact: return rat_.str();
            case Kind::Approx: return std::to_string(val_);
            default: return "inf";
        }
    }

private:
    static constexpr double eps_convert = 2.3e-16;   // rational -> binary64
    static constexpr double eps_op = 3.0e-16;        // one rounded operation

    Kind kind_;
    Rational rat_;       // Exact
    double val_ = 0.0;   // Approx
    double err_ = 0.0;   // Approx: relative bound
};

// base^expo for base >= 0; exact whenever the result is rational (integer
// exponent, or base a perfect power matching the exponent's denominator).
inline ExtReal rational_pow(const Rational& base, const Rational& expo) {
    if (base.is_negative()) throw Error("rational_pow: negative base");
    if (expo.is_zero()) return ExtReal::exact(Rational(1));
    if (base.is_zero())
        return expo.is_positive() ? ExtReal::exact(Rational(0)) : ExtReal::infinity();
    if (expo.is_integer()) {
        if (!expo.num().fits_slong_p()) throw Error("rational_pow: exponent too large");
        return ExtReal::exact(Rational::pow_int(base, expo.num().get_si()));
    }
    if (expo.den().fits_ulong_p()) {
        if (auto r = base.root(expo.den().get_ui())) {
            if (!expo.num().fits_slong_p()) throw Error("rational_pow: exponent too large");
            return ExtReal::exact(Rational::pow_int(*r, expo.num().get_si()));
        }
    }
    const double e = expo.to_double();
    const double v = std::pow(base.to_double(), e);
    if (!std::isfinite(v)) throw Error("rational_pow: overflow in approximation");
    return ExtReal::approx(v, 4e-16 * (std::fabs(e) + 2.0));
}

inline ExtReal ext_pow(const ExtReal& x, const Rational& expo) {
    if (x.is_infinite()) {
        if (expo.is_positive()) return ExtReal::infinity();
        return expo.is_zero() ? ExtReal::exact(Rational(1)) : ExtReal::exact(Rational(0));
    }
    if (x.is_exact()) return rational_pow(x.exact_value(), expo);
    if (x.value() == 0.0)
        return expo.is_positive() ? ExtReal::approx(0.0, 0.0)
             : expo.is_zero()     ? ExtReal::exact(Rational(1))
                                  : ExtReal::infinity();
    const double e = expo.to_double();
    const double v = std::pow(x.value(), e);
    if (!std::isfinite(v)) throw Error("ext_pow: overflow");
    return ExtReal::approx(v, std::fabs(e) * x.rel_error() + 4e-16 * (std::fabs(e) + 2.0));
}

// Total order on central values (exact comparison when both sides exact).
inline int ext_cmp(const ExtReal& a, const ExtReal& b) {
    if (a.is_infinite() || b.is_infinite())
        return a.is_infinite() == b.is_infinite() ? 0 : (a.is_infinite() ? 1 : -1);
    if (a.is_exact() && b.is_exact()) {
        const auto c = a.exact_value() <=> b.exact_value();
        return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    const double va = a.value(), vb = b.value();
    return va < vb ? -1 : (va > vb ? 1 : 0);
}

inline ExtReal ext_max(const ExtReal& a, const ExtReal& b) { return ext_cmp(a, b) < 0 ? b : a; }
inline ExtReal ext_min(const ExtReal& a, const ExtReal& b) { return ext_cmp(a, b) < 0 ? a : b; }

// a <= b up to the given relative slack; exact comparison when both exact.
inline bool le_with_slack(const ExtReal& a, const ExtReal& b, double rel_slack) {
    if (b.is_infinite()) return true;
    if (a.is_infinite()) return false;
    if (a.is_exact() && b.is_exact()) return !(b.exact_value() < a.exact_value());
    const double va = a.value(), vb = b.value();
    return va <= vb + rel_slack * std::max(std::fabs(va), std::fabs(vb)) + 1e-300;
}

inline bool approx_eq(const ExtReal& a, const ExtReal& b, double rel) {
    if (a.is_infinite() || b.is_infinite()) return a.is_infinite() && b.is_infinite();
    if (a.is_exact() && b.is_exact()) return a.exact_value() == b.exact_value();
    const double va = a.value(), vb = b.value();
    return std::fabs(va - vb) <= rel * std::max({std::fabs(va), std::fabs(vb), 1e-300});
}

/**
 * Closed form for the integral of c*t^alpha over [a, b), b possibly +inf:
 * c*(b^(alpha+1) - a^(alpha+1))/(alpha+1), with the logarithmic case at
 * alpha = -1. Divergent improper endpoints yield +infinity.
 */
inline ExtReal power_integral(const Rational& c, const Rational& alpha,
                              const Rational& a, const std::optional<Rational>& b) {
    if (c.is_negative()) throw Error("power_integral: negative coefficient");
    if (a.is_negative()) throw Error("power_integral: negative left endpoint");
    if (c.is_zero() || (b && *b == a)) return ExtReal::exact(Rational(0));
    if (b && *b < a) throw Error("power_integral: reversed endpoints");

    const Rational beta = alpha + Rational(1);
    if (beta.is_zero()) {   // c * ln(b/a), via log1p so near-1 ratios stay accurate
        if (!b || a.is_zero()) return ExtReal::infinity();
        const double ln = std::log1p(((*b - a) / a).to_double());
        return ExtReal::approx(c.to_double() * ln, 8e-16);
    }

    const Rational scale = c / beta.abs();
    if (!b) {
        if (beta.is_positive()) return ExtReal::infinity();
        // a^beta / |beta| * c, divergent if a == 0 (then also at the origin)
        return rational_pow(a, beta).scaled(scale);
    }
    ExtReal hi = rational_pow(beta.is_positive() ? *b : a, beta);
    ExtReal lo = rational_pow(beta.is_positive() ? a : *b, beta);
    return ExtReal::sub_nonneg(hi, lo).scaled(scale);
}

} // namespace amalgam
