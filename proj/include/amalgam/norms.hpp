#pragma once

#include <string>
#include <variant>

#include "amalgam/stepfn.hpp"

namespace amalgam {

// p in (0, inf], the index of a Lebesgue or Lorentz functional.
class Exponent {
public:
    static Exponent finite(Rational p) {
        if (!p.is_positive()) throw InvalidSpec("exponent must be positive");
        Exponent e;
        e.p_ = std::move(p);
        return e;
    }
    static Exponent inf() { return Exponent{}; }

    bool is_inf() const { return !p_.has_value(); }
    const Rational& value() const {
        if (is_inf()) throw Error("Exponent: infinite");
        return *p_;
    }

    Rational reciprocal_or_zero() const {   // 1/p, with 1/inf = 0
        return is_inf() ? Rational(0) : p_->reciprocal();
    }

    std::string str() const { return is_inf() ? "inf" : p_->str(); }

    friend bool operator==(const Exponent&, const Exponent&) = default;

    // finite exponents ordered by value, inf greatest
    friend bool operator<(const Exponent& a, const Exponent& b) {
        if (a.is_inf()) return false;
        return b.is_inf() || a.value() < b.value();
    }
    friend bool operator<=(const Exponent& a, const Exponent& b) { return !(b < a); }

private:
    std::optional<Rational> p_;
};

struct Lebesgue {
    Exponent p;
    friend bool operator==(const Lebesgue&, const Lebesgue&) = default;
};

// L^{p,q}: p finite, or p = q = inf which aliases Lebesgue(inf). The trivial
// space L^{inf,q<inf} is rejected.
struct Lorentz {
    Exponent p, q;
    friend bool operator==(const Lorentz&, const Lorentz&) = default;
};

using NormSpec = std::variant<Lebesgue, Lorentz>;

inline NormSpec lebesgue(Exponent p) { return Lebesgue{std::move(p)}; }
inline NormSpec lebesgue(long p) { return Lebesgue{Exponent::finite(Rational(p))}; }
inline NormSpec lebesgue(const Rational& p) { return Lebesgue{Exponent::finite(p)}; }
inline NormSpec lebesgue_inf() { return Lebesgue{Exponent::inf()}; }

inline NormSpec lorentz(Exponent p, Exponent q) {
    if (p.is_inf() && !q.is_inf())
        throw InvalidSpec("Lorentz(inf, q < inf) is the trivial space");
    return Lorentz{std::move(p), std::move(q)};
}
inline NormSpec lorentz(const Rational& p, const Rational& q) {
    return lorentz(Exponent::finite(p), Exponent::finite(q));
}

inline std::string str(const NormSpec& spec) {
    if (const auto* lb = std::get_if<Lebesgue>(&spec)) return "L:" + lb->p.str();
    const auto& lz = std::get<Lorentz>(spec);
    return "Lorentz:" + lz.p.str() + ":" + lz.q.str();
}

namespace detail {

// sup over the closure of one piece of c * t^(expo + w); the factor is
// monotone there, so the supremum sits at one closure endpoint.
inline ExtReal piece_weighted_sup(const Piece& p, const Rational& w) {
    const Rational e = p.expo + w;
    if (e.is_zero()) return ExtReal::exact(p.coef);
    if (e.is_negative()) {
        if (p.iv.left.is_zero()) return ExtReal::infinity();
        return rational_pow(p.iv.left, e).scaled(p.coef);
    }
    if (p.iv.unbounded()) return ExtReal::infinity();
    return rational_pow(*p.iv.right, e).scaled(p.coef);
}

// (∫ f^p)^(1/p) without rearranging, valid for any piecewise-power f
inline ExtReal lebesgue_norm_raw(const PPF& f, const Exponent& p) {
    if (f.empty()) return ExtReal::exact(Rational(0));
    if (p.is_inf()) {
        ExtReal sup = ExtReal::exact(Rational(0));
        for (const Piece& pc : f.pieces()) sup = ext_max(sup, piece_weighted_sup(pc, Rational(0)));
        return sup;
    }
    const Rational& pv = p.value();
    ExtReal total = ExtReal::exact(Rational(0));
    for (const Piece& pc : f.pieces()) {
        const ExtReal cell = power_integral(Rational(1), pc.expo * pv, pc.iv.left, pc.iv.right);
        total += cell * rational_pow(pc.coef, pv);
        if (total.is_infinite()) return ExtReal::infinity();
    }
    return ext_pow(total, pv.reciprocal());
}

} // namespace detail

/**
 * Evaluates the functional on a non-increasing profile (the caller rearranges
 * first). Lorentz uses the literal ambient variable, so restricted tails with
 * a leading zero gap evaluate exactly as the amalgam definitions prescribe.
 * Exact whenever every power stays rational; +infinity on divergence.
 */
inline ExtReal norm_eval(const NormSpec& spec, const MonotoneProfile& g) {
    if (const auto* lb = std::get_if<Lebesgue>(&spec))
        return detail::lebesgue_norm_raw(g.fn(), lb->p);

    const auto& lz = std::get<Lorentz>(spec);
    if (lz.p.is_inf()) {
        if (!lz.q.is_inf()) throw InvalidSpec("Lorentz(inf, q < inf) is the trivial space");
        return detail::lebesgue_norm_raw(g.fn(), Exponent::inf());
    }
    if (g.empty()) return ExtReal::exact(Rational(0));
    const Rational& pv = lz.p.value();
    if (lz.q.is_inf()) {
        ExtReal sup = ExtReal::exact(Rational(0));
        for (const Piece& pc : g.pieces())
            sup = ext_max(sup, detail::piece_weighted_sup(pc, pv.reciprocal()));
        return sup;
    }
    // (∫ (t^{1/p} g(t))^q dt/t)^{1/q} piece by piece
    const Rational& qv = lz.q.value();
    ExtReal total = ExtReal::exact(Rational(0));
    for (const Piece& pc : g.pieces()) {
        const Rational weight = qv / pv - Rational(1) + pc.expo * qv;
        total += power_integral(Rational(1), weight, pc.iv.left, pc.iv.right) *
                 rational_pow(pc.coef, qv);
        if (total.is_infinite()) return ExtReal::infinity();
    }
    return ext_pow(total, qv.reciprocal());
}

/**
 * Rearrange-then-evaluate. For Lebesgue specs the value is cross-checked
 * against the direct integral of |f|^p, which is the rearrangement-invariance
 * identity in computable form.
 */
inline ExtReal norm_of(const NormSpec& spec, const StepFunction& f) {
    const MonotoneProfile prof = rearrange_step(f);
    const ExtReal v = norm_eval(spec, prof);
    if (const auto* lb = std::get_if<Lebesgue>(&spec)) {
        const ExtReal direct = detail::lebesgue_norm_raw(f.fn(), lb->p);
        const bool ok = (v.is_exact() && direct.is_exact())
                            ? v.exact_value() == direct.exact_value()
                            : approx_eq(v, direct, 1e-11);
        if (!ok)
            throw Error("norm_of: rearrangement-invariance cross-check failed for " + str(spec) +
                        " on " + f.fn().str());
    }
    return v;
}

// 1/p + 1/p' = 1 for p >= 1; the associate of L^p is L^{p'}.
inline Exponent dual_exponent(const Exponent& p) {
    if (p.is_inf()) return Exponent::finite(Rational(1));
    if (p.value() < Rational(1))
        throw NotNormable("dual exponent undefined for p = " + p.str() + " < 1");
    if (p.value() == Rational(1)) return Exponent::inf();
    return Exponent::finite(p.value() / (p.value() - Rational(1)));
}

namespace detail {

struct LorentzIndices {
    Exponent p, q;
};

inline LorentzIndices as_lorentz(const NormSpec& spec) {
    if (const auto* lb = std::get_if<Lebesgue>(&spec)) return {lb->p, lb->p};
    const auto& lz = std::get<Lorentz>(spec);
    return {lz.p, lz.q};
}

} // namespace detail

/**
 * Decides whether a's local component is stronger than b's: finiteness of
 * ||f*chi[0,1]||_a implies the same for b. Primary indices decide except on a
 * tie, where the secondary-index nesting q_a <= q_b applies (an extension:
 * the usual Lorentz comparison assumes distinct primary indices).
 */
inline bool local_stronger(const NormSpec& a, const NormSpec& b) {
    const auto ia = detail::as_lorentz(a);
    const auto ib = detail::as_lorentz(b);
    if (ia.p == ib.p) return ia.q <= ib.q;
    return ib.p < ia.p;
}

// Mirror of local_stronger: global strength reverses the primary index
// order; the tie-break is the same nesting.
inline bool global_stronger(const NormSpec& a, const NormSpec& b) {
    const auto ia = detail::as_lorentz(a);
    const auto ib = detail::as_lorentz(b);
    if (ia.p == ib.p) return ia.q <= ib.q;
    return ia.p < ib.p;
}

} // namespace amalgam
