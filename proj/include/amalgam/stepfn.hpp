#pragma once

#include <algorithm>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "amalgam/extreal.hpp"
#include "amalgam/rational.hpp"

namespace amalgam {

// Half-open [left, right), right absent meaning +infinity.
struct Interval {
    Rational left;
    std::optional<Rational> right;

    bool unbounded() const { return !right.has_value(); }

    bool contains(const Rational& t) const {
        return t >= left && (unbounded() || t < *right);
    }

    ExtReal measure() const {
        return unbounded() ? ExtReal::infinity() : ExtReal::exact(*right - left);
    }

    static Interval bounded(Rational l, Rational r) {
        Interval iv{std::move(l), std::move(r)};
        iv.validate();
        return iv;
    }
    static Interval to_infinity(Rational l) {
        Interval iv{std::move(l), std::nullopt};
        iv.validate();
        return iv;
    }

    void validate() const {
        if (left.is_negative()) throw Error("Interval: negative left endpoint");
        if (right && !(*right > left)) throw Error("Interval: empty or reversed");
    }

    friend bool operator==(const Interval&, const Interval&) = default;
};

// One piece c * t^alpha on its interval. A piece with alpha < 0 may start at
// 0; the singularity there is treated as an improper-integral endpoint and
// evaluation at exactly t = 0 returns 0.
struct Piece {
    Interval iv;
    Rational coef;   // >= 0 on input, > 0 once normalized
    Rational expo;

    friend bool operator==(const Piece&, const Piece&) = default;
};

namespace detail {

// sign of (c * t^e) - v for c > 0, t > 0, v >= 0
inline int cmp_power_value(const Rational& c, const Rational& t, const Rational& e,
                           const Rational& v) {
    if (!v.is_positive()) return 1;
    if (e.is_zero()) return c < v ? -1 : (c == v ? 0 : 1);
    return -compare_with_power(v / c, t, e);
}

// closure supremum of the piece compared against v; +1 when the supremum is
// infinite (negative exponent reaching 0, or positive exponent reaching inf)
inline int cmp_piece_sup(const Piece& p, const Rational& v) {
    if (p.expo.is_zero()) return p.coef < v ? -1 : (p.coef == v ? 0 : 1);
    if (p.expo.is_negative()) {
        if (p.iv.left.is_zero()) return 1;
        return cmp_power_value(p.coef, p.iv.left, p.expo, v);
    }
    if (p.iv.unbounded()) return 1;
    return cmp_power_value(p.coef, *p.iv.right, p.expo, v);
}

// closure infimum of the piece compared against v
inline int cmp_piece_inf(const Piece& p, const Rational& v) {
    if (p.expo.is_zero()) return p.coef < v ? -1 : (p.coef == v ? 0 : 1);
    if (p.expo.is_negative()) {
        if (p.iv.unbounded()) return v.is_positive() ? -1 : 0;   // limit 0
        return cmp_power_value(p.coef, *p.iv.right, p.expo, v);
    }
    if (p.iv.left.is_zero()) return v.is_positive() ? -1 : 0;    // value 0
    return cmp_power_value(p.coef, p.iv.left, p.expo, v);
}

} // namespace detail

/**
 * Finite list of disjoint half-open power pieces on [0, inf), valued 0 off
 * the pieces. Only non-negative functions are modeled. Canonical form:
 * sorted, zero pieces dropped, touching pieces with equal (c, alpha) merged.
 */
class PiecewisePowerFunction {
public:
    PiecewisePowerFunction() = default;

    static PiecewisePowerFunction normalized(std::vector<Piece> raw) {
        std::vector<Piece> ps;
        ps.reserve(raw.size());
        for (auto& p : raw) {
            p.iv.validate();
            if (p.coef.is_negative()) throw NegativeCoefficient("piece with negative coefficient");
            if (!p.coef.is_zero()) ps.push_back(std::move(p));
        }
        std::sort(ps.begin(), ps.end(), [](const Piece& a, const Piece& b) {
            return a.iv.left < b.iv.left;
        });
        std::vector<Piece> out;
        for (auto& p : ps) {
            if (!out.empty()) {
                const Piece& prev = out.back();
                if (prev.iv.unbounded() || p.iv.left < *prev.iv.right)
                    throw OverlappingPieces("pieces overlap at t = " + p.iv.left.str());
                if (p.iv.left == *prev.iv.right && p.coef == prev.coef && p.expo == prev.expo) {
                    out.back().iv.right = p.iv.right;
                    continue;
                }
            }
            out.push_back(std::move(p));
        }
        PiecewisePowerFunction f;
        f.pieces_ = std::move(out);
        return f;
    }

    const std::vector<Piece>& pieces() const { return pieces_; }
    bool empty() const { return pieces_.empty(); }

    bool is_step() const {
        return std::all_of(pieces_.begin(), pieces_.end(),
                           [](const Piece& p) { return p.expo.is_zero(); });
    }

    bool bounded_support() const {
        return pieces_.empty() || !pieces_.back().iv.unbounded();
    }

    // index of the piece containing t, or npos
    std::size_t piece_index(const Rational& t) const {
        auto it = std::upper_bound(pieces_.begin(), pieces_.end(), t,
                                   [](const Rational& v, const Piece& p) { return v < p.iv.left; });
        if (it == pieces_.begin()) return npos;
        --it;
        return it->iv.contains(t) ? static_cast<std::size_t>(it - pieces_.begin()) : npos;
    }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    // compact replayable form: "a,b,c,alpha;..." with b possibly "inf"
    std::string str() const {
        std::string s;
        for (const Piece& p : pieces_) {
            if (!s.empty()) s += ';';
            s += p.iv.left.str() + ',' + (p.iv.unbounded() ? "inf" : p.iv.right->str()) + ',' +
                 p.coef.str() + ',' + p.expo.str();
        }
        return s.empty() ? "0" : s;
    }

    friend bool operator==(const PiecewisePowerFunction&, const PiecewisePowerFunction&) = default;

private:
    std::vector<Piece> pieces_;
};

using PPF = PiecewisePowerFunction;

// Right-continuous evaluation; 0 off the pieces and at a singular origin.
inline ExtReal evaluate(const PPF& f, const Rational& t) {
    if (t.is_negative()) throw Error("evaluate: t < 0");
    const auto idx = f.piece_index(t);
    if (idx == PPF::npos) return ExtReal::exact(Rational(0));
    const Piece& p = f.pieces()[idx];
    if (p.expo.is_zero()) return ExtReal::exact(p.coef);
    if (t.is_zero()) return ExtReal::exact(Rational(0));
    return rational_pow(t, p.expo).scaled(p.coef);
}

/**
 * Distribution function: Lebesgue measure of the super-level set {f > s}.
 * Each piece is monotone in t, so its contribution is one interval with a
 * closed-form threshold; exact for step pieces and whenever the threshold
 * is rational.
 */
inline ExtReal distribution(const PPF& f, const Rational& s) {
    if (s.is_negative()) throw Error("distribution: s < 0");
    ExtReal total = ExtReal::exact(Rational(0));
    for (const Piece& p : f.pieces()) {
        const Rational& a = p.iv.left;
        if (p.expo.is_zero() || s.is_zero()) {
            // constant piece, or the whole (positive) piece exceeds s = 0
            const bool in = s.is_zero() || p.coef > s;
            if (in) total += p.iv.measure();
            continue;
        }
        // threshold where c * t^expo == s
        const ExtReal tau = rational_pow(s / p.coef, p.expo.reciprocal());
        if (p.expo.is_positive()) {
            // {t > tau} within the piece
            if (p.iv.unbounded()) { total = ExtReal::infinity(); break; }
            const ExtReal b = ExtReal::exact(*p.iv.right);
            const ExtReal lo = ext_max(ExtReal::exact(a), tau);
            if (ext_cmp(lo, b) < 0) total += ExtReal::sub_nonneg(b, lo);
        } else {
            // {t < tau} within the piece
            const ExtReal lo = ExtReal::exact(a);
            ExtReal hi = tau;
            if (!p.iv.unbounded()) hi = ext_min(hi, ExtReal::exact(*p.iv.right));
            if (ext_cmp(lo, hi) < 0) total += ExtReal::sub_nonneg(hi, lo);
        }
    }
    return total;
}

/**
 * A piecewise-power function certified non-increasing: within each piece the
 * exponent is <= 0, consecutive pieces touch with non-increasing closure
 * values, and at most a leading zero gap is allowed (so restricted tails
 * f*·χ[1,inf) remain representable). Right-continuous at breakpoints.
 */
class MonotoneProfile {
public:
    MonotoneProfile() = default;

    explicit MonotoneProfile(PPF f) : fn_(std::move(f)) { validate(); }

    const PPF& fn() const { return fn_; }
    const std::vector<Piece>& pieces() const { return fn_.pieces(); }
    bool empty() const { return fn_.empty(); }

    ExtReal value_at(const Rational& t) const { return evaluate(fn_, t); }

    friend bool operator==(const MonotoneProfile&, const MonotoneProfile&) = default;

private:
    void validate() const {
        const auto& ps = fn_.pieces();
        for (std::size_t i = 0; i < ps.size(); ++i) {
            if (ps[i].expo.is_positive())
                throw InvalidProfile("increasing power piece at t = " + ps[i].iv.left.str());
            if (i == 0) continue;
            const Piece& prev = ps[i - 1];
            if (prev.iv.unbounded() || *prev.iv.right != ps[i].iv.left)
                throw InvalidProfile("interior gap before t = " + ps[i].iv.left.str());
            // closure values at the shared breakpoint b: c1*b^e1 >= c2*b^e2
            const Rational& b = ps[i].iv.left;
            const Rational ratio = prev.coef / ps[i].coef;
            if (compare_with_power(ratio, b, ps[i].expo - prev.expo) < 0)
                throw InvalidProfile("value increases across t = " + b.str());
        }
    }

    PPF fn_;
};

/**
 * Step function: all exponents zero, finitely many values.
 */
class StepFunction {
public:
    StepFunction() = default;

    explicit StepFunction(PPF f) : fn_(std::move(f)) {
        if (!fn_.is_step()) throw Error("StepFunction: non-zero exponent");
    }

    const PPF& fn() const { return fn_; }
    const std::vector<Piece>& pieces() const { return fn_.pieces(); }
    bool empty() const { return fn_.empty(); }

    friend bool operator==(const StepFunction&, const StepFunction&) = default;

private:
    PPF fn_;
};

// builders ------------------------------------------------------------------

inline StepFunction step_function(std::initializer_list<std::tuple<Rational, Rational, Rational>> spans) {
    std::vector<Piece> ps;
    for (const auto& [a, b, c] : spans)
        ps.push_back({Interval::bounded(a, b), c, Rational(0)});
    return StepFunction(PPF::normalized(std::move(ps)));
}

inline StepFunction indicator(const Rational& a, const Rational& b) {
    return step_function({{a, b, Rational(1)}});
}

inline PPF power_function(const Rational& a, const std::optional<Rational>& b,
                          const Rational& c, const Rational& alpha) {
    Interval iv = b ? Interval::bounded(a, *b) : Interval::to_infinity(a);
    return PPF::normalized({Piece{iv, c, alpha}});
}

// operations ----------------------------------------------------------------

/**
 * Non-increasing rearrangement of a step function: distinct values sorted in
 * descending order, their level-set measures concatenated from the origin.
 * A value carried by an unbounded piece fills the tail; strictly smaller
 * values then never appear.
 */
inline MonotoneProfile rearrange_step(const StepFunction& f) {
    std::map<Rational, std::pair<Rational, bool>, std::greater<>> levels; // value -> (finite measure, unbounded?)
    for (const Piece& p : f.pieces()) {
        auto& [m, inf] = levels[p.coef];
        if (p.iv.unbounded()) inf = true;
        else m += *p.iv.right - p.iv.left;
    }
    std::vector<Piece> out;
    Rational cursor(0);
    for (const auto& [value, lvl] : levels) {
        const auto& [m, inf] = lvl;
        if (inf) {
            out.push_back({Interval::to_infinity(cursor), value, Rational(0)});
            break;
        }
        if (m.is_zero()) continue;
        out.push_back({Interval::bounded(cursor, cursor + m), value, Rational(0)});
        cursor += m;
    }
    return MonotoneProfile(PPF::normalized(std::move(out)));
}

inline bool equimeasurable(const StepFunction& f, const StepFunction& g) {
    return rearrange_step(f) == rearrange_step(g);
}

/**
 * f*(t) for a general piecewise-power f via monotone bisection on the
 * distribution function. Exact for step inputs (delegates to rearrange_step),
 * +infinity when every super-level set has infinite measure, otherwise an
 * approximation with relative error <= tol.
 */
inline ExtReal rearrange_eval(const PPF& f, const Rational& t, double tol = 1e-12) {
    if (!t.is_positive()) throw Error("rearrange_eval: t must be > 0");
    if (f.is_step())
        return evaluate(rearrange_step(StepFunction(f)).fn(), t);
    for (const Piece& p : f.pieces())
        if (p.iv.unbounded() && p.expo.is_positive())
            return ExtReal::infinity();   // mu_f(s) = inf for every s
    const ExtReal t_ext = ExtReal::exact(t);
    auto mu_le_t = [&](const Rational& s) { return ext_cmp(distribution(f, s), t_ext) <= 0; };
    if (mu_le_t(Rational(0))) return ExtReal::exact(Rational(0));
    Rational hi(1);
    while (!mu_le_t(hi)) hi *= Rational(2);
    Rational lo(0);
    if (!(tol > 0) || tol >= 1) throw Error("rearrange_eval: tolerance out of range");
    const Rational tol_rat = Rational(static_cast<long>(std::ceil(1.0 / tol)), 1).reciprocal();
    while (hi - lo > tol_rat * lo) {
        const Rational mid = (lo + hi) / Rational(2);
        (mu_le_t(mid) ? hi : lo) = mid;
    }
    return ExtReal::approx(((lo + hi) / Rational(2)).to_double(), tol);
}

// Integral of a non-increasing profile over [0, t), t absent meaning +inf.
inline ExtReal partial_integral(const MonotoneProfile& g, const std::optional<Rational>& t) {
    if (t && !t->is_positive()) throw Error("partial_integral: t must be > 0");
    ExtReal total = ExtReal::exact(Rational(0));
    for (const Piece& p : g.pieces()) {
        if (t && *t <= p.iv.left) break;
        std::optional<Rational> hi = p.iv.right;
        if (t && (!hi || *t < *hi)) hi = *t;
        total += power_integral(p.coef, p.expo, p.iv.left, hi);
    }
    return total;
}

// f * chi_I with pieces clipped exactly.
inline PPF restrict(const PPF& f, const Interval& I) {
    std::vector<Piece> out;
    for (const Piece& p : f.pieces()) {
        const Rational lo = max(p.iv.left, I.left);
        std::optional<Rational> hi = p.iv.right;
        if (!I.unbounded() && (!hi || *I.right < *hi)) hi = I.right;
        if (!hi) out.push_back({Interval::to_infinity(lo), p.coef, p.expo});
        else if (lo < *hi) out.push_back({Interval::bounded(lo, *hi), p.coef, p.expo});
    }
    return PPF::normalized(std::move(out));
}

/**
 * Dilation (D_t f)(s) = f(ts): each piece [a,b) with c*t^alpha maps to
 * [a/t, b/t) with coefficient c * t^alpha. The scaled coefficient must stay
 * rational (always true for step pieces); otherwise the result leaves the
 * representable class and InexactResult is thrown.
 */
inline PPF dilate(const PPF& f, const Rational& t) {
    if (!t.is_positive()) throw Error("dilate: t must be > 0");
    std::vector<Piece> out;
    for (const Piece& p : f.pieces()) {
        Rational c = p.coef;
        if (!p.expo.is_zero()) {
            const ExtReal s = rational_pow(t, p.expo);
            if (!s.is_exact())
                throw InexactResult("dilate: coefficient " + p.coef.str() + "*" + t.str() + "^" +
                                    p.expo.str() + " is irrational");
            c = c * s.exact_value();
        }
        std::optional<Rational> hi;
        if (!p.iv.unbounded()) hi = *p.iv.right / t;
        out.push_back({hi ? Interval::bounded(p.iv.left / t, *hi)
                          : Interval::to_infinity(p.iv.left / t),
                       c, p.expo});
    }
    return PPF::normalized(std::move(out));
}

namespace detail {

// Sorted endpoints of both functions; segments between consecutive entries
// meet at most one piece of each operand.
inline std::vector<Rational> merged_breakpoints(const PPF& f, const PPF& g) {
    std::vector<Rational> cuts;
    for (const PPF* h : {&f, &g}) {
        for (const Piece& p : h->pieces()) {
            cuts.push_back(p.iv.left);
            if (!p.iv.unbounded()) cuts.push_back(*p.iv.right);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    return cuts;
}

inline bool has_unbounded(const PPF& f) {
    return !f.empty() && f.pieces().back().iv.unbounded();
}

} // namespace detail

/**
 * Exact pointwise sum on the common refinement. Overlapping pieces must have
 * equal exponents (automatic for step inputs); otherwise the sum leaves the
 * piecewise-power class.
 */
inline PPF add(const PPF& f, const PPF& g) {
    const auto cuts = detail::merged_breakpoints(f, g);
    std::vector<Piece> out;
    auto emit = [&](const Rational& lo, const std::optional<Rational>& hi) {
        const auto fi = f.piece_index(lo);
        const auto gi = g.piece_index(lo);
        if (fi == PPF::npos && gi == PPF::npos) return;
        const Interval iv = hi ? Interval::bounded(lo, *hi) : Interval::to_infinity(lo);
        if (fi == PPF::npos) { out.push_back({iv, g.pieces()[gi].coef, g.pieces()[gi].expo}); return; }
        if (gi == PPF::npos) { out.push_back({iv, f.pieces()[fi].coef, f.pieces()[fi].expo}); return; }
        const Piece& pf = f.pieces()[fi];
        const Piece& pg = g.pieces()[gi];
        if (pf.expo != pg.expo)
            throw UnsupportedCombination("add: unequal exponents " + pf.expo.str() + " and " +
                                         pg.expo.str() + " overlap at t = " + lo.str());
        out.push_back({iv, pf.coef + pg.coef, pf.expo});
    };
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) emit(cuts[i], cuts[i + 1]);
    if (!cuts.empty() && (detail::has_unbounded(f) || detail::has_unbounded(g)))
        emit(cuts.back(), std::nullopt);
    return PPF::normalized(std::move(out));
}

inline PPF scale(const PPF& f, const Rational& k) {
    if (k.is_negative()) throw NegativeCoefficient("scale: negative factor");
    std::vector<Piece> out;
    for (const Piece& p : f.pieces()) out.push_back({p.iv, p.coef * k, p.expo});
    return PPF::normalized(std::move(out));
}

/**
 * min{f, v} pointwise. Power pieces are supported when the constant does not
 * cross the piece interior (the piece is monotone, so closure extremes
 * decide exactly); a genuine interior crossing has no piecewise-power form.
 */
inline PPF min_with_const(const PPF& f, const Rational& v) {
    if (v.is_negative()) throw Error("min_with_const: negative bound");
    if (v.is_zero()) return PPF();
    std::vector<Piece> out;
    for (const Piece& p : f.pieces()) {
        if (p.expo.is_zero()) {
            out.push_back({p.iv, min(p.coef, v), p.expo});
            continue;
        }
        if (detail::cmp_piece_sup(p, v) <= 0) { out.push_back(p); continue; }
        if (detail::cmp_piece_inf(p, v) >= 0) { out.push_back({p.iv, v, Rational(0)}); continue; }
        throw UnsupportedCombination("min_with_const: constant crosses power piece at t = " +
                                     p.iv.left.str());
    }
    return PPF::normalized(std::move(out));
}

/**
 * max{f - v, 0} pointwise. A power piece survives only when it lies entirely
 * below v (drops out); the shifted profile c*t^a - v is otherwise not a
 * power piece.
 */
inline PPF subtract_const_clamped(const PPF& f, const Rational& v) {
    if (v.is_negative()) throw Error("subtract_const_clamped: negative shift");
    if (v.is_zero()) return f;
    std::vector<Piece> out;
    for (const Piece& p : f.pieces()) {
        if (p.expo.is_zero()) {
            if (p.coef > v) out.push_back({p.iv, p.coef - v, p.expo});
            continue;
        }
        if (detail::cmp_piece_sup(p, v) <= 0) continue;
        throw UnsupportedCombination("subtract_const_clamped: shift crosses power piece at t = " +
                                     p.iv.left.str());
    }
    return PPF::normalized(std::move(out));
}

inline StepFunction to_step(const MonotoneProfile& g) {
    return StepFunction(g.fn());
}

} // namespace amalgam
