#pragma once

#include <utility>
#include <variant>

#include "amalgam/norms.hpp"

namespace amalgam {

struct SimpleSpace {
    NormSpec spec;
    friend bool operator==(const SimpleSpace&, const SimpleSpace&) = default;
};

struct WLSpace {
    NormSpec local;
    NormSpec global;
    friend bool operator==(const WLSpace&, const WLSpace&) = default;
};

// Wiener amalgam W(L^p, l^q) over unit cells [n, n+1); indices in [1, inf].
struct WienerSpace {
    Exponent p, q;
    friend bool operator==(const WienerSpace&, const WienerSpace&) = default;
};

// max of an inner functional with the WL(L^1, L^inf) norm; nesting depth 1
struct IntegrableSpace {
    std::variant<SimpleSpace, WLSpace> inner;
    friend bool operator==(const IntegrableSpace&, const IntegrableSpace&) = default;
};

using SpaceSpec = std::variant<SimpleSpace, WLSpace, WienerSpace, IntegrableSpace>;

inline SpaceSpec simple(NormSpec s) { return SimpleSpace{std::move(s)}; }
inline SpaceSpec wl(NormSpec local, NormSpec global) {
    return WLSpace{std::move(local), std::move(global)};
}
inline SpaceSpec wiener(Exponent p, Exponent q) {
    const Exponent one = Exponent::finite(Rational(1));
    if (p < one || q < one) throw InvalidSpec("Wiener indices must lie in [1, inf]");
    return WienerSpace{std::move(p), std::move(q)};
}
inline SpaceSpec integrable(SpaceSpec inner) {
    if (const auto* s = std::get_if<SimpleSpace>(&inner)) return IntegrableSpace{*s};
    if (const auto* w = std::get_if<WLSpace>(&inner)) return IntegrableSpace{*w};
    throw InvalidSpec("integrable norm: inner spec must be simple or WL");
}

inline std::string str(const SpaceSpec& spec) {
    struct V {
        std::string operator()(const SimpleSpace& s) const { return str(s.spec); }
        std::string operator()(const WLSpace& s) const {
            return "WL:" + str(s.local) + ":" + str(s.global);
        }
        std::string operator()(const WienerSpace& s) const {
            return "W:" + s.p.str() + ":" + s.q.str();
        }
        std::string operator()(const IntegrableSpace& s) const {
            return "Int:" + std::visit([](const auto& in) { return str(SpaceSpec(in)); }, s.inner);
        }
    };
    return std::visit(V{}, spec);
}

namespace detail {

inline const Interval& unit_interval() {
    static const Interval iv = Interval::bounded(Rational(0), Rational(1));
    return iv;
}

} // namespace detail

/**
 * The two summands of the Wiener-Luxemburg quasinorm: the local component
 * ||f* chi[0,1]||_local and the global component ||f* chi(1,inf)||_global.
 * The tail is evaluated as-is (not re-rearranged); it stays non-increasing
 * on its support, which norm_eval accepts.
 */
inline std::pair<ExtReal, ExtReal> wl_components(const NormSpec& local, const NormSpec& global,
                                                 const MonotoneProfile& star) {
    const MonotoneProfile head{restrict(star.fn(), detail::unit_interval())};
    const MonotoneProfile tail{restrict(star.fn(), Interval::to_infinity(Rational(1)))};
    return {norm_eval(local, head), norm_eval(global, tail)};
}

inline std::pair<ExtReal, ExtReal> wl_components(const NormSpec& local, const NormSpec& global,
                                                 const StepFunction& f) {
    return wl_components(local, global, rearrange_step(f));
}

inline ExtReal wl_norm(const NormSpec& local, const NormSpec& global, const MonotoneProfile& star) {
    const auto [head, tail] = wl_components(local, global, star);
    return head + tail;
}

inline ExtReal wl_norm(const NormSpec& local, const NormSpec& global, const StepFunction& f) {
    return wl_norm(local, global, rearrange_step(f));
}

/**
 * Wiener amalgam norm: l^q aggregation over unit cells of per-cell L^p norms
 * of f itself (no rearrangement; the functional is not r.i.). A trailing
 * unbounded piece contributes one constant cell norm repeated forever, which
 * settles the aggregation analytically.
 */
inline ExtReal wiener_norm(const Exponent& p, const Exponent& q, const StepFunction& f) {
    const Exponent one = Exponent::finite(Rational(1));
    if (p < one || q < one) throw InvalidSpec("Wiener indices must lie in [1, inf]");
    if (f.empty()) return ExtReal::exact(Rational(0));

    // One pass over the pieces, split at integer boundaries. Per cell the
    // accumulator holds sum of c^p * length (finite p) or the value sup.
    const bool p_inf = p.is_inf();
    struct Cell { mpz_class idx; ExtReal acc; };
    std::vector<Cell> cells;
    auto bump = [&](const mpz_class& idx, const ExtReal& v) {
        if (cells.empty() || cells.back().idx != idx) cells.push_back({idx, v});
        else cells.back().acc = p_inf ? ext_max(cells.back().acc, v) : cells.back().acc + v;
    };

    ExtReal tail_sup = ExtReal::exact(Rational(0));   // constant full cells of an unbounded piece
    for (const Piece& pc : f.pieces()) {
        const Rational& a = pc.iv.left;
        if (pc.iv.unbounded()) {
            const mpz_class n0 = a.floor();
            if (a > Rational(n0, 1)) {   // fragment up to the next integer
                const Rational len = Rational(n0 + 1, 1) - a;
                bump(n0, p_inf ? ExtReal::exact(pc.coef)
                               : rational_pow(pc.coef, p.value()).scaled(len));
            }
            if (q.is_inf()) { tail_sup = ext_max(tail_sup, ExtReal::exact(pc.coef)); break; }
            return ExtReal::infinity();   // infinitely many cells of equal positive norm
        }
        for (mpz_class n = a.floor(); Rational(n, 1) < *pc.iv.right; ++n) {
            const Rational lo = max(a, Rational(n, 1));
            const Rational hi = min(*pc.iv.right, Rational(n + 1, 1));
            bump(n, p_inf ? ExtReal::exact(pc.coef)
                          : rational_pow(pc.coef, p.value()).scaled(hi - lo));
        }
    }

    if (q.is_inf()) {
        ExtReal sup = tail_sup;
        for (const Cell& c : cells)
            sup = ext_max(sup, p_inf ? c.acc : ext_pow(c.acc, p.value().reciprocal()));
        return sup;
    }
    const Rational& qv = q.value();
    ExtReal sum = ExtReal::exact(Rational(0));
    for (const Cell& c : cells) {
        sum += p_inf ? ext_pow(c.acc, qv) : ext_pow(c.acc, qv / p.value());
        if (sum.is_infinite()) return ExtReal::infinity();
    }
    return ext_pow(sum, qv.reciprocal());
}

// f -> ||f*||_W(L^p, l^q), the rearranged Wiener functional
inline ExtReal rearranged_wiener(const Exponent& p, const Exponent& q, const StepFunction& f) {
    return wiener_norm(p, q, to_step(rearrange_step(f)));
}

// quasi-triangle constant 2^(1/p + 1/q) of the rearranged Wiener functional
inline ExtReal tia_modulus_bound(const Exponent& p, const Exponent& q) {
    return rational_pow(Rational(2), p.reciprocal_or_zero() + q.reciprocal_or_zero());
}

/**
 * Integrable norm: max of the inner functional with the WL(L^1, L^inf) norm,
 * whose value is the exact expression ∫_0^1 f* + f*(1); the tail supremum
 * equals f*(1) by right-continuity of the rearrangement.
 */
inline ExtReal integrable_norm(const std::variant<SimpleSpace, WLSpace>& inner,
                               const StepFunction& f) {
    const MonotoneProfile star = rearrange_step(f);
    const ExtReal wl_l1_linf =
        partial_integral(star, Rational(1)) + star.value_at(Rational(1));
    const ExtReal base = std::holds_alternative<SimpleSpace>(inner)
                             ? norm_eval(std::get<SimpleSpace>(inner).spec, star)
                             : wl_norm(std::get<WLSpace>(inner).local,
                                       std::get<WLSpace>(inner).global, star);
    return ext_max(base, wl_l1_linf);
}

// norm of f under any space descriptor
inline ExtReal space_norm(const SpaceSpec& spec, const StepFunction& f) {
    struct V {
        const StepFunction& f;
        ExtReal operator()(const SimpleSpace& s) const { return norm_of(s.spec, f); }
        ExtReal operator()(const WLSpace& s) const { return wl_norm(s.local, s.global, f); }
        ExtReal operator()(const WienerSpace& s) const { return wiener_norm(s.p, s.q, f); }
        ExtReal operator()(const IntegrableSpace& s) const { return integrable_norm(s.inner, f); }
    };
    return std::visit(V{f}, spec);
}

// profile variant: Wiener specs need genuine step data and are rejected
inline ExtReal space_norm(const SpaceSpec& spec, const MonotoneProfile& g) {
    struct V {
        const MonotoneProfile& g;
        ExtReal operator()(const SimpleSpace& s) const { return norm_eval(s.spec, g); }
        ExtReal operator()(const WLSpace& s) const { return wl_norm(s.local, s.global, g); }
        ExtReal operator()(const WienerSpace&) const {
            throw InvalidSpec("Wiener norm requires a step function");
        }
        ExtReal operator()(const IntegrableSpace& s) const {
            const ExtReal wl_l1_linf =
                partial_integral(g, Rational(1)) + g.value_at(Rational(1));
            const ExtReal base = std::holds_alternative<SimpleSpace>(s.inner)
                                     ? norm_eval(std::get<SimpleSpace>(s.inner).spec, g)
                                     : wl_norm(std::get<WLSpace>(s.inner).local,
                                               std::get<WLSpace>(s.inner).global, g);
            return ext_max(base, wl_l1_linf);
        }
    };
    return std::visit(V{g}, spec);
}

} // namespace amalgam
