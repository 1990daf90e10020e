#pragma once

#include <vector>

#include "amalgam/amalgam.hpp"

namespace amalgam {

namespace detail {

// ∫ f·g over the merged partition; per segment the product of two power
// pieces is one power piece c1*c2 * t^(a1+a2), so the closed form applies
// (with the logarithmic case when the exponents sum to -1).
inline ExtReal pairing_integral(const PPF& f, const PPF& g) {
    const auto cuts = merged_breakpoints(f, g);
    ExtReal total = ExtReal::exact(Rational(0));
    auto accumulate = [&](const Rational& lo, const std::optional<Rational>& hi) {
        const auto fi = f.piece_index(lo);
        const auto gi = g.piece_index(lo);
        if (fi == PPF::npos || gi == PPF::npos) return;
        const Piece& pf = f.pieces()[fi];
        const Piece& pg = g.pieces()[gi];
        total += power_integral(pf.coef * pg.coef, pf.expo + pg.expo, lo, hi);
    };
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) accumulate(cuts[i], cuts[i + 1]);
    if (!cuts.empty() && has_unbounded(f) && has_unbounded(g))
        accumulate(cuts.back(), std::nullopt);
    return total;
}

} // namespace detail

// exact ∫ f·g for step inputs
inline ExtReal raw_pairing(const StepFunction& f, const StepFunction& g) {
    return detail::pairing_integral(f.fn(), g.fn());
}

inline ExtReal profile_pairing(const MonotoneProfile& f, const MonotoneProfile& g) {
    return detail::pairing_integral(f.fn(), g.fn());
}

// ∫_0^inf f* g*, the rearranged pairing of Hardy-Littlewood type
inline ExtReal rearranged_pairing(const StepFunction& f, const StepFunction& g) {
    return detail::pairing_integral(rearrange_step(f).fn(), rearrange_step(g).fn());
}

struct HolderReport {
    NormSpec spec;
    ExtReal lhs;      // ∫ f g
    ExtReal norm_f;   // ||f||_spec
    ExtReal norm_g;   // ||g||_dual spec
    ExtReal rhs;
    bool pass = false;
};

/**
 * Verifies ∫ fg <= ||f||_p ||g||_{p'} for a normable Lebesgue spec. The
 * comparison is exact on rational values, with 1e-9 relative slack once an
 * approximation enters.
 */
inline HolderReport holder_check(const NormSpec& spec, const StepFunction& f,
                                 const StepFunction& g) {
    const auto* lb = std::get_if<Lebesgue>(&spec);
    if (!lb)
        throw NotNormable("holder_check supports Lebesgue specs; the dual Lorentz pairing "
                          "constant is not 1");
    const NormSpec dual = lebesgue(dual_exponent(lb->p));
    HolderReport r{spec, raw_pairing(f, g), norm_of(spec, f), norm_of(dual, g), {}, false};
    r.rhs = r.norm_f * r.norm_g;
    const bool exact = r.lhs.is_exact() && r.rhs.is_exact();
    r.pass = le_with_slack(r.lhs, r.rhs, exact ? 0.0 : 1e-9);
    return r;
}

struct Candidate {
    MonotoneProfile profile;
    ExtReal norm;
};

/**
 * Finite discretization of the supremum domain of the associate functional:
 * profiles with precomputed finite positive norms under a fixed spec.
 */
class CandidateSet {
public:
    static CandidateSet for_spec(const SpaceSpec& spec, std::vector<MonotoneProfile> profiles) {
        CandidateSet cs;
        for (auto& g : profiles) {
            if (g.empty()) continue;
            ExtReal n = space_norm(spec, g);
            if (n.is_infinite() || n.is_zero()) continue;
            cs.items_.push_back({std::move(g), std::move(n)});
        }
        return cs;
    }

    // documented default family: dyadic indicators chi[0, 2^k], k in [-10, 10],
    // plus truncated power profiles t^(-beta) on (0,1) for beta on an eighth grid
    static CandidateSet defaults(const SpaceSpec& spec) {
        std::vector<MonotoneProfile> gs;
        Rational len(1, 1024);
        for (int k = -10; k <= 10; ++k) {
            gs.emplace_back(indicator(Rational(0), len).fn());
            len *= Rational(2);
        }
        for (long j = 1; j <= 7; ++j) {
            gs.emplace_back(power_function(Rational(0), Rational(1), Rational(1),
                                           Rational(-j, 8)));
        }
        return for_spec(spec, std::move(gs));
    }

    const std::vector<Candidate>& items() const { return items_; }
    bool empty() const { return items_.empty(); }

private:
    std::vector<Candidate> items_;
};

/**
 * Lower bound for the associate norm ||f||_{X'}: the supremum of the
 * rearranged pairing over a finite candidate set. Always a valid bound;
 * never claimed exact.
 */
inline ExtReal associate_lower_bound(const SpaceSpec& spec, const StepFunction& f,
                                     const CandidateSet& candidates) {
    (void)spec;   // candidate norms are precomputed under the same spec
    if (candidates.empty()) throw EmptyCandidates("associate_lower_bound: no candidates");
    const MonotoneProfile star = rearrange_step(f);
    ExtReal best = ExtReal::exact(Rational(0));
    for (const Candidate& c : candidates.items())
        best = ext_max(best, profile_pairing(star, c.profile) / c.norm);
    return best;
}

struct WlDualityReport {
    ExtReal lhs;      // ∫ f* g*
    ExtReal norm_f;   // ||f||_WL(L^p', L^q')
    ExtReal norm_g;   // ||g||_WL(L^p, L^q)
    ExtReal rhs;
    bool pass = false;
};

/**
 * Duality pairing bound between amalgams with dual component indices:
 * ∫ f* g* <= ||f||_WL(L^p', L^q') ||g||_WL(L^p, L^q) for p, q >= 1.
 */
inline WlDualityReport wl_duality_check(const Exponent& p, const Exponent& q,
                                        const StepFunction& f, const StepFunction& g) {
    const NormSpec pd = lebesgue(dual_exponent(p));
    const NormSpec qd = lebesgue(dual_exponent(q));
    WlDualityReport r;
    r.lhs = rearranged_pairing(f, g);
    r.norm_f = wl_norm(pd, qd, f);
    r.norm_g = wl_norm(lebesgue(p), lebesgue(q), g);
    r.rhs = r.norm_f * r.norm_g;
    const bool exact = r.lhs.is_exact() && r.rhs.is_exact();
    r.pass = le_with_slack(r.lhs, r.rhs, exact ? 0.0 : 1e-9);
    return r;
}

} // namespace amalgam
