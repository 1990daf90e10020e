#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "amalgam/duality.hpp"

namespace amalgam {

/**
 * Integral-test verdict for the p-series sum over n >= 1 of n^(-s).
 * Convergent: `bound` is an upper bound for the full series (partial sum
 * plus the integral tail). Divergent: `bound` is the integral-test lower
 * bound for the partial sum itself, so the reported witness cannot be a
 * rounding accident.
 */
struct SeriesCertificate {
    enum class Verdict { Convergent, Divergent };

    Rational exponent;
    std::int64_t terms = 0;
    Verdict verdict = Verdict::Convergent;
    ExtReal partial_sum;
    ExtReal bound;

    bool convergent() const { return verdict == Verdict::Convergent; }
};

inline SeriesCertificate pseries_certificate(const Rational& s, std::int64_t N) {
    if (!s.is_positive()) throw Error("pseries_certificate: exponent must be positive");
    if (N < 2) throw Error("pseries_certificate: need N >= 2");
    double sum = 0, abs_err = 0;
    for (std::int64_t n = 1; n <= N; ++n) {
        const ExtReal t = rational_pow(Rational(n), -s);
        sum += t.value();
        abs_err += t.value() * t.rel_error() + 1e-18 * sum;
    }
    SeriesCertificate cert;
    cert.exponent = s;
    cert.terms = N;
    cert.partial_sum = ExtReal::approx(sum, sum > 0 ? abs_err / sum : 0);
    if (s > Rational(1)) {
        cert.verdict = SeriesCertificate::Verdict::Convergent;
        cert.bound = cert.partial_sum + power_integral(Rational(1), -s, Rational(N), std::nullopt);
    } else {
        cert.verdict = SeriesCertificate::Verdict::Divergent;
        cert.bound = power_integral(Rational(1), -s, Rational(1), Rational(N + 1));
        if (!le_with_slack(cert.bound, cert.partial_sum, 1e-9))
            throw Error("pseries_certificate: integral test bound exceeds the partial sum");
    }
    return cert;
}

namespace detail {

// Guaranteed under-approximation of n^e (n >= 1, e rational) via integer
// k-th roots. The result is dyadic with denominator 2^shift, so long exact
// sums over a family share one denominator. Absolute error stays below
// 2^(1-shift), i.e. relative error about 2^(1-shift)/n^e. No floating point
// is trusted anywhere in the truncations.
inline Rational pow_under(std::int64_t n, const Rational& e, unsigned shift = 64) {
    if (n < 1) throw Error("pow_under: base must be >= 1");
    if (e.is_zero() || n == 1) return Rational(1);
    if (!e.num().fits_slong_p() || !e.den().fits_ulong_p())
        throw Error("pow_under: exponent too large");
    const long u = e.num().get_si();
    const unsigned long v = e.den().get_ui();
    const unsigned long ua = u < 0 ? static_cast<unsigned long>(-u) : static_cast<unsigned long>(u);
    mpz_class x;
    mpz_ui_pow_ui(x.get_mpz_t(), static_cast<unsigned long>(n), ua);
    mpz_mul_2exp(x.get_mpz_t(), x.get_mpz_t(), shift * v);   // n^|u| * 2^(shift*v)
    mpz_class root;
    mpz_root(root.get_mpz_t(), x.get_mpz_t(), v);            // floor((...)^(1/v))
    mpz_class two_shift;
    mpz_ui_pow_ui(two_shift.get_mpz_t(), 2, shift);
    if (u > 0) return Rational(root, two_shift);             // root <= n^(u/v) * 2^shift
    // floor(2^(2 shift) / (root+1)) / 2^shift <= 2^shift/(root+1) < n^(-|u|/v)
    mpz_class num;
    mpz_fdiv_q(num.get_mpz_t(), mpz_class(two_shift * two_shift).get_mpz_t(),
               mpz_class(root + 1).get_mpz_t());
    return Rational(num, two_shift);
}

} // namespace detail

/**
 * A constructive counterexample: one space where the function's norm is
 * finite (with the construction's closed-form value), one where it diverges,
 * either by a closed-form divergent integral or by a series certificate.
 * Family constructions also carry a materialized truncation for cross-checks;
 * its cell geometry under-approximates the ideal family dyadically, so every
 * certified inequality stays conservative.
 */
struct WitnessBundle {
    std::string name;
    PPF fn;   // the witness function, or the materialized truncation

    SpaceSpec finite_space = simple(lebesgue(1));
    ExtReal finite_value;         // certified bound (or exact value) for the full construction
    ExtReal finite_evaluated;     // library evaluation on fn

    SpaceSpec divergent_space = simple(lebesgue(1));
    std::string divergence_reason;
    std::optional<ExtReal> truncated_divergent_value;   // divergent-side value of fn

    std::optional<SeriesCertificate> measure_certificate;
    std::optional<SeriesCertificate> finite_certificate;
    std::optional<SeriesCertificate> divergent_certificate;

    std::string note;
};

namespace detail {

inline void require_infinite(const ExtReal& v, const std::string& what) {
    if (!v.is_infinite()) throw Error(what + ": expected divergence, got " + v.str());
}

inline void require_close(const ExtReal& a, const ExtReal& b, const std::string& what) {
    if (!approx_eq(a, b, 1e-9)) throw Error(what + ": closed form " + b.str() +
                                            " disagrees with evaluation " + a.str());
}

} // namespace detail

/**
 * Local-component embedding failure at Lebesgue indices pA < pB (pB finite):
 * f = t^(-1/pB) on (0,1) lies in L^pA with norm (pB/(pB-pA))^(1/pA) but not
 * in L^pB. The case pB = inf is rejected here; embedding suites use the
 * unbounded-profile witness below instead.
 */
inline WitnessBundle tem_local_witness(const Exponent& pA, const Exponent& pB) {
    if (pB.is_inf())
        throw UnsupportedIndices("tem_local_witness: pB = inf (use unbounded_local_witness)");
    if (!(pA < pB)) throw UnsupportedIndices("tem_local_witness: requires pA < pB");
    const Rational& b = pB.value();
    const Rational& a = pA.value();

    WitnessBundle w;
    w.name = "tem-local";
    w.fn = power_function(Rational(0), Rational(1), Rational(1), -b.reciprocal());
    w.finite_space = simple(lebesgue(pA));
    w.finite_value = rational_pow(b / (b - a), a.reciprocal());
    w.finite_evaluated = norm_eval(lebesgue(pA), MonotoneProfile(w.fn));
    w.divergent_space = simple(lebesgue(pB));
    w.divergence_reason = "integral of t^-1 over (0,1) diverges";
    w.note = "unbounded at the origin, locally in L^" + pA.str() + " but not L^" + pB.str();

    detail::require_close(w.finite_evaluated, w.finite_value, w.name);
    detail::require_infinite(norm_eval(lebesgue(pB), MonotoneProfile(w.fn)), w.name);
    return w;
}

// Derived companion for the pB = inf local failure: f = t^(-1/(2 pA)) on
// (0,1) is in L^pA (norm 2^(1/pA)) but essentially unbounded.
inline WitnessBundle unbounded_local_witness(const Exponent& pA) {
    if (pA.is_inf())
        throw UnsupportedIndices("unbounded_local_witness: the L^inf local component never fails");
    const Rational& a = pA.value();

    WitnessBundle w;
    w.name = "unbounded-local";
    w.fn = power_function(Rational(0), Rational(1), Rational(1), Rational(-1) / (Rational(2) * a));
    w.finite_space = simple(lebesgue(pA));
    w.finite_value = rational_pow(Rational(2), a.reciprocal());
    w.finite_evaluated = norm_eval(lebesgue(pA), MonotoneProfile(w.fn));
    w.divergent_space = simple(lebesgue_inf());
    w.divergence_reason = "essential supremum is infinite at the origin";
    w.note = "witness for the failure of L^" + pA.str() + " local control against L^inf";

    detail::require_close(w.finite_evaluated, w.finite_value, w.name);
    detail::require_infinite(norm_eval(lebesgue_inf(), MonotoneProfile(w.fn)), w.name);
    return w;
}

/**
 * Global-component embedding failure at Lebesgue indices qB > qC (qC
 * finite): f = chi[0,1] + t^(-1/qC) on (1,inf). The tail is in L^qB with
 * norm (qB/qC - 1)^(-1/qB) but not in L^qC, while f*(1) = 1 keeps the local
 * component harmless.
 */
inline WitnessBundle tem_global_witness(const Exponent& qB, const Exponent& qC) {
    if (qC.is_inf())
        throw UnsupportedIndices("tem_global_witness: the L^inf global component never fails");
    if (!(qC < qB)) throw UnsupportedIndices("tem_global_witness: requires qB > qC");
    const Rational& c = qC.value();

    WitnessBundle w;
    w.name = "tem-global";
    w.fn = PPF::normalized({{Interval::bounded(Rational(0), Rational(1)), Rational(1), Rational(0)},
                            {Interval::to_infinity(Rational(1)), Rational(1), -c.reciprocal()}});
    const MonotoneProfile tail{restrict(w.fn, Interval::to_infinity(Rational(1)))};
    w.finite_space = simple(lebesgue(qB));
    w.finite_value = qB.is_inf() ? ExtReal::exact(Rational(1))
                                 : rational_pow(qB.value() / c - Rational(1),
                                                -qB.value().reciprocal());
    w.finite_evaluated = norm_eval(lebesgue(qB), tail);
    w.divergent_space = simple(lebesgue(qC));
    w.divergence_reason = "harmonic tail: integral of t^-1 over (1,inf) diverges";
    w.note = "tail norms over (1,inf); f*(1) = 1";

    detail::require_close(w.finite_evaluated, w.finite_value, w.name);
    detail::require_infinite(norm_eval(lebesgue(qC), tail), w.name);
    return w;
}

/**
 * Finite-measure set whose Wiener norm diverges (P4 failure for q < p):
 * E is the union over n >= 1 of [n, n + n^(-a)] with a the midpoint of
 * (1, p/q), so lambda(E) converges while the cell-norm series sum of
 * n^(-aq/p) diverges. For p = inf the simpler family [n, n + 2^(-n)],
 * n >= 0, works with constant unit cells.
 */
inline WitnessBundle rwnbfs_p4_family(const Exponent& p, const Exponent& q, std::int64_t N,
                                      std::optional<Rational> a_override = std::nullopt) {
    if (!(q < p)) throw IndicesNotApplicable("rwnbfs_p4_family: requires q < p");
    if (N < 2) throw Error("rwnbfs_p4_family: need N >= 2");

    WitnessBundle w;
    w.name = "rwnbfs-p4";
    w.finite_space = simple(lebesgue(1));   // finite side: lambda(E) = ||chi_E||_1
    w.divergent_space = wiener(p, q);

    std::vector<Piece> ps;
    if (p.is_inf()) {
        Rational cell(1);
        Rational measure(0);
        for (std::int64_t n = 0; n <= N; ++n) {
            ps.push_back({Interval::bounded(Rational(n), Rational(n) + cell), Rational(1),
                          Rational(0)});
            measure += cell;
            cell /= Rational(2);
        }
        w.fn = PPF::normalized(std::move(ps));
        w.finite_value = ExtReal::exact(Rational(2));   // geometric series, exact
        w.finite_evaluated = ExtReal::exact(measure);
        w.divergence_reason = "every cell has unit sup-norm; the l^" + q.str() +
                              " aggregation over infinitely many cells diverges";
        w.note = "simplified family [n, n+2^-n] for p = inf";
    } else {
        const Rational a =
            a_override ? *a_override : (Rational(1) + p.value() / q.value()) / Rational(2);
        if (!(Rational(1) < a && a < p.value() / q.value()))
            throw UnsupportedIndices("rwnbfs_p4_family: a must lie in (1, p/q)");
        w.measure_certificate = pseries_certificate(a, N);
        w.divergent_certificate = pseries_certificate(a * q.value() / p.value(), N);
        if (!w.measure_certificate->convergent() || w.divergent_certificate->convergent())
            throw Error("rwnbfs_p4_family: certificate verdicts contradict the construction");

        Rational measure(0);
        for (std::int64_t n = 1; n <= N; ++n) {
            const Rational m = detail::pow_under(n, -a);
            ps.push_back({Interval::bounded(Rational(n), Rational(n) + m), Rational(1),
                          Rational(0)});
            measure += m;
        }
        w.fn = PPF::normalized(std::move(ps));
        w.finite_value = w.measure_certificate->bound;
        w.finite_evaluated = ExtReal::exact(measure);
        w.divergence_reason = "sum of n^(-" + (a * q.value() / p.value()).str() +
                              ") diverges by the integral test";
        w.note = "a = " + a.str() + ", midpoint of (1, p/q); truncation cells rounded down "
                 "dyadically";
        if (!le_with_slack(w.finite_evaluated, w.finite_value, 1e-9))
            throw Error("rwnbfs_p4_family: truncated measure exceeds the certified bound");
    }

    w.truncated_divergent_value = wiener_norm(p, q, StepFunction(w.fn));
    if (w.divergent_certificate) {
        // truncated norm^q must reach the integral-test lower bound
        const ExtReal lhs = ext_pow(*w.truncated_divergent_value, q.value());
        if (!le_with_slack(w.divergent_certificate->bound, lhs, 1e-9))
            throw Error("rwnbfs_p4_family: truncated Wiener norm fell below the lower bound");
    }
    return w;
}

/**
 * A function with finite Wiener norm whose integral over a finite-measure
 * set diverges (P5 failure for p < q): f is the sum over n >= 1 of
 * n^((b-a)/p) chi[n, n+n^(-b)] with a the midpoint of (p/q, 1) and b the
 * midpoint of (1, (p-a)/(p-1)) (b = 2 when p = 1). For q = inf the cells
 * are normalized to unit L^p norm instead (the a-term is absent).
 */
inline WitnessBundle rwnbfs_p5_family(const Exponent& p, const Exponent& q, std::int64_t N,
                                      std::optional<Rational> a_override = std::nullopt,
                                      std::optional<Rational> b_override = std::nullopt) {
    if (!(p < q)) throw IndicesNotApplicable("rwnbfs_p5_family: requires p < q");
    if (N < 2) throw Error("rwnbfs_p5_family: need N >= 2");
    const Rational& pv = p.value();   // p < q <= inf, so p is finite

    WitnessBundle w;
    w.name = "rwnbfs-p5";
    w.finite_space = wiener(p, q);
    w.divergent_space = simple(lebesgue(1));   // ∫_E f = ||f||_1, f supported on E

    auto checked_b = [&](const Rational& upper) {   // b in (1, upper), any b > 1 when p = 1
        const Rational b = b_override ? *b_override
                         : pv == Rational(1) ? Rational(2)
                                             : (Rational(1) + upper) / Rational(2);
        if (!(Rational(1) < b && (pv == Rational(1) || b < upper)))
            throw UnsupportedIndices("rwnbfs_p5_family: b out of range");
        return b;
    };

    Rational b, value_expo;
    if (q.is_inf()) {
        if (a_override) throw UnsupportedIndices("rwnbfs_p5_family: no a parameter at q = inf");
        b = checked_b(pv == Rational(1) ? Rational(2) : pv / (pv - Rational(1)));
        value_expo = b / pv;
        w.finite_value = ExtReal::exact(Rational(1));   // unit cell norms, sup = 1
        w.note = "q = inf: cells normalized to unit L^p norm, b = " + b.str();
    } else {
        const Rational a = a_override ? *a_override : (pv / q.value() + Rational(1)) / Rational(2);
        if (!(pv / q.value() < a && a < Rational(1)))
            throw UnsupportedIndices("rwnbfs_p5_family: a must lie in (p/q, 1)");
        b = checked_b(pv == Rational(1) ? Rational(2) : (pv - a) / (pv - Rational(1)));
        value_expo = (b - a) / pv;
        w.finite_certificate = pseries_certificate(a * q.value() / pv, N);
        if (!w.finite_certificate->convergent())
            throw Error("rwnbfs_p5_family: Wiener-norm series failed to converge");
        w.finite_value = ext_pow(w.finite_certificate->bound, q.value().reciprocal());
        w.note = "a = " + a.str() + ", b = " + b.str() + "; truncation rounded down dyadically";
    }
    w.measure_certificate = pseries_certificate(b, N);
    const Rational integral_expo = b - value_expo;   // exponent of ∫_E f terms
    w.divergent_certificate = pseries_certificate(integral_expo, N);
    if (!w.measure_certificate->convergent() || w.divergent_certificate->convergent())
        throw Error("rwnbfs_p5_family: certificate verdicts contradict the construction");
    w.divergence_reason = "sum of n^(-" + integral_expo.str() + ") diverges by the integral test";

    std::vector<Piece> ps;
    for (std::int64_t n = 1; n <= N; ++n) {
        const Rational m = detail::pow_under(n, -b);
        const Rational v = detail::pow_under(n, value_expo);
        ps.push_back({Interval::bounded(Rational(n), Rational(n) + m), v, Rational(0)});
    }
    w.fn = PPF::normalized(std::move(ps));

    w.finite_evaluated = wiener_norm(p, q, StepFunction(w.fn));
    if (!le_with_slack(w.finite_evaluated, w.finite_value, 1e-9))
        throw Error("rwnbfs_p5_family: truncated Wiener norm exceeds the certified bound");
    w.truncated_divergent_value = norm_of(lebesgue(1), StepFunction(w.fn));
    return w;
}

/**
 * P5 failure of L^p, p < 1, on unit-scale sets: t^(-beta) on (0,1) with beta
 * the midpoint of (1, 1/p) lies in L^p with norm (1/(1-beta p))^(1/p) but is
 * not integrable near the origin.
 */
inline WitnessBundle quasi_integrability_witness(const Exponent& p) {
    if (p.is_inf() || !(p.value() < Rational(1)))
        throw UnsupportedIndices("quasi_integrability_witness: requires p < 1");
    const Rational& pv = p.value();
    const Rational beta = (Rational(1) + pv.reciprocal()) / Rational(2);

    WitnessBundle w;
    w.name = "quasi-integrability";
    w.fn = power_function(Rational(0), Rational(1), Rational(1), -beta);
    w.finite_space = simple(lebesgue(p));
    w.finite_value = rational_pow((Rational(1) - beta * pv).reciprocal(), pv.reciprocal());
    w.finite_evaluated = norm_eval(lebesgue(p), MonotoneProfile(w.fn));
    w.divergent_space = simple(lebesgue(1));
    w.divergence_reason = "integral of t^-" + beta.str() + " over (0,1) diverges";
    w.note = "beta = " + beta.str() + ", midpoint of (1, 1/p)";

    detail::require_close(w.finite_evaluated, w.finite_value, w.name);
    detail::require_infinite(norm_eval(lebesgue(1), MonotoneProfile(w.fn)), w.name);
    return w;
}

/**
 * Dominated family violating the Hardy-Littlewood-Polya principle in
 * WL(L^1, L^p) for p < 1: f_N = (1/N) chi[0,N) is HLP-dominated by
 * g = chi[0,1) yet its quasinorm ratio 1/N + (N-1)^(1/p)/N is unbounded.
 */
struct HlpFamilyCase {
    StepFunction f;
    StepFunction g;
    ExtReal ratio;
};

inline HlpFamilyCase chlp_family(const Rational& p, std::int64_t N) {
    if (!(p.is_positive() && p < Rational(1)))
        throw Error("chlp_family: requires 0 < p < 1");
    if (N < 2) throw Error("chlp_family: need N >= 2");

    HlpFamilyCase c;
    c.f = step_function({{Rational(0), Rational(N), Rational(1, N)}});
    c.g = indicator(Rational(0), Rational(1));
    const NormSpec local = lebesgue(1);
    const NormSpec global = lebesgue(p);
    const ExtReal num = wl_norm(local, global, c.f);
    const ExtReal den = wl_norm(local, global, c.g);
    c.ratio = num / den;

    // closed form 1/N + (N-1)^(1/p) / N, exact whenever 1/p is an integer
    const ExtReal closed = (ExtReal::exact(Rational(1, N)) +
                            rational_pow(Rational(N - 1), p.reciprocal()).scaled(Rational(1, N)));
    detail::require_close(c.ratio, closed, "chlp_family");
    return c;
}

} // namespace amalgam
