// Acceptance suite: every criterion prints one pass/fail line with its
// elapsed time; the binary exits non-zero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "amalgam/laws.hpp"

using namespace amalgam;

namespace {

using Clock = std::chrono::steady_clock;

struct Criterion {
    std::string name;
    double time_limit_s;
    std::function<bool(std::string&)> run;
};

const Rational r0(0), r1(1), r2(2), r3(3);
const Exponent e1 = Exponent::finite(r1);
const Exponent e32 = Exponent::finite(Rational(3, 2));
const Exponent e2 = Exponent::finite(r2);
const Exponent e3 = Exponent::finite(r3);
const Exponent einf = Exponent::inf();

RandomCaseConfig cfg_for(std::uint64_t seed, int cases, int max_pieces = 12) {
    RandomCaseConfig cfg;
    cfg.seed = seed;
    cfg.cases = cases;
    cfg.max_pieces = max_pieces;
    return cfg;
}

bool all_cases(int cases, std::uint64_t seed,
               const std::function<bool(Rng&, std::string&)>& check, std::string& detail) {
    std::vector<std::string> fails(static_cast<std::size_t>(cases));
    parallel_for(cases, [&](int i) {
        Rng rng = Rng::for_case(seed, static_cast<std::uint64_t>(i));
        std::string why;
        if (!check(rng, why)) fails[static_cast<std::size_t>(i)] = why;
    });
    for (const std::string& f : fails) {
        if (!f.empty()) {
            detail = f;
            return false;
        }
    }
    return true;
}

// 1. rearrangement correctness against the brute-force oracle
bool criterion_rearrangement(std::string& detail) {
    const PropertyReport r = rearrangement_suite(cfg_for(20260808, 1000), 50);
    if (!r.passed()) detail = r.failures.front();
    return r.passed();
}

// 2. Hardy-Littlewood inequality, exact
bool criterion_hardy_littlewood(std::string& detail) {
    const PropertyReport r = hardy_littlewood_suite(cfg_for(271828, 1000));
    if (!r.passed()) detail = r.failures.front();
    return r.passed();
}

// 3. ||f||_A <= ||f||_WL(A,A) <= 2 ||f||_A
bool criterion_wl_sandwich(std::string& detail) {
    RandomCaseConfig cfg = cfg_for(314159, 1000);
    return all_cases(cfg.cases, cfg.seed, [&](Rng& rng, std::string& why) {
        const StepFunction f = random_step(rng, cfg);
        const Rational n1 = norm_of(lebesgue(1), f).exact_value();
        const Rational w1 = wl_norm(lebesgue(1), lebesgue(1), f).exact_value();
        if (n1 > w1 || w1 > r2 * n1) {
            why = "L:1 sandwich failed on " + f.fn().str();
            return false;
        }
        for (const NormSpec& spec : {lebesgue(2), lebesgue(3), lorentz(r2, r1)}) {
            const ExtReal n = norm_of(spec, f);
            const ExtReal w = wl_norm(spec, spec, f);
            if (!le_with_slack(n, w, 1e-9) || !le_with_slack(w, n.scaled(r2), 1e-9)) {
                why = str(spec) + " sandwich failed on " + f.fn().str();
                return false;
            }
        }
        return true;
    }, detail);
}

// 4. two-sided comparison of WL with the rearranged Wiener functional
bool criterion_wiener_equivalence(std::string& detail) {
    RandomCaseConfig cfg = cfg_for(602214, 1000);
    const std::vector<Exponent> grid{e1, e32, e2, einf};
    return all_cases(cfg.cases, cfg.seed, [&](Rng& rng, std::string& why) {
        const StepFunction f = random_step(rng, cfg);
        const MonotoneProfile star = rearrange_step(f);
        const MonotoneProfile head{restrict(star.fn(), Interval::bounded(r0, r1))};
        const MonotoneProfile tail{restrict(star.fn(), Interval::to_infinity(r1))};
        for (const Exponent& p : grid) {
            for (const Exponent& q : grid) {
                const ExtReal wlv = wl_norm(lebesgue(p), lebesgue(q), star);
                const ExtReal wv = wiener_norm(p, q, to_step(star));
                const ExtReal headp = norm_eval(lebesgue(p), head);
                if (!le_with_slack(wlv, wv.scaled(r2), 1e-9)) {
                    why = "chain (i) failed at p=" + p.str() + " q=" + q.str() + " on " +
                          f.fn().str();
                    return false;
                }
                if (q.is_inf()) {
                    // degenerate (ii): cell norms of f* are non-increasing
                    if (!approx_eq(wv, headp, 1e-9)) {
                        why = "chain (ii, q=inf) failed at p=" + p.str() + " on " + f.fn().str();
                        return false;
                    }
                    continue;
                }
                const Rational& qv = q.value();
                const ExtReal rhs = ext_pow(headp, qv).scaled(r2) +
                                    ext_pow(norm_eval(lebesgue(q), tail), qv);
                if (!le_with_slack(ext_pow(wv, qv), rhs, 1e-9)) {
                    why = "chain (ii) failed at p=" + p.str() + " q=" + q.str() + " on " +
                          f.fn().str();
                    return false;
                }
            }
        }
        return true;
    }, detail);
}

// 5. Wiener amalgam counterexample families with certified bounds
bool criterion_wiener_counterexamples(std::string& detail) {
    const std::int64_t N = 10000;
    const WitnessBundle p4 = rwnbfs_p4_family(e2, e1, N);
    if (!le_with_slack(p4.finite_value, ExtReal::approx(2.62, 0), 0)) {
        detail = "lambda(E) bound above 2.62: " + p4.finite_value.str();
        return false;
    }
    if (!(p4.truncated_divergent_value->value() > 30.0)) {
        detail = "truncated Wiener norm did not exceed 30";
        return false;
    }
    const double formula = 4.0 * (std::pow(static_cast<double>(N + 1), 0.25) - 1.0);
    if (!approx_eq(p4.divergent_certificate->bound, ExtReal::approx(formula, 0), 1e-9)) {
        detail = "integral-test lower bound mismatch";
        return false;
    }

    const WitnessBundle p5 = rwnbfs_p5_family(e1, e2, N);
    if (!p5.measure_certificate->convergent() || !p5.finite_certificate->convergent() ||
        p5.divergent_certificate->convergent()) {
        detail = "p5 certificate verdicts wrong";
        return false;
    }
    // ∫_{E_N} f, exact on the materialized truncation
    const Rational integral = p5.truncated_divergent_value->exact_value();
    if (integral < Rational(35)) {
        detail = "p5 truncated integral below 35: " + integral.str();
        return false;
    }
    return true;
}

// 6. HLP failure for WL(L^1, L^p), p < 1, with the Banach control case
bool criterion_hlp_failure(std::string& detail) {
    const HlpFamilyCase c100 = chlp_family(Rational(1, 2), 100);
    if (!hlp_compare(c100.f, c100.g)) {
        detail = "domination lost at N=100";
        return false;
    }
    if (c100.ratio.exact_value() != Rational(9802, 100)) {
        detail = "ratio at N=100 is " + c100.ratio.str() + ", expected 9802/100";
        return false;
    }
    const HlpFamilyCase big = chlp_family(Rational(1, 2), 10000);
    if (!(big.ratio.value() > 1000.0)) {
        detail = "ratio at N=10^4 did not exceed 10^3";
        return false;
    }
    for (const std::int64_t n : {2L, 10L, 100L, 1000L, 10000L}) {
        const HlpFamilyCase c = chlp_family(Rational(1, 2), n);
        const ExtReal ratio = wl_norm(lebesgue(1), lebesgue(1), c.f) /
                              wl_norm(lebesgue(1), lebesgue(1), c.g);
        if (!le_with_slack(ratio, ExtReal::exact(r1), 1e-12)) {
            detail = "WL(L1,L1) ratio above 1 at N=" + std::to_string(n);
            return false;
        }
    }
    return true;
}

// 7. embedding characterization over the 16 local pairs with global L^2
bool criterion_embeddings(std::string& detail) {
    const std::vector<Exponent> grid{e1, e32, e2, einf};
    for (const Exponent& pa : grid) {
        for (const Exponent& pc : grid) {
            RandomCaseConfig cfg = cfg_for(7000 + 16 * (&pa - grid.data()) +
                                               (&pc - grid.data()),
                                           500);
            const PropertyReport r = embedding_suite(lebesgue(pa), lebesgue(2), lebesgue(pc),
                                                     lebesgue(2), cfg);
            const bool predicted = local_stronger(lebesgue(pa), lebesgue(pc));
            if (!r.passed()) {
                detail = "pair (" + pa.str() + ", " + pc.str() + "): " +
                         (r.failures.empty() ? r.note : r.failures.front());
                return false;
            }
            const bool witnessed = r.note.find("witness") != std::string::npos;
            if (predicted == witnessed) {
                detail = "pair (" + pa.str() + ", " + pc.str() + ") path mismatch: " + r.note;
                return false;
            }
        }
    }
    return true;
}

// 8. sum/intersection decomposition identities with the assembled constant
bool criterion_decomposition(std::string& detail) {
    const PropertyReport r = sandwich_suite(lebesgue(2), lebesgue(1), cfg_for(161803, 1000));
    if (!r.passed()) {
        detail = r.failures.front();
        return false;
    }
    return true;
}

// 9. dilation scaling law for Lebesgue norms
bool criterion_dilation(std::string& detail) {
    for (const Rational& t : {Rational(1, 4), Rational(1, 2), Rational(2), Rational(4)}) {
        for (const NormSpec& spec : {lebesgue(1), lebesgue(2), lebesgue_inf()}) {
            const PropertyReport r = dilation_suite(simple(spec), t, cfg_for(1729, 500));
            if (!r.passed()) {
                detail = "t=" + t.str() + " " + str(spec) + ": " + r.failures.front();
                return false;
            }
        }
    }
    return true;
}

// 10. duality pairing inequality and the associate lower bound
bool criterion_duality(std::string& detail) {
    struct Idx { Exponent p, q; };
    for (const Idx& ix : {Idx{e1, e2}, Idx{e2, e1}, Idx{e2, e2}, Idx{e32, e3}}) {
        RandomCaseConfig cfg = cfg_for(833000 + 1000 * (ix.p.is_inf() ? 9 : 0), 1000);
        std::string why;
        const bool ok = all_cases(cfg.cases, cfg.seed, [&](Rng& rng, std::string& w) {
            const StepFunction f = random_step(rng, cfg);
            const StepFunction g = random_step(rng, cfg);
            if (!wl_duality_check(ix.p, ix.q, f, g).pass) {
                w = "pairing bound failed at p=" + ix.p.str() + " q=" + ix.q.str() + " on " +
                    f.fn().str() + " | " + g.fn().str();
                return false;
            }
            return true;
        }, why);
        if (!ok) {
            detail = why;
            return false;
        }
    }

    const CandidateSet cands = CandidateSet::defaults(simple(lebesgue(2)));
    for (int k = -3; k <= 3; ++k) {
        const Rational s = k >= 0 ? Rational(1L << k) : Rational(1, 1L << (-k));
        const StepFunction f = indicator(r0, s);
        const double bound = associate_lower_bound(simple(lebesgue(2)), f, cands).value();
        const double self_dual = norm_of(lebesgue(2), f).value();
        if (bound < 0.999 * self_dual) {
            detail = "associate bound below 0.999 of the self-dual norm at s=" + s.str();
            return false;
        }
    }
    return true;
}

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {"rearrangement correctness vs brute-force oracle (1000 cases)", 10, criterion_rearrangement},
        {"Hardy-Littlewood inequality, exact (1000 pairs)", 10, criterion_hardy_littlewood},
        {"WL(A,A) sandwich, exact for L:1 (1000 cases)", 10, criterion_wl_sandwich},
        {"WL vs rearranged Wiener functional, both chains (16 index pairs)", 60, criterion_wiener_equivalence},
        {"Wiener amalgam counterexample families at N=10^4", 5, criterion_wiener_counterexamples},
        {"HLP failure for WL(L:1, L:1/2) with exact ratio 9802/100", 5, criterion_hlp_failure},
        {"embedding characterization, 16 local pairs over global L:2", 120, criterion_embeddings},
        {"sum/intersection decomposition identities (1000 cases)", 30, criterion_decomposition},
        {"dilation scaling law, 12 (t, p) combinations", 10, criterion_dilation},
        {"duality pairing inequality and associate lower bound", 60, criterion_duality},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const Criterion& c = criteria[i];
        std::string detail;
        const auto start = Clock::now();
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail = e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(Clock::now() - start).count();
        if (ok && elapsed > c.time_limit_s) {
            ok = false;
            detail = "time limit " + std::to_string(c.time_limit_s) + "s exceeded";
        }
        std::printf("[%s] %2zu. %s (%.2fs)\n", ok ? "PASS" : "FAIL", i + 1, c.name.c_str(),
                    elapsed);
        if (!ok) {
            std::printf("       %s\n", detail.c_str());
            ++failures;
        }
    }
    return failures == 0 ? 0 : 1;
}
