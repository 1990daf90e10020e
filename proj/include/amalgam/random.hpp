#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "amalgam/stepfn.hpp"

namespace amalgam {

/**
 * Configuration of a seeded random case family. Every suite regenerates its
 * inputs deterministically from (seed, case index), independent of thread
 * scheduling and platform.
 */
struct RandomCaseConfig {
    std::uint64_t seed = 42;
    int cases = 200;
    int max_pieces = 8;
    long max_numerator = 48;   // magnitude caps for generated rationals
    long max_denominator = 8;
};

// splitmix64; self-contained so streams are identical on every platform
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    static Rng for_case(std::uint64_t seed, std::uint64_t index) {
        Rng r(seed);
        r.state_ ^= 0x9e3779b97f4a7c15ULL * (index + 1);
        r.next();
        r.next();
        return r;
    }

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }

    long range(long lo, long hi) {   // inclusive
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool chance(double p) { return static_cast<double>(next() >> 11) * 0x1.0p-53 < p; }

    Rational positive_rational(long max_num, long max_den) {
        return Rational(range(1, max_num), range(1, max_den));
    }

private:
    std::uint64_t state_;
};

/**
 * Random step function: disjoint sorted intervals over a rational grid with
 * positive rational values. Deliberately generates touching intervals, value
 * ties and occasional gaps.
 */
inline StepFunction random_step(Rng& rng, const RandomCaseConfig& cfg) {
    const int k = static_cast<int>(rng.below(static_cast<std::uint64_t>(cfg.max_pieces))) + 1;
    std::vector<Rational> cuts;
    cuts.reserve(2 * k);
    while (static_cast<int>(cuts.size()) < 2 * k) {
        Rational c(rng.range(0, 4 * cfg.max_pieces), rng.range(1, cfg.max_denominator));
        if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
    }
    std::sort(cuts.begin(), cuts.end());
    std::vector<Piece> ps;
    Rational prev_value(0);
    std::size_t i = 0;
    while (i + 1 < cuts.size()) {
        Rational value = (!prev_value.is_zero() && rng.chance(0.2))
                             ? prev_value   // deliberate tie
                             : rng.positive_rational(cfg.max_numerator, cfg.max_denominator);
        prev_value = value;
        ps.push_back({Interval::bounded(cuts[i], cuts[i + 1]), value, Rational(0)});
        i += rng.chance(0.3) ? 1 : 2;   // sometimes touching, sometimes a gap
    }
    return StepFunction(PPF::normalized(std::move(ps)));
}

// Indicator of a finite union of intervals taken from the same grid.
inline StepFunction random_indicator_set(Rng& rng, const RandomCaseConfig& cfg) {
    StepFunction f = random_step(rng, cfg);
    std::vector<Piece> ps;
    for (const Piece& p : f.pieces()) ps.push_back({p.iv, Rational(1), Rational(0)});
    return StepFunction(PPF::normalized(std::move(ps)));
}

} // namespace amalgam
