#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "amalgam/witnesses.hpp"

using namespace amalgam;

namespace {
const Rational r0(0), r1(1), r2(2), r3(3);
const Exponent e1 = Exponent::finite(r1);
const Exponent e2 = Exponent::finite(r2);
const Exponent e3 = Exponent::finite(r3);
const Exponent einf = Exponent::inf();
} // namespace

TEST_CASE("p-series certificates") {
    // zeta(3/2) ~ 2.612: partial sums bracketed by successive bounds
    const SeriesCertificate a = pseries_certificate(Rational(3, 2), 1000);
    CHECK(a.convergent());
    CHECK(a.bound.value() == doctest::Approx(2.612).epsilon(1e-3));
    const SeriesCertificate tighter = pseries_certificate(Rational(3, 2), 10000);
    CHECK(tighter.bound.value() <= a.bound.value() + 1e-12);
    CHECK(a.partial_sum.value() <= tighter.partial_sum.value());
    CHECK(tighter.partial_sum.value() <= a.bound.value());

    const SeriesCertificate d = pseries_certificate(Rational(3, 4), 10000);
    CHECK_FALSE(d.convergent());
    // integral-test lower bound 4((N+1)^(1/4) - 1) ~ 36.0
    CHECK(d.bound.value() == doctest::Approx(4 * (std::pow(10001.0, 0.25) - 1)).epsilon(1e-9));
    CHECK(d.bound.value() <= d.partial_sum.value());

    const SeriesCertificate h = pseries_certificate(r1, 10);
    CHECK_FALSE(h.convergent());
    CHECK(h.bound.value() == doctest::Approx(std::log(11.0)).epsilon(1e-12));

    CHECK_THROWS_AS(pseries_certificate(r1, 1), Error);
}

TEST_CASE("dyadic under-approximation of integer powers") {
    for (std::int64_t n : {1, 2, 7, 100, 9999}) {
        for (const Rational& e : {Rational(-3, 2), Rational(3, 4), Rational(-2), Rational(5, 4)}) {
            const Rational m = detail::pow_under(n, e);
            const double ideal = std::pow(static_cast<double>(n), e.to_double());
            CHECK(m.to_double() <= ideal * (1 + 1e-12));
            CHECK(m.to_double() >= ideal * (1 - 1e-9));
        }
    }
    CHECK(detail::pow_under(5, Rational(0)) == r1);
    CHECK(detail::pow_under(4, Rational(-1, 2)).to_double() == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("local embedding-failure witness") {
    const WitnessBundle w = tem_local_witness(e2, e3);
    CHECK(w.finite_value.value() == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
    CHECK(norm_eval(lebesgue(3), MonotoneProfile(w.fn)).is_infinite());

    const WitnessBundle v = tem_local_witness(e1, e2);
    CHECK(v.finite_value.exact_value() == r2);

    CHECK_THROWS_AS(tem_local_witness(e2, e2), UnsupportedIndices);
    CHECK_THROWS_AS(tem_local_witness(e2, einf), UnsupportedIndices);

    const WitnessBundle u = unbounded_local_witness(e2);
    CHECK(u.finite_value.value() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(norm_eval(lebesgue_inf(), MonotoneProfile(u.fn)).is_infinite());
    CHECK_THROWS_AS(unbounded_local_witness(einf), UnsupportedIndices);
}

TEST_CASE("global embedding-failure witness") {
    const WitnessBundle w = tem_global_witness(e2, e1);
    CHECK(w.finite_value.exact_value() == r1);   // (2/1 - 1)^(-1/2) = 1
    // and the tail is harmonically divergent in L^1
    const MonotoneProfile tail{restrict(w.fn, Interval::to_infinity(r1))};
    CHECK(norm_eval(lebesgue(1), tail).is_infinite());
    CHECK(MonotoneProfile(w.fn).value_at(r1).exact_value() == r1);   // f*(1) = 1

    const WitnessBundle v = tem_global_witness(e3, e2);
    CHECK(v.finite_value.value() == doctest::Approx(std::pow(2.0, 1.0 / 3.0)).epsilon(1e-12));

    const WitnessBundle s = tem_global_witness(einf, e2);
    CHECK(s.finite_value.exact_value() == r1);

    CHECK_THROWS_AS(tem_global_witness(e2, e2), UnsupportedIndices);
    CHECK_THROWS_AS(tem_global_witness(e2, einf), UnsupportedIndices);
}

TEST_CASE("P4 failure family for W(L^p, l^q), q < p") {
    const WitnessBundle w = rwnbfs_p4_family(e2, e1, 2000);
    REQUIRE(w.measure_certificate.has_value());
    REQUIRE(w.divergent_certificate.has_value());
    CHECK(w.measure_certificate->convergent());
    CHECK_FALSE(w.divergent_certificate->convergent());
    CHECK(w.measure_certificate->exponent == Rational(3, 2));
    CHECK(w.divergent_certificate->exponent == Rational(3, 4));
    CHECK(w.finite_value.value() <= 2.62);                       // lambda(E) bound
    CHECK(w.finite_evaluated.value() <= w.finite_value.value()); // truncation below it
    CHECK(w.truncated_divergent_value->value() >
          w.divergent_certificate->bound.value() * (1 - 1e-9));

    // simplified family at p = inf: measure exactly 2, unit cells
    const WitnessBundle s = rwnbfs_p4_family(einf, e1, 64);
    CHECK(s.finite_value.exact_value() == r2);
    CHECK(s.truncated_divergent_value->exact_value() == Rational(65));   // 65 unit cells

    CHECK_THROWS_AS(rwnbfs_p4_family(e2, e2, 100), IndicesNotApplicable);
    CHECK_THROWS_AS(rwnbfs_p4_family(e1, e2, 100), IndicesNotApplicable);
}

TEST_CASE("P5 failure family for W(L^p, l^q), p < q") {
    const WitnessBundle w = rwnbfs_p5_family(e1, e2, 2000);
    REQUIRE(w.measure_certificate.has_value());
    REQUIRE(w.finite_certificate.has_value());
    REQUIRE(w.divergent_certificate.has_value());
    CHECK(w.measure_certificate->convergent());        // lambda(E), exponent 2
    CHECK(w.finite_certificate->convergent());         // Wiener-norm series, exponent 3/2
    CHECK_FALSE(w.divergent_certificate->convergent()); // ∫_E f, exponent 3/4
    CHECK(w.measure_certificate->exponent == r2);
    CHECK(w.finite_certificate->exponent == Rational(3, 2));
    CHECK(w.divergent_certificate->exponent == Rational(3, 4));
    CHECK(w.finite_evaluated.value() <= w.finite_value.value() * (1 + 1e-12));
    CHECK(w.truncated_divergent_value->value() >
          w.divergent_certificate->bound.value() * (1 - 1e-9));

    // q = inf: cells normalized to unit norm, b = 3/2 at p = 2
    const WitnessBundle s = rwnbfs_p5_family(e2, einf, 1000);
    CHECK(s.finite_value.exact_value() == r1);
    CHECK(s.finite_evaluated.value() <= 1.0 + 1e-12);
    CHECK(s.measure_certificate->exponent == Rational(3, 2));
    CHECK_FALSE(s.divergent_certificate->convergent());
    CHECK(s.divergent_certificate->exponent == Rational(3, 4));   // b - b/p = 3/4

    CHECK_THROWS_AS(rwnbfs_p5_family(e2, e1, 100), IndicesNotApplicable);
    CHECK_THROWS_AS(rwnbfs_p5_family(e2, e2, 100), IndicesNotApplicable);
}

TEST_CASE("family parameters can be overridden within the valid ranges") {
    const WitnessBundle w = rwnbfs_p4_family(e2, e1, 128, Rational(5, 4));
    CHECK(w.measure_certificate->exponent == Rational(5, 4));
    CHECK_THROWS_AS(rwnbfs_p4_family(e2, e1, 128, Rational(3)), UnsupportedIndices);

    // the whole admissible range (1, p/q) works, e.g. a = 7/4 for (2, 1)
    const WitnessBundle w74 = rwnbfs_p4_family(e2, e1, 128, Rational(7, 4));
    CHECK(w74.measure_certificate->convergent());
    CHECK_FALSE(w74.divergent_certificate->convergent());
    CHECK(w74.divergent_certificate->exponent == Rational(7, 8));

    const WitnessBundle v = rwnbfs_p5_family(e1, e2, 128, Rational(2, 3), Rational(3));
    CHECK(v.measure_certificate->exponent == r3);
    CHECK(v.finite_certificate->exponent == Rational(4, 3));
    CHECK_THROWS_AS(rwnbfs_p5_family(e1, e2, 128, Rational(2), std::nullopt),
                    UnsupportedIndices);
    CHECK_THROWS_AS(rwnbfs_p5_family(e1, e2, 128, std::nullopt, Rational(1, 2)),
                    UnsupportedIndices);
}

TEST_CASE("HLP-violation family") {
    const HlpFamilyCase c = chlp_family(Rational(1, 2), 100);
    CHECK(c.ratio.exact_value() == Rational(9802, 100));

    // 1/2 + 1/2; approx because (1/2)^(1/2) enters mid-computation
    const HlpFamilyCase small = chlp_family(Rational(1, 2), 2);
    CHECK(approx_eq(small.ratio, ExtReal::exact(r1), 1e-12));

    // ratio strictly increasing in N for fixed p < 1
    double prev = 0;
    for (std::int64_t n : {2, 5, 10, 100, 1000}) {
        const double ratio = chlp_family(Rational(1, 3), n).ratio.value();
        CHECK(ratio > prev);
        prev = ratio;
    }

    CHECK_THROWS_AS(chlp_family(r1, 10), Error);
    CHECK_THROWS_AS(chlp_family(Rational(1, 2), 1), Error);
}

TEST_CASE("bundles are self-verifying against the library norms") {
    for (const WitnessBundle& w :
         {tem_local_witness(e1, e3), tem_global_witness(e3, e1),
          quasi_integrability_witness(Exponent::finite(Rational(1, 3)))}) {
        CHECK(approx_eq(w.finite_evaluated, w.finite_value, 1e-9));
        CHECK(space_norm(w.divergent_space, StepFunction{}).is_zero());   // labels well-formed
    }
}

TEST_CASE("truncated families stay consistent with the positive Wiener axioms") {
    // bounded truncations have finite norms: P4'/P5' side of the ledger
    const WitnessBundle w = rwnbfs_p4_family(e2, e1, 256);
    const ExtReal norm = wiener_norm(e2, e1, StepFunction(w.fn));
    CHECK(norm.is_finite());
    const WitnessBundle v = rwnbfs_p5_family(e1, e2, 256);
    CHECK(wiener_norm(e1, e2, StepFunction(v.fn)).is_finite());
    CHECK(norm_of(lebesgue(1), StepFunction(v.fn)).is_finite());
}
