#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "amalgam/extreal.hpp"
#include "amalgam/rational.hpp"

#include <cstdint>

using namespace amalgam;

namespace {

// small deterministic generator for property checks
struct Lcg {
    std::uint64_t s;
    std::uint64_t next() {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        return s >> 16;
    }
    long small(long lo, long hi) { return lo + static_cast<long>(next() % (hi - lo + 1)); }
    Rational rat() {
        long n = small(-40, 40);
        long d = small(1, 12);
        return Rational(n, d);
    }
};

} // namespace

TEST_CASE("canonical form after every construction") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-2, 4) == Rational(-1, 2));
    CHECK(Rational(3, -6) == Rational(-1, 2));
    CHECK(Rational(0, 7) == Rational(0));
    CHECK(Rational(6, 3).is_integer());
    CHECK(Rational(6, 3).str() == "2");
    CHECK(Rational(1, 3).str() == "1/3");
}

TEST_CASE("parsing") {
    CHECK(Rational::from_string("5/10") == Rational(1, 2));
    CHECK(Rational::from_string("-7") == Rational(-7));
    CHECK(Rational::from_string("0") == Rational(0));
    CHECK_THROWS_AS(Rational::from_string("1/0"), ParseError);
    CHECK_THROWS_AS(Rational::from_string("x"), ParseError);
    CHECK_THROWS_AS(Rational::from_string("1/-2"), ParseError);
}

TEST_CASE("field arithmetic properties") {
    Lcg rng{12345};
    for (int i = 0; i < 500; ++i) {
        Rational a = rng.rat(), b = rng.rat(), c = rng.rat();
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a - a == Rational(0));
        if (!b.is_zero()) CHECK((a / b) * b == a);
    }
}

TEST_CASE("ordering is total and consistent with doubles") {
    Lcg rng{999};
    for (int i = 0; i < 500; ++i) {
        Rational a = rng.rat(), b = rng.rat();
        if (a < b) CHECK(a.to_double() <= b.to_double());
        CHECK(((a < b) + (a == b) + (b < a)) == 1);
    }
}

TEST_CASE("integer powers and exact roots") {
    CHECK(Rational::pow_int(Rational(2, 3), 3) == Rational(8, 27));
    CHECK(Rational::pow_int(Rational(2, 3), -2) == Rational(9, 4));
    CHECK(Rational::pow_int(Rational(5), 0) == Rational(1));
    CHECK(Rational(4, 9).root(2) == Rational(2, 3));
    CHECK(Rational(8, 27).root(3) == Rational(2, 3));
    CHECK_FALSE(Rational(2).root(2).has_value());
    CHECK_FALSE(Rational(4, 5).root(2).has_value());
}

TEST_CASE("compare_with_power decides r vs base^e exactly") {
    // 3 vs 2^(3/2) = 2.828...
    CHECK(compare_with_power(Rational(3), Rational(2), Rational(3, 2)) == 1);
    CHECK(compare_with_power(Rational(2), Rational(2), Rational(3, 2)) == -1);
    CHECK(compare_with_power(Rational(4), Rational(2), Rational(2)) == 0);
    // 1/2 vs 4^(-1/2) = 1/2
    CHECK(compare_with_power(Rational(1, 2), Rational(4), Rational(-1, 2)) == 0);
}

TEST_CASE("ExtReal arithmetic and conventions") {
    const ExtReal two = ExtReal::exact(Rational(2));
    const ExtReal three = ExtReal::exact(Rational(3));
    CHECK((two + three).exact_value() == Rational(5));
    CHECK((two * three).exact_value() == Rational(6));
    CHECK((two / three).exact_value() == Rational(2, 3));

    const ExtReal inf = ExtReal::infinity();
    CHECK((two + inf).is_infinite());
    CHECK((inf * two).is_infinite());
    CHECK((ExtReal::exact(Rational(0)) * inf).is_zero());   // 0 * inf = 0
    CHECK(inf.scaled(Rational(0)).is_zero());
    CHECK(inf.scaled(Rational(2)).is_infinite());

    CHECK_THROWS_AS(ExtReal::exact(Rational(-1)), Error);
    CHECK_THROWS_AS(ExtReal::sub_nonneg(two, three), Error);
}

TEST_CASE("approx error propagation stays conservative") {
    Lcg rng{777};
    for (int i = 0; i < 200; ++i) {
        double va = (rng.small(1, 1000)) / 7.0;
        double vb = (rng.small(1, 1000)) / 13.0;
        ExtReal a = ExtReal::approx(va, 1e-12);
        ExtReal b = ExtReal::approx(vb, 1e-13);
        ExtReal s = a + b;
        CHECK(s.value() == doctest::Approx(va + vb));
        CHECK(s.rel_error() <= 1e-12 + 1e-12);
        ExtReal p = a * b;
        CHECK(p.rel_error() >= 1e-12);
    }
}

TEST_CASE("rational_pow exactness rules") {
    CHECK(rational_pow(Rational(4), Rational(1, 2)).exact_value() == Rational(2));
    CHECK(rational_pow(Rational(8, 27), Rational(2, 3)).exact_value() == Rational(4, 9));
    CHECK(rational_pow(Rational(5), Rational(-1)).exact_value() == Rational(1, 5));
    CHECK(rational_pow(Rational(0), Rational(3)).is_zero());
    CHECK(rational_pow(Rational(0), Rational(-1)).is_infinite());
    CHECK(rational_pow(Rational(7), Rational(0)).exact_value() == Rational(1));

    const ExtReal r = rational_pow(Rational(2), Rational(1, 2));
    REQUIRE(r.is_approx());
    CHECK(r.value() == doctest::Approx(1.4142135623730951).epsilon(1e-14));
}

TEST_CASE("power_integral closed forms") {
    // ∫_1^4 t^(-1/2) = 2(2-1) = 2, exact because endpoints are perfect squares
    CHECK(power_integral(Rational(1), Rational(-1, 2), Rational(1), Rational(4)).exact_value() ==
          Rational(2));
    // ∫_0^1 t^(-1/2) = 2 (improper at 0 but convergent)
    CHECK(power_integral(Rational(1), Rational(-1, 2), Rational(0), Rational(1)).exact_value() ==
          Rational(2));
    // ∫_1^inf t^(-2) = 1
    CHECK(power_integral(Rational(1), Rational(-2), Rational(1), std::nullopt).exact_value() ==
          Rational(1));
    // harmonic tail diverges
    CHECK(power_integral(Rational(1), Rational(-1), Rational(1), std::nullopt).is_infinite());
    // divergent at the origin
    CHECK(power_integral(Rational(1), Rational(-3, 2), Rational(0), Rational(1)).is_infinite());
    // log case: ∫_1^e' t^(-1) with rational endpoints
    const ExtReal lg = power_integral(Rational(3), Rational(-1), Rational(1), Rational(2));
    REQUIRE(lg.is_approx());
    CHECK(lg.value() == doctest::Approx(3 * std::log(2.0)).epsilon(1e-14));
    // zero coefficient
    CHECK(power_integral(Rational(0), Rational(-5), Rational(0), std::nullopt).is_zero());
}

TEST_CASE("power_integral agrees with brute-force Riemann sums") {
    // midpoint refinement oracle on [a,b] for c*t^alpha
    auto riemann = [](double c, double alpha, double a, double b) {
        const int n = 200000;
        double h = (b - a) / n, s = 0;
        for (int i = 0; i < n; ++i) s += std::pow(a + (i + 0.5) * h, alpha);
        return c * s * h;
    };
    struct Case { Rational c, alpha, a, b; };
    for (const Case& k : {Case{{3, 2}, {-1, 3}, {1, 2}, {5, 2}},
                          Case{{1}, {2}, {0}, {3}},
                          Case{{2}, {-3, 4}, {1, 4}, {4}}}) {
        const ExtReal v = power_integral(k.c, k.alpha, k.a, k.b);
        const double oracle =
            riemann(k.c.to_double(), k.alpha.to_double(), k.a.to_double(), k.b.to_double());
        CHECK(v.value() == doctest::Approx(oracle).epsilon(1e-6));
    }
}

TEST_CASE("le_with_slack and ext_cmp") {
    CHECK(le_with_slack(ExtReal::exact(Rational(1)), ExtReal::exact(Rational(1)), 0));
    CHECK_FALSE(le_with_slack(ExtReal::exact(Rational(1, 1000000)), ExtReal::exact(Rational(0)), 0));
    CHECK(le_with_slack(ExtReal::approx(1.0 + 1e-12, 1e-12), ExtReal::exact(Rational(1)), 1e-9));
    CHECK(le_with_slack(ExtReal::exact(Rational(5)), ExtReal::infinity(), 0));
    CHECK(ext_cmp(ExtReal::infinity(), ExtReal::infinity()) == 0);
    CHECK(ext_cmp(ExtReal::exact(Rational(1, 3)), ExtReal::exact(Rational(1, 2))) < 0);
}
