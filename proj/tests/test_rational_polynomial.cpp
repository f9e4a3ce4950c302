#include <catch_amalgamated.hpp>

#include "hrf/polynomial.hpp"
#include "hrf/rational.hpp"

using hrf::Polynomial;
using hrf::Rational;

TEST_CASE("rational arithmetic stays in lowest terms") {
    Rational a(2, 4);
    CHECK(a.num() == 1);
    CHECK(a.den() == 2);
    CHECK((a + Rational(1, 3)) == Rational(5, 6));
    CHECK((a * Rational(4, 7)) == Rational(2, 7));
    CHECK((Rational(3) / Rational(-6)) == Rational(-1, 2));
    CHECK(Rational(-1, -2) == Rational(1, 2));
    CHECK(Rational(7, -3).den() == 3);
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(5, 3).pow(-2) == Rational(9, 25));
    CHECK(Rational(2).pow(10) == Rational(1024));
    CHECK(Rational(-14, 9).to_string() == "-14/9");
}

TEST_CASE("rational guards") {
    CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::invalid_argument);
    CHECK_THROWS_AS(Rational(INT64_MAX) * Rational(INT64_MAX), std::overflow_error);
    CHECK_THROWS_AS(Rational(0).pow(-1), std::domain_error);
}

TEST_CASE("polynomial arithmetic and normalization") {
    // p = 3 x0^2 - x0 x1 + 1/2
    Polynomial p(2);
    p.add_term(Rational(3), {2, 0});
    p.add_term(Rational(-1), {1, 1});
    p.add_term(Rational(1, 2), {0, 0});

    Polynomial q(2);
    q.add_term(Rational(-3), {2, 0});
    q.add_term(Rational(1, 2), {0, 0});
    Polynomial sum = p + q;
    REQUIRE(sum.terms().size() == 2);
    CHECK(sum.eval<double>(std::vector<double>{2.0, 5.0}) == Catch::Approx(-10.0 + 1.0));

    Polynomial dp = p.derivative(0);  // 6 x0 - x1
    CHECK(dp.eval<double>(std::vector<double>{1.0, 2.0}) == Catch::Approx(4.0));
    CHECK(p.derivative(1).eval<double>(std::vector<double>{3.0, 0.0}) == Catch::Approx(-3.0));

    std::vector<int> shift{1, 2};
    Polynomial shifted = p.mul_monomial(Rational(2), shift);
    CHECK(shifted.eval<double>(std::vector<double>{2.0, 3.0}) ==
          Catch::Approx(2.0 * 2.0 * 9.0 * (3 * 4 - 6 + 0.5)));
}

TEST_CASE("polynomial rational evaluation is exact") {
    Polynomial p(1);
    p.add_term(Rational(1, 3), {2});
    p.add_term(Rational(-1, 7), {-1});  // Laurent term
    std::vector<Rational> x{Rational(3, 2)};
    CHECK(p.eval<Rational>(std::span<const Rational>(x)) ==
          Rational(3, 4) - Rational(2, 21));
}

TEST_CASE("substitution, restriction, homogeneity") {
    // h = x0^2 x1 - 4 x1^3, homogeneous of degree 3
    Polynomial h(2);
    h.add_term(Rational(1), {2, 1});
    h.add_term(Rational(-4), {0, 3});
    CHECK(h.is_homogeneous_of(3));
    CHECK(h.total_degree() == 3);

    Polynomial at_one = h.substitute_one(0);  // x1 - 4 x1^3
    REQUIRE(at_one.nvars() == 1);
    CHECK(at_one.eval<double>(std::vector<double>{2.0}) == Catch::Approx(2.0 - 32.0));

    Polynomial restricted = h.restrict_zero(1);
    CHECK(restricted.is_zero());

    Polynomial no_x1 = h.restrict_zero(0);  // keeps only -4 x1^3? x0 exponent 2 > 0 drops it
    CHECK(no_x1.eval<double>(std::vector<double>{5.0, 2.0}) == Catch::Approx(-32.0));

    CHECK_THROWS_AS(h.drop_variable(0), std::domain_error);
    Polynomial widened = h.with_appended_variable();
    CHECK(widened.nvars() == 3);
    CHECK(widened.drop_variable(2).nvars() == 2);
}

TEST_CASE("jacobian of the zero system is zero") {
    hrf::PolySystem sys;
    sys.nvars = 2;
    sys.rhs = {Polynomial(2), Polynomial(2)};
    std::vector<double> x{1.0, 2.0};
    auto jac = hrf::jacobian_at(sys, x);
    for (const auto& row : jac)
        for (double v : row) CHECK(v == 0.0);
}
