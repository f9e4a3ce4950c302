#include <catch_amalgamated.hpp>

#include <random>

#include "hrf/catalog.hpp"
#include "hrf/einstein.hpp"
#include "hrf/poincare.hpp"

using hrf::Polynomial;
using hrf::Rational;

TEST_CASE("chart system for two summands") {
    // For (d1, d2) the chart reads
    //   u1dot = -(u1 - 2)((d1 + 2 d2) u1 - 4 d2),  u2dot = 2 (d1 + 4 d2 - d2 u1) u2.
    for (auto [name, d1, d2] :
         {std::tuple{"G2/U(2)#r2", 8, 2}, std::tuple{"F4/Sp(3)xU(1)#r2", 28, 2}}) {
        const auto chart = hrf::chart_system(hrf::polynomialize(hrf::get_space(name)));
        REQUIRE(chart.rhs.size() == 2);
        Polynomial u1dot(2), u2dot(2);
        u1dot.add_term(Rational(-(d1 + 2 * d2)), {2, 0});
        u1dot.add_term(Rational(2 * (d1 + 4 * d2)), {1, 0});
        u1dot.add_term(Rational(-8 * d2), {0, 0});
        u2dot.add_term(Rational(2 * (d1 + 4 * d2)), {0, 1});
        u2dot.add_term(Rational(-2 * d2), {1, 1});
        CHECK(chart.rhs[0] == u1dot);
        CHECK(chart.rhs[1] == u2dot);
    }
}

TEST_CASE("chart transform is linear in the system") {
    auto sys = hrf::polynomialize(hrf::get_space("G2/U(2)#r3"));
    auto scaled = sys;
    for (auto& p : scaled.rf) p = p.scaled(Rational(7, 3));
    const auto chart = hrf::chart_system(sys);
    const auto chart_scaled = hrf::chart_system(scaled);
    for (size_t i = 0; i < chart.rhs.size(); ++i)
        CHECK(chart_scaled.rhs[i] == chart.rhs[i].scaled(Rational(7, 3)));
}

TEST_CASE("the infinity hyperplane is invariant") {
    for (const auto& entry : hrf::catalog()) {
        const auto chart = hrf::chart_system(hrf::polynomialize(entry.space));
        const int r = entry.space.rank();
        // the u_r equation vanishes identically on {u_r = 0}
        CHECK(chart.rhs[r - 1].restrict_zero(r - 1).is_zero());
        // and the remaining equations do not involve u_r at all
        for (int i = 0; i + 1 < r; ++i)
            CHECK(chart.rhs[i].min_exponent(r - 1) == 0);
    }
}

TEST_CASE("infinity system of M* matches the printed polynomials") {
    const auto chart = hrf::chart_system(hrf::polynomialize(hrf::get_space("E8/SO(10)xSU(3)xU(1)")));
    const auto inf = hrf::infinity_system(chart);
    REQUIRE(inf.nvars == 3);
    auto mono = [](std::int64_t c, std::vector<int> e) {
        return Polynomial::monomial(3, Rational(c), std::move(e));
    };
    // -x1 (-x1^2 + x1^2 x2^2 - 13 x1 x3 + 13 x1^3 x3 + 44 x1 x2 x3 - 60 x1^2 x2 x3
    //      + 18 x1^3 x2 x3 - 3 x1 x2^2 x3 + x1^2 x3^2 - 2 x2 x3^2)
    Polynomial f1 = mono(1, {3, 0, 0}) + mono(-1, {3, 2, 0}) + mono(13, {2, 0, 1}) +
                    mono(-13, {4, 0, 1}) + mono(-44, {2, 1, 1}) + mono(60, {3, 1, 1}) +
                    mono(-18, {4, 1, 1}) + mono(3, {2, 2, 1}) + mono(-1, {3, 0, 2}) +
                    mono(2, {1, 1, 2});
    CHECK(inf.rhs[0] == f1);
    // -2 x1 x2 (-2 x1 + 2 x1 x2^2 - 10 x3 + 30 x1 x3 - 5 x1^2 x3 - 30 x1 x2 x3
    //           + 5 x1^2 x2 x3 + 10 x2^2 x3 - x1 x3^2)
    Polynomial f2 = mono(4, {2, 1, 0}) + mono(-4, {2, 3, 0}) + mono(20, {1, 1, 1}) +
                    mono(-60, {2, 1, 1}) + mono(10, {3, 1, 1}) + mono(60, {2, 2, 1}) +
                    mono(-10, {3, 2, 1}) + mono(-20, {1, 3, 1}) + mono(2, {2, 1, 2});
    CHECK(inf.rhs[1] == f2);
    // -x3 (-17 x1^2 + 40 x1^2 x2 - 15 x1^2 x2^2 - 5 x1 x3 + 5 x1^3 x3 - 60 x1^2 x2 x3
    //      + 10 x1^3 x2 x3 + 5 x1 x2^2 x3 + 17 x1^2 x3^2 + 10 x2 x3^2)
    Polynomial f3 = mono(17, {2, 0, 1}) + mono(-40, {2, 1, 1}) + mono(15, {2, 2, 1}) +
                    mono(5, {1, 0, 2}) + mono(-5, {3, 0, 2}) + mono(60, {2, 1, 2}) +
                    mono(-10, {3, 1, 2}) + mono(-5, {1, 2, 2}) + mono(-17, {2, 0, 3}) +
                    mono(-10, {0, 1, 3});
    CHECK(inf.rhs[2] == f3);
}

TEST_CASE("Jacobian golden values") {
    // M* at (2,3,4): integer matrix, computed in exact arithmetic
    const auto inf = hrf::infinity_system(
        hrf::chart_system(hrf::polynomialize(hrf::get_space("E8/SO(10)xSU(3)xU(1)"))));
    std::vector<Rational> pt{Rational(2), Rational(3), Rational(4)};
    const auto jac = hrf::jacobian_at(inf, pt);
    const std::int64_t want[3][3] = {{-1600, 368, 32}, {960, -1248, 192}, {320, 1760, -1696}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(jac[i][j] == Rational(want[i][j]));
}

TEST_CASE("two-summand derivative at the roots is -2 d1 and +2 d1, exactly") {
    for (auto [d1, d2] : {std::pair{8, 2}, {28, 2}, {5, 7}}) {
        const auto space = hrf::make_r2_space(d1, d2);
        const auto inf = hrf::infinity_system(hrf::chart_system(hrf::polynomialize(space)));
        const Polynomial h = inf.rhs[0];
        const Polynomial dh = h.derivative(0);
        std::vector<Rational> root_a{Rational(2)};
        std::vector<Rational> root_b{Rational(4 * d2, d1 + 2 * d2)};
        CHECK(h.eval<Rational>(std::span<const Rational>(root_a)) == Rational(0));
        CHECK(h.eval<Rational>(std::span<const Rational>(root_b)) == Rational(0));
        CHECK(dh.eval<Rational>(std::span<const Rational>(root_a)) == Rational(-2 * d1));
        CHECK(dh.eval<Rational>(std::span<const Rational>(root_b)) == Rational(2 * d1));
    }
}

TEST_CASE("fixed points at infinity for two summands") {
    for (auto [name, d1, d2] :
         {std::tuple{"G2/U(2)#r2", 8, 2}, std::tuple{"F4/Sp(3)xU(1)#r2", 28, 2}}) {
        const auto& entry = hrf::catalog_entry(name);
        const auto points = hrf::find_fixed_points_at_infinity(entry.space);
        REQUIRE(points.size() == 2);
        CHECK(points[0].chart_coords[0] == Catch::Approx(2.0).margin(1e-12));
        CHECK(points[1].chart_coords[0] ==
              Catch::Approx(4.0 * d2 / (d1 + 2.0 * d2)).margin(1e-12));
        CHECK(hrf::is_kahler_einstein(points[0]));
        CHECK_FALSE(hrf::is_kahler_einstein(points[1]));
        CHECK(points[0].d_stb == 1);
        CHECK(points[0].d_unstb == 1);
        CHECK(points[1].d_stb == 0);
        CHECK(points[1].d_unstb == 2);
        CHECK(points[0].eigenvalues[0].real() == Catch::Approx(-2.0 * d1).epsilon(1e-9));
        CHECK(points[1].eigenvalues[0].real() == Catch::Approx(2.0 * d1).epsilon(1e-9));
    }
}

TEST_CASE("fixed points for two three-summand spaces match the reference") {
    for (const char* name : {"G2/U(2)#r3", "E8/E6xSU(2)xU(1)"}) {
        const auto& entry = hrf::catalog_entry(name);
        const auto points = hrf::find_fixed_points_at_infinity(entry.space);
        REQUIRE(points.size() == 3);
        for (size_t j = 0; j < 3; ++j) {
            for (int v = 0; v < 2; ++v)
                CHECK(std::abs(points[j].chart_coords[v] -
                               entry.reference_chart_points[j][v]) < 1e-4);
            CHECK(points[j].d_stb == entry.expected_stability[j].first);
            CHECK(points[j].d_unstb == entry.expected_stability[j].second);
            CHECK(points[j].d_stb + points[j].d_unstb == entry.space.rank());
        }
        CHECK(hrf::is_kahler_einstein(points[0]));
    }
}

TEST_CASE("reported fixed points satisfy the residual bound") {
    const auto& entry = hrf::catalog_entry("E7/SU(5)xSU(3)xU(1)");
    const auto inf = hrf::infinity_system(hrf::chart_system(hrf::polynomialize(entry.space)));
    const auto normalized = hrf::detail::normalized_copy(inf);
    for (const auto& fp : hrf::find_fixed_points_at_infinity(entry.space))
        for (const auto& eq : normalized.rhs)
            CHECK(std::abs(eq.eval<double>(std::span<const double>(fp.chart_coords))) < 1e-10);
}

TEST_CASE("symbolic and finite-difference Jacobians agree at the fixed points") {
    const auto& entry = hrf::catalog_entry("F4/SU(3)xSU(2)xU(1)#r4");
    const auto inf = hrf::infinity_system(hrf::chart_system(hrf::polynomialize(entry.space)));
    for (const auto& fp : hrf::find_fixed_points_at_infinity(entry.space)) {
        const auto jac = hrf::jacobian_at(inf, fp.chart_coords);
        for (int i = 0; i < inf.nvars; ++i)
            for (int j = 0; j < inf.nvars; ++j) {
                const double h = 1e-6 * std::max(1.0, std::abs(fp.chart_coords[j]));
                auto xp = fp.chart_coords, xm = fp.chart_coords;
                xp[j] += h;
                xm[j] -= h;
                const double fd = (inf.rhs[i].eval<double>(std::span<const double>(xp)) -
                                   inf.rhs[i].eval<double>(std::span<const double>(xm))) /
                                  (2.0 * h);
                const double scale = std::max({1.0, std::abs(jac[i][j])});
                CHECK(std::abs(jac[i][j] - fd) <= 1e-6 * scale);
            }
    }
}

TEST_CASE("non-hyperbolic configurations are rejected") {
    std::vector<std::complex<double>> evs{{0.0, 1.0}, {-3.0, 0.0}};
    CHECK_THROWS_AS(hrf::classify_stability(evs, 3.0), hrf::NonHyperbolicError);
    std::vector<std::complex<double>> good{{-1.0, 0.5}, {2.0, 0.0}};
    const auto [stb, unstb] = hrf::classify_stability(good, 2.0);
    CHECK(stb == 1);
    CHECK(unstb == 2);
}

TEST_CASE("invariant lines coincide with Einstein directions and fixed points") {
    for (const char* name : {"G2/U(2)#r2", "F4/Sp(3)xU(1)#r2", "G2/U(2)#r3",
                             "E7/SU(6)xSU(2)xU(1)", "F4/SU(3)xSU(2)xU(1)#r4"}) {
        const auto& entry = hrf::catalog_entry(name);
        const auto lines = hrf::find_invariant_lines(entry.space);
        const auto points = hrf::find_fixed_points_at_infinity(entry.space);
        hrf::EinsteinSolverOptions eopts;
        eopts.expected_count = entry.expected_fixed_points;
        const auto metrics = hrf::find_einstein_metrics(entry.space, eopts);
        REQUIRE(lines.size() == points.size());
        REQUIRE(lines.size() == metrics.size());
        for (const auto& line : lines) {
            double best_fp = 1e300, best_m = 1e300;
            for (const auto& fp : points) {
                double d = 0.0;
                for (int v = 0; v < entry.space.rank(); ++v)
                    d = std::max(d, std::abs(fp.representative[v] - line[v]));
                best_fp = std::min(best_fp, d);
            }
            for (const auto& m : metrics) {
                double d = 0.0;
                for (int v = 0; v < entry.space.rank(); ++v)
                    d = std::max(d, std::abs(m.x[v] - line[v]));
                best_m = std::min(best_m, d);
            }
            CHECK(best_fp < 1e-8);
            CHECK(best_m < 1e-8);
        }
        // every three-summand space carries the (1,2,3) line
        if (entry.space.rank() == 3) {
            double best = 1e300;
            for (const auto& line : lines)
                best = std::min(best, std::max(std::abs(line[1] - 2.0), std::abs(line[2] - 3.0)));
            CHECK(best < 1e-9);
        }
    }
}
