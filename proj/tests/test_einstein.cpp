#include <catch_amalgamated.hpp>

#include "hrf/catalog.hpp"
#include "hrf/einstein.hpp"
#include "hrf/ricci.hpp"

using hrf::Rational;

TEST_CASE("two-summand Einstein metrics in closed form") {
    for (auto [d1, d2] : {std::pair{8, 2}, {28, 2}, {5, 7}, {12, 1}}) {
        const auto space = hrf::make_r2_space(d1, d2);
        hrf::EinsteinSolverOptions opts;
        opts.expected_count = 2;
        const auto metrics = hrf::find_einstein_metrics(space, opts);
        REQUIRE(metrics.size() == 2);
        const auto [lam1, lam2] = hrf::r2_einstein_constants(d1, d2);
        const double b = 4.0 * d2 / (d1 + 2.0 * d2);
        bool saw_ke = false, saw_second = false;
        for (const auto& m : metrics) {
            REQUIRE(m.x[0] == Catch::Approx(1.0));
            if (std::abs(m.x[1] - 2.0) < 1e-9) {
                saw_ke = true;
                CHECK(m.lambda == Catch::Approx(lam1.to_double()).margin(1e-12));
            } else {
                saw_second = true;
                CHECK(m.x[1] == Catch::Approx(b).margin(1e-9));
                CHECK(m.lambda == Catch::Approx(lam2.to_double()).margin(1e-12));
            }
        }
        CHECK(saw_ke);
        CHECK(saw_second);
    }
}

TEST_CASE("closed-form r=2 constants") {
    CHECK(hrf::r2_einstein_constants(8, 2).first == Rational(3, 8));
    CHECK(hrf::r2_einstein_constants(8, 2).second == Rational(11, 24));
    CHECK(hrf::r2_einstein_constants(28, 2).first == Rational(4, 9));
    CHECK(hrf::r2_einstein_constants(28, 2).second == Rational(71, 144));
    CHECK(hrf::r3_kahler_einstein_constant(4, 2, 4) == Rational(5, 24));
    CHECK(hrf::r3_kahler_einstein_constant(108, 54, 4) == Rational(19, 60));
}

TEST_CASE("every output is Einstein with positive constant; KE always present") {
    for (const auto& entry : hrf::catalog()) {
        if (entry.space.rank() > 4) continue;  // large ranks run in the acceptance suite
        hrf::EinsteinSolverOptions opts;
        opts.expected_count = entry.expected_fixed_points;
        const auto metrics = hrf::find_einstein_metrics(entry.space, opts);
        CHECK(static_cast<int>(metrics.size()) == entry.expected_fixed_points);
        bool saw_ke = true;
        double best = 1e300;
        for (const auto& m : metrics) {
            CHECK(m.lambda > 0.0);
            CHECK(hrf::einstein_residual_norm(entry.space, m.x) < 1e-10);
            double d = 0.0;
            for (int i = 0; i < entry.space.rank(); ++i)
                d = std::max(d, std::abs(m.x[i] - (i + 1.0)));
            best = std::min(best, d);
        }
        saw_ke = best < 1e-6;
        CHECK(saw_ke);
    }
}

TEST_CASE("solver failure surfaces as an error") {
    hrf::EinsteinSolverOptions opts;
    opts.expected_count = 99;
    CHECK_THROWS_AS(hrf::find_einstein_metrics(hrf::get_space("G2/U(2)#r2"), opts),
                    hrf::SolverError);
}
