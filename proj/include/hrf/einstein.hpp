#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hrf/flag_space.hpp"
#include "hrf/flow.hpp"
#include "hrf/poincare.hpp"
#include "hrf/ricci.hpp"

namespace hrf {

struct EinsteinMetric {
    std::vector<double> x;  // normalized x_1 = 1
    double lambda = 0.0;    // common value of the ric_i
};

struct EinsteinSolverOptions {
    double grid_min = 0.05;
    double grid_max = 5.0;
    int grid_per_axis = 8;
    long max_starts = 20000;
    double residual_tol = 1e-12;
    double dedup_radius = 1e-6;
    int max_iterations = 120;
    int expected_count = 0;  // 0 = unknown; error when fewer are found
};

/// Solves {ric_1 = ... = ric_r, x_1 = 1} by damped Newton on the
/// mean-centered residual in log coordinates u_i = log x_i (u_1 = 0), so
/// positivity is automatic. Multi-start over a log-uniform grid plus the
/// Kaehler-Einstein seed (1, 2, .., r).
inline std::vector<EinsteinMetric> find_einstein_metrics(const FlagSpace& space,
                                                         const EinsteinSolverOptions& opts = {}) {
    const int r = space.rank();
    const int n = r - 1;
    const std::vector<Polynomial> rics = ricci_laurent(space);
    std::vector<std::vector<Polynomial>> dric(r);
    for (int i = 0; i < r; ++i)
        for (int v = 0; v < r; ++v) dric[i].push_back(rics[i].derivative(v));

    auto to_x = [r](std::span<const double> w) {
        std::vector<double> x(r, 1.0);
        for (int i = 1; i < r; ++i) x[i] = std::exp(w[i - 1]);
        return x;
    };
    // residual: (ric_i - mean) for i = 2..r; the dropped component is the
    // negative of their sum.
    auto residual = [&](std::span<const double> w, std::vector<double>& x) {
        x = to_x(w);
        std::vector<double> ric(r);
        for (int i = 0; i < r; ++i) ric[i] = rics[i].eval<double>(std::span<const double>(x));
        double mean = 0.0;
        for (double v : ric) mean += v;
        mean /= r;
        std::vector<double> f(n);
        for (int i = 1; i < r; ++i) f[i - 1] = ric[i] - mean;
        return f;
    };
    auto sup = [](const std::vector<double>& v) {
        double m = 0.0;
        for (double a : v) m = std::max(m, std::abs(a));
        return m;
    };

    std::vector<std::vector<double>> starts;
    {
        SolverOptions grid_opts;
        grid_opts.grid_min = opts.grid_min;
        grid_opts.grid_max = opts.grid_max;
        grid_opts.grid_per_axis = opts.grid_per_axis;
        grid_opts.max_starts = opts.max_starts;
        starts = detail::log_uniform_grid(n, grid_opts);
        for (auto& s : starts)
            for (double& v : s) v = std::log(v);
        std::vector<double> ke(n);
        for (int i = 0; i < n; ++i) ke[i] = std::log(i + 2.0);
        starts.push_back(std::move(ke));
    }

    std::vector<EinsteinMetric> found;
    Eigen::MatrixXd jac(n, n);
    for (const auto& start : starts) {
        std::vector<double> w = start, x;
        bool converged = false;
        for (int it = 0; it < opts.max_iterations; ++it) {
            std::vector<double> f = residual(w, x);
            const double fnorm = sup(f);
            if (!std::isfinite(fnorm)) break;
            if (fnorm <= opts.residual_tol) { converged = true; break; }

            // d f_i / d w_j = x_j * (d ric_{i+1}/d x_j - mean_k d ric_k/d x_j)
            for (int j = 1; j < r; ++j) {
                std::vector<double> col(r);
                double mean = 0.0;
                for (int i = 0; i < r; ++i) {
                    col[i] = dric[i][j].eval<double>(std::span<const double>(x));
                    mean += col[i];
                }
                mean /= r;
                for (int i = 1; i < r; ++i) jac(i - 1, j - 1) = x[j] * (col[i] - mean);
            }
            Eigen::VectorXd rhs(n);
            for (int i = 0; i < n; ++i) rhs(i) = -f[i];
            Eigen::VectorXd step = jac.partialPivLu().solve(rhs);
            if (!step.allFinite()) break;

            double damping = 1.0;
            bool moved = false;
            for (int ls = 0; ls < 50; ++ls) {
                std::vector<double> wn(w);
                for (int v = 0; v < n; ++v) wn[v] += damping * step(v);
                std::vector<double> xn;
                std::vector<double> fn = residual(wn, xn);
                const double fn_norm = sup(fn);
                if (std::isfinite(fn_norm) && fn_norm < fnorm * (1.0 - 0.25 * damping)) {
                    w = std::move(wn);
                    moved = true;
                    break;
                }
                damping *= 0.5;
            }
            if (!moved)
                for (int v = 0; v < n; ++v) w[v] += step(v);
        }
        if (!converged) continue;

        x = to_x(w);
        std::vector<double> ric = ricci_components<double>(space, std::span<const double>(x));
        double lambda = 0.0;
        for (double v : ric) lambda += v;
        lambda /= r;
        if (!(lambda > 0.0)) continue;

        bool duplicate = false;
        for (const auto& m : found) {
            double d = 0.0;
            for (int i = 0; i < r; ++i) d = std::max(d, std::abs(m.x[i] - x[i]));
            if (d < opts.dedup_radius) { duplicate = true; break; }
        }
        if (!duplicate) found.push_back({std::move(x), lambda});
    }

    std::sort(found.begin(), found.end(),
              [](const EinsteinMetric& a, const EinsteinMetric& b) { return a.x < b.x; });
    if (opts.expected_count > 0 && static_cast<int>(found.size()) < opts.expected_count)
        throw SolverError("found " + std::to_string(found.size()) + " Einstein metrics on " +
                          space.name() + ", expected " + std::to_string(opts.expected_count));
    return found;
}

/// Closed forms for the two-summand family, exact in the dimensions:
///   lambda_1 = (d1 + 2 d2) / (2 (d1 + 4 d2))                 at (1, 2)
///   lambda_2 = (d1^2 + 6 d1 d2 + 4 d2^2) / (2 (d1+2d2)(d1+4d2))
///              at (1, 4 d2 / (d1 + 2 d2))
inline std::pair<Rational, Rational> r2_einstein_constants(int d1, int d2) {
    if (d1 < 1 || d2 < 1) throw std::invalid_argument("r2_einstein_constants: bad dimensions");
    const std::int64_t a = d1, b = d2;
    Rational lambda1(a + 2 * b, 2 * (a + 4 * b));
    Rational lambda2(a * a + 6 * a * b + 4 * b * b, 2 * (a + 2 * b) * (a + 4 * b));
    return {lambda1, lambda2};
}

/// Kaehler-Einstein constant of a three-summand space at (1, 2, 3).
inline Rational r3_kahler_einstein_constant(int d1, int d2, int d3) {
    return Rational(d1 + 2 * d2 + 3 * d3, 2 * d1 + 8 * d2 + 18 * d3);
}

} // namespace hrf
