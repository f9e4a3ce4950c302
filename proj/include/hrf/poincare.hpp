#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "hrf/catalog.hpp"
#include "hrf/flag_space.hpp"
#include "hrf/flow.hpp"
#include "hrf/polynomial.hpp"
#include "hrf/ricci.hpp"

namespace hrf {

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonHyperbolicError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The compactified flow in the chart {y_1 > 0}, coordinates
/// (u_1..u_{r-1}, u_r) with u_i = x_{i+1}/x_1 and u_r = 1/x_1, after the
/// common factor u_r^d has been canceled. The first r-1 equations do not
/// involve u_r; the last one carries u_r as a factor, so the hyperplane
/// {u_r = 0} (the infinity of the metric cone) is invariant.
struct ChartSystem {
    const FlagSpace* space = nullptr;
    std::vector<Polynomial> rhs; // r polynomials in r chart variables
    int degree = 0;
};

/// Chart transform of a homogeneous system: with P_j(u) = RF_j(1, u_1..u_{r-1}),
///   udot_i = -u_i P_1(u) + P_{i+1}(u)   (i = 1..r-1)
///   udot_r = -u_r P_1(u)
inline ChartSystem chart_system(const PolynomialSystem& polysys) {
    const int r = static_cast<int>(polysys.rf.size());
    if (r < 2) throw std::invalid_argument("chart_system: need at least two summands");

    std::vector<Polynomial> p; // P_j over (u_1..u_{r-1})
    p.reserve(r);
    for (const auto& rf : polysys.rf) p.push_back(rf.substitute_one(0));

    ChartSystem chart;
    chart.space = polysys.space;
    chart.degree = polysys.degree;
    const int n = r - 1;
    for (int i = 0; i < n; ++i) {
        std::vector<int> e(n, 0);
        e[i] = 1;
        chart.rhs.push_back((p[i + 1] - p[0].mul_monomial(Rational(1), e)).with_appended_variable());
    }
    {
        std::vector<int> e(r, 0);
        e[r - 1] = 1;
        chart.rhs.push_back(p[0].with_appended_variable().mul_monomial(Rational(-1), e));
    }
    return chart;
}

/// Restriction of the chart system to {u_r = 0}: r-1 polynomial equations in
/// the r-1 coordinates at infinity.
inline PolySystem infinity_system(const ChartSystem& chart) {
    const int r = static_cast<int>(chart.rhs.size());
    PolySystem sys;
    sys.nvars = r - 1;
    for (int i = 0; i + 1 < r; ++i)
        sys.rhs.push_back(chart.rhs[i].restrict_zero(r - 1).drop_variable(r - 1));
    return sys;
}

struct SolverOptions {
    double grid_min = 0.05;
    double grid_max = 3.5;
    int grid_per_axis = 8;
    long max_starts = 20000;
    double newton_tol = 1e-12;  // on the max-coefficient-normalized residual
    double rel_tol = 1e-9;      // residual relative to the local term scale
    double dedup_radius = 1e-6;
    double coord_floor = 1e-4;  // reject boundary/origin artifacts
    int max_iterations = 120;
    double hyperbolicity_tol = 1e-6;
    std::vector<std::vector<double>> extra_starts;
};

namespace detail {

inline std::vector<std::vector<double>> log_uniform_grid(int n, const SolverOptions& opts) {
    std::vector<double> axis(opts.grid_per_axis);
    const double lo = std::log(opts.grid_min), hi = std::log(opts.grid_max);
    for (int i = 0; i < opts.grid_per_axis; ++i)
        axis[i] = std::exp(lo + (hi - lo) * i / (opts.grid_per_axis - 1.0));
    long total = 1;
    for (int i = 0; i < n; ++i) total *= opts.grid_per_axis;

    std::vector<std::vector<double>> starts;
    if (total <= opts.max_starts) {
        starts.reserve(total);
        for (long idx = 0; idx < total; ++idx) {
            std::vector<double> pt(n);
            long rem = idx;
            for (int v = 0; v < n; ++v) {
                pt[v] = axis[rem % opts.grid_per_axis];
                rem /= opts.grid_per_axis;
            }
            starts.push_back(std::move(pt));
        }
    } else {
        // uniform subsample of the full grid, kept deterministic
        starts.reserve(opts.max_starts);
        const double stride = static_cast<double>(total) / opts.max_starts;
        for (long s = 0; s < opts.max_starts; ++s) {
            long idx = static_cast<long>(s * stride);
            std::vector<double> pt(n);
            for (int v = 0; v < n; ++v) {
                pt[v] = axis[idx % opts.grid_per_axis];
                idx /= opts.grid_per_axis;
            }
            starts.push_back(std::move(pt));
        }
    }
    return starts;
}

/// Damped Newton on a square polynomial system whose equations have been
/// scaled to unit max coefficient. Returns true on convergence.
inline bool newton_polish(const PolySystem& sys, std::vector<double>& x,
                          const SolverOptions& opts) {
    const int n = sys.nvars;
    Eigen::MatrixXd jac(n, n);
    Eigen::VectorXd step(n);
    auto sup = [](const std::vector<double>& v) {
        double m = 0.0;
        for (double a : v) m = std::max(m, std::abs(a));
        return m;
    };
    for (int it = 0; it < opts.max_iterations; ++it) {
        std::vector<double> f = eval_system<double>(sys, std::span<const double>(x));
        const double fnorm = sup(f);
        if (!std::isfinite(fnorm)) return false;
        if (fnorm <= opts.newton_tol) return true;

        auto j = jacobian_at(sys, std::span<const double>(x));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) jac(a, b) = j[a][b];
        Eigen::VectorXd rhs(n);
        for (int a = 0; a < n; ++a) rhs(a) = -f[a];
        step = jac.partialPivLu().solve(rhs);
        if (!step.allFinite()) return false;

        double damping = 1.0;
        bool moved = false;
        for (int ls = 0; ls < 50; ++ls) {
            std::vector<double> xn(x);
            for (int v = 0; v < n; ++v) xn[v] += damping * step(v);
            std::vector<double> fn = eval_system<double>(sys, std::span<const double>(xn));
            const double fn_norm = sup(fn);
            if (std::isfinite(fn_norm) && fn_norm < fnorm * (1.0 - 0.25 * damping)) {
                x = std::move(xn);
                moved = true;
                break;
            }
            damping *= 0.5;
        }
        if (!moved) {
            // full step as a last resort; gives the quadratic phase a chance
            for (int v = 0; v < n; ++v) x[v] += step(v);
        }
    }
    std::vector<double> f = eval_system<double>(sys, std::span<const double>(x));
    return sup(f) <= opts.newton_tol;
}

inline PolySystem normalized_copy(const PolySystem& sys) {
    PolySystem out;
    out.nvars = sys.nvars;
    for (const auto& p : sys.rhs) {
        const double scale = p.max_abs_coeff();
        if (scale <= 0.0) throw SolverError("zero equation in polynomial system");
        // divide by the nearest power of two; keeps coefficients exact
        Rational factor(1);
        double s = scale;
        while (s > 1.0) { factor *= Rational(1, 2); s *= 0.5; }
        while (s < 0.5) { factor *= Rational(2); s *= 2.0; }
        out.rhs.push_back(p.scaled(factor));
    }
    return out;
}

/// All strictly positive roots of a square polynomial system, by multi-start
/// damped Newton over a log-uniform grid plus caller-provided seeds.
/// Roots are accepted when the normalized residual meets newton_tol, the
/// scale-relative residual meets rel_tol (this rejects the near-origin
/// artifacts of homogeneous systems), and every coordinate clears the floor.
inline std::vector<std::vector<double>> positive_roots(const PolySystem& raw,
                                                       const SolverOptions& opts) {
    const PolySystem sys = normalized_copy(raw);
    const int n = sys.nvars;
    std::vector<std::vector<double>> starts = log_uniform_grid(n, opts);
    starts.insert(starts.end(), opts.extra_starts.begin(), opts.extra_starts.end());

    std::vector<std::vector<double>> roots;
    for (const auto& start : starts) {
        std::vector<double> x = start;
        if (!newton_polish(sys, x, opts)) continue;
        bool positive = true;
        for (double v : x) positive = positive && (v >= opts.coord_floor);
        if (!positive) continue;

        bool scale_ok = true;
        for (int i = 0; i < n; ++i) {
            const double value = std::abs(sys.rhs[i].eval<double>(std::span<const double>(x)));
            const double scale = sys.rhs[i].eval_abs(std::span<const double>(x));
            if (value > opts.rel_tol * std::max(scale, 1e-300)) scale_ok = false;
        }
        if (!scale_ok) continue;

        bool duplicate = false;
        for (const auto& rr : roots) {
            double d = 0.0;
            for (int v = 0; v < n; ++v) d = std::max(d, std::abs(rr[v] - x[v]));
            if (d < opts.dedup_radius) { duplicate = true; break; }
        }
        if (!duplicate) roots.push_back(std::move(x));
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

} // namespace detail

struct FixedPointAtInfinity {
    std::vector<double> chart_coords;            // (a_1..a_{r-1}), u_r = 0
    std::vector<double> representative;          // (1, a_1, .., a_{r-1})
    std::vector<std::complex<double>> eigenvalues; // of the restricted Jacobian
    int d_stb = 0;
    int d_unstb = 0;
    double lambda = 0.0;
};

/// Sign counts of the linearization. The radial line toward the origin adds
/// one unstable direction on top of the eigenvalues at infinity.
inline std::pair<int, int> classify_stability(std::span<const std::complex<double>> eigenvalues,
                                              double jacobian_scale, double tol = 1e-6) {
    int neg = 0, pos = 0;
    const double threshold = tol * std::max(jacobian_scale, 1e-300);
    for (const auto& ev : eigenvalues) {
        if (std::abs(ev.real()) <= threshold)
            throw NonHyperbolicError("eigenvalue with vanishing real part: " +
                                     std::to_string(ev.real()));
        (ev.real() < 0 ? neg : pos) += 1;
    }
    return {neg, pos + 1};
}

inline bool is_kahler_einstein(const FixedPointAtInfinity& fp, double tol = 1e-6) {
    for (size_t i = 0; i < fp.representative.size(); ++i)
        if (std::abs(fp.representative[i] - static_cast<double>(i + 1)) > tol) return false;
    return true;
}

/// All fixed points of the compactified flow on {u_r = 0} with positive
/// chart coordinates, classified. The chart point of the Kaehler-Einstein
/// direction, (2, 3, .., r), is always seeded in addition to the grid; for
/// r >= 4 it lies outside the default start box.
inline std::vector<FixedPointAtInfinity> find_fixed_points_at_infinity(
    const FlagSpace& space, SolverOptions opts = {}) {
    const int r = space.rank();
    const PolynomialSystem polysys = polynomialize(space);
    const ChartSystem chart = chart_system(polysys);
    const PolySystem inf = infinity_system(chart);

    std::vector<double> ke(r - 1);
    for (int i = 0; i < r - 1; ++i) ke[i] = i + 2;
    opts.extra_starts.push_back(ke);

    std::vector<std::vector<double>> roots = detail::positive_roots(inf, opts);
    if (roots.empty()) throw SolverError("no fixed points at infinity found for " + space.name());

    std::vector<FixedPointAtInfinity> out;
    for (const auto& root : roots) {
        FixedPointAtInfinity fp;
        fp.chart_coords = root;
        fp.representative.assign(1, 1.0);
        fp.representative.insert(fp.representative.end(), root.begin(), root.end());

        const auto jac = jacobian_at(inf, std::span<const double>(root));
        const int n = r - 1;
        Eigen::MatrixXd m(n, n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) m(a, b) = jac[a][b];
        Eigen::EigenSolver<Eigen::MatrixXd> eig(m, /*computeEigenvectors=*/false);
        if (eig.info() != Eigen::Success)
            throw SolverError("eigenvalue computation failed for " + space.name());
        for (int a = 0; a < n; ++a) fp.eigenvalues.push_back(eig.eigenvalues()(a));

        auto [stb, unstb] =
            classify_stability(fp.eigenvalues, m.cwiseAbs().maxCoeff(), opts.hyperbolicity_tol);
        fp.d_stb = stb;
        fp.d_unstb = unstb;

        fp.lambda =
            ricci_components<double>(space, std::span<const double>(fp.representative))[0];
        out.push_back(std::move(fp));
    }

    // Kaehler-Einstein point first; then catalog reference order when known.
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return is_kahler_einstein(a) > is_kahler_einstein(b);
    });
    if (const CatalogEntry* entry = find_entry(space.name());
        entry && !entry->reference_chart_points.empty()) {
        std::vector<FixedPointAtInfinity> ordered;
        std::vector<bool> used(out.size(), false);
        for (const auto& ref : entry->reference_chart_points) {
            int best = -1;
            double best_d = 1e300;
            for (size_t i = 0; i < out.size(); ++i) {
                if (used[i] || ref.size() != out[i].chart_coords.size()) continue;
                double d = 0.0;
                for (size_t v = 0; v < ref.size(); ++v)
                    d = std::max(d, std::abs(ref[v] - out[i].chart_coords[v]));
                if (d < best_d) { best_d = d; best = static_cast<int>(i); }
            }
            if (best >= 0 && best_d < 1e-2) {
                ordered.push_back(out[best]);
                used[best] = true;
            }
        }
        for (size_t i = 0; i < out.size(); ++i)
            if (!used[i]) ordered.push_back(out[i]);
        out = std::move(ordered);
    }
    return out;
}

/// Directions v (normalized v_1 = 1) whose ray is carried to itself by the
/// flow: zeros of the pairwise normal constraints
///   v_i RF_{i+1}(v) - v_{i+1} RF_i(v) = 0,  i = 1..r-1.
inline std::vector<std::vector<double>> find_invariant_lines(const FlagSpace& space,
                                                             SolverOptions opts = {}) {
    const int r = space.rank();
    const PolynomialSystem polysys = polynomialize(space);

    PolySystem sys;
    sys.nvars = r - 1;
    for (int i = 0; i + 1 < r; ++i) {
        std::vector<int> ei(r, 0), ej(r, 0);
        ei[i] = 1;
        ej[i + 1] = 1;
        Polynomial eq =
            polysys.rf[i + 1].mul_monomial(Rational(1), ei) -
            polysys.rf[i].mul_monomial(Rational(1), ej);
        sys.rhs.push_back(eq.substitute_one(0));
    }

    std::vector<double> ke(r - 1);
    for (int i = 0; i < r - 1; ++i) ke[i] = i + 2;
    opts.extra_starts.push_back(ke);

    std::vector<std::vector<double>> roots = detail::positive_roots(sys, opts);
    std::vector<std::vector<double>> lines;
    for (const auto& root : roots) {
        std::vector<double> v{1.0};
        v.insert(v.end(), root.begin(), root.end());
        lines.push_back(std::move(v));
    }
    return lines;
}

} // namespace hrf
