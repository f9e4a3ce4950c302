#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hrf/flag_space.hpp"
#include "hrf/polynomial.hpp"
#include "hrf/ricci.hpp"

namespace hrf {

/// Right-hand side of the flow: xdot_k = -2 x_k ric_k. Degree-0 homogeneous,
/// so it never vanishes on the positive orthant and is scale invariant.
template <class T>
std::vector<T> hrf_vector_field(const FlagSpace& space, std::span<const T> x) {
    std::vector<T> field = ricci_components(space, x);
    for (int k = 0; k < space.rank(); ++k) field[k] = T(-2) * x[k] * field[k];
    return field;
}

template <class T>
std::vector<T> hrf_vector_field(const FlagSpace& space, const std::vector<T>& x) {
    return hrf_vector_field(space, std::span<const T>(x));
}

/// ric_k as Laurent polynomials (exact coefficients, exponents in {-2..1}).
inline std::vector<Polynomial> ricci_laurent(const FlagSpace& space) {
    const int r = space.rank();
    std::vector<Polynomial> out;
    out.reserve(r);
    for (int k = 1; k <= r; ++k) {
        Polynomial p(r);
        std::vector<int> e(r, 0);
        e[k - 1] = -1;
        p.add_term(Rational(1, 2), e);
        for (int i = 1; i <= r; ++i) {
            for (int j = 1; j <= r; ++j) {
                const Rational c_kij = space.constant(k, i, j);
                if (!c_kij.is_zero()) {
                    std::vector<int> ex(r, 0);
                    ex[k - 1] += 1;
                    ex[i - 1] -= 1;
                    ex[j - 1] -= 1;
                    p.add_term(c_kij / Rational(4 * space.dim(k)), ex);
                }
                const Rational c_jki = space.constant(j, k, i);
                if (!c_jki.is_zero()) {
                    std::vector<int> ex(r, 0);
                    ex[j - 1] += 1;
                    ex[k - 1] -= 1;
                    ex[i - 1] -= 1;
                    p.add_term(-(c_jki / Rational(2 * space.dim(k))), ex);
                }
            }
        }
        out.push_back(std::move(p));
    }
    return out;
}

/// -2 x_k ric_k as Laurent polynomials, homogeneous of degree 0.
inline std::vector<Polynomial> flow_laurent(const FlagSpace& space) {
    std::vector<Polynomial> rics = ricci_laurent(space);
    const int r = space.rank();
    std::vector<Polynomial> out;
    out.reserve(r);
    for (int k = 0; k < r; ++k) {
        std::vector<int> shift(r, 0);
        shift[k] = 1;
        out.push_back(rics[k].mul_monomial(Rational(-2), shift));
    }
    return out;
}

/// The cleared-denominator form RF = mu * X with mu > 0 on the positive
/// orthant; every RF_k is homogeneous of the same total degree.
struct PolynomialSystem {
    const FlagSpace* space = nullptr;
    std::vector<Polynomial> rf;
    int degree = 0;
};

namespace detail {

inline PolynomialSystem clear_denominators(const FlagSpace& space, Rational scalar,
                                           const std::vector<int>& monomial) {
    std::vector<Polynomial> flow = flow_laurent(space);
    PolynomialSystem sys;
    sys.space = &space;
    for (auto& f : flow) {
        Polynomial rf = f.mul_monomial(scalar, monomial);
        for (int v = 0; v < rf.nvars(); ++v)
            if (rf.min_exponent(v) < 0)
                throw std::logic_error("polynomialize: multiplier does not clear denominators");
        sys.rf.push_back(std::move(rf));
    }
    sys.degree = sys.rf.front().total_degree();
    for (const auto& p : sys.rf)
        if (!p.is_homogeneous_of(sys.degree))
            throw std::logic_error("polynomialize: system is not homogeneous");
    return sys;
}

} // namespace detail

inline PolynomialSystem polynomialize_generic(const FlagSpace& space);

/// Multiplies the flow by the per-rank positive factor used in the source
/// systems, reproducing them coefficient for coefficient:
///   r=2: 2(d1+4d2) x1^2            r=3: 2 d1 d2 (d1+4d2+9d3) x1^2 x2 x3
///   r=4: 60 x1^2 x2^2 x3 x4        r=5: 60 x1^2 x2^2 x3 x4 x5
///   r=6: 60 x1^2 x2^2 x3^2 x4 x5 x6
inline PolynomialSystem polynomialize(const FlagSpace& space) {
    const int r = space.rank();
    const auto& d = space.dims();
    switch (r) {
    case 2:
        return detail::clear_denominators(space, Rational(2) * Rational(d[0] + 4 * d[1]),
                                          {2, 0});
    case 3:
        return detail::clear_denominators(
            space,
            Rational(2) * Rational(d[0]) * Rational(d[1]) *
                Rational(d[0] + 4 * d[1] + 9 * d[2]),
            {2, 1, 1});
    case 4:
        return detail::clear_denominators(space, Rational(60), {2, 2, 1, 1});
    case 5:
        return detail::clear_denominators(space, Rational(60), {2, 2, 1, 1, 1});
    case 6:
        return detail::clear_denominators(space, Rational(60), {2, 2, 2, 1, 1, 1});
    default:
        return polynomialize_generic(space);
    }
}

/// Rank-independent multiplier: prod x_i^(max denominator power), scalar 1.
inline PolynomialSystem polynomialize_generic(const FlagSpace& space) {
    std::vector<Polynomial> flow = flow_laurent(space);
    const int r = space.rank();
    std::vector<int> monomial(r, 0);
    for (const auto& f : flow)
        for (int v = 0; v < r; ++v) monomial[v] = std::max(monomial[v], -f.min_exponent(v));
    return detail::clear_denominators(space, Rational(1), monomial);
}

// ------------------------------------------------------------------ ODE

struct IntegratorOptions {
    double tol = 1e-10;        // local relative error target per step
    double floor = 1e-8;       // extinction floor on min x_i
    long max_steps = 2000000;
    double initial_step = 0.0; // 0 = auto
};

enum class TerminationReason { t_end_reached, extinction, step_failure };

struct Trajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> states;
    TerminationReason terminated_by = TerminationReason::t_end_reached;
};

namespace detail {

// Dormand-Prince 5(4) coefficients.
struct Dopri5 {
    static constexpr double c[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
    static constexpr double a[7][6] = {
        {},
        {1.0 / 5},
        {3.0 / 40, 9.0 / 40},
        {44.0 / 45, -56.0 / 15, 32.0 / 9},
        {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
        {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
        {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
    static constexpr double b5[7] = {35.0 / 384,     0.0,  500.0 / 1113, 125.0 / 192,
                                     -2187.0 / 6784, 11.0 / 84, 0.0};
    static constexpr double b4[7] = {5179.0 / 57600,    0.0,           7571.0 / 16695,
                                     393.0 / 640,       -92097.0 / 339200, 187.0 / 2100,
                                     1.0 / 40};
};

} // namespace detail

/// One embedded RK 5(4) step. Returns the 5th-order solution and the
/// embedded error estimate; `f` must be defined at all stage points.
template <class F>
std::pair<std::vector<double>, double> rk45_step(const F& f, double t,
                                                 std::span<const double> x, double h) {
    using detail::Dopri5;
    const size_t n = x.size();
    std::vector<std::vector<double>> k(7);
    std::vector<double> stage(n);
    for (int s = 0; s < 7; ++s) {
        for (size_t i = 0; i < n; ++i) {
            double acc = x[i];
            for (int j = 0; j < s; ++j) acc += h * Dopri5::a[s][j] * k[j][i];
            stage[i] = acc;
        }
        k[s] = f(t + Dopri5::c[s] * h, stage);
    }
    std::vector<double> x5(n);
    double err = 0.0;
    for (size_t i = 0; i < n; ++i) {
        double acc5 = x[i], acc4 = x[i];
        for (int s = 0; s < 7; ++s) {
            acc5 += h * Dopri5::b5[s] * k[s][i];
            acc4 += h * Dopri5::b4[s] * k[s][i];
        }
        x5[i] = acc5;
        const double scale = 1.0 + std::max(std::abs(x[i]), std::abs(acc5));
        err = std::max(err, std::abs(acc5 - acc4) / scale);
    }
    return {std::move(x5), err};
}

/// Adaptive integration of xdot = -2 x . ric(x) from (0, x0) to t_end
/// (either sign). Steps that would leave the positive orthant are rejected
/// and halved; the trajectory ends early when min x_i drops below the floor.
inline Trajectory integrate_flow(const FlagSpace& space, std::span<const double> x0,
                                 double t_end, const IntegratorOptions& opts = {}) {
    check_metric(space, x0);
    if (t_end == 0.0) throw std::invalid_argument("integrate_flow: t_end must be nonzero");

    auto rhs = [&space](double, std::span<const double> x) {
        return hrf_vector_field(space, x);
    };

    Trajectory traj;
    std::vector<double> x(x0.begin(), x0.end());
    double t = 0.0;
    traj.times.push_back(t);
    traj.states.push_back(x);

    const double dir = t_end > 0 ? 1.0 : -1.0;
    double h = opts.initial_step != 0.0 ? std::abs(opts.initial_step)
                                        : std::min(1e-3, std::abs(t_end) / 16.0);
    h *= dir;

    for (long step = 0; step < opts.max_steps; ++step) {
        if (dir * (t_end - t) <= 0.0) {
            traj.terminated_by = TerminationReason::t_end_reached;
            return traj;
        }
        if (std::abs(h) > std::abs(t_end - t)) h = t_end - t;
        if (std::abs(h) < 1e-15 * std::max(1.0, std::abs(t))) {
            traj.terminated_by = TerminationReason::step_failure;
            return traj;
        }

        bool positive = true;
        auto guarded = [&](double tt, std::span<const double> xx) -> std::vector<double> {
            for (double v : xx)
                if (v <= 0.0) { positive = false; return std::vector<double>(xx.size(), 0.0); }
            return rhs(tt, xx);
        };
        auto [xn, err] = rk45_step(guarded, t, x, h);
        for (double v : xn)
            if (v <= 0.0) positive = false;

        if (!positive) {
            h *= 0.5;
            continue;
        }
        if (err > opts.tol) {
            const double shrink = std::max(0.2, 0.9 * std::pow(opts.tol / err, 0.2));
            h *= shrink;
            continue;
        }

        t += h;
        x = std::move(xn);
        traj.times.push_back(t);
        traj.states.push_back(x);

        double xmin = x[0];
        for (double v : x) xmin = std::min(xmin, v);
        if (xmin < opts.floor) {
            traj.terminated_by = TerminationReason::extinction;
            return traj;
        }

        const double grow = err > 0.0 ? std::min(5.0, 0.9 * std::pow(opts.tol / err, 0.2)) : 5.0;
        h *= std::max(1.0, grow);
    }
    traj.terminated_by = TerminationReason::step_failure;
    return traj;
}

inline Trajectory integrate_flow(const FlagSpace& space, const std::vector<double>& x0,
                                 double t_end, const IntegratorOptions& opts = {}) {
    return integrate_flow(space, std::span<const double>(x0), t_end, opts);
}

// ------------------------------------------------------- r=2 Lyapunov

/// Derivative of V = x1^2 + x2^2 along the r=2 flow:
///   dV/dt = -(2 d2 x1^2 (4 x1 + 3 x2) + d1 (2 x1^3 + x2^3)) / (2 (d1+4d2) x1^2)
/// Strictly negative on the positive orthant; homogeneous of degree 1.
template <class T>
T lyapunov_derivative_r2(const FlagSpace& space, std::span<const T> x) {
    if (space.rank() != 2)
        throw std::invalid_argument("lyapunov_derivative_r2: requires a two-summand space");
    check_metric(space, x);
    const T d1(space.dim(1)), d2(space.dim(2));
    const T x1 = x[0], x2 = x[1];
    const T num = T(2) * d2 * x1 * x1 * (T(4) * x1 + T(3) * x2) +
                  d1 * (T(2) * x1 * x1 * x1 + x2 * x2 * x2);
    return -(num / (T(2) * (d1 + T(4) * d2) * x1 * x1));
}

template <class T>
T lyapunov_derivative_r2(const FlagSpace& space, const std::vector<T>& x) {
    return lyapunov_derivative_r2(space, std::span<const T>(x));
}

} // namespace hrf
