#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "hrf/flag_space.hpp"
#include "hrf/poincare.hpp"
#include "hrf/ricci.hpp"

namespace hrf {

/// The straight-line solution g(t) = (1 - 2 lambda t) * direction through an
/// Einstein direction, defined on (-inf, T) with T = 1/(2 lambda).
struct AncientSolution {
    const FlagSpace* space = nullptr;
    std::vector<double> direction;  // x_1 = 1 normalization
    double lambda = 0.0;
    double extinction_time = 0.0;   // T = 1 / (2 lambda)
    double scal_at_zero = 0.0;
};

inline AncientSolution ancient_solution(const FlagSpace& space, const FixedPointAtInfinity& fp,
                                        double residual_tol = 1e-10) {
    if (static_cast<int>(fp.representative.size()) != space.rank())
        throw std::invalid_argument("ancient_solution: fixed point rank mismatch");
    const double resid =
        einstein_residual_norm(space, std::span<const double>(fp.representative));
    if (resid > residual_tol)
        throw std::invalid_argument("ancient_solution: representative is not Einstein (residual " +
                                    std::to_string(resid) + ")");
    AncientSolution sol;
    sol.space = &space;
    sol.direction = fp.representative;
    sol.lambda = fp.lambda;
    sol.extinction_time = 1.0 / (2.0 * fp.lambda);
    sol.scal_at_zero = scalar_curvature<double>(space, std::span<const double>(sol.direction));
    return sol;
}

inline void check_time(const AncientSolution& sol, double t) {
    if (!(t < sol.extinction_time))
        throw std::domain_error("ancient solution is only defined for t < " +
                                std::to_string(sol.extinction_time));
}

inline std::vector<double> evaluate(const AncientSolution& sol, double t) {
    check_time(sol, t);
    const double c = 1.0 - 2.0 * sol.lambda * t;
    std::vector<double> x = sol.direction;
    for (double& v : x) v *= c;
    return x;
}

/// Scal(g(t)) = Scal(g(0)) / (1 - 2 lambda t): a positive hyperbola rising
/// from 0 at t -> -inf to +inf at the extinction time.
inline double scal_along(const AncientSolution& sol, double t) {
    check_time(sol, t);
    return sol.scal_at_zero / (1.0 - 2.0 * sol.lambda * t);
}

/// All Ricci components along the solution equal lambda / (1 - 2 lambda t).
inline std::vector<double> ricci_along(const AncientSolution& sol, double t) {
    check_time(sol, t);
    const double value = sol.lambda / (1.0 - 2.0 * sol.lambda * t);
    return std::vector<double>(sol.direction.size(), value);
}

/// Metric-determinant volume factor prod x_i^(d_i / 2) relative to the
/// Killing metric; decays like (1 - 2 lambda t)^(n/2) along an ancient
/// solution, so the space shrinks to a point at the extinction time.
inline double volume_proxy(const FlagSpace& space, std::span<const double> x) {
    check_metric(space, x);
    double v = 1.0;
    for (int i = 0; i < space.rank(); ++i) v *= std::pow(x[i], 0.5 * space.dims()[i]);
    return v;
}

inline double volume_proxy(const FlagSpace& space, const std::vector<double>& x) {
    return volume_proxy(space, std::span<const double>(x));
}

} // namespace hrf
