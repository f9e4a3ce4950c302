#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "hrf/flag_space.hpp"

namespace hrf {

/// Ricci components of the diagonal metric x, from the structure constants:
///
///   ric_k = 1/(2 x_k) + 1/(4 d_k) * sum_{i,j} [k;ij] x_k/(x_i x_j)
///                     - 1/(2 d_k) * sum_{i,j} [j;ki] x_j/(x_k x_i)
///
/// Each component is a homogeneous Laurent polynomial of degree -1 in x.
/// Works over double or Rational scalars.
template <class T>
std::vector<T> ricci_components(const FlagSpace& space, std::span<const T> x) {
    check_metric(space, x);
    const int r = space.rank();
    std::vector<T> ric(r, T(0));
    for (int k = 1; k <= r; ++k) {
        T acc = T(1) / (T(2) * x[k - 1]);
        const T four_dk = T(4) * T(space.dim(k));
        const T two_dk = T(2) * T(space.dim(k));
        for (int i = 1; i <= r; ++i) {
            for (int j = 1; j <= r; ++j) {
                const Rational c_kij = space.constant(k, i, j);
                if (!c_kij.is_zero())
                    acc += T(c_kij.num()) / (T(c_kij.den()) * four_dk) * x[k - 1] /
                           (x[i - 1] * x[j - 1]);
                const Rational c_jki = space.constant(j, k, i);
                if (!c_jki.is_zero())
                    acc -= T(c_jki.num()) / (T(c_jki.den()) * two_dk) * x[j - 1] /
                           (x[k - 1] * x[i - 1]);
            }
        }
        ric[k - 1] = acc;
    }
    return ric;
}

template <class T>
std::vector<T> ricci_components(const FlagSpace& space, const std::vector<T>& x) {
    return ricci_components(space, std::span<const T>(x));
}

/// Scal = sum_i d_i ric_i; evaluated directly from the closed form
///   Scal = 1/2 sum_i d_i/x_i - 1/4 sum_{i,j,m} [m;ij] x_m/(x_i x_j).
template <class T>
T scalar_curvature(const FlagSpace& space, std::span<const T> x) {
    check_metric(space, x);
    const int r = space.rank();
    T acc(0);
    for (int i = 1; i <= r; ++i) acc += T(space.dim(i)) / (T(2) * x[i - 1]);
    for (int m = 1; m <= r; ++m)
        for (int i = 1; i <= r; ++i)
            for (int j = 1; j <= r; ++j) {
                const Rational c = space.constant(m, i, j);
                if (!c.is_zero())
                    acc -= T(c.num()) / (T(c.den()) * T(4)) * x[m - 1] / (x[i - 1] * x[j - 1]);
            }
    return acc;
}

template <class T>
T scalar_curvature(const FlagSpace& space, const std::vector<T>& x) {
    return scalar_curvature(space, std::span<const T>(x));
}

struct RicciVector {
    std::vector<double> ric;
    double scal = 0.0;
};

inline RicciVector ricci(const FlagSpace& space, std::span<const double> x) {
    RicciVector out;
    out.ric = ricci_components(space, x);
    out.scal = 0.0;
    for (int i = 0; i < space.rank(); ++i) out.scal += space.dims()[i] * out.ric[i];
    return out;
}

/// Deviation of each ric_i from their mean; the zero vector exactly at
/// Einstein metrics.
template <class T>
std::vector<T> einstein_residual(const FlagSpace& space, std::span<const T> x) {
    std::vector<T> res = ricci_components(space, x);
    T mean(0);
    for (const T& v : res) mean += v;
    mean = mean / T(space.rank());
    for (T& v : res) v -= mean;
    return res;
}

template <class T>
std::vector<T> einstein_residual(const FlagSpace& space, const std::vector<T>& x) {
    return einstein_residual(space, std::span<const T>(x));
}

inline double einstein_residual_norm(const FlagSpace& space, std::span<const double> x) {
    double worst = 0.0;
    for (double v : einstein_residual(space, x)) worst = std::max(worst, std::abs(v));
    return worst;
}

} // namespace hrf
