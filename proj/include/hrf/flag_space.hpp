#pragma once

#include <algorithm>
#include <array>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hrf/rational.hpp"

namespace hrf {

/// One structure constant c_ij^k, stored with canonically sorted indices
/// (1-based, i <= j <= k). The value is totally symmetric in the three slots.
struct StructureConstant {
    int i = 0, j = 0, k = 0;
    Rational value;
};

/// A flag space reduced to the data the flow needs: the number of isotropy
/// summands r, their real dimensions d_i, and the non-zero structure
/// constants. Immutable after construction.
class FlagSpace {
public:
    FlagSpace(std::string name, std::vector<int> dims,
              std::vector<StructureConstant> constants)
        : name_(std::move(name)), dims_(std::move(dims)), constants_(std::move(constants)) {
        if (dims_.empty()) throw std::invalid_argument("FlagSpace: empty dimension list");
        for (int d : dims_)
            if (d < 1) throw std::invalid_argument("FlagSpace: dimensions must be >= 1");
        const int r = rank();
        for (auto& c : constants_) {
            std::array<int, 3> idx{c.i, c.j, c.k};
            std::sort(idx.begin(), idx.end());
            c.i = idx[0]; c.j = idx[1]; c.k = idx[2];
            if (c.i < 1 || c.k > r)
                throw std::invalid_argument("FlagSpace: structure constant index out of range");
            if (c.value < Rational(0))
                throw std::invalid_argument("FlagSpace: negative structure constant");
        }
        std::sort(constants_.begin(), constants_.end(), [](const auto& a, const auto& b) {
            return std::tie(a.i, a.j, a.k) < std::tie(b.i, b.j, b.k);
        });
    }

    const std::string& name() const { return name_; }
    int rank() const { return static_cast<int>(dims_.size()); }
    const std::vector<int>& dims() const { return dims_; }
    int dim(int i) const { return dims_.at(i - 1); }           // 1-based
    int dim_total() const {
        int n = 0;
        for (int d : dims_) n += d;
        return n;
    }
    const std::vector<StructureConstant>& constants() const { return constants_; }

    /// Lookup of [k; i j] in any index order; unlisted triples are zero.
    Rational constant(int a, int b, int c) const {
        std::array<int, 3> idx{a, b, c};
        std::sort(idx.begin(), idx.end());
        for (const auto& sc : constants_)
            if (sc.i == idx[0] && sc.j == idx[1] && sc.k == idx[2]) return sc.value;
        return Rational(0);
    }

private:
    std::string name_;
    std::vector<int> dims_;
    std::vector<StructureConstant> constants_;
};

/// Two-summand space: c_11^2 = d1*d2 / (d1 + 4*d2).
inline FlagSpace make_r2_space(int d1, int d2) {
    if (d1 < 1 || d2 < 1) throw std::invalid_argument("make_r2_space: dimensions must be positive");
    Rational c112(static_cast<std::int64_t>(d1) * d2, static_cast<std::int64_t>(d1) + 4 * d2);
    return FlagSpace("r2(" + std::to_string(d1) + "," + std::to_string(d2) + ")",
                     {d1, d2}, {{1, 1, 2, c112}});
}

/// Three-summand space:
///   c_11^2 = (d1*d2 + 2*d1*d3 - d2*d3) / (d1 + 4*d2 + 9*d3)
///   c_12^3 = d3*(d1 + d2) / (d1 + 4*d2 + 9*d3)
inline FlagSpace make_r3_space(int d1, int d2, int d3) {
    if (d1 < 1 || d2 < 1 || d3 < 1)
        throw std::invalid_argument("make_r3_space: dimensions must be positive");
    const std::int64_t den = static_cast<std::int64_t>(d1) + 4 * d2 + 9 * d3;
    const std::int64_t num112 = static_cast<std::int64_t>(d1) * d2 +
                                2 * static_cast<std::int64_t>(d1) * d3 -
                                static_cast<std::int64_t>(d2) * d3;
    if (num112 < 0)
        throw std::invalid_argument("make_r3_space: d1*d2 + 2*d1*d3 - d2*d3 must be non-negative");
    return FlagSpace("r3(" + std::to_string(d1) + "," + std::to_string(d2) + "," +
                         std::to_string(d3) + ")",
                     {d1, d2, d3},
                     {{1, 1, 2, Rational(num112, den)},
                      {1, 2, 3, Rational(static_cast<std::int64_t>(d3) * (d1 + d2), den)}});
}

template <class T>
void check_metric(const FlagSpace& space, std::span<const T> x) {
    if (static_cast<int>(x.size()) != space.rank())
        throw std::invalid_argument("metric dimension " + std::to_string(x.size()) +
                                    " does not match r=" + std::to_string(space.rank()) +
                                    " of " + space.name());
    for (const T& xi : x)
        if (!(xi > T(0)))
            throw std::invalid_argument("metric coordinates must be strictly positive");
}

} // namespace hrf
