#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hrf/rational.hpp"

namespace hrf {

/// Sparse multivariate polynomial with exact rational coefficients.
/// Exponents may be negative (Laurent terms); the clearing step of the flow
/// pipeline produces true polynomials from them. Terms are kept sorted by
/// exponent vector and merged, so equal polynomials compare equal.
class Polynomial {
public:
    struct Term {
        Rational coeff;
        std::vector<int> exps;
    };

    explicit Polynomial(int nvars) : nvars_(nvars) {
        if (nvars < 1) throw std::invalid_argument("Polynomial: nvars must be >= 1");
    }

    static Polynomial monomial(int nvars, Rational coeff, std::vector<int> exps) {
        if (static_cast<int>(exps.size()) != nvars)
            throw std::invalid_argument("Polynomial::monomial: exponent size mismatch");
        Polynomial p(nvars);
        if (!coeff.is_zero()) p.terms_.push_back({std::move(coeff), std::move(exps)});
        return p;
    }

    int nvars() const { return nvars_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Polynomial& operator+=(const Polynomial& o) {
        require_same_vars(o);
        terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
        normalize();
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) {
        Polynomial nb = b;
        for (auto& t : nb.terms_) t.coeff = -t.coeff;
        return a += nb;
    }

    Polynomial& add_term(Rational coeff, std::vector<int> exps) {
        if (static_cast<int>(exps.size()) != nvars_)
            throw std::invalid_argument("Polynomial::add_term: exponent size mismatch");
        if (!coeff.is_zero()) {
            terms_.push_back({std::move(coeff), std::move(exps)});
            normalize();
        }
        return *this;
    }

    Polynomial scaled(const Rational& c) const {
        Polynomial p(*this);
        if (c.is_zero()) { p.terms_.clear(); return p; }
        for (auto& t : p.terms_) t.coeff *= c;
        return p;
    }

    /// Multiply by c * prod x_i^shift[i].
    Polynomial mul_monomial(const Rational& c, std::span<const int> shift) const {
        if (static_cast<int>(shift.size()) != nvars_)
            throw std::invalid_argument("Polynomial::mul_monomial: exponent size mismatch");
        Polynomial p(nvars_);
        if (c.is_zero()) return p;
        p.terms_.reserve(terms_.size());
        for (const auto& t : terms_) {
            Term nt{t.coeff * c, t.exps};
            for (int v = 0; v < nvars_; ++v) nt.exps[v] += shift[v];
            p.terms_.push_back(std::move(nt));
        }
        return p;  // exponent shift keeps terms distinct and ordered
    }

    Polynomial derivative(int var) const {
        check_var(var);
        Polynomial p(nvars_);
        for (const auto& t : terms_) {
            if (t.exps[var] == 0) continue;
            Term nt{t.coeff * Rational(t.exps[var]), t.exps};
            nt.exps[var] -= 1;
            p.terms_.push_back(std::move(nt));
        }
        p.normalize();
        return p;
    }

    template <class T>
    T eval(std::span<const T> x) const {
        if (static_cast<int>(x.size()) != nvars_)
            throw std::invalid_argument("Polynomial::eval: point size mismatch");
        T acc(0);
        for (const auto& t : terms_) acc += eval_term<T>(t, x);
        return acc;
    }

    /// Sum of absolute term values: the natural conditioning scale for a
    /// residual at x.
    double eval_abs(std::span<const double> x) const {
        double acc = 0.0;
        for (const auto& t : terms_) acc += std::abs(eval_term<double>(t, x));
        return acc;
    }

    /// Substitute x_var = 1 and remove the variable.
    Polynomial substitute_one(int var) const {
        check_var(var);
        Polynomial p(nvars_ - 1);
        for (const auto& t : terms_) {
            Term nt{t.coeff, {}};
            nt.exps.reserve(nvars_ - 1);
            for (int v = 0; v < nvars_; ++v)
                if (v != var) nt.exps.push_back(t.exps[v]);
            p.terms_.push_back(std::move(nt));
        }
        p.normalize();
        return p;
    }

    /// Substitute x_var = 0 (every exponent of var must be >= 0), keeping
    /// the variable count.
    Polynomial restrict_zero(int var) const {
        check_var(var);
        Polynomial p(nvars_);
        for (const auto& t : terms_) {
            if (t.exps[var] < 0)
                throw std::domain_error("Polynomial::restrict_zero: negative exponent");
            if (t.exps[var] == 0) p.terms_.push_back(t);
        }
        return p;
    }

    /// Remove a variable no term uses.
    Polynomial drop_variable(int var) const {
        check_var(var);
        for (const auto& t : terms_)
            if (t.exps[var] != 0)
                throw std::domain_error("Polynomial::drop_variable: variable occurs");
        return substitute_one(var);
    }

    /// Append a fresh variable (exponent 0 everywhere).
    Polynomial with_appended_variable() const {
        Polynomial p(nvars_ + 1);
        p.terms_ = terms_;
        for (auto& t : p.terms_) t.exps.push_back(0);
        return p;
    }

    int total_degree() const {
        int deg = 0;
        for (const auto& t : terms_)
            deg = std::max(deg, std::accumulate(t.exps.begin(), t.exps.end(), 0));
        return deg;
    }

    bool is_homogeneous_of(int degree) const {
        for (const auto& t : terms_)
            if (std::accumulate(t.exps.begin(), t.exps.end(), 0) != degree) return false;
        return true;
    }

    int min_exponent(int var) const {
        check_var(var);
        int m = 0;
        for (const auto& t : terms_) m = std::min(m, t.exps[var]);
        return m;
    }

    double max_abs_coeff() const {
        double m = 0.0;
        for (const auto& t : terms_) m = std::max(m, std::abs(t.coeff.to_double()));
        return m;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        if (a.nvars_ != b.nvars_ || a.terms_.size() != b.terms_.size()) return false;
        for (size_t i = 0; i < a.terms_.size(); ++i)
            if (a.terms_[i].exps != b.terms_[i].exps || !(a.terms_[i].coeff == b.terms_[i].coeff))
                return false;
        return true;
    }

private:
    template <class T>
    static T eval_term(const Term& t, std::span<const T> x) {
        T v(t.coeff.num());
        v = v / T(t.coeff.den());
        for (size_t i = 0; i < x.size(); ++i) {
            int e = t.exps[i];
            if (e == 0) continue;
            v *= pow_int(x[i], e);
        }
        return v;
    }

    static double pow_int(double base, int e) {
        if (e < 0) return 1.0 / pow_int(base, -e);
        double result = 1.0, b = base;
        while (e > 0) {
            if (e & 1) result *= b;
            b *= b;
            e >>= 1;
        }
        return result;
    }
    static Rational pow_int(const Rational& base, int e) { return base.pow(e); }

    void require_same_vars(const Polynomial& o) const {
        if (o.nvars_ != nvars_)
            throw std::invalid_argument("Polynomial: variable count mismatch");
    }
    void check_var(int var) const {
        if (var < 0 || var >= nvars_) throw std::invalid_argument("Polynomial: bad variable index");
    }

    void normalize() {
        std::sort(terms_.begin(), terms_.end(),
                  [](const Term& a, const Term& b) { return a.exps < b.exps; });
        std::vector<Term> merged;
        merged.reserve(terms_.size());
        for (auto& t : terms_) {
            if (!merged.empty() && merged.back().exps == t.exps)
                merged.back().coeff += t.coeff;
            else
                merged.push_back(std::move(t));
        }
        std::erase_if(merged, [](const Term& t) { return t.coeff.is_zero(); });
        terms_ = std::move(merged);
    }

    int nvars_;
    std::vector<Term> terms_;
};

/// A square system of polynomial equations in `nvars` unknowns.
struct PolySystem {
    int nvars = 0;
    std::vector<Polynomial> rhs;
};

template <class T>
std::vector<T> eval_system(const PolySystem& sys, std::span<const T> x) {
    std::vector<T> out;
    out.reserve(sys.rhs.size());
    for (const auto& p : sys.rhs) out.push_back(p.eval(x));
    return out;
}

/// Exact Jacobian of a polynomial system: symbolic term-by-term derivative,
/// then evaluation. Row i, column j is d rhs_i / d x_j.
template <class T>
std::vector<std::vector<T>> jacobian_at(const PolySystem& sys, std::span<const T> x) {
    const int n = sys.nvars;
    if (static_cast<int>(x.size()) != n)
        throw std::invalid_argument("jacobian_at: point size mismatch");
    std::vector<std::vector<T>> jac(sys.rhs.size(), std::vector<T>(n, T(0)));
    for (size_t i = 0; i < sys.rhs.size(); ++i)
        for (int j = 0; j < n; ++j) jac[i][j] = sys.rhs[i].derivative(j).template eval<T>(x);
    return jac;
}

template <class T>
std::vector<std::vector<T>> jacobian_at(const PolySystem& sys, const std::vector<T>& x) {
    return jacobian_at(sys, std::span<const T>(x));
}

} // namespace hrf
