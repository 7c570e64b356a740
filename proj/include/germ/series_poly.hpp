#ifndef GERM_SERIES_POLY_HPP
#define GERM_SERIES_POLY_HPP

#include <algorithm>
#include <cstddef>
#include <vector>

#include "errors.hpp"
#include "series.hpp"

namespace germ {

// Monic z^d + a_{d-1} z^{d-1} + ... + a_0 with series coefficients.
template <class F>
class SeriesPoly {
  public:
    explicit SeriesPoly(std::vector<Series<F>> lower) : a_(std::move(lower))
    {
        if (a_.empty())
            throw precondition_error("monic polynomial must have degree >= 1");
        for (const auto &s : a_) {
            if (s.var() != a_.front().var())
                throw variable_mismatch();
            if (s.order() != a_.front().order())
                throw precondition_error("polynomial coefficients must share truncation order");
        }
    }

    int degree() const { return static_cast<int>(a_.size()); }
    int order() const { return a_.front().order(); }
    Var var() const { return a_.front().var(); }
    double eps() const { return a_.front().eps(); }

    // a_j for j < d; the implicit leading 1 for j = d.
    Series<F> coeff(int j) const
    {
        if (j == degree())
            return Series<F>::constant(from_int<F>(1), order(), var(), eps());
        return a_[static_cast<std::size_t>(j)];
    }

    const std::vector<Series<F>> &lower_coefficients() const { return a_; }

    // All d+1 coefficients.
    std::vector<Series<F>> full() const
    {
        auto c = a_;
        c.push_back(coeff(degree()));
        return c;
    }

    SeriesPoly resized(int new_order) const
    {
        std::vector<Series<F>> c;
        for (const auto &s : a_)
            c.push_back(s.resized(new_order));
        return SeriesPoly(std::move(c));
    }

    friend bool operator==(const SeriesPoly &, const SeriesPoly &) = default;

  private:
    std::vector<Series<F>> a_;
};

namespace detail {

// Product of two polynomials given by full coefficient lists (index = power of z).
template <class F>
std::vector<Series<F>> poly_mul(const std::vector<Series<F>> &a, const std::vector<Series<F>> &b)
{
    const int order = std::min(a.front().order(), b.front().order());
    std::vector<Series<F>> r(a.size() + b.size() - 1, Series<F>(order, a.front().var(), a.front().eps()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = r[i + j] + a[i] * b[j];
    return r;
}

// Remainder of a by the monic b (full coefficient lists).
template <class F>
std::vector<Series<F>> poly_rem(std::vector<Series<F>> a, const std::vector<Series<F>> &b)
{
    const std::size_t db = b.size() - 1;
    for (std::size_t k = a.size(); k-- > db;) {
        auto lead = a[k];
        for (std::size_t j = 0; j <= db; ++j)
            a[k - db + j] = a[k - db + j] - lead * b[j];
    }
    a.resize(std::max<std::size_t>(db, 1));
    return a;
}

} // namespace detail

template <class F>
SeriesPoly<Complex> to_float(const SeriesPoly<F> &p, double eps)
{
    std::vector<Series<Complex>> c;
    for (const auto &s : p.lower_coefficients())
        c.push_back(to_float(s, eps));
    return SeriesPoly<Complex>(std::move(c));
}

// prod (z - r_i) for series roots r_i in the same variable.
template <class F>
SeriesPoly<F> poly_from_roots(const std::vector<Series<F>> &roots)
{
    if (roots.empty())
        throw precondition_error("poly_from_roots: need at least one root");
    const auto &r0 = roots.front();
    std::vector<Series<F>> acc{Series<F>::constant(from_int<F>(1), r0.order(), r0.var(), r0.eps())};
    for (const auto &r : roots) {
        std::vector<Series<F>> lin{neg(r), Series<F>::constant(from_int<F>(1), r.order(), r.var(), r.eps())};
        acc = detail::poly_mul(acc, lin);
    }
    acc.pop_back();
    return SeriesPoly<F>(std::move(acc));
}

} // namespace germ

#endif
