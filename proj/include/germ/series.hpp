#ifndef GERM_SERIES_HPP
#define GERM_SERIES_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coefficient.hpp"
#include "errors.hpp"

namespace germ {

enum class Var { t, w };

inline const char *var_name(Var v) { return v == Var::t ? "t" : "w"; }

inline constexpr int default_order = 16;

namespace detail {

inline bool exact_zero(const GaussianRational &x) { return x.is_zero(); }
inline bool exact_zero(const Cyclotomic &x) { return x.is_zero(); }
inline bool exact_zero(const Complex &x) { return x == Complex(0.0); }

} // namespace detail

// Power series c_0 + c_1 v + ... + c_N v^N, of which c_0..c_known are
// guaranteed. Coefficients past known_order are stored as zero and never read.
//
// Precision ledger (known_order of results):
//   add, sub, mul                 min of the operands
//   compose(f, g), val(g) >= 1    min(known(f) * val(g), known(g))
//   revert(f)                     known(f)
//   scale_substitute, re_im_split unchanged
//   ramify(f, q)                  q * (known(f) + 1) - 1
//   shift(f, k) / unshift(f, k)   known(f) + k / known(f) - k
// known_order may be -1, meaning no coefficient is known.
template <class F>
class Series {
  public:
    using coefficient_type = F;

    explicit Series(int order = default_order, Var var = Var::t, double eps = default_eps)
        : c_(static_cast<std::size_t>(std::max(order, 0)) + 1), known_(std::max(order, 0)), var_(var),
          eps_(eps)
    {
    }

    Series(std::vector<F> coeffs, int known, Var var = Var::t, double eps = default_eps)
        : c_(std::move(coeffs)), var_(var), eps_(eps)
    {
        if (c_.empty())
            c_.resize(1);
        known_ = std::clamp(known, -1, order());
        for (std::size_t n = static_cast<std::size_t>(known_ + 1); n < c_.size(); ++n)
            c_[n] = F{};
    }

    // All coefficients known.
    explicit Series(std::vector<F> coeffs, Var var = Var::t, double eps = default_eps)
        : Series(coeffs, static_cast<int>(coeffs.size()) - 1, var, eps)
    {
    }

    static Series monomial(const F &c, int k, int order, Var var = Var::t, double eps = default_eps)
    {
        Series s(order, var, eps);
        if (k <= order)
            s.c_[static_cast<std::size_t>(k)] = c;
        return s;
    }

    static Series constant(const F &c, int order, Var var = Var::t, double eps = default_eps)
    {
        return monomial(c, 0, order, var, eps);
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    int known_order() const { return known_; }
    Var var() const { return var_; }
    double eps() const { return eps_; }

    const F &operator[](int n) const { return c_[static_cast<std::size_t>(n)]; }
    const std::vector<F> &coefficients() const { return c_; }

    // Same series with known_order lowered to k (never raised).
    Series truncated(int k) const { return Series(c_, std::min(k, known_), var_, eps_); }

    // Same series stored to a different order N.
    Series resized(int new_order) const
    {
        std::vector<F> c = c_;
        c.resize(static_cast<std::size_t>(std::max(new_order, 0)) + 1);
        return Series(std::move(c), std::min(known_, new_order), var_, eps_);
    }

    Series retagged(Var v) const
    {
        Series s = *this;
        s.var_ = v;
        return s;
    }

    Series with_eps(double eps) const
    {
        Series s = *this;
        s.eps_ = eps;
        return s;
    }

    friend bool operator==(const Series &a, const Series &b)
    {
        return a.var_ == b.var_ && a.known_ == b.known_ && a.c_ == b.c_;
    }

  private:
    std::vector<F> c_;
    int known_ = 0;
    Var var_ = Var::t;
    double eps_ = default_eps;
};

namespace detail {

template <class F>
void require_same_var(const Series<F> &a, const Series<F> &b)
{
    if (a.var() != b.var())
        throw variable_mismatch();
}

template <class F>
std::vector<F> zeros(int order)
{
    return std::vector<F>(static_cast<std::size_t>(std::max(order, 0)) + 1);
}

// a * b truncated to degree `upto`.
template <class F>
void convolve_into(std::vector<F> &out, const std::vector<F> &a, const std::vector<F> &b, int upto)
{
    const int na = std::min<int>(upto, static_cast<int>(a.size()) - 1);
    for (int i = 0; i <= na; ++i) {
        if (exact_zero(a[static_cast<std::size_t>(i)]))
            continue;
        const int nb = std::min<int>(upto - i, static_cast<int>(b.size()) - 1);
        for (int j = 0; j <= nb; ++j)
            if (!exact_zero(b[static_cast<std::size_t>(j)]))
                out[static_cast<std::size_t>(i + j)] += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
    }
}

} // namespace detail

template <class F>
Series<F> add(const Series<F> &a, const Series<F> &b)
{
    detail::require_same_var(a, b);
    const int order = std::min(a.order(), b.order());
    const int known = std::min(a.known_order(), b.known_order());
    auto c = detail::zeros<F>(order);
    for (int n = 0; n <= known; ++n)
        c[static_cast<std::size_t>(n)] = a[n] + b[n];
    return Series<F>(std::move(c), known, a.var(), std::max(a.eps(), b.eps()));
}

template <class F>
Series<F> neg(const Series<F> &a)
{
    auto c = a.coefficients();
    for (auto &x : c)
        x = -x;
    return Series<F>(std::move(c), a.known_order(), a.var(), a.eps());
}

template <class F>
Series<F> sub(const Series<F> &a, const Series<F> &b)
{
    detail::require_same_var(a, b);
    const int order = std::min(a.order(), b.order());
    const int known = std::min(a.known_order(), b.known_order());
    auto c = detail::zeros<F>(order);
    for (int n = 0; n <= known; ++n)
        c[static_cast<std::size_t>(n)] = a[n] - b[n];
    return Series<F>(std::move(c), known, a.var(), std::max(a.eps(), b.eps()));
}

// Cauchy product truncated at min order.
template <class F>
Series<F> mul(const Series<F> &a, const Series<F> &b)
{
    detail::require_same_var(a, b);
    const int order = std::min(a.order(), b.order());
    const int known = std::min(a.known_order(), b.known_order());
    auto c = detail::zeros<F>(order);
    if (known >= 0)
        detail::convolve_into(c, a.coefficients(), b.coefficients(), known);
    return Series<F>(std::move(c), known, a.var(), std::max(a.eps(), b.eps()));
}

template <class F>
Series<F> scale(const Series<F> &a, const F &s)
{
    auto c = a.coefficients();
    for (int n = 0; n <= a.known_order(); ++n)
        c[static_cast<std::size_t>(n)] *= s;
    return Series<F>(std::move(c), a.known_order(), a.var(), a.eps());
}

template <class F>
Series<F> operator+(const Series<F> &a, const Series<F> &b)
{
    return add(a, b);
}
template <class F>
Series<F> operator-(const Series<F> &a, const Series<F> &b)
{
    return sub(a, b);
}
template <class F>
Series<F> operator-(const Series<F> &a)
{
    return neg(a);
}
template <class F>
Series<F> operator*(const Series<F> &a, const Series<F> &b)
{
    return mul(a, b);
}
template <class F>
Series<F> operator*(const Series<F> &a, const F &s)
{
    return scale(a, s);
}

// Smallest n <= known_order with c_n != 0; nullopt means INDETERMINATE
// (zero to the known order, which truncation cannot tell apart from the zero germ).
template <class F>
std::optional<int> valuation(const Series<F> &f)
{
    for (int n = 0; n <= f.known_order(); ++n)
        if (!is_zero(f[n], f.eps()))
            return n;
    return std::nullopt;
}

// f(g(v)). Requires g(0) = 0.
template <class F>
Series<F> compose(const Series<F> &f, const Series<F> &g)
{
    if (!is_zero(g[0], g.eps()) || g.known_order() < 0)
        throw precondition_error("compose: inner series must vanish at 0");
    const auto vg = valuation(g);
    const int v = vg ? *vg : g.known_order() + 1;
    const int known = std::min(f.known_order() * v, g.known_order());
    const int order = g.order();
    auto acc = detail::zeros<F>(order);
    if (known < 0)
        return Series<F>(std::move(acc), -1, g.var(), std::max(f.eps(), g.eps()));
    // Horner: acc = f_k + g * acc for k descending.
    const int top = std::min(f.known_order(), known);
    std::vector<F> gc = g.coefficients();
    gc[0] = F{};
    for (int k = top; k >= 0; --k) {
        auto next = detail::zeros<F>(order);
        detail::convolve_into(next, acc, gc, known);
        next[0] += f[k];
        acc = std::move(next);
    }
    return Series<F>(std::move(acc), known, g.var(), std::max(f.eps(), g.eps()));
}

// Compositional inverse: phi with f(phi(v)) = v. Requires f_0 = 0, f_1 != 0.
template <class F>
Series<F> revert(const Series<F> &f)
{
    if (!is_zero(f[0], f.eps()))
        throw precondition_error("revert: series must vanish at 0");
    if (f.known_order() < 1 || is_zero(f[1], f.eps()))
        throw precondition_error("revert: not a local diffeomorphism at 0 (f'(0) = 0)");
    const int n_max = f.known_order();
    const auto un = static_cast<std::size_t>(n_max) + 1;
    // pw[k][n] = [v^n] phi^k
    std::vector<std::vector<F>> pw(un + 1, std::vector<F>(un));
    std::vector<F> phi(static_cast<std::size_t>(f.order()) + 1);
    const F inv1 = inverse(f[1]);
    phi[1] = inv1;
    pw[1][1] = inv1;
    for (std::size_t n = 2; n < un; ++n) {
        for (std::size_t k = 2; k <= n; ++k) {
            F acc{};
            for (std::size_t j = 1; j + (k - 1) <= n; ++j)
                if (!detail::exact_zero(phi[j]) && !detail::exact_zero(pw[k - 1][n - j]))
                    acc += phi[j] * pw[k - 1][n - j];
            pw[k][n] = acc;
        }
        F rhs{};
        for (std::size_t k = 2; k <= n; ++k)
            if (!detail::exact_zero(f[static_cast<int>(k)]) && !detail::exact_zero(pw[k][n]))
                rhs += f[static_cast<int>(k)] * pw[k][n];
        phi[n] = -(rhs * inv1);
        pw[1][n] = phi[n];
    }
    return Series<F>(std::move(phi), n_max, f.var(), f.eps());
}

// Coefficientwise real and imaginary parts (valid on real values of the variable).
template <class F>
std::pair<Series<F>, Series<F>> re_im_split(const Series<F> &f)
{
    auto re = f.coefficients();
    auto im = f.coefficients();
    for (std::size_t n = 0; n < re.size(); ++n) {
        re[n] = real_part(f.coefficients()[n]);
        im[n] = imag_part(f.coefficients()[n]);
    }
    return {Series<F>(std::move(re), f.known_order(), f.var(), f.eps()),
            Series<F>(std::move(im), f.known_order(), f.var(), f.eps())};
}

// Coefficientwise complex conjugate.
template <class F>
Series<F> conj_series(const Series<F> &f)
{
    auto c = f.coefficients();
    for (auto &x : c)
        x = conjugate(x);
    return Series<F>(std::move(c), f.known_order(), f.var(), f.eps());
}

// Horner evaluation of the known polynomial part at t0.
template <class F>
F evaluate(const Series<F> &f, const F &t0)
{
    F acc{};
    for (int n = f.known_order(); n >= 0; --n)
        acc = acc * t0 + f[n];
    return acc;
}

// v -> omega v.
template <class F>
Series<F> scale_substitute(const Series<F> &f, const F &omega)
{
    auto c = f.coefficients();
    F p = from_int<F>(1);
    for (int n = 0; n <= f.known_order(); ++n) {
        c[static_cast<std::size_t>(n)] = c[static_cast<std::size_t>(n)] * p;
        p = p * omega;
    }
    return Series<F>(std::move(c), f.known_order(), f.var(), f.eps());
}

// f(s^q) as a series in s (tagged `var`).
template <class F>
Series<F> ramify(const Series<F> &f, int q, Var var)
{
    if (q < 1)
        throw precondition_error("ramify: index must be >= 1");
    const int order = q * (f.order() + 1) - 1;
    auto c = detail::zeros<F>(order);
    for (int n = 0; n <= f.known_order(); ++n)
        c[static_cast<std::size_t>(n * q)] = f[n];
    return Series<F>(std::move(c), q * (f.known_order() + 1) - 1, var, f.eps());
}

// v^k f, same stored order.
template <class F>
Series<F> shift(const Series<F> &f, int k)
{
    if (k == 0)
        return f;
    auto c = detail::zeros<F>(f.order());
    for (int n = 0; n <= f.known_order() && n + k <= f.order(); ++n)
        c[static_cast<std::size_t>(n + k)] = f[n];
    return Series<F>(std::move(c), std::min(f.known_order() + k, f.order()), f.var(), f.eps());
}

// f / v^k. Coefficients below k must vanish; exact fields check this, the
// float field drops them.
template <class F>
Series<F> unshift(const Series<F> &f, int k)
{
    if (k == 0)
        return f;
    if constexpr (is_exact_v<F>) {
        for (int n = 0; n < k && n <= f.known_order(); ++n)
            if (!detail::exact_zero(f[n]))
                throw precondition_error("unshift: series not divisible by the requested power");
    }
    auto c = detail::zeros<F>(f.order());
    for (int n = k; n <= f.known_order(); ++n)
        c[static_cast<std::size_t>(n - k)] = f[n];
    return Series<F>(std::move(c), f.known_order() - k, f.var(), f.eps());
}

// 1/f for a unit f.
template <class F>
Series<F> reciprocal(const Series<F> &f)
{
    if (f.known_order() < 0 || is_zero(f[0], f.eps()))
        throw precondition_error("reciprocal: denominator is not a unit");
    const int known = f.known_order();
    auto r = detail::zeros<F>(f.order());
    const F inv0 = inverse(f[0]);
    r[0] = inv0;
    for (int n = 1; n <= known; ++n) {
        F acc{};
        for (int k = 1; k <= n; ++k)
            if (!detail::exact_zero(f[k]))
                acc += f[k] * r[static_cast<std::size_t>(n - k)];
        r[static_cast<std::size_t>(n)] = -(acc * inv0);
    }
    return Series<F>(std::move(r), known, f.var(), f.eps());
}

template <class F>
Series<F> divide(const Series<F> &a, const Series<F> &b)
{
    return mul(a, reciprocal(b));
}

// exp(g) for g(0) = 0, from E' = g' E.
template <class F>
Series<F> exp_series(const Series<F> &g)
{
    if (!is_zero(g[0], g.eps()))
        throw precondition_error("exp_series: argument must vanish at 0");
    const int known = g.known_order();
    auto e = detail::zeros<F>(g.order());
    e[0] = from_int<F>(1);
    for (int n = 1; n <= known; ++n) {
        F acc{};
        for (int k = 1; k <= n; ++k)
            if (!detail::exact_zero(g[k]))
                acc += from_int<F>(k) * g[k] * e[static_cast<std::size_t>(n - k)];
        e[static_cast<std::size_t>(n)] = acc * from_rational<F>(mpq_class(1, n));
    }
    return Series<F>(std::move(e), known, g.var(), g.eps());
}

// Changes the coefficient field.
template <class G, class F, class Fn>
Series<G> map_series(const Series<F> &f, Fn &&fn)
{
    std::vector<G> c;
    c.reserve(f.coefficients().size());
    for (const auto &x : f.coefficients())
        c.push_back(fn(x));
    return Series<G>(std::move(c), f.known_order(), f.var(), f.eps());
}

template <class F>
Series<Complex> to_float(const Series<F> &f, double eps)
{
    return map_series<Complex>(f, [](const F &x) { return to_complex(x); }).with_eps(eps);
}

// max |a_n - b_n| over n <= min known order.
template <class F>
double max_deviation(const Series<F> &a, const Series<F> &b)
{
    const int known = std::min(a.known_order(), b.known_order());
    double d = 0;
    for (int n = 0; n <= known; ++n)
        d = std::max(d, magnitude(a[n] - b[n]));
    return d;
}

// True when a and b agree exactly (per the zero test) up to min known order.
template <class F>
bool agree(const Series<F> &a, const Series<F> &b)
{
    const int known = std::min(a.known_order(), b.known_order());
    for (int n = 0; n <= known; ++n)
        if (!is_zero(a[n] - b[n], std::max(a.eps(), b.eps())))
            return false;
    return true;
}

template <class F>
bool is_zero_series(const Series<F> &a)
{
    return !valuation(a).has_value();
}

// Lexicographic order on the coefficient sequence.
template <class F>
bool lex_less(const Series<F> &a, const Series<F> &b)
{
    const std::size_t n = std::min(a.coefficients().size(), b.coefficients().size());
    for (std::size_t i = 0; i < n; ++i) {
        if (lex_less(a.coefficients()[i], b.coefficients()[i]))
            return true;
        if (lex_less(b.coefficients()[i], a.coefficients()[i]))
            return false;
    }
    return a.coefficients().size() < b.coefficients().size();
}

} // namespace germ

#endif
