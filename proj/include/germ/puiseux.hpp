#ifndef GERM_PUISEUX_HPP
#define GERM_PUISEUX_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <variant>
#include <vector>

#include "coefficient.hpp"
#include "detail/associated_roots.hpp"
#include "errors.hpp"
#include "newton_polygon.hpp"
#include "series.hpp"
#include "series_poly.hpp"

namespace germ {

// One conjugacy cycle of roots: z = eta(omega^k w), k = 0..e-1, with t = w^e
// and omega = exp(2 pi i / e). The cycle divides P m times.
template <class F>
struct PuiseuxBranch {
    int e = 1;
    Series<F> eta{0, Var::w};
    int m = 1;
    // The cycle structure is not certain at this truncation order: either the
    // roots coincide only to the known order, or no ramification witness was
    // found within it.
    bool provisional = false;
    // Smallest L with eta_L != 0 and e not dividing L (set for e >= 2).
    std::optional<int> witness;
};

template <class F>
struct FactorizationResult {
    std::vector<PuiseuxBranch<F>> branches;
    bool completely_reducible = false;
    bool provisional = false;
    // Exact input that had to be factored in floating point.
    bool numeric = false;
    // Max coefficient deviation of the reconstructed product from the input.
    double defect = 0;
};

namespace detail {

template <class F>
struct Frame {
    std::vector<Series<F>> poly; // z^0..z^D, in s; t = s^ram
    int r = 0;                   // roots of interest: those near z = 0
    int ram = 1;
    std::vector<F> prefix; // original z = prefix(s) + s^shift * z
    int shift = 0;
    int depth = 0;
    bool provisional = false;
};

inline long binomial(int n, int k)
{
    long b = 1;
    for (int i = 1; i <= k; ++i)
        b = b * (n - k + i) / i;
    return b;
}

inline int ceil_div(int a, int b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); }

template <class F>
class Expander {
  public:
    Expander(int depth_cap, double eps) : cap_(depth_cap), eps_(eps) {}

    std::vector<PuiseuxBranch<F>> run(const SeriesPoly<F> &p)
    {
        Frame<F> top;
        for (auto s : p.full())
            top.poly.push_back(s.retagged(Var::w));
        top.r = p.degree();
        top.prefix.assign(static_cast<std::size_t>(p.order()) + 1, F{});
        expand(std::move(top));
        return merge(std::move(out_));
    }

  private:
    int order_of(const Frame<F> &f) const { return f.poly.front().order(); }

    void emit(const Frame<F> &f, const Series<F> &z, int kz, int m, bool provisional)
    {
        const int order = order_of(f);
        auto c = f.prefix;
        for (int n = 0; n <= z.order() && f.shift + n <= order; ++n)
            c[static_cast<std::size_t>(f.shift + n)] += z[n];
        PuiseuxBranch<F> b;
        b.e = f.ram;
        b.m = m;
        b.provisional = provisional;
        b.eta = Series<F>(std::move(c), std::min(order, f.shift + kz), Var::w, eps_);
        out_.push_back(std::move(b));
    }

    // Roots in a cluster at z = 0 are zero to this order.
    int cluster_known(const std::vector<PolygonPoint> &pts, int jm, int floor) const
    {
        const int h = pts[static_cast<std::size_t>(jm)].height.value_or(0);
        std::optional<int> best;
        for (int j = 0; j < jm; ++j) {
            int k = ceil_div(pts[static_cast<std::size_t>(j)].known + 1 - h, jm - j) - 1;
            best = best ? std::min(*best, k) : k;
        }
        return std::max(best.value_or(floor), floor);
    }

    void emit_cluster(const Frame<F> &f, const std::vector<PolygonPoint> &pts, int size, bool provisional)
    {
        const int kz = cluster_known(pts, size, f.depth > 0 ? 0 : -1);
        emit(f, Series<F>(order_of(f), Var::w, eps_), kz, size, provisional || size >= 2);
    }

    void expand(Frame<F> f)
    {
        const auto pts = polygon_points(f.poly, f.r);
        const auto &last = pts[static_cast<std::size_t>(f.r)];
        if (f.depth > cap_ || !last.height || *last.height != 0) {
            emit_cluster(f, pts, f.r, true);
            return;
        }
        if (f.r == 1) {
            lift(f);
            return;
        }
        const NewtonPolygon poly = build_polygon(pts);
        if (poly.zero_roots > 0)
            emit_cluster(f, pts, poly.zero_roots, f.provisional || poly.uncertain);
        for (const auto &edge : poly.edges) {
            auto phi = associated_polynomial(f, edge, pts);
            for (const auto &[xi, mult] : associated_roots(phi, eps_)) {
                F c = nth_root(xi, edge.den);
                expand(descend(f, edge, c, mult, poly.uncertain));
            }
        }
    }

    std::vector<F> associated_polynomial(const Frame<F> &f, const PolygonEdge &e,
                                         const std::vector<PolygonPoint> &pts) const
    {
        std::vector<F> phi(static_cast<std::size_t>(e.length() / e.den) + 1);
        for (int j = e.j_start; j <= e.j_end; j += e.den) {
            const auto &p = pts[static_cast<std::size_t>(j)];
            if (p.height && e.den * *p.height + e.num * j == e.intercept())
                phi[static_cast<std::size_t>((j - e.j_start) / e.den)] = f.poly[static_cast<std::size_t>(j)][*p.height];
        }
        return phi;
    }

    // z = s1^p (c + z1), s = s1^q, divided by s1^intercept.
    Frame<F> descend(const Frame<F> &f, const PolygonEdge &e, const F &c, int mult, bool uncertain) const
    {
        const int p = e.num, q = e.den;
        const std::size_t deg = f.poly.size() - 1;
        std::vector<Series<F>> shifted;
        for (std::size_t j = 0; j <= deg; ++j) {
            auto g = q > 1 ? ramify(f.poly[j], q, Var::w) : f.poly[j];
            shifted.push_back(shift(g, p * static_cast<int>(j)));
        }
        std::vector<F> cpow{from_int<F>(1)};
        for (std::size_t k = 1; k <= deg; ++k)
            cpow.push_back(cpow.back() * c);

        Frame<F> child;
        child.r = mult;
        child.ram = f.ram * q;
        child.shift = f.shift * q + p;
        child.depth = f.depth + 1;
        child.provisional = f.provisional || uncertain;
        const int order = shifted.front().order();
        for (std::size_t i = 0; i <= deg; ++i) {
            Series<F> h(order, Var::w, eps_);
            for (std::size_t j = i; j <= deg; ++j)
                h = h + scale(shifted[j], cpow[j - i] * from_int<F>(binomial(static_cast<int>(j), static_cast<int>(i))));
            h = unshift(h, e.intercept());
            if constexpr (!is_exact_v<F>) {
                if (static_cast<int>(i) < mult && h.known_order() >= 0) {
                    auto hc = h.coefficients();
                    hc[0] = F{};
                    h = Series<F>(std::move(hc), h.known_order(), Var::w, eps_);
                }
            }
            child.poly.push_back(std::move(h));
        }
        child.prefix.assign(static_cast<std::size_t>(order) + 1, F{});
        for (std::size_t n = 0; n < f.prefix.size(); ++n)
            if (n * static_cast<std::size_t>(q) < child.prefix.size())
                child.prefix[n * static_cast<std::size_t>(q)] = f.prefix[n];
        if (child.shift <= order)
            child.prefix[static_cast<std::size_t>(child.shift)] += c;
        return child;
    }

    // Single root near 0: Newton iteration on series.
    void lift(const Frame<F> &f)
    {
        const int order = order_of(f);
        const std::size_t deg = f.poly.size() - 1;
        std::vector<Series<F>> full;
        for (const auto &s : f.poly)
            full.push_back(Series<F>(s.coefficients(), order, Var::w, eps_));

        int kz = f.poly[0].known_order();
        kz = std::min(kz, f.poly[1].known_order() + 1);
        for (std::size_t j = 2; j <= deg; ++j)
            kz = std::min(kz, f.poly[j].known_order() + static_cast<int>(j));
        kz = std::min(kz, order);

        Series<F> z(order, Var::w, eps_);
        const int iterations = static_cast<int>(std::ceil(std::log2(order + 2))) + 3;
        for (int it = 0; it < iterations; ++it) {
            Series<F> val = full[deg];
            Series<F> der(order, Var::w, eps_);
            for (std::size_t j = deg; j-- > 0;) {
                der = der * z + val;
                val = val * z + full[j];
            }
            if (is_zero(der[0], eps_)) {
                emit(f, Series<F>(order, Var::w, eps_), std::max(0, std::min(kz, 0)), 1, f.provisional);
                return;
            }
            auto next = z - val * reciprocal(der);
            if constexpr (!is_exact_v<F>) {
                if (f.depth > 0) {
                    auto nc = next.coefficients();
                    nc[0] = F{};
                    next = Series<F>(std::move(nc), order, Var::w, eps_);
                }
            }
            if (next == z)
                break;
            z = std::move(next);
        }
        emit(f, z, kz, 1, f.provisional);
    }

  public:
    static std::vector<PuiseuxBranch<F>> merge(std::vector<PuiseuxBranch<F>> in)
    {
        std::vector<PuiseuxBranch<F>> out;
        for (auto &b : in) {
            auto it = std::find_if(out.begin(), out.end(), [&](const PuiseuxBranch<F> &o) {
                return o.e == b.e && o.eta == b.eta && o.provisional == b.provisional;
            });
            if (it != out.end())
                it->m += b.m;
            else
                out.push_back(std::move(b));
        }
        sort_branches(out);
        return out;
    }

    static void sort_branches(std::vector<PuiseuxBranch<F>> &v)
    {
        std::stable_sort(v.begin(), v.end(), [](const PuiseuxBranch<F> &a, const PuiseuxBranch<F> &b) {
            if (a.e != b.e)
                return a.e < b.e;
            return lex_less(a.eta, b.eta);
        });
    }

  private:
    int cap_;
    double eps_;
    std::vector<PuiseuxBranch<F>> out_;
};

// Full coefficient list (in w) of prod_k (z - eta(omega^k w)), raised to m.
template <class F>
std::vector<Series<F>> cycle_factor(const PuiseuxBranch<F> &b)
{
    const auto one = Series<F>::constant(from_int<F>(1), b.eta.order(), Var::w, b.eta.eps());
    std::vector<Series<F>> cycle;
    if (b.e == 1) {
        cycle = {neg(b.eta.retagged(Var::w)), one};
    } else {
        using RF = ray_field<F>;
        using R = ray_field_t<F>;
        const int modulus = std::lcm(b.e, 4);
        const auto ctx = RF::make(modulus);
        auto lifted = map_series<R>(b.eta.retagged(Var::w), [&](const F &x) { return RF::lift(ctx, x); });
        const auto rone = Series<R>::constant(RF::lift(ctx, from_int<F>(1)), b.eta.order(), Var::w, b.eta.eps());
        std::vector<Series<R>> acc{rone};
        for (int k = 0; k < b.e; ++k) {
            auto omega = RF::root(ctx, static_cast<long>(k) * (modulus / b.e));
            acc = poly_mul(acc, std::vector<Series<R>>{neg(scale_substitute(lifted, omega)), rone});
        }
        for (const auto &s : acc)
            cycle.push_back(map_series<F>(s, [](const R &x) { return RF::lower(x); }));
    }
    std::vector<Series<F>> out{one};
    for (int k = 0; k < b.m; ++k)
        out = poly_mul(out, cycle);
    return out;
}

// Series in t from a series in w = t^(1/e) whose support lies in eZ.
template <class F>
Series<F> unramify(const Series<F> &f, int e)
{
    const int order = f.order() / e;
    std::vector<F> c(static_cast<std::size_t>(order) + 1);
    for (int n = 0; n <= order; ++n)
        c[static_cast<std::size_t>(n)] = f[n * e];
    return Series<F>(std::move(c), f.known_order() / e, Var::t, f.eps());
}

} // namespace detail

// Newton-Puiseux expansion of a monic P. The expansion consumes P at its full
// stored order; branches are then cut to target_order in t, i.e. a branch of
// ramification e is kept through w^(e (target + 1) - 1).
template <class F>
std::vector<PuiseuxBranch<F>> puiseux_expand(const SeriesPoly<F> &p, int target_order = -1)
{
    if (target_order < 0)
        target_order = p.order();
    detail::Expander<F> ex(std::max(1, std::max(target_order, p.order()) * p.degree()), p.eps());
    auto branches = ex.run(p);
    for (auto &b : branches)
        b.eta = b.eta.resized(b.e * (target_order + 1) - 1);
    return detail::Expander<F>::merge(std::move(branches));
}

// Merges cycles whose exponents share a common factor with e: eta(w) = mu(w^g)
// means the cycle is g copies of a cycle of index e/g. Records the
// irreducibility witness L (eta_L != 0, e does not divide L) once no reduction applies.
template <class F>
PuiseuxBranch<F> reduce_ramification(PuiseuxBranch<F> b)
{
    if (b.e < 2)
        return b;
    int g = b.e;
    std::optional<int> first;
    for (int n = 1; n <= b.eta.known_order(); ++n)
        if (!is_zero(b.eta[n], b.eta.eps())) {
            g = std::gcd(g, n);
            if (!first)
                first = n;
        }
    if (!first) {
        b.provisional = true;
        b.witness.reset();
        return b;
    }
    if (g > 1) {
        const int order = b.eta.order() / g;
        std::vector<F> c(static_cast<std::size_t>(order) + 1);
        for (int n = 0; n <= order; ++n)
            c[static_cast<std::size_t>(n)] = b.eta[n * g];
        b.eta = Series<F>(std::move(c), b.eta.known_order() / g, Var::w, b.eta.eps());
        b.e /= g;
        b.m *= g;
        b.witness.reset();
        return reduce_ramification(std::move(b));
    }
    for (int n = 1; n <= b.eta.known_order(); ++n)
        if (n % b.e != 0 && !is_zero(b.eta[n], b.eta.eps())) {
            b.witness = n;
            break;
        }
    return b;
}

// Product of all cycle factors, as a monic polynomial in t.
template <class F>
SeriesPoly<F> reconstruct(const std::vector<PuiseuxBranch<F>> &branches)
{
    if (branches.empty())
        throw precondition_error("reconstruct: no branches");
    std::vector<Series<F>> acc;
    for (const auto &b : branches) {
        std::vector<Series<F>> factor;
        for (const auto &s : detail::cycle_factor(b))
            factor.push_back(detail::unramify(s, b.e));
        acc = acc.empty() ? factor : detail::poly_mul(acc, factor);
    }
    acc.pop_back();
    return SeriesPoly<F>(std::move(acc));
}

// Max coefficient of the remainder of P(w^e, z) by the branch's cycle factor;
// 0 exactly when the product over conjugate rays divides P (exact mode).
template <class F>
double verify_newton_identity(const PuiseuxBranch<F> &b, const SeriesPoly<F> &p)
{
    const auto factor = detail::cycle_factor(b);
    if (static_cast<int>(factor.size()) - 1 > p.degree())
        throw precondition_error("branch cycle has larger degree than the polynomial");
    std::vector<Series<F>> pw;
    for (const auto &s : p.full())
        pw.push_back(b.e > 1 ? ramify(s, b.e, Var::w) : s.retagged(Var::w));
    const int order = std::min(pw.front().order(), factor.front().order());
    for (auto &s : pw)
        s = s.resized(order);
    std::vector<Series<F>> fac;
    for (const auto &s : factor)
        fac.push_back(s.resized(order));
    double defect = 0;
    for (const auto &s : detail::poly_rem(pw, fac))
        for (int n = 0; n <= s.known_order(); ++n)
            defect = std::max(defect, magnitude(s[n]));
    return defect;
}

template <class F>
double reconstruction_defect(const std::vector<PuiseuxBranch<F>> &branches, const SeriesPoly<F> &p)
{
    int total = 0;
    for (const auto &b : branches)
        total += b.e * b.m;
    if (total != p.degree())
        throw precondition_error("branch degrees sum to " + std::to_string(total) + ", polynomial has degree " +
                                 std::to_string(p.degree()));
    auto r = reconstruct(branches);
    double d = 0;
    for (int j = 0; j < p.degree(); ++j) {
        auto a = p.coeff(j);
        auto b = r.coeff(j);
        const int order = std::min(a.order(), b.order());
        d = std::max(d, max_deviation(a.resized(order), b.resized(order)));
    }
    return d;
}

template <class F>
FactorizationResult<F> factor_germ(const SeriesPoly<F> &p, int target_order = -1)
{
    FactorizationResult<F> res;
    for (auto &b : puiseux_expand(p, target_order))
        res.branches.push_back(reduce_ramification(std::move(b)));
    res.branches = detail::Expander<F>::merge(std::move(res.branches));
    res.completely_reducible = std::all_of(res.branches.begin(), res.branches.end(),
                                           [](const PuiseuxBranch<F> &b) { return b.e == 1; });
    res.provisional = std::any_of(res.branches.begin(), res.branches.end(),
                                  [](const PuiseuxBranch<F> &b) { return b.provisional; });
    res.defect = reconstruction_defect(res.branches, p);
    return res;
}

using AnyFactorization = std::variant<FactorizationResult<GaussianRational>, FactorizationResult<Complex>>;

// Exact factorization, falling back to floating point (marked numeric) when an
// associated equation has roots outside Q(i).
inline AnyFactorization factor_with_fallback(const SeriesPoly<GaussianRational> &p, double eps,
                                             int target_order = -1)
{
    try {
        return factor_germ(p, target_order);
    } catch (const not_representable &) {
        auto res = factor_germ(to_float(p, eps), target_order);
        res.numeric = true;
        return res;
    }
}

} // namespace germ

#endif
