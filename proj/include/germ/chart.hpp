// Local charts Im u = h(Re u), u = (z - p)/c, of an analytic curve through p,
// and the test of Puiseux cycles against them along the rays where w^e is real.
#ifndef GERM_CHART_HPP
#define GERM_CHART_HPP

#include <numeric>
#include <optional>
#include <vector>

#include "coefficient.hpp"
#include "errors.hpp"
#include "puiseux.hpp"
#include "series.hpp"

namespace germ {

template <class F>
struct CurveChart {
    F p;
    F c;
    Series<F> h; // real coefficients, h_0 = h_1 = 0
};

enum class Curve { real_line, unit_circle };

template <class F>
struct ObstructionWitness {
    int L = 0;
    int k = 0;
    F lambda_L;
    // Coefficient of t^L in Im lambda(theta_k t), read off the series.
    ray_field_t<F> zeta_L_actual;
    // The same coefficient computed as Im(theta_k^L lambda_L).
    ray_field_t<F> zeta_L_formula;
    // Coefficient of t^L in h(Re lambda(theta_k t)): what the chart demands.
    ray_field_t<F> zeta_L_required;
};

template <class F>
CurveChart<F> chart_from_parametrization(const Series<F> &f)
{
    if (f.known_order() < 1 || is_zero(f[1], f.eps()))
        throw precondition_error("not an analytic curve chart at this point (f'(0) = 0)");
    const F p = f[0];
    const F c = f[1];
    auto g = scale(f - Series<F>::constant(p, f.order(), f.var(), f.eps()), inverse(c));
    auto [psi, im] = re_im_split(g);
    auto h = compose(im, revert(psi));
    return {p, c, h};
}

template <class F>
CurveChart<F> builtin_chart(Curve curve, const F &p, int order, double eps = default_eps)
{
    if (curve == Curve::real_line) {
        if (!is_zero(imag_part(p), eps))
            throw precondition_error("base point is not on the real line");
        return {p, from_int<F>(1), Series<F>(order, Var::t, eps)};
    }
    if (!is_zero(p * conjugate(p) - from_int<F>(1), eps))
        throw precondition_error("base point is not on the unit circle");
    auto it = Series<F>::monomial(imaginary_unit<F>(), 1, order, Var::t, eps);
    return chart_from_parametrization(scale(exp_series(it), p));
}

namespace detail {

template <class F>
struct RayView {
    using RF = ray_field<F>;
    using R = ray_field_t<F>;

    typename RF::context ctx;
    int modulus;
    Series<R> lambda; // (eta - p)/c in w
    Series<R> h;

    RayView(const PuiseuxBranch<F> &b, const CurveChart<F> &chart)
        : ctx(RF::make(std::lcm(2 * b.e, 4))), modulus(std::lcm(2 * b.e, 4))
    {
        if (!is_zero(b.eta[0] - chart.p, std::max(b.eta.eps(), default_eps)) || b.eta.known_order() < 0)
            throw precondition_error("branch base point differs from the chart base point");
        auto lift = [&](const F &x) { return RF::lift(ctx, x); };
        auto shifted = b.eta - Series<F>::constant(b.eta[0], b.eta.order(), b.eta.var(), b.eta.eps());
        auto lam = scale(shifted, inverse(chart.c)).retagged(Var::t);
        lambda = map_series<R>(lam, lift);
        h = map_series<R>(chart.h, lift);
    }

    // e^{pi i k / e}
    R theta(int e, int k) const { return RF::root(ctx, static_cast<long>(k) * (modulus / (2 * e))); }

    // (rho_k, sigma_k)
    std::pair<Series<R>, Series<R>> ray(int e, int k) const { return re_im_split(scale_substitute(lambda, theta(e, k))); }
};

} // namespace detail

// sigma_k - h(rho_k) for k = 0..e-1; all zero (to known order) iff the cycle
// stays on the curve along every ray where w^e is real.
template <class F>
std::vector<Series<ray_field_t<F>>> branch_on_curve_defect(const PuiseuxBranch<F> &b, const CurveChart<F> &chart)
{
    detail::RayView<F> view(b, chart);
    std::vector<Series<ray_field_t<F>>> out;
    for (int k = 0; k < b.e; ++k) {
        auto [rho, sigma] = view.ray(b.e, k);
        out.push_back(sigma - compose(view.h, rho));
    }
    return out;
}

// Largest coefficient magnitude over all ray defects.
template <class R>
double max_defect(const std::vector<Series<R>> &defects)
{
    double d = 0;
    for (const auto &s : defects)
        for (int n = 0; n <= s.known_order(); ++n)
            d = std::max(d, magnitude(s[n]));
    return d;
}

template <class F>
std::optional<ObstructionWitness<F>> obstruction_witness(const PuiseuxBranch<F> &b, const CurveChart<F> &chart)
{
    if (b.e < 2)
        throw precondition_error("obstruction witness not applicable: branch is unramified (e = 1)");
    detail::RayView<F> view(b, chart);
    using R = ray_field_t<F>;
    const double eps = b.eta.eps();
    std::optional<int> L;
    for (int n = 1; n <= view.lambda.known_order() && !L; ++n)
        if (n % b.e != 0 && !is_zero(view.lambda[n], eps))
            L = n;
    if (!L)
        return std::nullopt;
    const F lambda_L = (b.eta[*L]) * inverse(chart.c);
    for (int k = 0; k < b.e; ++k) {
        R theta_L = view.theta(b.e, k * *L);
        R formula = imag_part(theta_L * view.lambda[*L]);
        if (is_zero(formula, eps))
            continue;
        auto [rho, sigma] = view.ray(b.e, k);
        auto forced = compose(view.h, rho);
        ObstructionWitness<F> w{*L, k, lambda_L, sigma[*L], formula, R{}};
        if (*L <= forced.known_order())
            w.zeta_L_required = forced[*L];
        return w;
    }
    // Unreachable: some k gives a nonzero imaginary part since e does not divide L.
    throw germ_error("internal error: no ray separates the witness coefficient");
}

} // namespace germ

#endif
