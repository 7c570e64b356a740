// Floating-point cross-check of branch expansions: roots of P(t0, z) found
// directly in 50-digit arithmetic and matched against branch evaluations.
//
// Deliberately shares nothing numeric with the Puiseux code path: different
// iteration (Durand-Kerner), different precision (cpp_bin_float_50).
#ifndef GERM_NUMERIC_ORACLE_HPP
#define GERM_NUMERIC_ORACLE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include "coefficient.hpp"
#include "errors.hpp"
#include "puiseux.hpp"
#include "series_poly.hpp"

namespace germ {

using mp_real = boost::multiprecision::cpp_bin_float_50;
using mp_complex = boost::multiprecision::cpp_complex_50;

inline const std::vector<double> &default_samples()
{
    static const std::vector<double> s{-0.2, -0.1, -0.05, 0.05, 0.1, 0.2};
    return s;
}

struct RootReport {
    std::vector<mp_complex> roots;
    std::vector<double> residuals;
    bool converged = false;
    int iterations = 0;
};

struct SampleReport {
    std::vector<double> samples;
    std::vector<double> errors; // per sample: max over matched pairs
    double exponent = 0;        // fitted q in error ~ C |t|^q; +inf when every error is below the noise floor
    double expected_exponent = 0;
    std::vector<double> flagged; // samples whose error exceeds 10 |t|^expected
    bool roots_converged = true;
};

namespace detail {

inline mp_real to_mp(const mpq_class &q)
{
    return mp_real(q.get_num().get_str()) / mp_real(q.get_den().get_str());
}

inline mp_complex to_mp(const GaussianRational &x) { return {to_mp(x.re()), to_mp(x.im())}; }
inline mp_complex to_mp(const Complex &x) { return {mp_real(x.real()), mp_real(x.imag())}; }

template <class F>
mp_complex eval_mp(const Series<F> &s, const mp_complex &x)
{
    mp_complex acc(0);
    for (int n = s.known_order(); n >= 0; --n)
        acc = acc * x + to_mp(s[n]);
    return acc;
}

inline double to_d(const mp_real &x) { return static_cast<double>(x); }

// Root of z^d + sum c_j z^j (c has d entries) by Durand-Kerner.
inline RootReport durand_kerner(const std::vector<mp_complex> &c)
{
    const std::size_t d = c.size();
    RootReport r;
    mp_real bound(1);
    for (const auto &x : c)
        bound = std::max(bound, mp_real(1) + abs(x));
    auto eval = [&](const mp_complex &z) {
        mp_complex acc(1);
        for (std::size_t j = d; j-- > 0;)
            acc = acc * z + c[j];
        return acc;
    };
    std::vector<mp_complex> z(d);
    const mp_complex seed(mp_real("0.4"), mp_real("0.9"));
    mp_complex p(1);
    for (std::size_t k = 0; k < d; ++k) {
        p *= seed;
        z[k] = p * bound;
    }
    const mp_real tol = mp_real("1e-45") * bound;
    for (r.iterations = 0; r.iterations < 2000; ++r.iterations) {
        mp_real change(0);
        for (std::size_t k = 0; k < d; ++k) {
            mp_complex den(1);
            for (std::size_t j = 0; j < d; ++j)
                if (j != k)
                    den *= z[k] - z[j];
            if (den == mp_complex(0))
                den = mp_complex(mp_real("1e-40"));
            mp_complex step = eval(z[k]) / den;
            z[k] -= step;
            change = std::max(change, mp_real(abs(step)));
        }
        if (change < tol) {
            r.converged = true;
            break;
        }
    }
    mp_real scale(1);
    for (const auto &x : c)
        scale = std::max(scale, mp_real(1) + abs(x));
    for (const auto &root : z) {
        r.residuals.push_back(to_d(abs(eval(root))));
        if (r.residuals.back() >= 1e-12 * to_d(scale))
            r.converged = false;
    }
    r.roots = std::move(z);
    return r;
}

// Minimum-cost perfect matching; returns the largest matched distance.
inline mp_real match_error(const std::vector<mp_complex> &a, const std::vector<mp_complex> &b)
{
    const std::size_t n = a.size();
    if (n != b.size())
        throw precondition_error("root multisets have different sizes");
    std::vector<std::vector<mp_real>> cost(n, std::vector<mp_real>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            cost[i][j] = abs(a[i] - b[j]);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    auto total = [&](const std::vector<std::size_t> &p) {
        mp_real s(0);
        for (std::size_t i = 0; i < n; ++i)
            s += cost[i][p[i]];
        return s;
    };
    std::vector<std::size_t> best = perm;
    if (n <= 6) {
        mp_real best_cost = total(perm);
        while (std::next_permutation(perm.begin(), perm.end())) {
            mp_real c = total(perm);
            if (c < best_cost) {
                best_cost = c;
                best = perm;
            }
        }
    } else {
        // Greedy nearest neighbour, then pairwise swaps while they help.
        std::vector<bool> used(n, false);
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t pick = n;
            for (std::size_t j = 0; j < n; ++j)
                if (!used[j] && (pick == n || cost[i][j] < cost[i][pick]))
                    pick = j;
            used[pick] = true;
            best[i] = pick;
        }
        for (bool improved = true; improved;) {
            improved = false;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if (cost[i][best[j]] + cost[j][best[i]] < cost[i][best[i]] + cost[j][best[j]]) {
                        std::swap(best[i], best[j]);
                        improved = true;
                    }
        }
    }
    mp_real worst(0);
    for (std::size_t i = 0; i < n; ++i)
        worst = std::max(worst, cost[i][best[i]]);
    return worst;
}

// Least-squares slope of log(err) against log|t| over errors above the floor.
inline double fit_exponent(const std::vector<double> &samples, const std::vector<double> &errors, double floor)
{
    std::vector<double> x, y;
    for (std::size_t i = 0; i < samples.size(); ++i)
        if (errors[i] > floor) {
            x.push_back(std::log(std::abs(samples[i])));
            y.push_back(std::log(errors[i]));
        }
    if (x.empty())
        return std::numeric_limits<double>::infinity();
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0)
        return 0;
    return sxy / sxx;
}

} // namespace detail

// Roots of P(t0, z), coefficients evaluated from their known parts.
template <class F>
RootReport numeric_roots_mp(const SeriesPoly<F> &p, const mp_complex &t0)
{
    std::vector<mp_complex> c;
    for (const auto &s : p.lower_coefficients())
        c.push_back(detail::eval_mp(s, t0));
    return detail::durand_kerner(c);
}

template <class F>
std::vector<Complex> numeric_roots(const SeriesPoly<F> &p, Complex t0)
{
    auto r = numeric_roots_mp(p, detail::to_mp(t0));
    if (!r.converged) {
        std::string msg = "root iteration did not converge; residuals:";
        for (double x : r.residuals)
            msg += " " + std::to_string(x);
        throw precision_error(msg);
    }
    std::vector<Complex> out;
    for (const auto &z : r.roots)
        out.emplace_back(detail::to_d(z.real()), detail::to_d(z.imag()));
    return out;
}

// Every branch evaluated on all of its rays at real t (w = omega^k t^(1/e),
// principal root), each value repeated m times.
template <class F>
std::vector<mp_complex> branch_values(const std::vector<PuiseuxBranch<F>> &branches, double t)
{
    const mp_real pi = boost::math::constants::pi<mp_real>();
    std::vector<mp_complex> out;
    for (const auto &b : branches) {
        const mp_real mod = pow(mp_real(std::abs(t)), mp_real(1) / b.e);
        const mp_real arg = (t < 0 ? pi : mp_real(0)) / b.e;
        for (int k = 0; k < b.e; ++k) {
            const mp_real a = arg + 2 * pi * k / b.e;
            const mp_complex w(mod * cos(a), mod * sin(a));
            const mp_complex v = detail::eval_mp(b.eta, w);
            for (int j = 0; j < b.m; ++j)
                out.push_back(v);
        }
    }
    return out;
}

template <class F, class G>
SampleReport sample_compare(const FactorizationResult<F> &res, const SeriesPoly<G> &p,
                            const std::vector<double> &samples = default_samples())
{
    SampleReport rep;
    rep.samples = samples;
    rep.expected_exponent = std::numeric_limits<double>::infinity();
    for (const auto &b : res.branches)
        rep.expected_exponent = std::min(rep.expected_exponent, static_cast<double>(b.eta.known_order() + 1) / b.e);
    double scale = 1;
    for (const auto &s : p.lower_coefficients())
        for (int n = 0; n <= s.known_order(); ++n)
            scale = std::max(scale, magnitude(s[n]));
    for (double t : samples) {
        if (t == 0 || std::abs(t) > 0.5)
            throw precondition_error("samples must satisfy 0 < |t| <= 0.5");
        auto roots = numeric_roots_mp(p, mp_complex(mp_real(t)));
        rep.roots_converged = rep.roots_converged && roots.converged;
        const double err = detail::to_d(detail::match_error(roots.roots, branch_values(res.branches, t)));
        rep.errors.push_back(err);
        if (err > 10 * std::pow(std::abs(t), rep.expected_exponent))
            rep.flagged.push_back(t);
    }
    rep.exponent = detail::fit_exponent(samples, rep.errors, 1e-40 * scale);
    return rep;
}

} // namespace germ

#endif
