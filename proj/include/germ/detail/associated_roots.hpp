// Roots of the univariate equations attached to Newton polygon edges.
//
// Exact mode works over Q(i): squarefree (Yun) decomposition, Aberth iteration
// on each squarefree factor for candidates, high-precision polishing and
// continued-fraction rationalisation, then an exact check by evaluation.
// Float mode clusters Aberth roots.
#ifndef GERM_DETAIL_ASSOCIATED_ROOTS_HPP
#define GERM_DETAIL_ASSOCIATED_ROOTS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "../coefficient.hpp"
#include "../errors.hpp"
#include "../gaussian_rational.hpp"

namespace germ::detail {

using cld = std::complex<long double>;

inline long double to_long_double(const mpz_class &z)
{
    if (z.fits_slong_p())
        return static_cast<long double>(z.get_si());
    return static_cast<long double>(z.get_d());
}

inline long double to_long_double(const mpq_class &q)
{
    return to_long_double(q.get_num()) / to_long_double(q.get_den());
}

inline cld to_cld(const GaussianRational &z) { return {to_long_double(z.re()), to_long_double(z.im())}; }
inline cld to_cld(const Complex &z) { return {z.real(), z.imag()}; }

// All roots of sum c[k] z^k (c.back() != 0) by Aberth-Ehrlich iteration.
inline std::vector<cld> aberth_roots(std::vector<cld> c)
{
    const std::size_t n = c.size() - 1;
    if (n == 0)
        return {};
    const cld lead = c.back();
    for (auto &x : c)
        x /= lead;
    if (n == 1)
        return {-c[0]};
    long double radius = 0;
    for (std::size_t k = 0; k < n; ++k)
        radius = std::max(radius, std::pow(std::abs(c[k]), 1.0L / static_cast<long double>(n - k)));
    radius = 2 * std::max(radius, 1e-3L);
    std::vector<cld> z(n);
    for (std::size_t k = 0; k < n; ++k)
        z[k] = std::polar(radius, 2 * std::numbers::pi_v<long double> * static_cast<long double>(k) /
                                          static_cast<long double>(n) +
                                      0.25L);
    auto eval = [&](cld x, cld &dp) {
        cld p = c[n];
        dp = 0;
        for (std::size_t k = n; k-- > 0;) {
            dp = dp * x + p;
            p = p * x + c[k];
        }
        return p;
    };
    for (int iter = 0; iter < 1000; ++iter) {
        long double change = 0;
        for (std::size_t k = 0; k < n; ++k) {
            cld dp;
            cld p = eval(z[k], dp);
            if (p == cld(0))
                continue;
            cld ratio = p / dp;
            cld sum = 0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != k)
                    sum += 1.0L / (z[k] - z[j]);
            cld step = ratio / (1.0L - ratio * sum);
            z[k] -= step;
            change = std::max(change, std::abs(step) / (1 + std::abs(z[k])));
        }
        if (change < 1e-18L)
            break;
    }
    return z;
}

using gpoly = std::vector<GaussianRational>; // low to high degree

inline void trim(gpoly &p)
{
    while (p.size() > 1 && p.back().is_zero())
        p.pop_back();
}

inline gpoly derivative(const gpoly &p)
{
    gpoly d;
    for (std::size_t k = 1; k < p.size(); ++k)
        d.push_back(p[k] * GaussianRational(static_cast<long>(k)));
    if (d.empty())
        d.push_back(GaussianRational(0));
    return d;
}

inline bool is_zero_poly(const gpoly &p) { return p.size() == 1 && p[0].is_zero(); }

// Quotient and remainder; b nonzero.
inline std::pair<gpoly, gpoly> divmod(gpoly a, gpoly b)
{
    trim(a);
    trim(b);
    if (a.size() < b.size())
        return {gpoly{GaussianRational(0)}, a};
    const GaussianRational inv = b.back().inverse();
    gpoly quot(a.size() - b.size() + 1);
    const std::size_t db = b.size() - 1;
    for (std::size_t k = a.size() - 1;; --k) {
        GaussianRational coef = a[k] * inv;
        quot[k - db] = coef;
        for (std::size_t j = 0; j <= db; ++j)
            a[k - db + j] -= coef * b[j];
        if (k == db)
            break;
    }
    a.resize(std::max<std::size_t>(b.size() - 1, 1));
    trim(a);
    trim(quot);
    return {quot, a};
}

inline gpoly monic(gpoly p)
{
    trim(p);
    GaussianRational inv = p.back().inverse();
    for (auto &x : p)
        x *= inv;
    return p;
}

inline gpoly gcd(gpoly a, gpoly b)
{
    trim(a);
    trim(b);
    while (!is_zero_poly(b)) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

inline gpoly sub(gpoly a, const gpoly &b)
{
    if (a.size() < b.size())
        a.resize(b.size());
    for (std::size_t k = 0; k < b.size(); ++k)
        a[k] -= b[k];
    trim(a);
    return a;
}

inline GaussianRational eval(const gpoly &p, const GaussianRational &x)
{
    GaussianRational acc;
    for (std::size_t k = p.size(); k-- > 0;)
        acc = acc * x + p[k];
    return acc;
}

// Newton-polishes z as a root of p in 512-bit arithmetic, then looks for a
// Gaussian rational within 1e-60 that is an exact root. Long double alone
// cannot tell a root with a 7-digit denominator from a nearby convergent.
inline std::optional<GaussianRational> exact_root_near(const gpoly &p, cld z)
{
    constexpr mp_bitcnt_t bits = 512;
    struct C {
        mpf_class re, im;
    };
    auto make = [&](const mpq_class &x) { return mpf_class(x, bits); };
    auto mul = [&](const C &a, const C &b) {
        return C{mpf_class(a.re * b.re - a.im * b.im, bits), mpf_class(a.re * b.im + a.im * b.re, bits)};
    };
    C x{mpf_class(static_cast<double>(z.real()), bits), mpf_class(static_cast<double>(z.imag()), bits)};
    for (int it = 0; it < 12; ++it) {
        C f{make(0), make(0)}, df{make(0), make(0)};
        for (std::size_t k = p.size(); k-- > 0;) {
            df = mul(df, x);
            df.re += f.re;
            df.im += f.im;
            f = mul(f, x);
            f.re += make(p[k].re());
            f.im += make(p[k].im());
        }
        mpf_class den(df.re * df.re + df.im * df.im, bits);
        if (den == 0)
            return std::nullopt;
        C step{mpf_class((f.re * df.re + f.im * df.im) / den, bits), mpf_class((f.im * df.re - f.re * df.im) / den, bits)};
        x.re -= step.re;
        x.im -= step.im;
    }
    auto rational = [&](const mpf_class &v) -> std::optional<mpq_class> {
        const mpf_class tol(mpf_class("1e-60", bits) * (1 + abs(v)), bits);
        if (abs(v) < tol)
            return mpq_class(0);
        mpz_class h0 = 0, h1 = 1, k0 = 1, k1 = 0;
        mpf_class y(v, bits);
        for (int it = 0; it < 200; ++it) {
            mpf_class a(floor(y), bits);
            const mpz_class ai(a);
            const mpz_class h = ai * h1 + h0, k = ai * k1 + k0;
            if (abs(mpf_class(h, bits) / mpf_class(k, bits) - v) <= tol)
                return mpq_class(h, k);
            mpf_class frac(y - a, bits);
            if (frac == 0)
                return std::nullopt;
            y = 1 / frac;
            h0 = h1;
            h1 = h;
            k0 = k1;
            k1 = k;
        }
        return std::nullopt;
    };
    auto re = rational(x.re), im = rational(x.im);
    if (!re || !im)
        return std::nullopt;
    mpq_class rr = *re, ii = *im;
    rr.canonicalize();
    ii.canonicalize();
    GaussianRational r(rr, ii);
    if (!eval(p, r).is_zero())
        return std::nullopt;
    return r;
}

// Yun's algorithm: pairs (squarefree factor, multiplicity).
inline std::vector<std::pair<gpoly, int>> squarefree_decomposition(const gpoly &f)
{
    std::vector<std::pair<gpoly, int>> out;
    gpoly a = monic(f);
    gpoly b = derivative(a);
    gpoly c = gcd(a, b);
    gpoly w = divmod(a, c).first;
    gpoly y = divmod(b, c).first;
    gpoly z = sub(y, derivative(w));
    int i = 1;
    while (w.size() > 1) {
        gpoly g = gcd(w, z);
        if (g.size() > 1)
            out.emplace_back(g, i);
        w = divmod(w, g).first;
        y = divmod(z, g).first;
        z = sub(y, derivative(w));
        ++i;
    }
    return out;
}

// Nonzero roots with multiplicity, sorted lexicographically. Throws
// not_representable when a root is not a Gaussian rational.
inline std::vector<std::pair<GaussianRational, int>> associated_roots(const gpoly &phi, double)
{
    std::vector<std::pair<GaussianRational, int>> roots;
    for (const auto &[factor, mult] : squarefree_decomposition(phi)) {
        std::vector<cld> c;
        for (const auto &x : factor)
            c.push_back(to_cld(x));
        if (factor.size() == 2) {
            roots.emplace_back(-factor[0] * factor[1].inverse(), mult);
            continue;
        }
        for (const auto &z : aberth_roots(c)) {
            auto r = exact_root_near(factor, z);
            if (!r)
                throw not_representable("associated equation has a root outside Q(i)");
            roots.emplace_back(*r, mult);
        }
    }
    std::sort(roots.begin(), roots.end(), [](const auto &a, const auto &b) { return lex_less(a.first, b.first); });
    return roots;
}

// A q-th root of xi in Q(i): the one with the largest real part, then largest
// imaginary part.
inline GaussianRational nth_root(const GaussianRational &xi, int q)
{
    if (q == 1)
        return xi;
    const cld x = to_cld(xi);
    const long double mod = std::pow(std::abs(x), 1.0L / q);
    const long double arg = std::arg(x);
    std::optional<GaussianRational> best;
    for (int k = 0; k < q; ++k) {
        cld cand = std::polar(mod, (arg + 2 * std::numbers::pi_v<long double> * k) / q);
        gpoly f(static_cast<std::size_t>(q) + 1);
        f[0] = -xi;
        f.back() = GaussianRational(1);
        auto r = exact_root_near(f, cand);
        if (!r)
            continue;
        if (!best || lex_less(*best, *r))
            best = *r;
    }
    if (!best)
        throw not_representable("ramification needs a root of unity multiple outside Q(i)");
    return *best;
}

// Float mode: roots clustered into multiplicities.
inline std::vector<std::pair<Complex, int>> associated_roots(const std::vector<Complex> &phi, double eps)
{
    std::vector<cld> c;
    for (const auto &x : phi)
        c.push_back(to_cld(x));
    while (c.size() > 1 && std::abs(c.back()) == 0)
        c.pop_back();
    auto z = aberth_roots(c);
    const long double merge = 1e2L * std::sqrt(static_cast<long double>(eps));
    const long double ambiguous = 1e2L * merge;
    const std::size_t n = z.size();
    std::vector<std::size_t> parent(n);
    for (std::size_t k = 0; k < n; ++k)
        parent[k] = k;
    auto find = [&](std::size_t k) {
        while (parent[k] != k)
            k = parent[k] = parent[parent[k]];
        return k;
    };
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            long double scale = 1 + std::max(std::abs(z[a]), std::abs(z[b]));
            long double d = std::abs(z[a] - z[b]) / scale;
            if (d < merge)
                parent[find(a)] = find(b);
            else if (d < ambiguous)
                throw precision_error("associated equation roots cannot be separated at the configured tolerance");
        }
    std::vector<std::pair<Complex, int>> roots;
    std::vector<bool> done(n, false);
    for (std::size_t a = 0; a < n; ++a) {
        if (done[a])
            continue;
        cld sum = 0;
        int count = 0;
        for (std::size_t b = a; b < n; ++b)
            if (find(b) == find(a)) {
                sum += z[b];
                ++count;
                done[b] = true;
            }
        cld mean = sum / static_cast<long double>(count);
        roots.emplace_back(Complex(static_cast<double>(mean.real()), static_cast<double>(mean.imag())), count);
    }
    std::sort(roots.begin(), roots.end(), [](const auto &a, const auto &b) { return lex_less(a.first, b.first); });
    return roots;
}

inline Complex nth_root(const Complex &xi, int q)
{
    if (q == 1)
        return xi;
    return std::pow(xi, 1.0 / q);
}

} // namespace germ::detail

#endif
