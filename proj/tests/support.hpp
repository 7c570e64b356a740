// Shared helpers for the test suites: literal builders, closed-form series
// used as oracles, and seeded random generators.
#ifndef GERM_TESTS_SUPPORT_HPP
#define GERM_TESTS_SUPPORT_HPP

#include <cstdint>
#include <random>
#include <vector>

#include <gmpxx.h>

#include <germ/series.hpp>

namespace germ::testing {

using GR = GaussianRational;
using SeriesQ = Series<GaussianRational>;

inline GR q(long p, long d = 1) { return GR(mpq_class(p, d)); }
inline GR gq(long re_p, long re_d, long im_p, long im_d) { return GR(mpq_class(re_p, re_d), mpq_class(im_p, im_d)); }
inline GR gi(long re, long im) { return GR(mpq_class(re), mpq_class(im)); }

inline mpq_class factorial(long n)
{
    mpz_class f = 1;
    for (long k = 2; k <= n; ++k)
        f *= k;
    return mpq_class(f);
}

// Series from a list of exact coefficients, padded with zeros to `order`.
inline SeriesQ series(std::vector<GR> c, int order = default_order, Var v = Var::t)
{
    c.resize(static_cast<std::size_t>(order) + 1);
    return SeriesQ(std::move(c), v);
}

// sum (i t)^n / n!, the unit circle parametrisation, coefficients written out directly.
inline SeriesQ exp_it(int order, Var v = Var::t)
{
    std::vector<GR> c;
    for (int n = 0; n <= order; ++n) {
        mpq_class a = 1 / factorial(n);
        switch (n % 4) {
        case 0: c.emplace_back(a, 0); break;
        case 1: c.emplace_back(0, a); break;
        case 2: c.emplace_back(-a, 0); break;
        default: c.emplace_back(0, -a); break;
        }
    }
    return SeriesQ(std::move(c), v);
}

inline SeriesQ cos_series(int order)
{
    std::vector<GR> c(static_cast<std::size_t>(order) + 1);
    for (int n = 0; n <= order; n += 2)
        c[static_cast<std::size_t>(n)] = GR(mpq_class((n / 2) % 2 ? -1 : 1) / factorial(n));
    return SeriesQ(std::move(c));
}

inline SeriesQ sin_series(int order)
{
    std::vector<GR> c(static_cast<std::size_t>(order) + 1);
    for (int n = 1; n <= order; n += 2)
        c[static_cast<std::size_t>(n)] = GR(mpq_class((n / 2) % 2 ? -1 : 1) / factorial(n));
    return SeriesQ(std::move(c));
}

// arcsin x = sum (2n)! / (4^n (n!)^2 (2n+1)) x^(2n+1)
inline SeriesQ arcsin_series(int order)
{
    std::vector<GR> c(static_cast<std::size_t>(order) + 1);
    for (int n = 0; 2 * n + 1 <= order; ++n) {
        mpz_class four_n;
        mpz_ui_pow_ui(four_n.get_mpz_t(), 4, static_cast<unsigned long>(n));
        mpq_class v = factorial(2 * n) / (mpq_class(four_n) * factorial(n) * factorial(n) * (2 * n + 1));
        c[static_cast<std::size_t>(2 * n + 1)] = GR(v);
    }
    return SeriesQ(std::move(c));
}

// 1 - sqrt(1 - x^2) from the binomial series: -sum_{n>=1} binom(1/2, n) (-1)^n x^(2n).
inline SeriesQ circle_height(int order)
{
    std::vector<GR> c(static_cast<std::size_t>(order) + 1);
    mpq_class binom = 1; // binom(1/2, n)
    for (int n = 1; 2 * n <= order; ++n) {
        binom *= (mpq_class(1, 2) - (n - 1));
        binom /= n;
        mpq_class term = -binom * ((n % 2) ? -1 : 1);
        c[static_cast<std::size_t>(2 * n)] = GR(term);
    }
    return SeriesQ(std::move(c));
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(eng_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(eng_); }

    // p/q with |p| <= bound, 1 <= q <= bound.
    mpq_class rational(long bound = 9)
    {
        mpq_class r(integer(-bound, bound), integer(1, bound));
        r.canonicalize();
        return r;
    }

    GR gaussian(long bound = 9) { return GR(rational(bound), rational(bound)); }

    GR nonzero_gaussian(long bound = 9)
    {
        GR g;
        while (g.is_zero())
            g = gaussian(bound);
        return g;
    }

    SeriesQ series(int order, long bound = 9, double density = 0.8, Var v = Var::t)
    {
        std::vector<GR> c(static_cast<std::size_t>(order) + 1);
        for (auto &x : c)
            if (coin(density))
                x = gaussian(bound);
        return SeriesQ(std::move(c), v);
    }

    SeriesQ real_series(int order, long bound = 9, double density = 0.8, Var v = Var::t)
    {
        std::vector<GR> c(static_cast<std::size_t>(order) + 1);
        for (auto &x : c)
            if (coin(density))
                x = GR(rational(bound));
        return SeriesQ(std::move(c), v);
    }

    std::mt19937_64 &engine() { return eng_; }

  private:
    std::mt19937_64 eng_;
};

// A point of the unit circle with rational coordinates, ((1-s^2) + 2 s i)/(1+s^2).
inline GR pythagorean_point(const mpq_class &s)
{
    mpq_class d = 1 + s * s;
    return GR((1 - s * s) / d, 2 * s / d);
}

} // namespace germ::testing

#endif
