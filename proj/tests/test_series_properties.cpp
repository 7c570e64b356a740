// Randomised algebraic-law checks for the series layer (exact mode, bit-exact).
#include <gtest/gtest.h>

#include <germ/series.hpp>

#include "support.hpp"

using namespace germ;
using namespace germ::testing;

namespace {

constexpr int kTrials = 60;

SeriesQ with_random_known(Rng &rng, SeriesQ s) { return s.truncated(static_cast<int>(rng.integer(0, s.order()))); }

} // namespace

TEST(SeriesProperties, RingAxioms)
{
    Rng rng(2024);
    for (int trial = 0; trial < kTrials; ++trial) {
        auto a = rng.series(10), b = rng.series(10), c = rng.series(10);
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a + b - b, a);
    }
}

TEST(SeriesProperties, GaussianRationalFieldLaws)
{
    Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        GR x = rng.gaussian(), y = rng.gaussian(), z = rng.nonzero_gaussian();
        EXPECT_EQ(x * (y + z), x * y + x * z);
        EXPECT_EQ((x * y) * z, x * (y * z));
        EXPECT_EQ(z * z.inverse(), GR(1));
        EXPECT_EQ((x / z) * z, x);
        EXPECT_EQ(x - x, GR(0));
    }
}

TEST(SeriesProperties, RevertRoundTrip)
{
    Rng rng(99);
    for (int trial = 0; trial < kTrials; ++trial) {
        auto f = rng.series(12);
        auto c = f.coefficients();
        c[0] = GR(0);
        c[1] = rng.nonzero_gaussian();
        f = SeriesQ(c);
        auto phi = revert(f);
        auto id = SeriesQ::monomial(q(1), 1, 12);
        EXPECT_EQ(compose(f, phi), id);
        EXPECT_EQ(compose(phi, f), id);
    }
}

TEST(SeriesProperties, ReImReassembly)
{
    Rng rng(3);
    for (int trial = 0; trial < kTrials; ++trial) {
        auto f = rng.series(12);
        auto [re, im] = re_im_split(f);
        for (int n = 0; n <= f.order(); ++n) {
            EXPECT_TRUE(re[n].is_real());
            EXPECT_TRUE(im[n].is_real());
        }
        EXPECT_EQ(re + im * GR::i(), f);
    }
}

TEST(SeriesProperties, ScaleSubstituteConjugateUndoes)
{
    Rng rng(17);
    const GR units[] = {GR::i(), q(-1), pythagorean_point(mpq_class(1, 2)), pythagorean_point(mpq_class(-2, 3))};
    for (int trial = 0; trial < kTrials; ++trial) {
        auto f = rng.series(12);
        for (const auto &u : units)
            EXPECT_EQ(scale_substitute(scale_substitute(f, u), u.conj()), f);
    }
}

// Every result's known_order matches the ledger prediction.
TEST(SeriesProperties, PrecisionLedger)
{
    Rng rng(41);
    for (int trial = 0; trial < kTrials; ++trial) {
        auto a = with_random_known(rng, rng.series(12));
        auto b = with_random_known(rng, rng.series(12));
        EXPECT_EQ((a + b).known_order(), std::min(a.known_order(), b.known_order()));
        EXPECT_EQ((a - b).known_order(), std::min(a.known_order(), b.known_order()));
        EXPECT_EQ((a * b).known_order(), std::min(a.known_order(), b.known_order()));

        auto gc = rng.series(12).coefficients();
        const int v = static_cast<int>(rng.integer(1, 3));
        for (int n = 0; n < v; ++n)
            gc[static_cast<std::size_t>(n)] = GR(0);
        gc[static_cast<std::size_t>(v)] = rng.nonzero_gaussian();
        auto g = with_random_known(rng, SeriesQ(gc));
        if (g.known_order() < v)
            g = SeriesQ(gc).truncated(v + static_cast<int>(rng.integer(0, 12 - v)));
        auto fg = compose(a, g);
        EXPECT_EQ(fg.known_order(), std::min({a.known_order() * v, g.known_order(), 12}));

        auto fc = a.coefficients();
        fc[0] = GR(0);
        fc[1] = rng.nonzero_gaussian();
        auto f = SeriesQ(fc).truncated(a.known_order() < 1 ? 1 : a.known_order());
        EXPECT_EQ(revert(f).known_order(), f.known_order());

        EXPECT_EQ(scale_substitute(a, GR::i()).known_order(), a.known_order());
        EXPECT_EQ(re_im_split(a).first.known_order(), a.known_order());
        EXPECT_EQ(ramify(a, 3, Var::w).known_order(), 3 * (a.known_order() + 1) - 1);
    }
}
