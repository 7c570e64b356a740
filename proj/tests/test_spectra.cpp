#include <gtest/gtest.h>

#include <germ/spectra.hpp>

#include "generators.hpp"
#include "support.hpp"

using namespace germ;
using namespace germ::testing;

namespace {

using MatrixQ = MatrixFamily<GR>;

SeriesQ t_pow(long c, int k, int order) { return SeriesQ::monomial(q(c), k, order); }

MatrixQ two_by_two(SeriesQ a, SeriesQ b, SeriesQ c, SeriesQ d, Promise p)
{
    return {2, {{std::move(a), std::move(b)}, {std::move(c), std::move(d)}}, p};
}

MatrixQ rotation(int n)
{
    return two_by_two(cos_series(n), -sin_series(n), sin_series(n), cos_series(n), Promise::unitary);
}

SeriesQ as_t(const SeriesQ &s) { return s.retagged(Var::t); }

// U diag(d) U^H for a constant unitary U.
MatrixQ conjugated(const std::vector<std::vector<GR>> &u, const std::vector<SeriesQ> &d, Promise p)
{
    const std::size_t n = d.size();
    const int order = d[0].order();
    MatrixQ m{static_cast<int>(n), std::vector<std::vector<SeriesQ>>(n, std::vector<SeriesQ>(n, SeriesQ(order))), p};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                m.entries[i][j] = m.entries[i][j] + scale(d[k], u[i][k] * u[j][k].conj());
    return m;
}

// A rational 2x2 unitary [[a, -conj b], [b, conj a]] with |a|^2 + |b|^2 = 1.
std::vector<std::vector<GR>> rational_unitary(Rng &rng)
{
    const GR rot = pythagorean_point(rng.rational(5));
    const GR a = q(3, 5) * rot, b = GR(mpq_class(0), mpq_class(4, 5)) * rot.conj();
    return {{a, -b.conj()}, {b, a.conj()}};
}

} // namespace

TEST(Spectra, HermitianPromiseHolds)
{
    auto m = two_by_two(SeriesQ(8), t_pow(1, 1, 8), t_pow(1, 1, 8), SeriesQ(8), Promise::hermitian);
    auto r = validate_promise(m);
    EXPECT_TRUE(r.ok);
    EXPECT_EQ(r.defect, 0.0);
}

TEST(Spectra, RotationIsUnitary)
{
    auto r = validate_promise(rotation(12));
    EXPECT_TRUE(r.ok);
}

TEST(Spectra, HermitianViolationNamesEntry)
{
    auto m = two_by_two(SeriesQ(8), t_pow(1, 0, 8), t_pow(1, 1, 8), SeriesQ(8), Promise::hermitian);
    auto r = validate_promise(m);
    EXPECT_FALSE(r.ok);
    EXPECT_EQ(r.row, 2);
    EXPECT_EQ(r.col, 1);
    EXPECT_EQ(r.order, 0);
    EXPECT_EQ(r.defect, 1.0);
}

TEST(Spectra, UnitaryViolation)
{
    auto m = two_by_two(cos_series(8), sin_series(8), sin_series(8), cos_series(8), Promise::unitary);
    EXPECT_FALSE(validate_promise(m).ok);
}

TEST(Spectra, CharpolyExamples)
{
    const int n = 10;
    auto off = two_by_two(SeriesQ(n), t_pow(1, 1, n), t_pow(1, 1, n), SeriesQ(n), Promise::hermitian);
    EXPECT_EQ(charpoly(off), SeriesPoly<GR>({-t_pow(1, 2, n), SeriesQ(n)}));

    auto tilted = two_by_two(t_pow(1, 0, n), t_pow(1, 1, n), t_pow(1, 1, n), t_pow(-1, 0, n), Promise::hermitian);
    EXPECT_EQ(charpoly(tilted), SeriesPoly<GR>({-(t_pow(1, 0, n) + t_pow(1, 2, n)), SeriesQ(n)}));

    EXPECT_EQ(charpoly(rotation(n)), SeriesPoly<GR>({t_pow(1, 0, n), -(cos_series(n) * q(2))}));
}

TEST(Spectra, CharpolyAgreesWithCofactorExpansion)
{
    Rng rng(4);
    for (int trial = 0; trial < 10; ++trial) {
        MatrixQ m{3, std::vector<std::vector<SeriesQ>>(3, std::vector<SeriesQ>(3)), Promise::none};
        for (auto &row : m.entries)
            for (auto &x : row)
                x = rng.series(6, 5);
        auto p = charpoly(m);
        const auto &a = m.entries;
        auto det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                   a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
        EXPECT_EQ(p.coeff(0), -det);
        EXPECT_EQ(p.coeff(2), -(a[0][0] + a[1][1] + a[2][2]));
    }
}

TEST(Spectra, OffDiagonalBranches)
{
    auto m = two_by_two(SeriesQ(10), t_pow(1, 1, 10), t_pow(1, 1, 10), SeriesQ(10), Promise::hermitian);
    auto res = eigen_branches(m);
    ASSERT_EQ(res.branches.size(), 2u);
    EXPECT_EQ(as_t(res.branches[0].eta)[1], q(-1));
    EXPECT_EQ(as_t(res.branches[1].eta)[1], q(1));
}

TEST(Spectra, TiltedBranchesSquareToOnePlusTSquared)
{
    const int n = 10;
    auto m = two_by_two(t_pow(1, 0, n), t_pow(1, 1, n), t_pow(1, 1, n), t_pow(-1, 0, n), Promise::hermitian);
    auto res = eigen_branches(m);
    ASSERT_EQ(res.branches.size(), 2u);
    for (const auto &b : res.branches) {
        auto l = as_t(b.eta);
        EXPECT_GE(l.known_order(), n);
        EXPECT_TRUE(agree(l * l, t_pow(1, 0, n) + t_pow(1, 2, n)));
    }
    EXPECT_EQ(as_t(res.branches[1].eta)[4], q(-1, 8));
}

TEST(Spectra, RotationBranchesAreExponentials)
{
    const int n = 10;
    auto res = eigen_branches(rotation(n));
    ASSERT_EQ(res.branches.size(), 2u);
    EXPECT_TRUE(agree(as_t(res.branches[1].eta), exp_it(n)));
    EXPECT_TRUE(agree(as_t(res.branches[0].eta), conj_series(exp_it(n))));
}

TEST(Spectra, Refusals)
{
    auto none = two_by_two(SeriesQ(6), t_pow(1, 1, 6), t_pow(1, 1, 6), SeriesQ(6), Promise::none);
    EXPECT_THROW(eigen_branches(none), precondition_error);
    auto bad = two_by_two(SeriesQ(6), t_pow(1, 0, 6), t_pow(1, 1, 6), SeriesQ(6), Promise::hermitian);
    EXPECT_THROW(eigen_branches(bad), promise_violation);
    // Identity: both eigenvalues equal to every order, so the split is provisional.
    auto id = two_by_two(t_pow(1, 0, 6), SeriesQ(6), SeriesQ(6), t_pow(1, 0, 6), Promise::hermitian);
    EXPECT_THROW(eigen_branches(id), precision_error);
}

TEST(SpectraProperties, HermitianConjugatedDiagonal)
{
    Rng rng(12);
    for (int trial = 0; trial < 15; ++trial) {
        std::vector<SeriesQ> d{as_t(random_line_branch(rng, 8)), as_t(random_line_branch(rng, 8))};
        auto m = conjugated(rational_unitary(rng), d, Promise::hermitian);
        ASSERT_TRUE(validate_promise(m).ok);
        auto res = eigen_branches(m);
        ASSERT_EQ(res.branches.size(), 2u);
        SeriesQ sum(8), prod = t_pow(1, 0, 8);
        for (const auto &b : res.branches) {
            for (int k = 0; k <= b.eta.order(); ++k)
                EXPECT_TRUE(b.eta[k].is_real());
            sum = sum + as_t(b.eta);
            prod = prod * as_t(b.eta);
        }
        EXPECT_TRUE(agree(sum, m.entries[0][0] + m.entries[1][1]));
        EXPECT_TRUE(agree(prod, m.entries[0][0] * m.entries[1][1] - m.entries[0][1] * m.entries[1][0]));
        std::vector<PuiseuxBranch<GR>> want;
        for (const auto &x : d)
            want.push_back({1, x.retagged(Var::w), 1, false, {}});
        EXPECT_TRUE(same_branch_multiset(res.branches, want));
    }
}

TEST(SpectraProperties, UnitaryConjugatedDiagonal)
{
    Rng rng(13);
    for (int trial = 0; trial < 15; ++trial) {
        std::vector<SeriesQ> d{as_t(random_circle_branch(rng, 8)), as_t(random_circle_branch(rng, 8))};
        auto m = conjugated(rational_unitary(rng), d, Promise::unitary);
        ASSERT_TRUE(validate_promise(m).ok);
        auto res = eigen_branches(m);
        for (const auto &b : res.branches) {
            auto l = as_t(b.eta);
            EXPECT_TRUE(agree(l * conj_series(l), t_pow(1, 0, 8)));
        }
    }
}
