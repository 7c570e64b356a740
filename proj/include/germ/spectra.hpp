// Analytic matrix families: characteristic polynomials and eigenvalue branches.
#ifndef GERM_SPECTRA_HPP
#define GERM_SPECTRA_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "coefficient.hpp"
#include "errors.hpp"
#include "puiseux.hpp"
#include "series.hpp"
#include "series_poly.hpp"

namespace germ {

enum class Promise { none, hermitian, unitary };

inline const char *promise_name(Promise p)
{
    switch (p) {
    case Promise::hermitian:
        return "hermitian";
    case Promise::unitary:
        return "unitary";
    default:
        return "none";
    }
}

template <class F>
struct MatrixFamily {
    int n = 0;
    std::vector<std::vector<Series<F>>> entries; // entries[row][col]
    Promise promise = Promise::none;

    const Series<F> &at(int i, int j) const { return entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
};

struct PromiseReport {
    double defect = 0;
    bool ok = true;
    // Worst entry (1-based row, column) and the order where it first fails.
    int row = 0, col = 0, order = -1;

    std::string describe() const
    {
        if (ok)
            return "promise holds";
        return "promise violated at entry (" + std::to_string(row) + "," + std::to_string(col) + "), order " +
               std::to_string(order) + ", defect " + std::to_string(defect);
    }
};

class promise_violation : public precondition_error {
  public:
    explicit promise_violation(PromiseReport r) : precondition_error(r.describe()), report_(r) {}
    const PromiseReport &report() const { return report_; }

  private:
    PromiseReport report_;
};

namespace detail {

template <class F>
void check_matrix(const MatrixFamily<F> &a)
{
    if (a.n < 1 || a.entries.size() != static_cast<std::size_t>(a.n))
        throw precondition_error("matrix must be n x n with n >= 1");
    for (const auto &row : a.entries)
        if (row.size() != static_cast<std::size_t>(a.n))
            throw precondition_error("matrix must be n x n with n >= 1");
}

template <class F>
void record(PromiseReport &r, const Series<F> &got, const Series<F> &want, int i, int j)
{
    const int known = std::min(got.known_order(), want.known_order());
    for (int k = 0; k <= known; ++k) {
        const F diff = got[k] - want[k];
        if (is_zero(diff, std::max(got.eps(), want.eps())))
            continue;
        const double m = magnitude(diff);
        if (r.ok || m > r.defect) {
            r.row = i + 1;
            r.col = j + 1;
            r.order = k;
        }
        r.ok = false;
        r.defect = std::max(r.defect, m);
        return;
    }
}

template <class F>
Series<F> identity_entry(const Series<F> &like, bool diag)
{
    return Series<F>::constant(from_int<F>(diag ? 1 : 0), like.order(), like.var(), like.eps());
}

template <class F>
std::vector<std::vector<Series<F>>> matmul(const std::vector<std::vector<Series<F>>> &a,
                                           const std::vector<std::vector<Series<F>>> &b)
{
    const std::size_t n = a.size();
    std::vector<std::vector<Series<F>>> c(n, std::vector<Series<F>>(n, Series<F>(a[0][0].order(), a[0][0].var(), a[0][0].eps())));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                c[i][j] = c[i][j] + a[i][k] * b[k][j];
    return c;
}

} // namespace detail

template <class F>
PromiseReport validate_promise(const MatrixFamily<F> &a)
{
    detail::check_matrix(a);
    PromiseReport r;
    if (a.promise == Promise::hermitian) {
        for (int i = 0; i < a.n; ++i)
            for (int j = 0; j <= i; ++j)
                detail::record(r, a.at(i, j), conj_series(a.at(j, i)), i, j);
    } else if (a.promise == Promise::unitary) {
        std::vector<std::vector<Series<F>>> adj(static_cast<std::size_t>(a.n));
        for (int i = 0; i < a.n; ++i)
            for (int j = 0; j < a.n; ++j)
                adj[static_cast<std::size_t>(i)].push_back(conj_series(a.at(j, i)));
        auto prod = detail::matmul(a.entries, adj);
        for (int i = 0; i < a.n; ++i)
            for (int j = 0; j < a.n; ++j) {
                const auto &p = prod[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                detail::record(r, p, detail::identity_entry(p, i == j), i, j);
            }
    }
    return r;
}

// det(zI - A) by the Faddeev-LeVerrier recurrence: M_k = A M_{k-1} + c_{n-k+1} I,
// c_{n-k} = -tr(A M_k)/k.
template <class F>
SeriesPoly<F> charpoly(const MatrixFamily<F> &a)
{
    detail::check_matrix(a);
    const std::size_t n = static_cast<std::size_t>(a.n);
    const auto &like = a.entries[0][0];
    std::vector<Series<F>> c(n + 1, Series<F>(like.order(), like.var(), like.eps()));
    c[n] = Series<F>::constant(from_int<F>(1), like.order(), like.var(), like.eps());
    std::vector<std::vector<Series<F>>> m(n, std::vector<Series<F>>(n, Series<F>(like.order(), like.var(), like.eps())));
    for (std::size_t k = 1; k <= n; ++k) {
        for (std::size_t i = 0; i < n; ++i)
            m[i][i] = m[i][i] + c[n - k + 1];
        m = detail::matmul(a.entries, m);
        Series<F> tr(like.order(), like.var(), like.eps());
        for (std::size_t i = 0; i < n; ++i)
            tr = tr + m[i][i];
        c[n - k] = scale(tr, from_rational<F>(mpq_class(-1, static_cast<long>(k))));
    }
    c.pop_back();
    return SeriesPoly<F>(std::move(c));
}

// Eigenvalue branches of a validated hermitian or unitary family.
template <class F>
FactorizationResult<F> eigen_branches(const MatrixFamily<F> &a, int target_order = -1)
{
    if (a.promise == Promise::none)
        throw precondition_error("eigen_branches needs a hermitian or unitary promise");
    auto report = validate_promise(a);
    if (!report.ok)
        throw promise_violation(report);
    auto res = factor_germ(charpoly(a), target_order);
    if (res.provisional)
        throw precision_error("eigenvalue branches are provisional at this order; increase --order");
    if (!res.completely_reducible)
        throw germ_error("internal consistency failure: validated family has a ramified eigenvalue branch");
    return res;
}

} // namespace germ

#endif
