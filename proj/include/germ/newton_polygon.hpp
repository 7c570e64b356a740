#ifndef GERM_NEWTON_POLYGON_HPP
#define GERM_NEWTON_POLYGON_HPP

#include <cstddef>
#include <numeric>
#include <optional>
#include <vector>

#include "series.hpp"
#include "series_poly.hpp"

namespace germ {

struct PolygonPoint {
    int j = 0;
    std::optional<int> height; // valuation of the z^j coefficient; nullopt = INDETERMINATE
    int known = 0;             // known_order of that coefficient
};

// Lower-hull edge from (j_start, h_start) to (j_end, h_end). Its slope is
// -num/den in lowest terms; root branches on this edge start like c t^(num/den).
struct PolygonEdge {
    int j_start = 0, h_start = 0;
    int j_end = 0, h_end = 0;
    int num = 0, den = 1;

    int length() const { return j_end - j_start; }
    // q * h_j + p * j along the edge (p/q = num/den).
    int intercept() const { return den * h_start + num * j_start; }
};

struct NewtonPolygon {
    std::vector<PolygonPoint> points;
    std::vector<PolygonEdge> edges; // left to right, slopes strictly increasing
    // Leading coefficients that vanish to their known order; the corresponding
    // roots are zero to precision and are split off before the hull is taken.
    int zero_roots = 0;
    // Nothing but the last point is determinate (P = z^r * unit up to truncation).
    bool degenerate = false;
    // Some indeterminate point could still lie below the hull.
    bool uncertain = false;
};

namespace detail {

// (j, h) strictly below the line through (ja, ha) and (jb, hb), jb > ja.
inline bool below_line(long j, long h, long ja, long ha, long jb, long hb)
{
    return (h - ha) * (jb - ja) < (hb - ha) * (j - ja);
}

// Lower convex hull over the determinate points of `pts` with index >= first.
inline NewtonPolygon build_polygon(std::vector<PolygonPoint> pts)
{
    NewtonPolygon poly;
    poly.points = pts;
    int first = -1;
    for (const auto &p : pts)
        if (p.height) {
            first = p.j;
            break;
        }
    const int last = pts.back().j;
    if (first < 0) {
        poly.zero_roots = last;
        poly.degenerate = true;
        return poly;
    }
    poly.zero_roots = first;
    poly.degenerate = first == last;

    std::vector<const PolygonPoint *> hull;
    for (const auto &p : pts) {
        if (!p.height || p.j < first)
            continue;
        while (hull.size() >= 2) {
            const auto *a = hull[hull.size() - 2];
            const auto *b = hull.back();
            // drop b unless it lies strictly below segment a -> p
            long cross = static_cast<long>(*b->height - *a->height) * (p.j - a->j) -
                         static_cast<long>(*p.height - *a->height) * (b->j - a->j);
            if (cross >= 0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(&p);
    }
    for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
        PolygonEdge e;
        e.j_start = hull[k]->j;
        e.h_start = *hull[k]->height;
        e.j_end = hull[k + 1]->j;
        e.h_end = *hull[k + 1]->height;
        int rise = e.h_start - e.h_end;
        int run = e.j_end - e.j_start;
        int g = std::gcd(rise, run);
        e.num = rise / g;
        e.den = run / g;
        poly.edges.push_back(e);
    }
    for (const auto &p : pts) {
        if (p.height || p.j <= first)
            continue;
        for (const auto &e : poly.edges)
            if (p.j > e.j_start && p.j < e.j_end &&
                below_line(p.j, p.known + 1, e.j_start, e.h_start, e.j_end, e.h_end))
                poly.uncertain = true;
    }
    return poly;
}

template <class F>
std::vector<PolygonPoint> polygon_points(const std::vector<Series<F>> &coeffs, int upto)
{
    std::vector<PolygonPoint> pts;
    for (int j = 0; j <= upto; ++j) {
        const auto &s = coeffs[static_cast<std::size_t>(j)];
        pts.push_back({j, valuation(s), s.known_order()});
    }
    return pts;
}

} // namespace detail

// Newton polygon of a monic polynomial over points (j, val a_j), j = 0..d.
template <class F>
NewtonPolygon newton_polygon(const SeriesPoly<F> &p)
{
    return detail::build_polygon(detail::polygon_points(p.full(), p.degree()));
}

} // namespace germ

#endif
