// JSON forms of the library types. Exact values are written as rational
// strings ({"re":"p/q","im":"r/s"}) and read back bit-exactly; float values as
// [re, im] pairs. Parse errors carry a JSON-pointer-like location.
#ifndef GERM_IO_HPP
#define GERM_IO_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "chart.hpp"
#include "coefficient.hpp"
#include "errors.hpp"
#include "numeric_oracle.hpp"
#include "puiseux.hpp"
#include "series.hpp"
#include "series_poly.hpp"
#include "spectra.hpp"

namespace germ::io {

using json = nlohmann::ordered_json;

namespace detail {

[[noreturn]] inline void fail(const std::string &where, const std::string &what)
{
    throw parse_error(where + ": " + what);
}

inline const json &member(const json &j, const char *key, const std::string &where)
{
    if (!j.is_object())
        fail(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end())
        fail(where, std::string("missing \"") + key + "\"");
    return *it;
}

inline int integer(const json &j, const std::string &where)
{
    if (!j.is_number_integer())
        fail(where, "expected an integer");
    return j.get<int>();
}

inline mpq_class rational(const json &j, const std::string &where)
{
    try {
        if (j.is_string())
            return parse_rational(j.get<std::string>());
        if (j.is_number_integer())
            return mpq_class(j.get<long>());
        if (j.is_number())
            return mpq_class(j.get<double>()); // exact binary value
    } catch (const germ_error &e) {
        fail(where, e.what());
    }
    fail(where, "expected a rational string or a number");
}

inline double real(const json &j, const std::string &where)
{
    if (j.is_number())
        return j.get<double>();
    return rational(j, where).get_d();
}

} // namespace detail

// ---- coefficients -------------------------------------------------------

inline json to_json(const GaussianRational &x) { return {{"re", rational_string(x.re())}, {"im", rational_string(x.im())}}; }
inline json to_json(const Complex &x) { return json::array({x.real(), x.imag()}); }

// Cyclotomic values are written exactly when they lie in Q(i), else as floats.
inline json to_json(const Cyclotomic &x)
{
    try {
        return to_json(x.to_gaussian());
    } catch (const not_representable &) {
        return to_json(x.to_complex());
    }
}

template <class F>
F coefficient_from_json(const json &j, const std::string &where);

template <>
inline GaussianRational coefficient_from_json<GaussianRational>(const json &j, const std::string &where)
{
    if (j.is_array()) {
        if (j.size() != 2)
            detail::fail(where, "expected [re, im]");
        return {detail::rational(j[0], where + "[0]"), detail::rational(j[1], where + "[1]")};
    }
    if (j.is_object()) {
        mpq_class re = detail::rational(detail::member(j, "re", where), where + ".re");
        mpq_class im = j.contains("im") ? detail::rational(j["im"], where + ".im") : mpq_class(0);
        return {re, im};
    }
    return GaussianRational(detail::rational(j, where));
}

template <>
inline Complex coefficient_from_json<Complex>(const json &j, const std::string &where)
{
    if (j.is_array()) {
        if (j.size() != 2)
            detail::fail(where, "expected [re, im]");
        return {detail::real(j[0], where + "[0]"), detail::real(j[1], where + "[1]")};
    }
    if (j.is_object()) {
        double re = detail::real(detail::member(j, "re", where), where + ".re");
        double im = j.contains("im") ? detail::real(j["im"], where + ".im") : 0.0;
        return {re, im};
    }
    return detail::real(j, where);
}

// True when any coefficient of a series JSON value holds a float number.
inline bool series_is_float(const json &j)
{
    if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array())
        return false;
    auto has_float = [](const json &c) {
        if (c.is_number_float())
            return true;
        if (c.is_array() || c.is_object())
            for (const auto &x : c)
                if (x.is_number_float())
                    return true;
        return false;
    };
    for (const auto &c : j["coeffs"])
        if (has_float(c))
            return true;
    return false;
}

// ---- series -------------------------------------------------------------

template <class F>
json to_json(const Series<F> &s)
{
    json c = json::array();
    for (const auto &x : s.coefficients())
        c.push_back(to_json(x));
    json j{{"var", var_name(s.var())}, {"order", s.order()}, {"coeffs", c}};
    if (s.known_order() != s.order())
        j["known"] = s.known_order();
    return j;
}

template <class F>
Series<F> series_from_json(const json &j, const std::string &where, double eps = default_eps)
{
    const auto var_s = detail::member(j, "var", where);
    if (!var_s.is_string() || (var_s != "t" && var_s != "w"))
        detail::fail(where + ".var", "expected \"t\" or \"w\"");
    const Var var = var_s == "t" ? Var::t : Var::w;
    const int order = detail::integer(detail::member(j, "order", where), where + ".order");
    if (order < 0)
        detail::fail(where + ".order", "must be >= 0");
    const auto &cs = detail::member(j, "coeffs", where);
    if (!cs.is_array())
        detail::fail(where + ".coeffs", "expected an array");
    if (cs.size() > static_cast<std::size_t>(order) + 1)
        detail::fail(where + ".coeffs", "more than order + 1 coefficients");
    std::vector<F> c(static_cast<std::size_t>(order) + 1);
    for (std::size_t n = 0; n < cs.size(); ++n)
        c[n] = coefficient_from_json<F>(cs[n], where + ".coeffs[" + std::to_string(n) + "]");
    int known = order;
    if (j.contains("known")) {
        known = detail::integer(j["known"], where + ".known");
        if (known < -1 || known > order)
            detail::fail(where + ".known", "must lie in [-1, order]");
    }
    return Series<F>(std::move(c), known, var, eps);
}

// ---- polynomials --------------------------------------------------------

template <class F>
json to_json(const SeriesPoly<F> &p)
{
    json c = json::object();
    for (int j = 0; j < p.degree(); ++j)
        c[std::to_string(j)] = to_json(p.coeff(j));
    return {{"degree", p.degree()}, {"coeffs", c}};
}

inline bool poly_is_float(const json &j)
{
    if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_object())
        return false;
    for (const auto &[k, v] : j["coeffs"].items())
        if (series_is_float(v))
            return true;
    return false;
}

template <class F>
SeriesPoly<F> poly_from_json(const json &j, double eps = default_eps, const std::string &where = "$")
{
    const int d = detail::integer(detail::member(j, "degree", where), where + ".degree");
    if (d < 1)
        detail::fail(where + ".degree", "must be >= 1");
    const auto &cs = detail::member(j, "coeffs", where);
    if (!cs.is_object())
        detail::fail(where + ".coeffs", "expected an object keyed by \"0\"..\"d-1\"");
    for (const auto &[k, v] : cs.items()) {
        bool ok = !k.empty() && k.find_first_not_of("0123456789") == std::string::npos && k.size() < 9 &&
                  std::stoi(k) < d;
        if (!ok)
            detail::fail(where + ".coeffs", "unexpected key \"" + k + "\"");
    }
    std::optional<int> order;
    std::optional<Var> var;
    std::vector<std::optional<Series<F>>> given(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) {
        const std::string key = std::to_string(k);
        if (!cs.contains(key))
            continue;
        auto s = series_from_json<F>(cs[key], where + ".coeffs." + key, eps);
        if (order && (*order != s.order() || *var != s.var()))
            detail::fail(where + ".coeffs." + key, "coefficients must share variable and order");
        order = s.order();
        var = s.var();
        given[static_cast<std::size_t>(k)] = std::move(s);
    }
    if (!order)
        detail::fail(where + ".coeffs", "no coefficient given");
    std::vector<Series<F>> lower;
    for (auto &g : given)
        lower.push_back(g ? std::move(*g) : Series<F>(*order, *var, eps));
    return SeriesPoly<F>(std::move(lower));
}

// ---- branches and factorizations -----------------------------------------

template <class F>
json to_json(const PuiseuxBranch<F> &b)
{
    json j{{"e", b.e}, {"m", b.m}, {"eta", to_json(b.eta)}};
    if (b.provisional)
        j["provisional"] = true;
    if (b.witness)
        j["witness"] = *b.witness;
    return j;
}

template <class F>
json to_json(const FactorizationResult<F> &r)
{
    json bs = json::array();
    for (const auto &b : r.branches)
        bs.push_back(to_json(b));
    return {{"mode", is_exact_v<F> ? "exact" : "float"},
            {"numeric", r.numeric},
            {"completely_reducible", r.completely_reducible},
            {"provisional", r.provisional},
            {"defect", r.defect},
            {"branches", bs}};
}

template <class F>
std::vector<PuiseuxBranch<F>> branches_from_json(const json &j, double eps = default_eps, const std::string &where = "$")
{
    const auto &bs = detail::member(j, "branches", where);
    if (!bs.is_array())
        detail::fail(where + ".branches", "expected an array");
    std::vector<PuiseuxBranch<F>> out;
    for (std::size_t k = 0; k < bs.size(); ++k) {
        const std::string at = where + ".branches[" + std::to_string(k) + "]";
        PuiseuxBranch<F> b;
        b.e = detail::integer(detail::member(bs[k], "e", at), at + ".e");
        b.m = bs[k].contains("m") ? detail::integer(bs[k]["m"], at + ".m") : 1;
        if (b.e < 1 || b.m < 1)
            detail::fail(at, "e and m must be >= 1");
        b.eta = series_from_json<F>(detail::member(bs[k], "eta", at), at + ".eta", eps).retagged(Var::w);
        b.provisional = bs[k].value("provisional", false);
        if (bs[k].contains("witness"))
            b.witness = detail::integer(bs[k]["witness"], at + ".witness");
        out.push_back(std::move(b));
    }
    return out;
}

inline bool branches_are_float(const json &j)
{
    if (!j.is_object() || !j.contains("branches") || !j["branches"].is_array())
        return false;
    for (const auto &b : j["branches"])
        if (b.is_object() && b.contains("eta") && series_is_float(b["eta"]))
            return true;
    return false;
}

// ---- matrices -----------------------------------------------------------

inline Promise promise_from_string(const std::string &s, const std::string &where)
{
    if (s == "hermitian")
        return Promise::hermitian;
    if (s == "unitary")
        return Promise::unitary;
    if (s == "none")
        return Promise::none;
    detail::fail(where, "promise must be \"hermitian\", \"unitary\" or \"none\"");
}

inline bool matrix_is_float(const json &j)
{
    if (!j.is_object() || !j.contains("entries") || !j["entries"].is_array())
        return false;
    for (const auto &row : j["entries"])
        if (row.is_array())
            for (const auto &e : row)
                if (series_is_float(e))
                    return true;
    return false;
}

template <class F>
MatrixFamily<F> matrix_from_json(const json &j, double eps = default_eps, const std::string &where = "$")
{
    MatrixFamily<F> m;
    m.n = detail::integer(detail::member(j, "n", where), where + ".n");
    if (m.n < 1)
        detail::fail(where + ".n", "must be >= 1");
    const auto &p = detail::member(j, "promise", where);
    if (!p.is_string())
        detail::fail(where + ".promise", "expected a string");
    m.promise = promise_from_string(p.get<std::string>(), where + ".promise");
    const auto &rows = detail::member(j, "entries", where);
    if (!rows.is_array() || rows.size() != static_cast<std::size_t>(m.n))
        detail::fail(where + ".entries", "expected n rows");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::string at = where + ".entries[" + std::to_string(i) + "]";
        if (!rows[i].is_array() || rows[i].size() != static_cast<std::size_t>(m.n))
            detail::fail(at, "expected n entries");
        std::vector<Series<F>> row;
        for (std::size_t k = 0; k < rows[i].size(); ++k) {
            auto s = series_from_json<F>(rows[i][k], at + "[" + std::to_string(k) + "]", eps);
            if (!m.entries.empty() || !row.empty()) {
                const auto &first = m.entries.empty() ? row.front() : m.entries.front().front();
                if (first.order() != s.order() || first.var() != s.var())
                    detail::fail(at + "[" + std::to_string(k) + "]", "entries must share variable and order");
            }
            row.push_back(std::move(s));
        }
        m.entries.push_back(std::move(row));
    }
    return m;
}

template <class F>
json to_json(const MatrixFamily<F> &m)
{
    json rows = json::array();
    for (const auto &row : m.entries) {
        json r = json::array();
        for (const auto &e : row)
            r.push_back(to_json(e));
        rows.push_back(r);
    }
    return {{"n", m.n}, {"promise", promise_name(m.promise)}, {"entries", rows}};
}

inline json to_json(const PromiseReport &r)
{
    json j{{"ok", r.ok}, {"defect", r.defect}};
    if (!r.ok) {
        j["entry"] = json::array({r.row, r.col});
        j["order"] = r.order;
    }
    return j;
}

// ---- charts and curves ----------------------------------------------------

template <class F>
json to_json(const CurveChart<F> &c)
{
    return {{"p", to_json(c.p)}, {"c", to_json(c.c)}, {"h", to_json(c.h)}};
}

template <class F>
CurveChart<F> chart_from_json(const json &j, double eps = default_eps, const std::string &where = "$")
{
    CurveChart<F> c;
    c.p = coefficient_from_json<F>(detail::member(j, "p", where), where + ".p");
    c.c = coefficient_from_json<F>(detail::member(j, "c", where), where + ".c");
    c.h = series_from_json<F>(detail::member(j, "h", where), where + ".h", eps);
    if (is_zero(c.c, eps))
        detail::fail(where + ".c", "must be nonzero");
    return c;
}

// A curve given either as a built-in (with its base point) or by a parametrization.
template <class F>
struct CurveSpec {
    std::optional<Curve> builtin;
    std::optional<F> p;
    std::optional<Series<F>> parametrization;
};

inline Curve curve_from_string(const std::string &s, const std::string &where)
{
    if (s == "unit-circle")
        return Curve::unit_circle;
    if (s == "real-line")
        return Curve::real_line;
    detail::fail(where, "unknown curve \"" + s + "\" (expected unit-circle or real-line)");
}

template <class F>
CurveSpec<F> curve_from_json(const json &j, double eps = default_eps, const std::string &where = "$")
{
    CurveSpec<F> c;
    if (!j.is_object())
        detail::fail(where, "expected an object");
    if (j.contains("builtin")) {
        if (!j["builtin"].is_string())
            detail::fail(where + ".builtin", "expected a string");
        c.builtin = curve_from_string(j["builtin"].get<std::string>(), where + ".builtin");
        if (j.contains("p"))
            c.p = coefficient_from_json<F>(j["p"], where + ".p");
    } else if (j.contains("parametrization")) {
        c.parametrization = series_from_json<F>(j["parametrization"], where + ".parametrization", eps);
    } else {
        detail::fail(where, "expected \"builtin\" or \"parametrization\"");
    }
    return c;
}

inline bool curve_is_float(const json &j)
{
    if (j.is_object() && j.contains("parametrization"))
        return series_is_float(j["parametrization"]);
    return j.is_object() && j.contains("p") && j["p"].is_array() && !j["p"].empty() && j["p"][0].is_number_float();
}

// ---- witnesses and reports -----------------------------------------------

template <class F>
json to_json(const ObstructionWitness<F> &w)
{
    return {{"L", w.L},
            {"k", w.k},
            {"lambda_L", to_json(w.lambda_L)},
            {"zeta_L_actual", to_json(w.zeta_L_actual)},
            {"zeta_L_formula", to_json(w.zeta_L_formula)},
            {"zeta_L_required", to_json(w.zeta_L_required)}};
}

inline json number_or_inf(double x)
{
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    return x;
}

inline json to_json(const SampleReport &r)
{
    json s = json::array();
    for (std::size_t i = 0; i < r.samples.size(); ++i)
        s.push_back({{"t", r.samples[i]}, {"error", r.errors[i]}});
    return {{"samples", s},
            {"exponent", number_or_inf(r.exponent)},
            {"expected_exponent", number_or_inf(r.expected_exponent)},
            {"flagged", r.flagged},
            {"roots_converged", r.roots_converged}};
}

} // namespace germ::io

#endif
