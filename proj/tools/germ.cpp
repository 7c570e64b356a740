// germ: command-line front end over JSON files.
//
//   germ factor poly.json            factor a monic polynomial
//   germ eigencurves matrix.json     eigenvalue branches + numeric cross-check
//   germ obstruct poly.json --curve unit-circle
//   germ chart curve.json            chart (p, c, h) of a curve germ
//   germ verify poly.json fact.json  reconstruct and compare
//
// Exit codes: 0 ok, 1 error, 2 provisional / undecided at this precision,
// 3 the curve hypothesis is refuted.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include <germ/chart.hpp>
#include <germ/io.hpp>
#include <germ/numeric_oracle.hpp>
#include <germ/puiseux.hpp>
#include <germ/spectra.hpp>

using namespace germ;
using io::json;

namespace {

enum Exit { ok = 0, error = 1, provisional = 2, refuted = 3 };

struct Config {
    int order = default_order;
    std::string mode = "exact";
    double eps = default_eps;
    std::string curve;
    std::string samples;
    std::string output;
    std::vector<std::string> inputs;

    bool exact() const { return mode == "exact"; }
};

json read_json(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw parse_error(path + ": cannot open file");
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw parse_error(path + ": " + e.what());
    }
}

void write_json(const Config &cfg, const json &j)
{
    const std::string text = j.dump(2) + "\n";
    if (cfg.output.empty() || cfg.output == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.output);
    if (!out)
        throw parse_error(cfg.output + ": cannot write file");
    out << text;
}

void require_exact_input(const Config &cfg, bool is_float, const std::string &what)
{
    if (cfg.exact() && is_float)
        throw parse_error(what + ": floating-point coefficients need --mode float");
}

std::vector<double> parse_samples(const std::string &s)
{
    if (s.empty())
        return default_samples();
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos)
                throw std::invalid_argument(item);
        } catch (const std::exception &) {
            throw parse_error("--samples: \"" + item + "\" is not a number");
        }
    }
    return out;
}

AnyFactorization factor_input(const Config &cfg, const json &j, const std::string &where)
{
    if (cfg.exact()) {
        require_exact_input(cfg, io::poly_is_float(j), where);
        return factor_with_fallback(io::poly_from_json<GaussianRational>(j, cfg.eps), cfg.eps, cfg.order);
    }
    return factor_germ(io::poly_from_json<Complex>(j, cfg.eps), cfg.order);
}

int cmd_factor(const Config &cfg)
{
    const auto r = factor_input(cfg, read_json(cfg.inputs.at(0)), cfg.inputs.at(0));
    return std::visit(
        [&](const auto &res) {
            write_json(cfg, io::to_json(res));
            std::cerr << (res.completely_reducible ? "completely reducible" : "not completely reducible");
            if (res.provisional)
                std::cerr << " (PROVISIONAL: repeated or unresolved branches at this order)";
            if (res.numeric)
                std::cerr << " [numeric: exact roots unavailable]";
            std::cerr << "\n";
            return res.provisional ? Exit::provisional : Exit::ok;
        },
        r);
}

template <class F>
MatrixFamily<Complex> to_float(const MatrixFamily<F> &m, double eps)
{
    MatrixFamily<Complex> out{m.n, {}, m.promise};
    for (const auto &row : m.entries) {
        std::vector<Series<Complex>> r;
        for (const auto &e : row)
            r.push_back(germ::to_float(e, eps));
        out.entries.push_back(std::move(r));
    }
    return out;
}

template <class F>
int eigencurves(const Config &cfg, const MatrixFamily<F> &m, bool numeric)
{
    if (m.promise == Promise::none) {
        std::cerr << "error: matrix has promise \"none\"; eigenvalue curves need hermitian or unitary\n";
        return Exit::error;
    }
    const auto report = validate_promise(m);
    if (!report.ok) {
        std::cerr << "error: " << report.describe() << "\n";
        write_json(cfg, json{{"promise", io::to_json(report)}});
        return Exit::error;
    }
    auto res = eigen_branches(m, cfg.order);
    res.numeric = numeric;
    const auto oracle = sample_compare(res, charpoly(m), parse_samples(cfg.samples));
    write_json(cfg, json{{"promise", io::to_json(report)}, {"factorization", io::to_json(res)}, {"oracle", io::to_json(oracle)}});
    std::cerr << res.branches.size() << " analytic eigenvalue branches; oracle exponent "
              << io::number_or_inf(oracle.exponent).dump() << "\n";
    if (!oracle.flagged.empty())
        std::cerr << "warning: " << oracle.flagged.size() << " samples exceed the truncation error bound\n";
    return Exit::ok;
}

int cmd_eigencurves(const Config &cfg)
{
    const json j = read_json(cfg.inputs.at(0));
    if (!cfg.exact())
        return eigencurves(cfg, io::matrix_from_json<Complex>(j, cfg.eps), false);
    require_exact_input(cfg, io::matrix_is_float(j), cfg.inputs.at(0));
    const auto m = io::matrix_from_json<GaussianRational>(j, cfg.eps);
    try {
        return eigencurves(cfg, m, false);
    } catch (const not_representable &) {
        return eigencurves(cfg, to_float(m, cfg.eps), true);
    }
}

// The curve named by --curve: a built-in, or file:<path> holding curve JSON.
template <class F>
io::CurveSpec<F> curve_spec(const Config &cfg)
{
    if (cfg.curve.empty())
        throw parse_error("--curve is required (unit-circle, real-line or file:<path>)");
    if (cfg.curve.rfind("file:", 0) == 0) {
        const std::string path = cfg.curve.substr(5);
        const json j = read_json(path);
        require_exact_input(cfg, io::curve_is_float(j), path);
        return io::curve_from_json<F>(j, cfg.eps, path);
    }
    io::CurveSpec<F> s;
    s.builtin = io::curve_from_string(cfg.curve, "--curve");
    return s;
}

class base_point_mismatch : public precondition_error {
  public:
    using precondition_error::precondition_error;
};

template <class F>
CurveChart<F> chart_at(const io::CurveSpec<F> &spec, const F &p, int order, double eps)
{
    if (spec.builtin) {
        if (spec.p && !is_zero(*spec.p - p, eps))
            throw base_point_mismatch("chart base point differs from the branch base point");
        try {
            return builtin_chart(*spec.builtin, p, order, eps);
        } catch (const precondition_error &e) {
            throw base_point_mismatch(std::string("branch base point is off the curve: ") + e.what());
        }
    }
    auto chart = chart_from_parametrization(*spec.parametrization);
    if (!is_zero(chart.p - p, eps))
        throw base_point_mismatch("chart base point differs from the branch base point");
    return chart;
}

template <class F>
int obstruct(const Config &cfg, const FactorizationResult<F> &res)
{
    const auto spec = curve_spec<F>(cfg);
    json out = json::array();
    bool refute = false, undecided = res.provisional;
    std::string why;
    for (std::size_t i = 0; i < res.branches.size(); ++i) {
        const auto &b = res.branches[i];
        const auto chart = chart_at(spec, b.eta[0], b.eta.order(), cfg.eps);
        json entry{{"branch", i}, {"e", b.e}, {"m", b.m}};
        if (b.e == 1) {
            const auto defects = branch_on_curve_defect(b, chart);
            bool on = true;
            for (const auto &d : defects)
                on = on && is_zero_series(d);
            entry["defect"] = io::to_json(defects.front());
            entry["max_defect"] = max_defect(defects);
            entry["on_curve"] = on;
            if (!on && !refute)
                why = "branch " + std::to_string(i) + " leaves the curve";
            refute = refute || !on;
        } else {
            const auto w = obstruction_witness(b, chart);
            if (w) {
                entry["witness"] = io::to_json(*w);
                if (!refute)
                    why = "branch " + std::to_string(i) + " has witness L = " + std::to_string(w->L) +
                          ", k = " + std::to_string(w->k);
                refute = true;
            } else {
                entry["witness"] = nullptr;
                undecided = true;
            }
        }
        out.push_back(entry);
    }
    write_json(cfg, json{{"factorization", io::to_json(res)}, {"branches", out}});
    if (refute) {
        std::cerr << "curve hypothesis refuted: " << why << "\n";
        return Exit::refuted;
    }
    std::cerr << (undecided ? "no contradiction found (PROVISIONAL)" : "all branches lie on the curve") << "\n";
    return undecided ? Exit::provisional : Exit::ok;
}

int cmd_obstruct(const Config &cfg)
{
    const auto r = factor_input(cfg, read_json(cfg.inputs.at(0)), cfg.inputs.at(0));
    try {
        return std::visit([&](const auto &res) { return obstruct(cfg, res); }, r);
    } catch (const base_point_mismatch &e) {
        std::cerr << "error: " << e.what() << "\n";
        return Exit::error;
    }
}

template <class F>
int chart(const Config &cfg, const io::CurveSpec<F> &spec)
{
    CurveChart<F> c;
    if (spec.builtin) {
        const F p = spec.p ? *spec.p : from_int<F>(*spec.builtin == Curve::unit_circle ? 1 : 0);
        c = builtin_chart(*spec.builtin, p, cfg.order, cfg.eps);
    } else {
        c = chart_from_parametrization(*spec.parametrization);
    }
    write_json(cfg, io::to_json(c));
    return Exit::ok;
}

int cmd_chart(const Config &cfg)
{
    json j;
    if (!cfg.inputs.empty()) {
        j = read_json(cfg.inputs[0]);
    } else if (!cfg.curve.empty() && cfg.curve.rfind("file:", 0) != 0) {
        j = json{{"builtin", cfg.curve}};
    } else if (!cfg.curve.empty()) {
        j = read_json(cfg.curve.substr(5));
    } else {
        throw parse_error("chart needs a curve file or --curve");
    }
    if (cfg.exact()) {
        require_exact_input(cfg, io::curve_is_float(j), "curve");
        return chart(cfg, io::curve_from_json<GaussianRational>(j, cfg.eps));
    }
    return chart(cfg, io::curve_from_json<Complex>(j, cfg.eps));
}

template <class F>
int verify(const Config &cfg, const SeriesPoly<F> &p, const std::vector<PuiseuxBranch<F>> &branches)
{
    int total = 0;
    for (const auto &b : branches)
        total += b.e * b.m;
    if (total != p.degree()) {
        std::cerr << "error: degree mismatch: branches account for " << total << " roots, polynomial has degree "
                  << p.degree() << "\n";
        return Exit::error;
    }
    const double defect = reconstruction_defect(branches, p);
    json ids = json::array();
    double worst = defect;
    for (const auto &b : branches) {
        const double d = verify_newton_identity(b, p);
        ids.push_back(d);
        worst = std::max(worst, d);
    }
    const double tol = is_exact_v<F> ? 0.0 : 10 * cfg.eps;
    const bool good = worst <= tol;
    write_json(cfg, json{{"defect", defect}, {"identity_defects", ids}, {"tolerance", tol}, {"ok", good}});
    std::cerr << (good ? "factorization verified" : "factorization does not reproduce the polynomial") << " (defect "
              << worst << ")\n";
    return good ? Exit::ok : Exit::error;
}

int cmd_verify(const Config &cfg)
{
    if (cfg.inputs.size() != 2)
        throw parse_error("verify needs a polynomial file and a factorization file");
    const json pj = read_json(cfg.inputs[0]);
    const json fj = read_json(cfg.inputs[1]);
    if (cfg.exact()) {
        require_exact_input(cfg, io::poly_is_float(pj), cfg.inputs[0]);
        require_exact_input(cfg, io::branches_are_float(fj), cfg.inputs[1]);
        return verify(cfg, io::poly_from_json<GaussianRational>(pj, cfg.eps),
                      io::branches_from_json<GaussianRational>(fj, cfg.eps));
    }
    return verify(cfg, io::poly_from_json<Complex>(pj, cfg.eps), io::branches_from_json<Complex>(fj, cfg.eps));
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Factorization of monic polynomials over germs of analytic functions"};
    app.fallthrough();
    app.require_subcommand(1);
    Config cfg;
    app.add_option("--order", cfg.order, "Truncation order N in t")->check(CLI::PositiveNumber);
    app.add_option("--mode", cfg.mode, "Coefficient arithmetic")->check(CLI::IsMember({"exact", "float"}));
    app.add_option("--eps", cfg.eps, "Zero tolerance for float mode")->check(CLI::PositiveNumber);
    app.add_option("--curve", cfg.curve, "unit-circle, real-line or file:<path>");
    app.add_option("--samples", cfg.samples, "Comma-separated sample points for the numeric oracle");
    app.add_option("-o,--output", cfg.output, "Output file (default stdout)");

    struct Sub {
        const char *name, *help;
        int (*run)(const Config &);
        int inputs;
    };
    const Sub subs[] = {
        {"factor", "Factor a monic polynomial", cmd_factor, 1},
        {"eigencurves", "Eigenvalue branches of a hermitian or unitary family", cmd_eigencurves, 1},
        {"obstruct", "Test every branch against a curve", cmd_obstruct, 1},
        {"chart", "Local chart of a curve", cmd_chart, 0},
        {"verify", "Check a factorization against its polynomial", cmd_verify, 2},
    };
    int (*run)(const Config &) = nullptr;
    for (const auto &s : subs) {
        auto *sub = app.add_subcommand(s.name, s.help);
        auto *in = sub->add_option("inputs", cfg.inputs, "Input JSON file(s)");
        if (s.inputs > 0)
            in->required()->expected(s.inputs);
        else
            in->expected(0, 1);
        sub->callback([&run, &s] { run = s.run; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? Exit::ok : Exit::error;
    }

    try {
        return run(cfg);
    } catch (const precision_error &e) {
        std::cerr << "undecided: " << e.what() << "\n";
        return Exit::provisional;
    } catch (const promise_violation &e) {
        std::cerr << "error: " << e.what() << "\n";
        return Exit::error;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return Exit::error;
    }
}
