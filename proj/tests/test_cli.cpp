#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct Run {
    int code;
    std::string out, err;
};

fs::path scratch()
{
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / ("germ_cli_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path &p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string put(const std::string &name, const std::string &text)
{
    const auto p = scratch() / name;
    std::ofstream(p) << text;
    return p.string();
}

std::string sample(const std::string &name) { return std::string(GERM_SAMPLES) + "/" + name; }

Run germ(const std::string &args)
{
    const auto out = scratch() / "stdout", err = scratch() / "stderr";
    const std::string cmd = std::string(GERM_CLI) + " " + args + " >" + out.string() + " 2>" + err.string();
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

// z^2 + c1 z + c0 with integer coefficient lists in t.
std::string quadratic(const std::vector<std::string> &c0, const std::vector<std::string> &c1, int order)
{
    auto series = [&](const std::vector<std::string> &c) {
        json a = json::array();
        for (int n = 0; n <= order; ++n)
            a.push_back(n < static_cast<int>(c.size()) ? c[n] : "0");
        return json{{"var", "t"}, {"order", order}, {"coeffs", a}};
    };
    return json{{"degree", 2}, {"coeffs", {{"0", series(c0)}, {"1", series(c1)}}}}.dump();
}

} // namespace

TEST(Cli, FactorSquareRootIsNotCompletelyReducible)
{
    auto r = germ("factor " + put("sqrt.json", quadratic({"0", "-1"}, {}, 6)));
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.err.find("not completely reducible"), std::string::npos);
    auto j = json::parse(r.out);
    EXPECT_FALSE(j["completely_reducible"].get<bool>());
    ASSERT_EQ(j["branches"].size(), 1u);
    EXPECT_EQ(j["branches"][0]["e"], 2);
}

TEST(Cli, FactorDifferenceOfSquares)
{
    auto r = germ("factor " + put("dsq.json", quadratic({"0", "0", "-1"}, {}, 6)));
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.err.rfind("completely reducible", 0), 0u);
    EXPECT_TRUE(json::parse(r.out)["completely_reducible"].get<bool>());
}

TEST(Cli, StarvedInputIsProvisional)
{
    auto r = germ("factor " + sample("starved.json"));
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("PROVISIONAL"), std::string::npos);
}

TEST(Cli, MalformedInput)
{
    auto r = germ("factor " + put("broken.json", "{\"degree\": 2, \"coeffs\": {\"0\": {\"var\": \"t\", \"order\": 2, "
                                                 "\"coeffs\": [\"0\", \"1/0\", \"x\"]}}}"));
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("$.coeffs.0.coeffs[1]"), std::string::npos) << r.err;

    r = germ("factor " + put("syntax.json", "{\"degree\": 2,"));
    EXPECT_EQ(r.code, 1);
    r = germ("factor " + (scratch() / "does_not_exist.json").string());
    EXPECT_EQ(r.code, 1);
}

TEST(Cli, FloatInputNeedsFloatMode)
{
    const std::string p = put("floaty.json", quadratic({"0", "0", "-1"}, {}, 4));
    auto j = json::parse(slurp(p));
    j["coeffs"]["0"]["coeffs"][2] = json::array({-1.0, 0.0});
    put("floaty.json", j.dump());
    EXPECT_EQ(germ("factor " + p).code, 1);
    auto r = germ("factor --mode float " + p);
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(json::parse(r.out)["completely_reducible"].get<bool>());
}

TEST(Cli, BadFlags)
{
    EXPECT_EQ(germ("factor --order 0 " + sample("sqrt_t.json")).code, 1);
    EXPECT_EQ(germ("factor --mode fuzzy " + sample("sqrt_t.json")).code, 1);
    EXPECT_EQ(germ("frobnicate").code, 1);
    EXPECT_EQ(germ("").code, 1);
    EXPECT_EQ(germ("--help").code, 0);
}

TEST(Cli, Eigencurves)
{
    auto r = germ("eigencurves --order 10 " + sample("off_diagonal.json"));
    EXPECT_EQ(r.code, 0);
    auto j = json::parse(r.out);
    ASSERT_EQ(j["factorization"]["branches"].size(), 2u);
    EXPECT_TRUE(j["oracle"]["flagged"].empty());

    r = germ("eigencurves --order 10 " + sample("rotation.json"));
    EXPECT_EQ(r.code, 0);
    j = json::parse(r.out);
    EXPECT_GE(j["oracle"]["exponent"].get<double>(), 10.5);
    EXPECT_TRUE(j["oracle"]["flagged"].empty());

    EXPECT_EQ(germ("eigencurves " + sample("no_promise.json")).code, 1);
    r = germ("eigencurves " + sample("not_hermitian.json"));
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("(2,1)"), std::string::npos);
    EXPECT_FALSE(json::parse(r.out)["promise"]["ok"].get<bool>());
}

TEST(Cli, ObstructRealLine)
{
    auto r = germ("obstruct --curve real-line " + sample("sqrt_t.json"));
    EXPECT_EQ(r.code, 3);
    auto j = json::parse(r.out);
    EXPECT_EQ(j["branches"][0]["witness"]["L"], 1);

    r = germ("obstruct --curve real-line " + sample("difference_of_squares.json"));
    EXPECT_EQ(r.code, 0);
    for (const auto &b : json::parse(r.out)["branches"])
        EXPECT_TRUE(b["on_curve"].get<bool>());
}

TEST(Cli, ObstructUnitCircle)
{
    auto r = germ("obstruct --order 10 --curve unit-circle " + sample("two_cosine.json"));
    EXPECT_EQ(r.code, 0);
    for (const auto &b : json::parse(r.out)["branches"])
        EXPECT_EQ(b["max_defect"].get<double>(), 0.0);
    // The cosine branches are not real, so the real line refutes them.
    EXPECT_EQ(germ("obstruct --order 10 --curve real-line " + sample("two_cosine.json")).code, 3);
    // z^2 - t is based at 0, which is off the unit circle.
    EXPECT_EQ(germ("obstruct --curve unit-circle " + sample("sqrt_t.json")).code, 1);
    EXPECT_EQ(germ("obstruct " + sample("sqrt_t.json")).code, 1);
}

TEST(Cli, ObstructCurveFile)
{
    auto r = germ("obstruct --curve file:" + sample("parabola.json") + " " + sample("sqrt_t.json"));
    EXPECT_EQ(r.code, 3);
}

TEST(Cli, Chart)
{
    auto r = germ("chart " + sample("parabola.json"));
    EXPECT_EQ(r.code, 0);
    auto h = json::parse(r.out)["h"]["coeffs"];
    EXPECT_EQ(h[0]["re"], "0");
    EXPECT_EQ(h[1]["re"], "0");
    EXPECT_EQ(h[2]["re"], "1");
    EXPECT_EQ(h[3]["re"], "0");

    r = germ("chart --order 6 --curve unit-circle");
    EXPECT_EQ(r.code, 0);
    h = json::parse(r.out)["h"]["coeffs"];
    EXPECT_EQ(h[2]["re"], "1/2");
    EXPECT_EQ(h[4]["re"], "1/8");

    auto cusp = json{{"parametrization", {{"var", "t"}, {"order", 4}, {"coeffs", {"0", "0", "1", {{"re", "0"}, {"im", "1"}}, "0"}}}}};
    r = germ("chart " + put("cusp.json", cusp.dump()));
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("f'(0) = 0"), std::string::npos);
}

TEST(Cli, VerifyRoundTrip)
{
    const std::string poly = sample("mixed.json");
    const std::string fact = (scratch() / "mixed_fact.json").string();
    ASSERT_EQ(germ("factor --order 6 -o " + fact + " " + poly).code, 0);
    auto r = germ("verify " + poly + " " + fact);
    EXPECT_EQ(r.code, 0);
    auto j = json::parse(r.out);
    EXPECT_EQ(j["defect"].get<double>(), 0.0);
    EXPECT_TRUE(j["ok"].get<bool>());
}

TEST(Cli, VerifyMissingFactor)
{
    const std::string poly = sample("difference_of_squares.json");
    auto j = json::parse(germ("factor " + poly).out);
    j["branches"].erase(1);
    auto r = germ("verify " + poly + " " + put("short.json", j.dump()));
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("degree mismatch"), std::string::npos);
}

TEST(Cli, VerifyFloatPerturbation)
{
    const std::string poly = sample("difference_of_squares.json");
    auto j = json::parse(germ("factor --mode float " + poly).out);
    auto &c = j["branches"][0]["eta"]["coeffs"][1];
    ASSERT_TRUE(c.is_array());
    c[0] = c[0].get<double>() + 1e-6;
    auto r = germ("verify --mode float " + poly + " " + put("nudged.json", j.dump()));
    EXPECT_EQ(r.code, 1);
    const double d = json::parse(r.out)["defect"].get<double>();
    EXPECT_GT(d, 0.5e-6);
    EXPECT_LT(d, 5e-6);
}

TEST(Cli, Deterministic)
{
    for (const std::string args : {"factor " + sample("mixed.json"), "eigencurves " + sample("tilted.json"),
                                   "obstruct --curve real-line " + sample("sqrt_t.json")}) {
        const auto a = germ(args), b = germ(args);
        EXPECT_EQ(a.code, b.code);
        EXPECT_EQ(a.out, b.out) << args;
        EXPECT_FALSE(a.out.empty());
    }
}

TEST(Cli, OutputFile)
{
    const auto path = scratch() / "out.json";
    auto r = germ("factor -o " + path.string() + " " + sample("sqrt_t.json"));
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    EXPECT_EQ(json::parse(slurp(path))["branches"][0]["e"], 2);
}
