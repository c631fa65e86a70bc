#include <catch_amalgamated.hpp>

#include "cli.hpp"
#include "psep/io.hpp"

#include <boost/math/special_functions/zeta.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
constexpr double pi = std::numbers::pi;

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = psep::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

psep::json run_json(std::vector<std::string> args) {
    const auto o = run(std::move(args));
    INFO(o.err);
    REQUIRE(o.code == 0);
    return psep::json::parse(o.out);
}

std::filesystem::path data_dir() {
    const char* env = std::getenv("PSEP_TEST_DATA");
    const auto dir = std::filesystem::path(env ? env : std::filesystem::temp_directory_path().string()) / "cli_data";
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}
}  // namespace

TEST_CASE("gross", "[cli][gross]") {
    const auto a = run_json({"gross", "--measure", "arcsine", "--terms", "8"});
    CHECK_THAT(a["functionals"]["area"].get<double>(), WithinAbs(pi, 1e-12));
    CHECK(a["tool"] == "psep");
    CHECK(a["version"] == psep::tool_version);
    CHECK(a["seed"] == 42);
    CHECK(a["config"]["terms"] == 8);

    const auto u = run_json({"gross", "--measure", "uniform:-1,1", "--terms", "10000"});
    CHECK_THAT(u["functionals"]["area"].get<double>(), WithinAbs(56 * boost::math::zeta(3.0) / (pi * pi * pi), 1e-6));

    const auto p = run({"gross", "--measure", "atoms:0:1"});
    CHECK(p.code == 0);
    CHECK_THAT(p.err, ContainsSubstring("degenerate"));
    const auto pj = psep::json::parse(p.out);
    CHECK(pj["functionals"]["area"] == 0.0);
    CHECK(pj["degenerate"] == true);

    const auto svg = run({"gross", "--measure", "uniform:-1,1", "--terms", "16", "--format", "svg"});
    CHECK(svg.code == 0);
    CHECK_THAT(svg.out, ContainsSubstring("<svg"));

    CHECK(run({"gross", "--measure", "nonsense"}).code == 2);
    CHECK(run({"gross", "--measure", "uniform:0,2"}).code == 2);
    CHECK(run({"gross"}).code == 2);
    CHECK(run({"gross", "--measure", "arcsine", "--format", "csv"}).code == 2);
}

TEST_CASE("analyze", "[cli][analyze]") {
    const auto dir = data_dir();
    const auto file = dir / "domain.json";
    CHECK(run({"gross", "--measure", "uniform:-1,1", "--terms", "64", "--out", file.string()}).code == 0);
    // The gross output embeds the domain; analyze reads a bare domain file.
    const auto g = psep::json::parse(slurp(file));
    std::ofstream(dir / "bare.json") << psep::dump(g["domain"]);
    const auto a = run_json({"analyze", "--domain", "series:" + (dir / "bare.json").string()});
    CHECK(a["univalence"]["passed"] == true);
    CHECK(a["area_trial"]["ok"] == true);
    CHECK_THAT(a["functionals"]["area"].get<double>(), WithinRel(g["functionals"]["area"].get<double>(), 1e-15));

    CHECK(run({"analyze", "--domain", "disk"}).code == 2);
}

TEST_CASE("sample and determinism", "[cli][sample]") {
    const auto a = run({"sample", "--domain", "diskexit:0.5", "--n", "1000", "--seed", "7"});
    const auto b = run({"sample", "--domain", "diskexit:0.5", "--n", "1000", "--seed", "7"});
    const auto c = run({"sample", "--domain", "diskexit:0.5", "--n", "1000", "--seed", "8"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out != c.out);
    CHECK_THAT(a.out, ContainsSubstring("seed=7"));

    const auto w = run_json({"sample", "--domain", "rect:0.5,0.5", "--n", "2000", "--format", "json"});
    CHECK(w["samples"]["sampler"] == psep::to_string(psep::SamplerKind::WalkOnSpheres));
    CHECK(w["samples"]["values"].size() == 2000);

    CHECK(run({"sample", "--domain", "rect:0.5,0.5", "--sampler", "mobius"}).code == 2);
    CHECK(run({"sample", "--domain", "disk", "--n", "1.5"}).code == 2);
}

TEST_CASE("symmetrize", "[cli][symmetrize]") {
    const auto s = run_json({"symmetrize", "--domain", "diskexit:0.9", "--n", "100000", "--terms", "200"});
    CHECK(s["report"]["rho"].get<double>() < 1.0);
    CHECK(s["config"]["n"] == 100000);

    const auto dir = data_dir();
    const auto p1 = dir / "sym1.json", p2 = dir / "sym2.json";
    for (const auto& p : {p1, p2})
        CHECK(run({"symmetrize", "--domain", "disk", "--n", "20000", "--seed", "3", "--out", p.string()}).code == 0);
    CHECK(slurp(p1) == slurp(p2));

    const auto bad = run({"symmetrize", "--domain", "bm-uniform"});
    CHECK(bad.code == 2);
    CHECK_THAT(bad.err, ContainsSubstring("non-goal"));

    const auto svg = run({"symmetrize", "--domain", "rect:0.5,0.5", "--n", "5000", "--terms", "50", "--format", "svg"});
    CHECK(svg.code == 0);
    CHECK_THAT(svg.out, ContainsSubstring("<svg"));
}

TEST_CASE("seminorm", "[cli][seminorm]") {
    const auto one = run_json({"seminorm", "--mode", "cos:1", "--s", "0.5", "--grid", "4096"});
    const auto three = run_json({"seminorm", "--mode", "cos:3", "--s", "0.5", "--grid", "4096"});
    CHECK_THAT(three["report"]["gagliardo_value"].get<double>() / one["report"]["gagliardo_value"].get<double>(),
               WithinRel(3.0, 1e-2));
    CHECK(three["eta"]["relative_spread"].get<double>() < 1e-2);

    const auto c = run_json({"seminorm", "--mode", "const"});
    CHECK(c["report"]["gagliardo_value"] == 0.0);
    CHECK(c["report"]["fourier_value"] == 0.0);

    // pi times the Fourier value of the rearranged uniform trace is the Gross area.
    const auto u = run_json({"seminorm", "--measure", "uniform:-1,1", "--s", "0.5", "--grid", "4096"});
    const auto g = run_json({"gross", "--measure", "uniform:-1,1", "--terms", "2047"});
    CHECK_THAT(pi * u["report"]["fourier_value"].get<double>(),
               WithinRel(g["functionals"]["area"].get<double>(), 1e-3));

    CHECK(run({"seminorm", "--mode", "cos:1", "--s", "1.5"}).code == 2);
    CHECK(run({"seminorm", "--mode", "cos:1", "--s", "0"}).code == 2);
    CHECK(run({"seminorm", "--mode", "tan:2"}).code == 2);
    CHECK(run({"seminorm"}).code == 2);

    const auto dir = data_dir();
    std::ofstream(dir / "trace.csv") << psep::trace_csv(psep::BoundaryTrace::sample(256, [](double t) { return std::cos(t); }));
    const auto t = run_json({"seminorm", "--trace", (dir / "trace.csv").string()});
    CHECK_THAT(t["report"]["fourier_value"].get<double>(), WithinAbs(1.0, 1e-12));
}

TEST_CASE("sweep", "[cli][sweep]") {
    const auto s = run({"sweep", "--kind", "shifted-disk", "--params", "0,0.5", "--n", "20000", "--terms", "50"});
    REQUIRE(s.code == 0);
    CHECK_THAT(s.out, ContainsSubstring("seed=42"));
    const auto j = run_json({"sweep", "--kind", "thin-rectangle", "--params", "1,4", "--n", "5000", "--terms", "50",
                             "--format", "json"});
    CHECK(j["rows"].size() == 2);
    CHECK(j["rows"][0]["closed_form_variance"].is_null());
    CHECK(run({"sweep", "--kind", "ellipse"}).code == 2);
    CHECK(run({"sweep", "--params", "a,b"}).code == 2);
}

TEST_CASE("verify and plot", "[cli][verify]") {
    const auto a = run({"verify", "--suite", "fast"});
    const auto b = run({"verify", "--suite", "fast"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    const auto j = psep::json::parse(a.out);
    CHECK(j["all_passed"] == true);
    CHECK(j["criteria"].size() == 8);

    const auto text = run({"verify", "--suite", "fast", "--format", "text"});
    CHECK_THAT(text.out, ContainsSubstring("PASS  1"));
    CHECK(run({"verify", "--suite", "everything"}).code == 2);

    const auto p = run({"plot", "--measure", "arcsine", "--terms", "4"});
    CHECK(p.code == 0);
    CHECK_THAT(p.out, ContainsSubstring("<svg"));
    CHECK(run({"plot", "--domain", "disk"}).code == 2);

    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
}
