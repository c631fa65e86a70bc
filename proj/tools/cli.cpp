#include "cli.hpp"

#include "psep/acceptance.hpp"
#include "psep/error.hpp"
#include "psep/io.hpp"
#include "psep/stats.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace psep::cli {

namespace {

struct Flags {
    std::uint64_t seed = 42;
    std::string out;
    std::string format;
    Eigen::Index terms = default_truncation;
    std::string measure;
    std::string domain;
    std::string mode;
    std::string trace;
    std::string sampler = "auto";
    std::string suite = "fast";
    std::string kind = "shifted-disk";
    std::string params;
    double n = 1e5;
    double eps = 1e-6;
    double s = 0.5;
    double rect_area = 1.0;
    Eigen::Index grid = 4096;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json envelope(const std::string& command, const Flags& f, json config) {
    return {{"tool", "psep"}, {"version", tool_version}, {"command", command},
            {"seed", f.seed},  {"config", std::move(config)}};
}

void emit(const Flags& f, const std::string& text, std::ostream& out) {
    if (f.out.empty()) {
        out << text;
        return;
    }
    std::ofstream file(f.out, std::ios::binary);
    if (!file) throw DomainError("cannot write " + f.out);
    file << text;
}

std::size_t sample_count(double n) {
    if (!(n >= 2.0) || n != std::floor(n) || n > 1e12) throw UsageError("--n must be an integer >= 2");
    return static_cast<std::size_t>(n);
}

Eigen::Index even_grid_at_least(Eigen::Index g, Eigen::Index need) {
    g = std::max(g, need);
    return g + (g % 2);
}

void require_format(const Flags& f, std::initializer_list<const char*> allowed) {
    for (const char* a : allowed)
        if (f.format == a) return;
    throw UsageError("unsupported --format '" + f.format + "' for this command");
}

PowerSeriesDomain gross_or_degenerate(const Measure& m, Eigen::Index terms, bool& degenerate) {
    degenerate = variance(m) == 0.0;
    if (!degenerate) return gross_domain(m, terms);
    return {Eigen::VectorXcd::Zero(terms), "gross(" + m.describe() + ")"};
}

json functionals(const PowerSeriesDomain& d) {
    return {{"area", area(d)},
            {"skorokhod_energy", to_json(skorokhod_energy(d))},
            {"expected_exit_time", expected_exit_time(d)}};
}

int cmd_gross(Flags& f, std::ostream& out, std::ostream& err) {
    if (f.format.empty()) f.format = "json";
    require_format(f, {"json", "svg"});
    const Measure m = parse_measure(f.measure);
    bool degenerate = false;
    const PowerSeriesDomain d = gross_or_degenerate(m, f.terms, degenerate);
    if (degenerate) err << "warning: point-mass law, the Gross domain is degenerate (area 0)\n";

    if (f.format == "svg") {
        emit(f, boundary_svg(d, even_grid_at_least(f.grid, 2 * f.terms + 2)), out);
        return 0;
    }
    json j = envelope("gross", f, {{"measure", f.measure}, {"terms", f.terms}});
    j["measure"] = {{"describe", m.describe()}, {"mean", mean(m)}, {"variance", variance(m)}};
    j["degenerate"] = degenerate;
    if (degenerate) j["warning"] = "point-mass law, degenerate domain";
    j["functionals"] = functionals(d);
    j["domain"] = to_json(d);
    emit(f, dump(j), out);
    return 0;
}

int cmd_analyze(Flags& f, std::ostream& out, std::ostream&) {
    if (f.format.empty()) f.format = "json";
    require_format(f, {"json"});
    PowerSeriesDomain d;
    if (!f.measure.empty()) {
        bool degenerate = false;
        d = gross_or_degenerate(parse_measure(f.measure), f.terms, degenerate);
    } else {
        const auto src = parse_domain(f.domain);
        if (!std::holds_alternative<PowerSeriesDomain>(src))
            throw UsageError("analyze needs --measure or --domain series:<file>");
        d = std::get<PowerSeriesDomain>(src);
    }
    const Eigen::Index g = even_grid_at_least(f.grid, 4 * d.truncation());
    json j = envelope("analyze", f, {{"measure", f.measure}, {"domain", f.domain}, {"terms", f.terms}, {"grid", g}});
    j["provenance"] = d.provenance;
    j["truncation"] = d.truncation();
    j["functionals"] = functionals(d);
    j["univalence"] = to_json(univalence_check(d, g));
    j["area_trial"] = to_json(area_minimality_trial(d, g, std::min(f.terms, max_spectrum_terms(g))));
    emit(f, dump(j), out);
    return 0;
}

SampleSet draw(const SymmetrizationSource& src, const Flags& f) {
    const std::size_t n = sample_count(f.n);
    if (const auto* d = std::get_if<PowerSeriesDomain>(&src)) {
        if (f.sampler != "auto" && f.sampler != "conformal")
            throw UsageError("series domains are sampled with the conformal sampler");
        return conformal_exit_samples(*d, n, f.seed);
    }
    const auto& g = std::get<GeometricDomain>(src);
    const bool rect = std::holds_alternative<shape::Rectangle>(g.shape());
    const std::string how = f.sampler == "auto" ? (rect ? "wos" : "mobius") : f.sampler;
    if (how == "wos") return wos_exit_samples(g, n, f.seed, {f.eps, 10000});
    if (how != "mobius" || rect) throw UsageError("sampler '" + f.sampler + "' does not apply to " + g.describe());
    if (const auto* disk = std::get_if<shape::Disk>(&g.shape())) {
        SampleSet s = mobius_shifted_disk_samples(0.0, n, f.seed);
        for (double& v : s.values) v *= disk->radius;
        s.domain = g.describe();
        return s;
    }
    return mobius_shifted_disk_samples(std::get<shape::ShiftedDisk>(g.shape()).kappa, n, f.seed);
}

int cmd_sample(Flags& f, std::ostream& out, std::ostream&) {
    if (f.format.empty()) f.format = "csv";
    require_format(f, {"csv", "json"});
    const SampleSet s = draw(parse_domain(f.domain), f);
    if (f.format == "csv") {
        emit(f, samples_csv(s), out);
        return 0;
    }
    const SampleStats st = sample_stats(s.values);
    json j = envelope("sample", f,
                      {{"domain", f.domain}, {"n", sample_count(f.n)}, {"eps", f.eps}, {"sampler", f.sampler}});
    j["samples"] = {{"sampler", to_string(s.sampler)}, {"domain", s.domain}, {"count", s.count()},
                    {"excluded", s.excluded},          {"mean", st.mean},   {"variance", st.variance},
                    {"variance_se", st.variance_se},   {"values", s.values}};
    emit(f, dump(j), out);
    return 0;
}

int cmd_symmetrize(Flags& f, std::ostream& out, std::ostream& err) {
    if (f.format.empty()) f.format = "json";
    require_format(f, {"json", "svg"});
    const SymmetrizationSource src = parse_domain(f.domain);
    SymmetrizeOptions opts;
    opts.samples = sample_count(f.n);
    opts.truncation = f.terms;
    opts.eps = f.eps;
    opts.seed = f.seed;
    const SymmetrizationReport rep = brownian_symmetrize(src, opts);
    if (rep.degenerate) err << "warning: point-mass exit law, the symmetrized domain is degenerate\n";

    if (f.format == "svg") {
        const RasterDomain raster = std::visit([](const auto& s) { return rasterize(s); }, src);
        emit(f, overlay_svg(raster, rep.gross, even_grid_at_least(2048, 2 * f.terms + 2)), out);
        return 0;
    }
    json j = envelope("symmetrize", f,
                      {{"domain", f.domain}, {"n", opts.samples}, {"terms", f.terms}, {"eps", f.eps}});
    j["report"] = to_json(rep);
    emit(f, dump(j), out);
    return 0;
}

BoundaryTrace mode_trace(const std::string& mode, Eigen::Index grid) {
    if (mode == "const") return BoundaryTrace::sample(grid, [](double) { return 1.0; });
    const auto colon = mode.find(':');
    const std::string head = mode.substr(0, colon);
    int k = 0;
    try {
        k = colon == std::string::npos ? 0 : std::stoi(mode.substr(colon + 1));
    } catch (const std::exception&) {
    }
    if (k < 1 || (head != "cos" && head != "sin")) throw UsageError("--mode must be cos:k, sin:k or const");
    const double kd = k;
    if (head == "cos") return BoundaryTrace::sample(grid, [kd](double t) { return std::cos(kd * t); });
    return BoundaryTrace::sample(grid, [kd](double t) { return std::sin(kd * t); });
}

int cmd_seminorm(Flags& f, std::ostream& out, std::ostream&) {
    if (f.format.empty()) f.format = "json";
    require_format(f, {"json"});
    if (!(f.s > 0.0 && f.s < 1.0)) throw UsageError("--s must lie in (0, 1)");
    BoundaryTrace trace = BoundaryTrace::sample(4, [](double) { return 0.0; });
    if (!f.mode.empty()) {
        trace = mode_trace(f.mode, f.grid);
    } else if (!f.measure.empty()) {
        trace = quantile_sdr(QuantileFn(parse_measure(f.measure)), f.grid);
    } else if (!f.trace.empty()) {
        std::ifstream in(f.trace);
        if (!in) throw DomainError("cannot open " + f.trace);
        trace = read_trace_csv(in);
    } else {
        throw UsageError("seminorm needs --mode, --measure or --trace");
    }
    const SeminormReport rep = seminorm_report(trace, f.s);
    const EtaEstimate eta = eta_constant(f.s, trace.grid_size(), 6);
    json j = envelope("seminorm", f,
                      {{"mode", f.mode}, {"measure", f.measure}, {"trace", f.trace}, {"s", f.s},
                       {"grid", trace.grid_size()}});
    j["report"] = to_json(rep);
    j["eta"] = {{"modes", 6},
                {"mean_ratio", eta.mean_ratio},
                {"relative_spread", eta.relative_spread},
                {"ratios", std::vector<double>(eta.ratios.begin(), eta.ratios.end())}};
    emit(f, dump(j), out);
    return 0;
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw UsageError("bad parameter '" + item + "'");
        }
    }
    if (out.empty()) throw UsageError("--params needs a comma separated list");
    return out;
}

int cmd_sweep(Flags& f, std::ostream& out, std::ostream&) {
    if (f.format.empty()) f.format = "csv";
    require_format(f, {"csv", "json"});
    SweepKind kind;
    if (f.kind == "shifted-disk")
        kind = SweepKind::ShiftedDisk;
    else if (f.kind == "thin-rectangle")
        kind = SweepKind::ThinRectangle;
    else
        throw UsageError("--kind must be shifted-disk or thin-rectangle");
    const std::string defaults = kind == SweepKind::ShiftedDisk ? "0,0.5,0.9,0.99" : "1,4,16";
    const auto params = parse_list(f.params.empty() ? defaults : f.params);
    SweepOptions opts;
    opts.symmetrize.samples = sample_count(f.n);
    opts.symmetrize.truncation = f.terms;
    opts.symmetrize.eps = f.eps;
    opts.symmetrize.seed = f.seed;
    opts.rectangle_area = f.rect_area;
    const auto rows = variance_collapse_sweep(kind, params, opts);
    if (f.format == "csv") {
        std::ostringstream os;
        os << "# psep " << tool_version << " sweep kind=" << f.kind << " n=" << opts.symmetrize.samples
           << " terms=" << f.terms << " seed=" << f.seed << '\n'
           << sweep_csv(rows);
        emit(f, os.str(), out);
        return 0;
    }
    json j = envelope("sweep", f,
                      {{"kind", f.kind}, {"params", params}, {"n", opts.symmetrize.samples}, {"terms", f.terms},
                       {"eps", f.eps}, {"area", f.rect_area}});
    json table = json::array();
    for (const auto& r : rows)
        table.push_back({{"parameter", r.parameter},
                         {"variance", r.variance},
                         {"variance_se", r.variance_se},
                         {"closed_form_variance", std::isnan(r.closed_form_variance) ? json(nullptr)
                                                                                       : json(r.closed_form_variance)},
                         {"area_U", r.area_U},
                         {"area_B", r.area_B},
                         {"rho", r.rho}});
    j["rows"] = table;
    emit(f, dump(j), out);
    return 0;
}

int cmd_verify(Flags& f, std::ostream& out, std::ostream&) {
    if (f.format.empty()) f.format = "json";
    require_format(f, {"json", "text"});
    Suite suite;
    if (f.suite == "fast")
        suite = Suite::Fast;
    else if (f.suite == "full")
        suite = Suite::Full;
    else
        throw UsageError("--suite must be fast or full");
    const auto results = run_acceptance(suite, f.seed);
    const bool all = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
    if (f.format == "text") {
        std::string text;
        for (const auto& r : results) text += format_line(r) + '\n';
        emit(f, text, out);
        return all ? 0 : 1;
    }
    json j = envelope("verify", f, {{"suite", f.suite}});
    json list = json::array();
    for (const auto& r : results)
        list.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    j["criteria"] = list;
    j["all_passed"] = all;
    emit(f, dump(j), out);
    return all ? 0 : 1;
}

int cmd_plot(Flags& f, std::ostream& out, std::ostream&) {
    if (f.format.empty()) f.format = "svg";
    require_format(f, {"svg"});
    PowerSeriesDomain d;
    if (!f.measure.empty()) {
        bool degenerate = false;
        d = gross_or_degenerate(parse_measure(f.measure), f.terms, degenerate);
    } else {
        const auto src = parse_domain(f.domain);
        if (!std::holds_alternative<PowerSeriesDomain>(src))
            throw UsageError("plot draws --measure or --domain series:<file>; use symmetrize --format svg for shapes");
        d = std::get<PowerSeriesDomain>(src);
    }
    emit(f, boundary_svg(d, even_grid_at_least(f.grid, 2 * d.truncation() + 2)), out);
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Gross domains and Brownian symmetrization", "psep"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("psep ") + tool_version);
    Flags f;

    auto common = [&](CLI::App* c, bool seeded) {
        c->add_option("--out,-o", f.out, "Output file (default stdout)");
        c->add_option("--format", f.format, "Output format");
        if (seeded) c->add_option("--seed", f.seed, "RNG seed")->capture_default_str();
    };
    auto* gross = app.add_subcommand("gross", "Gross domain of a law");
    common(gross, false);
    gross->add_option("--measure", f.measure, "Measure literal")->required();
    gross->add_option("--terms,-N", f.terms, "Truncation")->capture_default_str()->check(CLI::PositiveNumber);
    gross->add_option("--grid", f.grid, "Boundary grid for svg")->capture_default_str();

    auto* analyze = app.add_subcommand("analyze", "Functionals and diagnostics of a series domain");
    common(analyze, false);
    analyze->add_option("--domain", f.domain, "series:<file>");
    analyze->add_option("--measure", f.measure, "Measure literal (analyze its Gross domain)");
    analyze->add_option("--terms,-N", f.terms, "Truncation")->capture_default_str()->check(CLI::PositiveNumber);
    analyze->add_option("--grid", f.grid, "Grid size")->capture_default_str();

    auto* sample = app.add_subcommand("sample", "Exit-law samples");
    common(sample, true);
    sample->add_option("--domain", f.domain, "disk[:r] | diskexit:k | rect:hw,hh | series:<file>")->required();
    sample->add_option("--n", f.n, "Sample count")->capture_default_str();
    sample->add_option("--eps", f.eps, "Walk-on-spheres shell")->capture_default_str();
    sample->add_option("--sampler", f.sampler, "auto | mobius | wos | conformal")->capture_default_str();

    auto* sym = app.add_subcommand("symmetrize", "Brownian symmetrization of a bounded domain");
    common(sym, true);
    sym->add_option("--domain", f.domain, "disk[:r] | diskexit:k | rect:hw,hh | series:<file>")->required();
    sym->add_option("--n", f.n, "Sample count")->capture_default_str();
    sym->add_option("--terms,-N", f.terms, "Truncation")->capture_default_str()->check(CLI::PositiveNumber);
    sym->add_option("--eps", f.eps, "Walk-on-spheres shell")->capture_default_str();

    auto* semi = app.add_subcommand("seminorm", "Fractional seminorms of a trace");
    common(semi, false);
    semi->add_option("--mode", f.mode, "cos:k | sin:k | const");
    semi->add_option("--measure", f.measure, "Measure literal (rearranged quantile trace)");
    semi->add_option("--trace", f.trace, "Trace CSV");
    semi->add_option("--s", f.s, "Order in (0, 1)")->capture_default_str();
    semi->add_option("--grid", f.grid, "Grid size")->capture_default_str();

    auto* sweep = app.add_subcommand("sweep", "Variance collapse sweep");
    common(sweep, true);
    sweep->add_option("--kind", f.kind, "shifted-disk | thin-rectangle")->capture_default_str();
    sweep->add_option("--params", f.params, "Comma separated kappa or b values");
    sweep->add_option("--n", f.n, "Samples per row")->capture_default_str();
    sweep->add_option("--terms,-N", f.terms, "Truncation")->capture_default_str()->check(CLI::PositiveNumber);
    sweep->add_option("--eps", f.eps, "Walk-on-spheres shell")->capture_default_str();
    sweep->add_option("--area", f.rect_area, "Thin rectangle area")->capture_default_str();

    auto* verify = app.add_subcommand("verify", "Run the acceptance criteria");
    common(verify, true);
    verify->add_option("--suite", f.suite, "fast | full")->capture_default_str();

    auto* plot = app.add_subcommand("plot", "SVG boundary of a series domain");
    common(plot, false);
    plot->add_option("--measure", f.measure, "Measure literal");
    plot->add_option("--domain", f.domain, "series:<file>");
    plot->add_option("--terms,-N", f.terms, "Truncation")->capture_default_str()->check(CLI::PositiveNumber);
    plot->add_option("--grid", f.grid, "Grid size")->capture_default_str();

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*gross) return cmd_gross(f, out, err);
        if (*analyze) return cmd_analyze(f, out, err);
        if (*sample) return cmd_sample(f, out, err);
        if (*sym) return cmd_symmetrize(f, out, err);
        if (*semi) return cmd_seminorm(f, out, err);
        if (*sweep) return cmd_sweep(f, out, err);
        if (*verify) return cmd_verify(f, out, err);
        if (*plot) return cmd_plot(f, out, err);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const UnsupportedError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

}  // namespace psep::cli
