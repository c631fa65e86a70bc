#include "psep/io.hpp"

#include "psep/error.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace psep {

namespace {

using cd = std::complex<double>;

std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(trim(cur));
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

double to_double(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw DomainError("cannot parse " + what + " from '" + s + "'");
    }
}

std::string number(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::ifstream open(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open " + path);
    return in;
}

// Rows of comma separated numbers; blank lines and '#' comments skipped.
std::vector<std::vector<double>> read_rows(std::istream& in, const std::string& what) {
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> row;
        for (const auto& cell : split(line, ',')) row.push_back(to_double(cell, what));
        rows.push_back(std::move(row));
    }
    return rows;
}

struct Box {
    double xmin, xmax, ymin, ymax;
};

std::vector<cd> boundary_points(const PowerSeriesDomain& d, Eigen::Index grid_size) {
    const auto [re, im] = boundary_trace(d, grid_size);
    std::vector<cd> pts(static_cast<std::size_t>(grid_size));
    for (Eigen::Index j = 0; j < grid_size; ++j)
        pts[static_cast<std::size_t>(j)] = {re.values()(j), im.values()(j)};
    return pts;
}

std::string svg_open(Box b) {
    const double pad = 0.05 * std::max({b.xmax - b.xmin, b.ymax - b.ymin, 1e-9});
    std::ostringstream os;
    os.precision(9);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" viewBox=\""
       << b.xmin - pad << ' ' << -b.ymax - pad << ' ' << (b.xmax - b.xmin) + 2 * pad << ' '
       << (b.ymax - b.ymin) + 2 * pad << "\" preserveAspectRatio=\"xMidYMid meet\">\n";
    return os.str();
}

// SVG y grows downward, so every point is written as (x, -y).
std::string polyline(const std::vector<cd>& pts, double stroke) {
    std::ostringstream os;
    os.precision(9);
    os << "<polygon fill=\"none\" stroke=\"#1f4e99\" stroke-width=\"" << stroke << "\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i)
        os << (i ? " " : "") << pts[i].real() << ',' << -pts[i].imag();
    os << "\"/>\n";
    return os.str();
}

std::string origin_mark(double size) {
    std::ostringstream os;
    os.precision(9);
    os << "<circle cx=\"0\" cy=\"0\" r=\"" << size << "\" fill=\"#c0392b\"/>\n";
    return os.str();
}

Box box_of(const std::vector<cd>& pts) {
    Box b{0, 0, 0, 0};
    for (const cd& p : pts) {
        b.xmin = std::min(b.xmin, p.real());
        b.xmax = std::max(b.xmax, p.real());
        b.ymin = std::min(b.ymin, p.imag());
        b.ymax = std::max(b.ymax, p.imag());
    }
    return b;
}

}  // namespace

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json to_json(const PowerSeriesDomain& d) {
    json c = json::array();
    for (Eigen::Index n = 0; n < d.truncation(); ++n) c.push_back({d.coeffs(n).real(), d.coeffs(n).imag()});
    return {{"coeffs", c}, {"provenance", d.provenance}, {"truncation", d.truncation()}};
}

PowerSeriesDomain domain_from_json(const json& j) {
    if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array())
        throw DomainError("domain JSON needs a coeffs array");
    const json& c = j["coeffs"];
    PowerSeriesDomain d;
    d.coeffs.resize(static_cast<Eigen::Index>(c.size()));
    for (std::size_t n = 0; n < c.size(); ++n) {
        const json& e = c[n];
        if (e.is_number()) {
            d.coeffs(static_cast<Eigen::Index>(n)) = e.get<double>();
        } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
            d.coeffs(static_cast<Eigen::Index>(n)) = cd(e[0].get<double>(), e[1].get<double>());
        } else {
            throw DomainError("coefficient " + std::to_string(n + 1) + " is not [re, im]");
        }
    }
    if (j.contains("provenance") && j["provenance"].is_string()) d.provenance = j["provenance"];
    if (j.contains("truncation") && j["truncation"].get<Eigen::Index>() != d.truncation())
        throw DomainError("truncation field does not match coefficient count");
    return d;
}

PowerSeriesDomain read_domain_file(const std::string& path) {
    auto in = open(path);
    try {
        return domain_from_json(json::parse(in));
    } catch (const json::exception& e) {
        throw DomainError(path + ": " + e.what());
    }
}

json to_json(const CosineSeries& s) {
    return {{"truncation", s.truncation()},
            {"coeffs", std::vector<double>(s.coeffs.begin(), s.coeffs.end())},
            {"captured_energy", captured_energy(s)}};
}

json to_json(const TraceSpectrum& s) {
    return {{"truncation", s.truncation()},
            {"mean_term", s.mean_term},
            {"alpha", std::vector<double>(s.alpha.begin(), s.alpha.end())},
            {"beta", std::vector<double>(s.beta.begin(), s.beta.end())}};
}

json to_json(const SeminormReport& r) {
    return {{"s", r.s},
            {"grid_size", r.grid_size},
            {"truncation", r.truncation},
            {"gagliardo_value", r.gagliardo_value},
            {"fourier_value", r.fourier_value}};
}

json to_json(const SkorokhodEnergy& e) {
    return {{"value", e.value}, {"last_decade_fraction", e.last_decade_fraction}, {"converged", e.converged}};
}

json to_json(const UnivalenceDiagnostic& u) {
    return {{"passed", u.passed},
            {"self_intersections", u.self_intersections},
            {"winding_number", u.winding_number},
            {"min_derivative", u.min_derivative},
            {"reason", u.reason}};
}

json to_json(const SymmetrizationReport& r) {
    const auto& d = r.diagnostics;
    const RhoResult rh = rho(r);
    json j = {{"source", r.source},
              {"mu_hat", r.mu_hat.describe()},
              {"area_B", r.area_B},
              {"area_U", std::isinf(r.area_U) ? json("inf") : json(r.area_U)},
              {"rho", rh.value ? json(*rh.value) : json(nullptr)},
              {"degenerate", r.degenerate},
              {"gross", to_json(r.gross)}};
    if (!rh.annotation.empty()) j["rho_annotation"] = rh.annotation;
    j["diagnostics"] = {{"sampler", to_string(d.sampler)},
                        {"seed", d.seed},
                        {"sample_count", d.sample_count},
                        {"excluded", d.excluded},
                        {"sample_mean", d.sample_mean},
                        {"sample_variance", d.sample_variance},
                        {"variance_se", d.variance_se},
                        {"recentred", d.recentred},
                        {"captured_energy", d.captured_energy},
                        {"skorokhod_energy", to_json(d.energy)},
                        {"expected_exit_time", expected_exit_time(r.gross)}};
    return j;
}

json to_json(const AreaTrial& t) {
    return {{"area_gross", t.area_gross}, {"area_u", t.area_u}, {"tol_grid", t.tol_grid},
            {"ok", t.ok},                 {"equality", t.equality}, {"skipped", t.skipped},
            {"reason", t.reason}};
}

json trace_json(const BoundaryTrace& t) {
    return {{"grid_size", t.grid_size()},
            {"values", std::vector<double>(t.values().begin(), t.values().end())}};
}

std::string trace_csv(const BoundaryTrace& t) {
    std::ostringstream os;
    os << "# grid_size=" << t.grid_size() << "\ntheta,value\n";
    for (Eigen::Index j = 0; j < t.grid_size(); ++j)
        os << number(t.theta(j)) << ',' << number(t.values()(j)) << '\n';
    return os.str();
}

BoundaryTrace read_trace_csv(std::istream& in) {
    std::string line;
    Eigen::Index declared = -1;
    std::vector<double> values;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto pos = line.find("grid_size=");
            if (pos != std::string::npos)
                declared = static_cast<Eigen::Index>(to_double(line.substr(pos + 10), "grid size"));
            continue;
        }
        if (line.rfind("theta", 0) == 0) continue;
        const auto cells = split(line, ',');
        if (cells.size() != 2) throw DomainError("trace rows must be theta,value");
        values.push_back(to_double(cells[1], "trace value"));
    }
    if (declared >= 0 && declared != static_cast<Eigen::Index>(values.size()))
        throw DomainError("trace has " + std::to_string(values.size()) + " rows, header says " +
                          std::to_string(declared));
    return BoundaryTrace(Eigen::Map<const Eigen::VectorXd>(values.data(),
                                                           static_cast<Eigen::Index>(values.size())));
}

std::string samples_csv(const SampleSet& s) {
    std::ostringstream os;
    os << "# seed=" << s.seed << " sampler=" << to_string(s.sampler) << " domain=" << s.domain;
    if (s.sampler == SamplerKind::WalkOnSpheres) os << " eps=" << number(s.eps) << " excluded=" << s.excluded;
    os << "\nvalue\n";
    for (double v : s.values) os << number(v) << '\n';
    return os.str();
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    os << "parameter,variance,variance_se,closed_form_variance,area_U,area_B,rho\n";
    for (const auto& r : rows) {
        os << number(r.parameter) << ',' << number(r.variance) << ',' << number(r.variance_se) << ','
           << (std::isnan(r.closed_form_variance) ? std::string() : number(r.closed_form_variance))
           << ',' << number(r.area_U) << ',' << number(r.area_B) << ',' << number(r.rho) << '\n';
    }
    return os.str();
}

std::string boundary_svg(const PowerSeriesDomain& d, Eigen::Index grid_size) {
    const auto pts = boundary_points(d, grid_size);
    const Box b = box_of(pts);
    const double span = std::max(b.xmax - b.xmin, b.ymax - b.ymin);
    return svg_open(b) + polyline(pts, span / 400) + origin_mark(span / 100) + "</svg>\n";
}

std::string overlay_svg(const RasterDomain& r, const PowerSeriesDomain& d, Eigen::Index grid_size) {
    const auto pts = boundary_points(d, grid_size);
    Box b = box_of(pts);
    b.xmin = std::min(b.xmin, r.x0);
    b.xmax = std::max(b.xmax, r.x0 + static_cast<double>(r.columns()) * r.cell_size);
    b.ymin = std::min(b.ymin, r.y0());
    b.ymax = std::max(b.ymax, -r.y0());
    const double span = std::max(b.xmax - b.xmin, b.ymax - b.ymin);

    std::ostringstream os;
    os.precision(9);
    os << svg_open(b) << "<g fill=\"#9db4c0\" stroke=\"none\">\n";
    // One rectangle per vertical run of occupied cells.
    for (Eigen::Index i = 0; i < r.columns(); ++i) {
        Eigen::Index j = 0;
        while (j < r.rows()) {
            if (!r.occupancy(i, j)) {
                ++j;
                continue;
            }
            Eigen::Index k = j;
            while (k < r.rows() && r.occupancy(i, k)) ++k;
            const double x = r.x0 + static_cast<double>(i) * r.cell_size;
            const double ytop = r.y0() + static_cast<double>(k) * r.cell_size;
            os << "<rect x=\"" << x << "\" y=\"" << -ytop << "\" width=\"" << r.cell_size
               << "\" height=\"" << static_cast<double>(k - j) * r.cell_size << "\"/>\n";
            j = k;
        }
    }
    os << "</g>\n" << polyline(pts, span / 400) << origin_mark(span / 100) << "</svg>\n";
    return os.str();
}

Measure parse_measure(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string head = trim(spec.substr(0, colon));
    const std::string rest = colon == std::string::npos ? "" : trim(spec.substr(colon + 1));

    if (head == "arcsine") return Measure::arcsine();
    if (head == "uniform") {
        const auto p = split(rest, ',');
        if (p.size() != 2) throw DomainError("uniform needs a,b");
        return Measure::uniform(to_double(p[0], "uniform bound"), to_double(p[1], "uniform bound"));
    }
    if (head == "diskexit") return Measure::shifted_disk_exit(to_double(rest, "kappa"));
    if (head == "atoms") {
        std::vector<kind::Atom> atoms;
        for (const auto& item : split(rest, ',')) {
            const auto xw = split(item, ':');
            if (xw.size() != 2) throw DomainError("atoms need position:weight pairs");
            atoms.push_back({to_double(xw[0], "atom position"), to_double(xw[1], "atom weight")});
        }
        return Measure::atomic(std::move(atoms));
    }
    if (head == "empirical") {
        auto in = open(rest);
        std::vector<double> samples;
        for (const auto& row : read_rows(in, "sample"))
            for (double v : row) samples.push_back(v);
        return Measure::empirical(std::move(samples));
    }
    if (head == "density") {
        auto in = open(rest);
        std::vector<double> xs, ds;
        for (const auto& row : read_rows(in, "density row")) {
            if (row.empty() || row.size() > 2) throw DomainError("density rows are breakpoint,value");
            xs.push_back(row[0]);
            if (row.size() == 2) ds.push_back(row[1]);
        }
        // The last breakpoint closes the support; a trailing value is ignored.
        ds.resize(xs.empty() ? 0 : xs.size() - 1);
        return Measure::piecewise_density(std::move(xs), std::move(ds));
    }
    throw DomainError("unknown measure '" + spec + "'");
}

SymmetrizationSource parse_domain(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string head = trim(spec.substr(0, colon));
    const std::string rest = colon == std::string::npos ? "" : trim(spec.substr(colon + 1));

    if (head == "bm-uniform" || head == "strip" || head == "halfplane")
        throw UnsupportedError("unbounded domain '" + head +
                               "' is not simulated (unbounded domains are a non-goal)");
    if (head == "disk") return GeometricDomain::disk(rest.empty() ? 1.0 : to_double(rest, "radius"));
    if (head == "diskexit") return GeometricDomain::shifted_disk(to_double(rest, "kappa"));
    if (head == "rect") {
        const auto p = split(rest, ',');
        if (p.size() != 2) throw DomainError("rect needs hw,hh");
        return GeometricDomain::rectangle(to_double(p[0], "half width"), to_double(p[1], "half height"));
    }
    if (head == "series") return read_domain_file(rest);
    throw DomainError("unknown domain '" + spec + "'");
}

}  // namespace psep
