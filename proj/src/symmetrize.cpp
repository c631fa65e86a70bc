#include "psep/symmetrize.hpp"

#include "psep/error.hpp"
#include "psep/fourier.hpp"
#include "psep/rearrange.hpp"
#include "psep/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace psep {

namespace {

constexpr double pi = std::numbers::pi;
using cd = std::complex<double>;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

RasterDomain empty_raster(double half_x, double half_y, Eigen::Index resolution) {
    if (resolution < 2) throw DomainError("raster resolution must be at least 2");
    RasterDomain r;
    r.cell_size = 2.0 * std::max(half_x, half_y) / static_cast<double>(resolution);
    const auto cols = 2 * static_cast<Eigen::Index>(std::ceil(half_x / r.cell_size - 1e-9));
    const auto rows = 2 * static_cast<Eigen::Index>(std::ceil(half_y / r.cell_size - 1e-9));
    r.x0 = -0.5 * static_cast<double>(cols) * r.cell_size;
    r.occupancy.setConstant(cols, rows, false);
    return r;
}

double cell_x(const RasterDomain& r, Eigen::Index i) {
    return r.x0 + (static_cast<double>(i) + 0.5) * r.cell_size;
}
double cell_y(const RasterDomain& r, Eigen::Index j) {
    return r.y0() + (static_cast<double>(j) + 0.5) * r.cell_size;
}

}  // namespace

RasterDomain rasterize(const GeometricDomain& g, Eigen::Index resolution) {
    const auto b = g.bounds();
    RasterDomain r = empty_raster(std::max(std::abs(b[0]), std::abs(b[1])),
                                  std::max(std::abs(b[2]), std::abs(b[3])), resolution);
    for (Eigen::Index i = 0; i < r.columns(); ++i)
        for (Eigen::Index j = 0; j < r.rows(); ++j)
            r.occupancy(i, j) = g.contains(cd(cell_x(r, i), cell_y(r, j)));
    return r;
}

RasterDomain rasterize(const PowerSeriesDomain& d, Eigen::Index resolution, Eigen::Index grid_size) {
    const auto [re, im] = boundary_trace(d, grid_size);
    const Eigen::VectorXd& x = re.values();
    const Eigen::VectorXd& y = im.values();
    const double hx = std::max(x.cwiseAbs().maxCoeff(), 1e-12);
    const double hy = std::max(y.cwiseAbs().maxCoeff(), 1e-12);
    RasterDomain r = empty_raster(hx, hy, resolution);

    // Scanline fill by even-odd crossings of each column's center line.
    const Eigen::Index g = x.size();
    std::vector<double> hits;
    for (Eigen::Index i = 0; i < r.columns(); ++i) {
        const double xc = cell_x(r, i);
        hits.clear();
        for (Eigen::Index k = 0; k < g; ++k) {
            const Eigen::Index l = (k + 1) % g;
            const double xa = x(k), xb = x(l);
            if ((xa <= xc && xc < xb) || (xb <= xc && xc < xa))
                hits.push_back(y(k) + (xc - xa) * (y(l) - y(k)) / (xb - xa));
        }
        std::sort(hits.begin(), hits.end());
        for (std::size_t p = 0; p + 1 < hits.size(); p += 2)
            for (Eigen::Index j = 0; j < r.rows(); ++j) {
                const double yc = cell_y(r, j);
                if (yc >= hits[p] && yc <= hits[p + 1]) r.occupancy(i, j) = true;
            }
    }
    return r;
}

RasterDomain steiner_raster(const RasterDomain& r) {
    RasterDomain out = r;
    out.occupancy.setConstant(false);
    for (Eigen::Index i = 0; i < r.columns(); ++i) {
        const auto c = static_cast<Eigen::Index>(r.occupancy.row(i).count());
        const Eigen::Index start = (r.rows() - c) / 2;
        out.occupancy.row(i).segment(start, c).setConstant(true);
    }
    return out;
}

SymmetrizationReport brownian_symmetrize(const SymmetrizationSource& source,
                                         const SymmetrizeOptions& opts) {
    if (opts.samples < 2) throw DomainError("symmetrize needs at least two samples");
    SymmetrizationReport rep;
    SampleSet samples;
    std::visit(overloaded{
                   [&](const GeometricDomain& g) {
                       rep.source = g.describe();
                       rep.area_U = g.area();
                       std::visit(overloaded{
                                      [&](const shape::Disk& s) {
                                          samples = mobius_shifted_disk_samples(0.0, opts.samples, opts.seed);
                                          for (double& v : samples.values) v *= s.radius;
                                          samples.domain = rep.source;
                                      },
                                      [&](const shape::ShiftedDisk& s) {
                                          samples = mobius_shifted_disk_samples(s.kappa, opts.samples, opts.seed);
                                      },
                                      [&](const shape::Rectangle&) {
                                          samples = wos_exit_samples(g, opts.samples, opts.seed,
                                                                     {opts.eps, opts.max_steps});
                                      },
                                  },
                                  g.shape());
                   },
                   [&](const PowerSeriesDomain& d) {
                       rep.source = d.provenance;
                       rep.area_U = area(d);
                       samples = conformal_exit_samples(d, opts.samples, opts.seed);
                   },
               },
               source);

    auto& diag = rep.diagnostics;
    diag.sampler = samples.sampler;
    diag.seed = opts.seed;
    diag.sample_count = samples.count();
    diag.excluded = samples.excluded;
    const SampleStats st = sample_stats(samples.values);
    diag.sample_mean = st.mean;
    diag.sample_variance = st.variance;
    diag.variance_se = st.variance_se;

    const EmpiricalLaw law = empirical_measure(samples);
    rep.mu_hat = law.measure;
    diag.recentred = law.recentred;

    if (variance(rep.mu_hat) == 0.0) {
        rep.degenerate = true;
        rep.gross.coeffs = Eigen::VectorXcd::Zero(opts.truncation);
        rep.gross.provenance = "gross(point mass)";
        return rep;
    }

    GrossOptions gopts;
    gopts.centering_tol = 3.0 * law.mean_se + MeasureTolerances{}.centering;
    rep.gross = gross_domain(rep.mu_hat, opts.truncation, gopts);
    rep.gross.provenance = "gross(empirical " + rep.source + ")";
    rep.area_B = area(rep.gross);
    diag.captured_energy = rep.gross.coeffs.squaredNorm() / (2.0 * variance(rep.mu_hat));
    diag.energy = skorokhod_energy(rep.gross);
    return rep;
}

SymmetrizationReport uniform_law_fixture(Eigen::Index truncation) {
    SymmetrizationReport rep;
    rep.source = "bm-uniform";
    rep.mu_hat = Measure::uniform(-1.0, 1.0);
    rep.gross = gross_domain(rep.mu_hat, truncation);
    rep.area_B = area(rep.gross);
    rep.area_U = std::numeric_limits<double>::infinity();
    rep.diagnostics.sample_variance = variance(rep.mu_hat);
    rep.diagnostics.captured_energy =
        rep.gross.coeffs.squaredNorm() / (2.0 * variance(rep.mu_hat));
    rep.diagnostics.energy = skorokhod_energy(rep.gross);
    return rep;
}

RhoResult rho(const SymmetrizationReport& report) {
    if (std::isinf(report.area_U)) return {std::nullopt, "area_U infinite, rho = 0"};
    if (!(report.area_U > 0.0)) return {std::nullopt, "area_U is zero, rho undefined"};
    return {report.area_B / report.area_U, ""};
}

AreaTrial area_minimality_trial(const PowerSeriesDomain& u, Eigen::Index grid_size,
                                Eigen::Index truncation) {
    AreaTrial t;
    t.area_u = area(u);
    const UnivalenceDiagnostic uv = univalence_check(u, grid_size);
    if (!uv.passed) {
        t.skipped = true;
        t.reason = "univalence screen failed: " + uv.reason;
        return t;
    }
    if (truncation > max_spectrum_terms(grid_size))
        throw DomainError("truncation too large for grid");

    const BoundaryTrace rearranged = sdr(boundary_trace(u, grid_size).first);
    const TraceSpectrum spec = trace_spectrum(rearranged, max_spectrum_terms(grid_size));
    double head = 0, tail = 0;
    for (Eigen::Index n = 0; n < spec.truncation(); ++n) {
        const double e = static_cast<double>(n + 1) *
                         (spec.alpha(n) * spec.alpha(n) + spec.beta(n) * spec.beta(n));
        (n < truncation ? head : tail) += e;
    }
    t.area_gross = pi * head;
    t.tol_grid = 10.0 * (pi * tail + 1.0 / static_cast<double>(grid_size));
    t.ok = t.area_gross <= t.area_u + t.tol_grid;
    t.equality = std::abs(t.area_gross - t.area_u) <= t.tol_grid;
    return t;
}

std::vector<SweepRow> variance_collapse_sweep(SweepKind kind, const std::vector<double>& params,
                                              const SweepOptions& opts) {
    if (params.empty()) throw DomainError("sweep needs at least one parameter");
    std::vector<SweepRow> rows;
    for (std::size_t i = 0; i < params.size(); ++i) {
        const double p = params[i];
        SweepRow row;
        row.parameter = p;
        GeometricDomain g = GeometricDomain::disk(1.0);
        if (kind == SweepKind::ShiftedDisk) {
            g = GeometricDomain::shifted_disk(p);
            row.closed_form_variance = (1.0 - p * p) / 2.0;
        } else {
            if (!(p > 0.0)) throw DomainError("rectangle parameter b must be positive");
            g = GeometricDomain::rectangle(opts.rectangle_area / (2.0 * p), p / 2.0);
            row.closed_form_variance = std::numeric_limits<double>::quiet_NaN();
        }
        SymmetrizeOptions so = opts.symmetrize;
        so.seed = opts.symmetrize.seed + i;
        const SymmetrizationReport rep = brownian_symmetrize(g, so);
        row.variance = rep.diagnostics.sample_variance;
        row.variance_se = rep.diagnostics.variance_se;
        row.area_U = rep.area_U;
        row.area_B = rep.area_B;
        row.rho = rho(rep).value.value_or(0.0);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace psep
