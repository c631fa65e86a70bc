#include "psep/acceptance.hpp"

#include "psep/error.hpp"
#include "psep/fourier.hpp"
#include "psep/gross.hpp"
#include "psep/measure.hpp"
#include "psep/rearrange.hpp"
#include "psep/rng.hpp"
#include "psep/sampler.hpp"
#include "psep/sobolev.hpp"
#include "psep/stats.hpp"
#include "psep/symmetrize.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/zeta.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace psep {

namespace {

constexpr double pi = std::numbers::pi;
using cd = std::complex<double>;

// Fixed-format numbers keep reports byte-stable.
std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

CriterionResult uniform_coefficients() {
    CriterionResult r{1, "uniform-coefficients", true, ""};
    const Measure m = Measure::uniform(-1.0, 1.0);
    double worst = 0;
    for (auto method : {CoefficientMethod::Auto, CoefficientMethod::Quadrature}) {
        const CosineSeries s = quantile_cosine_coeffs(QuantileFn(m), 8, method);
        for (int n = 1; n <= 8; ++n) {
            const double expect = n % 2 ? -8.0 / (pi * pi * n * n) : 0.0;
            worst = std::max(worst, std::abs(s.coeffs(n - 1) - expect));
        }
    }
    r.passed = worst <= 1e-8;
    r.detail = "max_abs_err=" + fmt(worst);
    return r;
}

CriterionResult uniform_area() {
    CriterionResult r{2, "uniform-gross-area", true, ""};
    const double a = area(gross_domain(Measure::uniform(-1.0, 1.0), 10000));
    const double expect = 56.0 * boost::math::zeta(3.0) / (pi * pi * pi);
    r.passed = std::abs(a - expect) <= 1e-6;
    r.detail = "area=" + fmt(a) + " expected=" + fmt(expect) + " err=" + fmt(std::abs(a - expect));
    return r;
}

CriterionResult exit_time_identity() {
    CriterionResult r{3, "exit-time-variance", true, ""};
    const std::pair<Measure, double> cases[] = {{Measure::uniform(-1.0, 1.0), 1.0 / 3.0},
                                                {Measure::arcsine(), 0.5},
                                                {Measure::shifted_disk_exit(0.5), 0.375}};
    for (const auto& [m, var] : cases) {
        const double e = expected_exit_time(gross_domain(m, 1000));
        const double rel = std::abs(e - var) / var;
        r.passed = r.passed && rel <= 0.01;
        r.detail += m.describe() + ":E=" + fmt(e) + ",rel=" + fmt(rel) + " ";
    }
    r.detail.pop_back();
    return r;
}

CriterionResult arcsine_extremality() {
    CriterionResult r{4, "arcsine-extremality", true, ""};
    for (auto method : {CoefficientMethod::Auto, CoefficientMethod::Quadrature}) {
        GrossOptions opts;
        opts.method = method;
        const PowerSeriesDomain d = gross_domain(Measure::arcsine(), default_truncation, opts);
        const double a1 = std::abs(d.coeffs(0));
        const double rest = d.coeffs.tail(d.truncation() - 1).squaredNorm();
        const double ar = area(d);
        r.passed = r.passed && std::abs(a1 - 1.0) <= 1e-10 && rest < 1e-12 && std::abs(ar - pi) <= 1e-10;
        r.detail += "|a1|-1=" + fmt(a1 - 1.0) + " tail=" + fmt(rest) + " area-pi=" + fmt(ar - pi) + " ";
    }
    const Measure fixtures[] = {
        Measure::uniform(-1.0, 1.0),
        Measure::shifted_disk_exit(0.5),
        Measure::shifted_disk_exit(0.9),
        Measure::atomic({{-1.0, 0.5}, {1.0, 0.5}}),
        Measure::atomic({{-2.0, 0.25}, {0.0, 0.25}, {1.0, 0.5}}),
        Measure::piecewise_density({-1.0, 0.0, 2.0}, {2.0 / 3.0, 1.0 / 6.0}),
    };
    double worst = std::numeric_limits<double>::infinity();
    for (const Measure& m : fixtures) {
        const double c = schlicht_normalization(m);
        worst = std::min(worst, area(scaled(gross_domain(m, default_truncation), 1.0 / std::abs(c))));
    }
    r.passed = r.passed && worst >= pi - 1e-9;
    r.detail += "min_normalized_area=" + fmt(worst);
    return r;
}

// Exit density of the shifted disk, integrated independently per bin.
double disk_density(double kappa, double x) {
    const double k2 = kappa * kappa;
    return (1.0 - k2 * k2) /
           (pi * ((1.0 - k2) * (1.0 - k2) + 4.0 * k2 * x * x) * std::sqrt(1.0 - x * x));
}

CriterionResult shifted_disk_law(std::uint64_t seed) {
    CriterionResult r{5, "shifted-disk-law", true, ""};
    constexpr int bins = 64;
    boost::math::quadrature::tanh_sinh<double> ts;
    for (double kappa : {0.0, 0.5, 0.9}) {
        const SampleSet s = mobius_shifted_disk_samples(kappa, 1000000, seed);
        const SampleStats st = sample_stats(s.values);
        const double var = (1.0 - kappa * kappa) / 2.0;
        const double z = std::abs(st.variance - var) / st.variance_se;

        std::vector<double> counts(bins, 0.0), probs(bins);
        for (double x : s.values) {
            const int b = std::clamp(static_cast<int>(std::floor((x + 1.0) / 2.0 * bins)), 0, bins - 1);
            counts[b] += 1.0;
        }
        for (int b = 0; b < bins; ++b) {
            const double lo = -1.0 + 2.0 * b / bins, hi = -1.0 + 2.0 * (b + 1) / bins;
            probs[b] = ts.integrate([kappa](double x) { return disk_density(kappa, x); }, lo, hi);
        }
        const ChiSquare chi = chi_square_test(counts, probs);
        r.passed = r.passed && z <= 4.0 && chi.p_value > 0.001;
        r.detail += "k=" + fmt(kappa) + ":z=" + fmt(z) + ",p=" + fmt(chi.p_value) + " ";
    }
    r.detail.pop_back();
    return r;
}

CriterionResult wos_consistency(std::uint64_t seed) {
    CriterionResult r{6, "wos-consistency", true, ""};
    constexpr std::size_t n = 1000000;
    const SampleSet disk = wos_exit_samples(GeometricDomain::disk(1.0), n, seed);
    const SampleStats sd = sample_stats(disk.values);
    const double z1 = std::abs(sd.variance - 0.5) / sd.variance_se;

    const SampleSet wos = wos_exit_samples(GeometricDomain::shifted_disk(0.5), n, seed);
    const SampleSet mob = mobius_shifted_disk_samples(0.5, n, seed);
    const SampleStats sw = sample_stats(wos.values), sm = sample_stats(mob.values);
    const double z2 = std::abs(sw.variance - sm.variance) / std::hypot(sw.variance_se, sm.variance_se);

    r.passed = z1 <= 4.0 && z2 <= 4.0 && disk.excluded == 0 && wos.excluded == 0;
    r.detail = "disk:var=" + fmt(sd.variance) + ",z=" + fmt(z1) + " shifted:wos=" + fmt(sw.variance) +
               ",mobius=" + fmt(sm.variance) + ",z=" + fmt(z2) +
               " excluded=" + std::to_string(disk.excluded + wos.excluded);
    return r;
}

CriterionResult polya_szego_suite(std::uint64_t seed) {
    CriterionResult r{7, "polya-szego", true, ""};
    constexpr Eigen::Index grid = 2048;
    int failures = 0;
    double worst = 0;
    for (std::uint64_t t = 0; t < 100; ++t) {
        Rng rng(stream_seed(seed, 7, t));
        const int degree = 1 + static_cast<int>(rng.uniform() * 16);
        Eigen::VectorXd a(degree), b(degree);
        for (int k = 0; k < degree; ++k) {
            a(k) = 2.0 * rng.uniform() - 1.0;
            b(k) = 2.0 * rng.uniform() - 1.0;
        }
        const BoundaryTrace u = BoundaryTrace::sample(grid, [&](double th) {
            double v = 0;
            for (int k = 0; k < degree; ++k) v += a(k) * std::cos((k + 1) * th) + b(k) * std::sin((k + 1) * th);
            return v;
        });
        const PolyaSzegoResult ps = polya_szego_check(u, 0.5, 1e-6);
        if (!ps.ok) ++failures;
        worst = std::max(worst, ps.lhs / ps.rhs);
    }
    r.passed = failures == 0;
    r.detail = "failures=" + std::to_string(failures) + " max_ratio=" + fmt(worst);
    return r;
}

CriterionResult eta_constancy() {
    CriterionResult r{8, "eta-constancy", true, ""};
    const EtaEstimate e = eta_constant(0.5, 4096, 6);
    r.passed = e.relative_spread < 0.01;
    r.detail = "eta=" + fmt(e.mean_ratio) + " spread=" + fmt(e.relative_spread);
    return r;
}

CriterionResult area_minimality(std::uint64_t seed) {
    CriterionResult r{9, "area-minimality", true, ""};
    int failures = 0, skipped = 0;
    double worst = -std::numeric_limits<double>::infinity();
    for (std::uint64_t t = 0; t < 200; ++t) {
        Rng rng(stream_seed(seed, 9, t));
        const int degree = 2 + static_cast<int>(rng.uniform() * 7);
        PowerSeriesDomain u;
        u.coeffs = Eigen::VectorXcd::Zero(degree);
        u.coeffs(0) = 1.0;
        for (int n = 2; n <= degree; ++n)
            u.coeffs(n - 1) = std::polar(rng.uniform() * 0.5 / (n * n * n), rng.angle());
        const AreaTrial trial = area_minimality_trial(u, 4096, default_truncation);
        if (trial.skipped) {
            ++skipped;
            continue;
        }
        if (!trial.ok) ++failures;
        worst = std::max(worst, trial.area_gross - trial.area_u);
    }
    r.passed = failures == 0 && skipped == 0;
    r.detail = "failures=" + std::to_string(failures) + " skipped=" + std::to_string(skipped) +
               " max(area_gross-area_u)=" + fmt(worst);
    return r;
}

CriterionResult inner_circle() {
    CriterionResult r{10, "inner-circle-counterexample", true, ""};
    const InnerCircleReport rep = inner_circle_counterexample(3, 0.5);
    r.passed = std::abs(rep.ratio - 9.0 / 16.0) <= 1e-12 && rep.ratio < 1.0 && !rep.inequality_holds;
    r.detail = "ratio=" + fmt(rep.ratio);
    return r;
}

CriterionResult brownian_vs_steiner(std::uint64_t seed) {
    CriterionResult r{11, "brownian-vs-steiner", true, ""};
    const GeometricDomain g = GeometricDomain::shifted_disk(0.9);
    SymmetrizeOptions opts;
    opts.samples = 1000000;
    opts.seed = seed;
    const SymmetrizationReport rep = brownian_symmetrize(g, opts);
    const double rh = rho(rep).value.value_or(std::numeric_limits<double>::quiet_NaN());
    const RasterDomain raster = rasterize(g);
    const RasterDomain st = steiner_raster(raster);
    r.passed = rep.area_B <= pi * 1.03 && rh < 1.0 && st.count() == raster.count();
    r.detail = "area_B=" + fmt(rep.area_B) + " rho=" + fmt(rh) + " cells=" + std::to_string(raster.count()) +
               "->" + std::to_string(st.count());
    return r;
}

CriterionResult thin_rectangles(std::uint64_t seed) {
    CriterionResult r{12, "thin-rectangle-non-collapse", true, ""};
    SweepOptions opts;
    opts.symmetrize.samples = 1000000;
    opts.symmetrize.seed = seed;
    const auto rows = variance_collapse_sweep(SweepKind::ThinRectangle, {1.0, 4.0, 16.0}, opts);
    const double drop = rows.front().variance / rows.back().variance;
    r.passed = drop >= 10.0;
    r.detail = "var_drop=" + fmt(drop);
    for (const auto& row : rows) {
        r.passed = r.passed && row.area_B >= 0.85 && row.area_B <= 1.15;
        r.detail += " b=" + fmt(row.parameter) + ":var=" + fmt(row.variance) + ",area_B=" + fmt(row.area_B);
    }
    return r;
}

}  // namespace

std::vector<int> suite_criteria(Suite suite) {
    if (suite == Suite::Fast) return {1, 2, 3, 4, 7, 8, 9, 10};
    return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
}

CriterionResult run_criterion(int id, std::uint64_t seed) {
    switch (id) {
        case 1: return uniform_coefficients();
        case 2: return uniform_area();
        case 3: return exit_time_identity();
        case 4: return arcsine_extremality();
        case 5: return shifted_disk_law(seed);
        case 6: return wos_consistency(seed);
        case 7: return polya_szego_suite(seed);
        case 8: return eta_constancy();
        case 9: return area_minimality(seed);
        case 10: return inner_circle();
        case 11: return brownian_vs_steiner(seed);
        case 12: return thin_rectangles(seed);
    }
    throw DomainError("no criterion " + std::to_string(id));
}

std::vector<CriterionResult> run_acceptance(Suite suite, std::uint64_t seed) {
    std::vector<CriterionResult> out;
    for (int id : suite_criteria(suite)) {
        try {
            out.push_back(run_criterion(id, seed));
        } catch (const std::exception& e) {
            out.push_back({id, "criterion-" + std::to_string(id), false, std::string("error: ") + e.what()});
        }
    }
    return out;
}

std::string format_line(const CriterionResult& r) {
    char head[64];
    std::snprintf(head, sizeof head, "%s %2d %-28s ", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str());
    return head + r.detail;
}

}  // namespace psep
