#include "psep/sobolev.hpp"

#include "psep/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace psep {

namespace {

constexpr double pi = std::numbers::pi;

void check_order(double s) {
    if (!(s > 0.0 && s < 1.0)) throw DomainError("fractional order s must lie in (0, 1)");
}

}  // namespace

double gagliardo_seminorm(const BoundaryTrace& trace, double s) {
    check_order(s);
    const Eigen::Index g = trace.grid_size();
    const double h = 2.0 * pi / static_cast<double>(g);

    // Circulant kernel: depends only on the index gap d = |j - k|.
    Eigen::VectorXd kernel(g);
    kernel(0) = 0.0;
    const double pref = std::pow(2.0, -(1.0 + 2.0 * s));
    for (Eigen::Index d = 1; d < g; ++d)
        kernel(d) = pref * std::pow(std::abs(std::sin(0.5 * h * static_cast<double>(d))), -(1.0 + 2.0 * s));

    const Eigen::VectorXd& u = trace.values();
    double total = 0.0;
    for (Eigen::Index j = 0; j < g; ++j) {
        const double uj = u(j);
        double row = 0.0;
        for (Eigen::Index k = j + 1; k < g; ++k) {
            const double diff = uj - u(k);
            row += diff * diff * kernel(k - j);
        }
        total += row;
    }
    return 2.0 * total * h * h;
}

double fourier_seminorm(const TraceSpectrum& spec, double s) {
    if (!(s > 0.0 && s <= 1.0)) throw DomainError("fractional order s must lie in (0, 1]");
    double acc = 0.0;
    for (Eigen::Index n = 0; n < spec.truncation(); ++n) {
        const double w = std::pow(static_cast<double>(n + 1), 2.0 * s);
        acc += w * (spec.alpha(n) * spec.alpha(n) + spec.beta(n) * spec.beta(n));
    }
    return acc;
}

SeminormReport seminorm_report(const BoundaryTrace& trace, double s) {
    SeminormReport r;
    r.s = s;
    r.grid_size = trace.grid_size();
    r.truncation = max_spectrum_terms(trace.grid_size());
    r.gagliardo_value = gagliardo_seminorm(trace, s);
    r.fourier_value = fourier_seminorm(trace_spectrum(trace, r.truncation), s);
    return r;
}

EtaEstimate eta_constant(double s, Eigen::Index grid_size, Eigen::Index modes) {
    check_order(s);
    if (modes < 1) throw DomainError("eta_constant needs at least one mode");
    if (modes > max_spectrum_terms(grid_size)) throw DomainError("too many modes for the grid");
    EtaEstimate e;
    e.ratios.resize(modes);
    for (Eigen::Index k = 1; k <= modes; ++k) {
        const auto kd = static_cast<double>(k);
        const BoundaryTrace t =
            BoundaryTrace::sample(grid_size, [kd](double th) { return std::cos(kd * th); });
        const double fourier = fourier_seminorm(trace_spectrum(t, modes), s);
        e.ratios(k - 1) = gagliardo_seminorm(t, s) / fourier;
    }
    e.mean_ratio = e.ratios.mean();
    e.relative_spread = (e.ratios.maxCoeff() - e.ratios.minCoeff()) / e.mean_ratio;
    return e;
}

PolyaSzegoResult polya_szego_check(const BoundaryTrace& trace, double s, double tol) {
    PolyaSzegoResult r;
    r.lhs = gagliardo_seminorm(sdr(trace), s);
    r.rhs = gagliardo_seminorm(trace, s);
    r.ok = r.lhs <= r.rhs * (1.0 + tol);
    return r;
}

}  // namespace psep
