#include "psep/gross.hpp"

#include "psep/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <unsupported/Eigen/FFT>

namespace psep {

namespace {

constexpr double pi = std::numbers::pi;
using cd = std::complex<double>;

double cross(cd a, cd b) { return a.real() * b.imag() - a.imag() * b.real(); }

int orientation(cd p, cd q, cd r) {
    const double v = cross(q - p, r - p);
    const double scale = std::max({std::abs(q - p), std::abs(r - p), 1e-300});
    if (std::abs(v) <= 1e-14 * scale * scale) return 0;
    return v > 0 ? 1 : -1;
}

bool on_segment(cd p, cd q, cd r) {
    return std::min(p.real(), r.real()) <= q.real() && q.real() <= std::max(p.real(), r.real()) &&
           std::min(p.imag(), r.imag()) <= q.imag() && q.imag() <= std::max(p.imag(), r.imag());
}

bool segments_intersect(cd p1, cd p2, cd q1, cd q2) {
    const int o1 = orientation(p1, p2, q1);
    const int o2 = orientation(p1, p2, q2);
    const int o3 = orientation(q1, q2, p1);
    const int o4 = orientation(q1, q2, p2);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment(p1, q1, p2)) return true;
    if (o2 == 0 && on_segment(p1, q2, p2)) return true;
    if (o3 == 0 && on_segment(q1, p1, q2)) return true;
    if (o4 == 0 && on_segment(q1, p2, q2)) return true;
    return false;
}

// Sweep over x: segments sorted by left end, active set pruned by right end.
long count_self_intersections(const std::vector<cd>& pts) {
    const std::size_t g = pts.size();
    struct Seg {
        std::size_t idx;
        double xlo, xhi, ylo, yhi;
    };
    std::vector<Seg> segs(g);
    for (std::size_t j = 0; j < g; ++j) {
        const cd a = pts[j], b = pts[(j + 1) % g];
        segs[j] = {j, std::min(a.real(), b.real()), std::max(a.real(), b.real()),
                   std::min(a.imag(), b.imag()), std::max(a.imag(), b.imag())};
    }
    std::sort(segs.begin(), segs.end(), [](const Seg& l, const Seg& r) { return l.xlo < r.xlo; });

    long hits = 0;
    std::vector<Seg> active;
    for (const Seg& s : segs) {
        std::erase_if(active, [&](const Seg& a) { return a.xhi < s.xlo; });
        for (const Seg& a : active) {
            const std::size_t d = (a.idx > s.idx) ? a.idx - s.idx : s.idx - a.idx;
            if (d == 1 || d == g - 1) continue;  // neighbours share a vertex
            if (a.yhi < s.ylo || s.yhi < a.ylo) continue;
            if (segments_intersect(pts[a.idx], pts[(a.idx + 1) % g], pts[s.idx],
                                   pts[(s.idx + 1) % g]))
                ++hits;
        }
        active.push_back(s);
    }
    return hits;
}

}  // namespace

cd PowerSeriesDomain::operator()(cd z) const {
    cd acc = 0;
    for (Eigen::Index n = truncation(); n >= 1; --n) acc = (acc + coeffs(n - 1)) * z;
    return acc;
}

cd PowerSeriesDomain::derivative(cd z) const {
    cd acc = 0;
    for (Eigen::Index n = truncation(); n >= 1; --n)
        acc = acc * z + static_cast<double>(n) * coeffs(n - 1);
    return acc;
}

SkorokhodEnergy skorokhod_energy(const PowerSeriesDomain& d) {
    SkorokhodEnergy e;
    e.value = skorokhod_energy_sum(d.coeffs);
    const Eigen::Index n = d.truncation();
    const Eigen::Index head = n / 10;
    // Series shorter than ten terms have no last decade to assess.
    if (e.value > 0 && head > 0) {
        double tail = 0;
        for (Eigen::Index k = head; k < n; ++k)
            tail += static_cast<double>((k + 1) * (k + 1)) * std::norm(d.coeffs(k)) / 4.0;
        e.last_decade_fraction = tail / e.value;
    }
    e.converged = e.last_decade_fraction <= 0.01;
    return e;
}

PowerSeriesDomain gross_domain(const Measure& m, Eigen::Index n_terms, const GrossOptions& opts) {
    if (!is_centered(m, opts.centering_tol))
        throw DomainError("gross domain requires a centered law, mean = " + std::to_string(mean(m)));
    const CosineSeries s = quantile_cosine_coeffs(QuantileFn(m), n_terms, opts.method);
    PowerSeriesDomain d;
    d.coeffs = s.coeffs.cast<cd>();
    d.provenance = "gross(" + m.describe() + ")";
    return d;
}

PowerSeriesDomain scaled(const PowerSeriesDomain& d, double factor) {
    return {d.coeffs * factor, d.provenance};
}

std::pair<BoundaryTrace, BoundaryTrace> boundary_trace(const PowerSeriesDomain& d,
                                                       Eigen::Index grid_size) {
    BoundaryTrace::check_grid(grid_size);
    const Eigen::Index n = d.truncation();
    if (grid_size < 2 * n + 2)
        throw DomainError("boundary trace needs G >= 2N + 2");

    // f(e^{i theta_j}) = sum_n c_n (-1)^n e^{i n h / 2} e^{2 pi i n j / G}.
    const double h = 2.0 * pi / static_cast<double>(grid_size);
    std::vector<cd> spec(static_cast<std::size_t>(grid_size), cd(0));
    for (Eigen::Index k = 1; k <= n; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        spec[static_cast<std::size_t>(k)] =
            d.coeffs(k - 1) * sign * std::polar(1.0, 0.5 * h * static_cast<double>(k));
    }
    Eigen::FFT<double> fft;
    std::vector<cd> vals;
    fft.inv(vals, spec);  // scaled by 1/G

    Eigen::VectorXd re(grid_size), im(grid_size);
    const double g = static_cast<double>(grid_size);
    for (Eigen::Index j = 0; j < grid_size; ++j) {
        re(j) = vals[static_cast<std::size_t>(j)].real() * g;
        im(j) = vals[static_cast<std::size_t>(j)].imag() * g;
    }
    return {BoundaryTrace(std::move(re)), BoundaryTrace(std::move(im))};
}

UnivalenceDiagnostic univalence_check(const PowerSeriesDomain& d, Eigen::Index grid_size) {
    UnivalenceDiagnostic diag;
    if (grid_size < 4 * d.truncation())
        throw DomainError("univalence check needs G >= 4N");
    if (d.truncation() == 0 || d.coeffs.cwiseAbs().maxCoeff() == 0.0) {
        diag.reason = "degenerate series (all coefficients zero)";
        return diag;
    }

    const auto [re, im] = boundary_trace(d, grid_size);
    std::vector<cd> pts(static_cast<std::size_t>(grid_size));
    for (Eigen::Index j = 0; j < grid_size; ++j)
        pts[static_cast<std::size_t>(j)] = {re.values()(j), im.values()(j)};

    double turn = 0;
    for (std::size_t j = 0; j < pts.size(); ++j) {
        const cd a = pts[j], b = pts[(j + 1) % pts.size()];
        if (a == cd(0) || b == cd(0)) {
            diag.reason = "boundary passes through the origin";
            return diag;
        }
        turn += std::arg(b / a);
    }
    diag.winding_number = std::lround(turn / (2.0 * pi));
    diag.self_intersections = count_self_intersections(pts);

    diag.min_derivative = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < grid_size; ++j) {
        const cd z = std::polar(0.99, BoundaryTrace::node(grid_size, j));
        diag.min_derivative = std::min(diag.min_derivative, std::abs(d.derivative(z)));
    }

    if (diag.winding_number != 1)
        diag.reason = "winding number " + std::to_string(diag.winding_number);
    else if (diag.self_intersections > 0)
        diag.reason = std::to_string(diag.self_intersections) + " self-intersections";
    else if (!(diag.min_derivative > 0.0))
        diag.reason = "vanishing derivative inside the disk";
    diag.passed = diag.reason.empty();
    return diag;
}

InnerCircleReport inner_circle_counterexample(int n, double r) {
    if (n < 1) throw DomainError("mode index must be positive");
    if (!(r > 0.0 && r < 1.0)) throw DomainError("radius must lie in (0, 1)");
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    // d/dtheta Re(r^k e^{i k theta}) = -k r^k sin(k theta)
    auto energy = [&](int k) {
        const double amp = k * std::pow(r, k);
        return GK::integrate(
            [&](double t) {
                const double v = amp * std::sin(k * t);
                return v * v;
            },
            0.0, 2.0 * pi, 15, 1e-14);
    };
    InnerCircleReport rep;
    rep.n = n;
    rep.r = r;
    rep.original_energy = energy(n);
    rep.rearranged_energy = energy(1);
    rep.ratio = rep.original_energy / rep.rearranged_energy;
    rep.inequality_holds = rep.ratio >= 1.0;
    return rep;
}

}  // namespace psep
