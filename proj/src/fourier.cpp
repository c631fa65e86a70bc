#include "psep/fourier.hpp"

#include "psep/error.hpp"
#include "psep/parallel.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <unsupported/Eigen/FFT>

namespace psep {

namespace {

constexpr double pi = std::numbers::pi;

void check_terms(Eigen::Index n_terms) {
    if (n_terms < 1) throw DomainError("truncation must be at least 1");
}

struct Jump {
    double u;      // location in (0, 1)
    double delta;  // Q(u+) - Q(u)
};

// For a step quantile with jumps delta_k at u_k,
// a_n = -(2 / (n pi)) sum_k sin(n pi u_k) delta_k.
Eigen::VectorXd step_coeffs(const std::vector<Jump>& jumps, Eigen::Index n_terms) {
    constexpr std::size_t chunk = 4096;
    const std::size_t chunks = (jumps.size() + chunk - 1) / chunk;
    std::vector<Eigen::VectorXd> partial(chunks, Eigen::VectorXd::Zero(n_terms));

    parallel_chunks(chunks, [&](std::size_t c) {
        Eigen::VectorXd& acc = partial[c];
        const std::size_t lo = c * chunk;
        const std::size_t hi = std::min(jumps.size(), lo + chunk);
        for (std::size_t k = lo; k < hi; ++k) {
            const double wr = std::cos(pi * jumps[k].u);
            const double wi = std::sin(pi * jumps[k].u);
            const double d = jumps[k].delta;
            double zr = wr, zi = wi;
            for (Eigen::Index n = 0; n < n_terms; ++n) {
                acc(n) += zi * d;
                const double tr = zr * wr - zi * wi;
                zi = zr * wi + zi * wr;
                zr = tr;
            }
        }
    });

    Eigen::VectorXd a = Eigen::VectorXd::Zero(n_terms);
    for (const auto& p : partial) a += p;
    for (Eigen::Index n = 0; n < n_terms; ++n) a(n) *= -2.0 / (static_cast<double>(n + 1) * pi);
    return a;
}

Eigen::VectorXd empirical_coeffs(const kind::Empirical& e, Eigen::Index n_terms) {
    const auto m = e.samples.size();
    std::vector<Jump> jumps;
    for (std::size_t k = 1; k < m; ++k) {
        const double d = e.samples[k] - e.samples[k - 1];
        if (d != 0.0)
            jumps.push_back({static_cast<double>(k) / static_cast<double>(m), d});
    }
    return step_coeffs(jumps, n_terms);
}

Eigen::VectorXd atomic_coeffs(const kind::Atomic& a, Eigen::Index n_terms) {
    std::vector<Jump> jumps;
    double cum = 0;
    for (std::size_t k = 0; k + 1 < a.atoms.size(); ++k) {
        cum += a.atoms[k].weight;
        if (cum > 0.0 && cum < 1.0)
            jumps.push_back({cum, a.atoms[k + 1].position - a.atoms[k].position});
    }
    return step_coeffs(jumps, n_terms);
}

// Piecewise-constant density => quantile is linear on each cell in u.
Eigen::VectorXd piecewise_coeffs(const kind::PiecewiseDensity& p, Eigen::Index n_terms) {
    Eigen::VectorXd a = Eigen::VectorXd::Zero(n_terms);
    for (std::size_t i = 0; i < p.density.size(); ++i) {
        if (p.density[i] <= 0.0) continue;
        const double u0 = p.cumulative[i], u1 = p.cumulative[i + 1];
        const double slope = 1.0 / p.density[i];
        const double x0 = p.breakpoints[i];
        for (Eigen::Index n = 0; n < n_terms; ++n) {
            const double w = static_cast<double>(n + 1) * pi;
            // int (x0 + slope (u - u0)) cos(w u) du
            auto prim = [&](double u) {
                return (x0 + slope * (u - u0)) * std::sin(w * u) / w +
                       slope * std::cos(w * u) / (w * w);
            };
            a(n) += 2.0 * (prim(u1) - prim(u0));
        }
    }
    return a;
}

using GK = boost::math::quadrature::gauss_kronrod<double, 15>;

// Bisects until the Kronrod error estimate meets an absolute tolerance. The
// library driver compares against the panel's own estimate, which never
// terminates early for the near-cancelling panels of high coefficients.
template <typename F>
double adaptive_gk(const F& f, double a, double b, double abs_tol, int depth) {
    double err = 0, l1 = 0;
    const double r = GK::integrate(f, a, b, 0, 0.0, &err, &l1);
    // The reported estimate is on the reference interval [-1, 1].
    if (err * 0.5 * (b - a) <= abs_tol || depth == 0) return r;
    const double mid = 0.5 * (a + b);
    return adaptive_gk(f, a, mid, 0.5 * abs_tol, depth - 1) +
           adaptive_gk(f, mid, b, 0.5 * abs_tol, depth - 1);
}

Eigen::VectorXd quadrature_coeffs(const QuantileFn& q, Eigen::Index n_terms) {
    Eigen::VectorXd a(n_terms);
    parallel_chunks(static_cast<std::size_t>(n_terms), [&](std::size_t idx) {
        const auto n = static_cast<double>(idx + 1);
        const auto panels = static_cast<int>(std::max(2.0, n));
        double sum = 0;
        for (int p = 0; p < panels; ++p) {
            const double lo = static_cast<double>(p) / panels;
            const double hi = static_cast<double>(p + 1) / panels;
            sum += adaptive_gk([&](double u) { return q(u) * std::cos(n * pi * u); }, lo, hi,
                               1e-13 / panels, 20);
        }
        a(static_cast<Eigen::Index>(idx)) = 2.0 * sum;
    });
    if (!a.allFinite()) throw UnsupportedError("quantile is not integrable");
    return a;
}

}  // namespace

CosineSeries closed_form_cosine_coeffs(const Measure& m, Eigen::Index n_terms) {
    check_terms(n_terms);
    Eigen::VectorXd a = Eigen::VectorXd::Zero(n_terms);
    if (const auto* u = std::get_if<kind::Uniform>(&m.kind())) {
        for (Eigen::Index n = 0; n < n_terms; n += 2) {
            const double w = static_cast<double>(n + 1) * pi;
            a(n) = -4.0 * (u->b - u->a) / (w * w);
        }
    } else if (std::holds_alternative<kind::ArcsineShifted>(m.kind())) {
        a(0) = -1.0;
    } else {
        throw UnsupportedError("no closed-form coefficients for " + m.describe());
    }
    return {a};
}

CosineSeries quantile_cosine_coeffs(const QuantileFn& q, Eigen::Index n_terms,
                                    CoefficientMethod method) {
    check_terms(n_terms);
    const Measure& m = q.measure();
    if (const auto* e = std::get_if<kind::Empirical>(&m.kind())) return {empirical_coeffs(*e, n_terms)};
    if (const auto* a = std::get_if<kind::Atomic>(&m.kind())) return {atomic_coeffs(*a, n_terms)};
    if (const auto* p = std::get_if<kind::PiecewiseDensity>(&m.kind()))
        return {piecewise_coeffs(*p, n_terms)};
    const bool closed = std::holds_alternative<kind::Uniform>(m.kind()) ||
                        std::holds_alternative<kind::ArcsineShifted>(m.kind());
    if (closed && method == CoefficientMethod::Auto) return closed_form_cosine_coeffs(m, n_terms);
    return {quadrature_coeffs(q, n_terms)};
}

TraceSpectrum trace_spectrum(const BoundaryTrace& trace, Eigen::Index n_terms) {
    const Eigen::Index g = trace.grid_size();
    check_terms(n_terms);
    if (n_terms > max_spectrum_terms(g))
        throw DomainError("truncation " + std::to_string(n_terms) + " too large for grid " +
                          std::to_string(g));

    Eigen::FFT<double> fft;
    std::vector<double> in(trace.values().begin(), trace.values().end());
    std::vector<std::complex<double>> out;
    fft.fwd(out, in);

    const double h = 2.0 * pi / static_cast<double>(g);
    const double scale = 2.0 / static_cast<double>(g);
    TraceSpectrum s;
    s.alpha.resize(n_terms);
    s.beta.resize(n_terms);
    s.mean_term = out[0].real() / static_cast<double>(g);
    for (Eigen::Index n = 1; n <= n_terms; ++n) {
        // theta_j = -pi + (j + 1/2) h shifts the plain DFT by (-1)^n e^{-i n h / 2}.
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        const std::complex<double> shift = sign * std::polar(1.0, -0.5 * h * static_cast<double>(n));
        const std::complex<double> v = shift * out[static_cast<std::size_t>(n)];
        s.alpha(n - 1) = scale * v.real();
        s.beta(n - 1) = -scale * v.imag();
    }
    return s;
}

double evaluate_series(const CosineSeries& s, double theta) {
    double acc = 0;
    for (Eigen::Index n = 0; n < s.truncation(); ++n)
        acc += s.coeffs(n) * std::cos(static_cast<double>(n + 1) * theta);
    return acc;
}

}  // namespace psep
