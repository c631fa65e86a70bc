#include "psep/measure.hpp"

#include "psep/error.hpp"
#include "psep/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace psep {

namespace {

constexpr double pi = std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double disk_ratio(double kappa) {
    const double k2 = kappa * kappa;
    return (1.0 - k2) / (1.0 + k2);
}

// Antiderivative of sgn(x)|x|^p used for absolute moments of flat densities.
double abs_power_primitive(double x, double p) {
    const double v = std::pow(std::abs(x), p + 1.0) / (p + 1.0);
    return x < 0 ? -v : v;
}

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw DomainError(std::string(what) + " must be finite");
}

}  // namespace

Measure Measure::uniform(double a, double b) {
    require_finite(a, "uniform bound");
    require_finite(b, "uniform bound");
    if (!(a < b)) throw DomainError("uniform requires a < b");
    return Measure(kind::Uniform{a, b});
}

Measure Measure::arcsine() { return Measure(kind::ArcsineShifted{}); }

Measure Measure::shifted_disk_exit(double kappa) {
    if (!(kappa >= 0.0 && kappa < 1.0)) throw DomainError("shifted disk requires kappa in [0, 1)");
    return Measure(kind::ShiftedDiskExit{kappa});
}

Measure Measure::atomic(std::vector<kind::Atom> atoms, const MeasureTolerances& tol) {
    if (atoms.empty()) throw DomainError("atomic measure needs at least one atom");
    for (const auto& a : atoms) {
        require_finite(a.position, "atom position");
        require_finite(a.weight, "atom weight");
        if (a.weight < 0) throw DomainError("atom weights must be nonnegative");
    }
    std::sort(atoms.begin(), atoms.end(),
              [](const kind::Atom& l, const kind::Atom& r) { return l.position < r.position; });
    std::vector<kind::Atom> merged;
    for (const auto& a : atoms) {
        if (!merged.empty() && merged.back().position == a.position)
            merged.back().weight += a.weight;
        else
            merged.push_back(a);
    }
    double mass = 0;
    for (const auto& a : merged) mass += a.weight;
    if (std::abs(mass - 1.0) > tol.mass) throw DomainError("atomic weights must sum to 1");
    return Measure(kind::Atomic{std::move(merged)});
}

Measure Measure::piecewise_density(std::vector<double> breakpoints, std::vector<double> density,
                                   const MeasureTolerances& tol) {
    if (breakpoints.size() < 2 || density.size() + 1 != breakpoints.size())
        throw DomainError("piecewise density needs K+1 breakpoints for K cells");
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
        require_finite(breakpoints[i], "breakpoint");
        if (i > 0 && !(breakpoints[i] > breakpoints[i - 1]))
            throw DomainError("breakpoints must be strictly ascending");
    }
    std::vector<double> cumulative(breakpoints.size(), 0.0);
    for (std::size_t i = 0; i < density.size(); ++i) {
        require_finite(density[i], "density value");
        if (density[i] < 0) throw DomainError("density values must be nonnegative");
        cumulative[i + 1] = cumulative[i] + density[i] * (breakpoints[i + 1] - breakpoints[i]);
    }
    if (std::abs(cumulative.back() - 1.0) > tol.mass)
        throw DomainError("piecewise density must integrate to 1");
    return Measure(kind::PiecewiseDensity{std::move(breakpoints), std::move(density),
                                          std::move(cumulative)});
}

Measure Measure::empirical(std::vector<double> samples) {
    if (samples.empty()) throw DomainError("empirical measure needs samples");
    for (double s : samples) require_finite(s, "sample");
    std::sort(samples.begin(), samples.end());
    return Measure(kind::Empirical{std::move(samples)});
}

std::string Measure::describe() const {
    std::ostringstream os;
    os.precision(17);
    std::visit(overloaded{
                   [&](const kind::Uniform& k) { os << "uniform:" << k.a << ',' << k.b; },
                   [&](const kind::ArcsineShifted&) { os << "arcsine"; },
                   [&](const kind::ShiftedDiskExit& k) { os << "diskexit:" << k.kappa; },
                   [&](const kind::Atomic& k) {
                       os << "atoms:";
                       for (std::size_t i = 0; i < k.atoms.size(); ++i)
                           os << (i ? "," : "") << k.atoms[i].position << ':' << k.atoms[i].weight;
                   },
                   [&](const kind::PiecewiseDensity& k) {
                       os << "density(" << k.density.size() << " cells)";
                   },
                   [&](const kind::Empirical& k) {
                       os << "empirical(" << k.samples.size() << " samples)";
                   },
               },
               kind_);
    return os.str();
}

std::pair<double, double> Measure::support() const {
    return std::visit(
        overloaded{
            [](const kind::Uniform& k) { return std::pair{k.a, k.b}; },
            [](const kind::ArcsineShifted&) { return std::pair{-1.0, 1.0}; },
            [](const kind::ShiftedDiskExit&) { return std::pair{-1.0, 1.0}; },
            [](const kind::Atomic& k) {
                return std::pair{k.atoms.front().position, k.atoms.back().position};
            },
            [](const kind::PiecewiseDensity& k) {
                return std::pair{k.breakpoints.front(), k.breakpoints.back()};
            },
            [](const kind::Empirical& k) {
                return std::pair{k.samples.front(), k.samples.back()};
            },
        },
        kind_);
}

double shifted_disk_density(double kappa, double x) {
    if (!(x > -1.0 && x < 1.0)) return 0.0;
    const double k2 = kappa * kappa;
    const double one_m = 1.0 - k2;
    return (1.0 - k2 * k2) / (pi * (one_m * one_m + 4.0 * k2 * x * x) * std::sqrt(1.0 - x * x));
}

double cdf(const Measure& m, double x) {
    return std::visit(
        overloaded{
            [&](const kind::Uniform& k) { return std::clamp((x - k.a) / (k.b - k.a), 0.0, 1.0); },
            [&](const kind::ArcsineShifted&) {
                if (x <= -1.0) return 0.0;
                if (x >= 1.0) return 1.0;
                return 1.0 - std::acos(x) / pi;
            },
            [&](const kind::ShiftedDiskExit& k) {
                if (x <= -1.0) return 0.0;
                if (x >= 1.0) return 1.0;
                // With x = cos t the law of t on (0, pi) integrates to
                // atan2(r sin t, cos t) / pi.
                const double t = std::acos(x);
                return 1.0 - std::atan2(disk_ratio(k.kappa) * std::sin(t), std::cos(t)) / pi;
            },
            [&](const kind::Atomic& k) {
                double acc = 0;
                for (const auto& a : k.atoms) {
                    if (a.position > x) break;
                    acc += a.weight;
                }
                return std::min(acc, 1.0);
            },
            [&](const kind::PiecewiseDensity& k) {
                const auto& b = k.breakpoints;
                if (x <= b.front()) return 0.0;
                if (x >= b.back()) return 1.0;
                const auto i = static_cast<std::size_t>(
                    std::upper_bound(b.begin(), b.end(), x) - b.begin() - 1);
                return std::min(1.0, k.cumulative[i] + k.density[i] * (x - b[i]));
            },
            [&](const kind::Empirical& k) {
                const auto cnt = std::upper_bound(k.samples.begin(), k.samples.end(), x) -
                                 k.samples.begin();
                return static_cast<double>(cnt) / static_cast<double>(k.samples.size());
            },
        },
        m.kind());
}

double quantile(const Measure& m, double u) {
    if (!(u > 0.0 && u < 1.0)) throw DomainError("quantile requires u in (0, 1)");
    return std::visit(
        overloaded{
            [&](const kind::Uniform& k) { return k.a + u * (k.b - k.a); },
            [&](const kind::ArcsineShifted&) { return -std::cos(pi * u); },
            [&](const kind::ShiftedDiskExit& k) {
                const double phi = pi * (1.0 - u);
                const double t = std::atan2(std::sin(phi), disk_ratio(k.kappa) * std::cos(phi));
                return std::cos(t);
            },
            [&](const kind::Atomic& k) {
                double acc = 0;
                for (const auto& a : k.atoms) {
                    acc += a.weight;
                    if (acc >= u - 1e-15) return a.position;
                }
                return k.atoms.back().position;
            },
            [&](const kind::PiecewiseDensity& k) {
                const auto& c = k.cumulative;
                auto it = std::lower_bound(c.begin() + 1, c.end(), u);
                if (it == c.end()) return k.breakpoints.back();
                const auto i = static_cast<std::size_t>(it - c.begin() - 1);
                return k.breakpoints[i] + (u - c[i]) / k.density[i];
            },
            [&](const kind::Empirical& k) {
                const auto n = k.samples.size();
                auto idx = static_cast<std::size_t>(std::ceil(u * static_cast<double>(n)));
                idx = std::clamp<std::size_t>(idx, 1, n);
                return k.samples[idx - 1];
            },
        },
        m.kind());
}

double moment(const Measure& m, double p) {
    if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("moment order must be positive");
    return std::visit(
        overloaded{
            [&](const kind::Uniform& k) {
                return (abs_power_primitive(k.b, p) - abs_power_primitive(k.a, p)) / (k.b - k.a);
            },
            [&](const kind::ArcsineShifted&) {
                return std::tgamma((p + 1.0) / 2.0) / (std::sqrt(pi) * std::tgamma(p / 2.0 + 1.0));
            },
            [&](const kind::ShiftedDiskExit& k) {
                if (p == 2.0) return (1.0 - k.kappa * k.kappa) / 2.0;
                // x = cos t; the law of t has density
                // (1 - k^4) / (pi ((1 - k^2)^2 + 4 k^2 cos^2 t)) on (0, pi).
                const double k2 = k.kappa * k.kappa;
                const double lead = (1.0 - k2 * k2) / pi;
                const double a = (1.0 - k2) * (1.0 - k2);
                auto f = [&](double t) {
                    const double c = std::cos(t);
                    return std::pow(std::abs(c), p) * lead / (a + 4.0 * k2 * c * c);
                };
                using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
                return GK::integrate(f, 0.0, pi / 2, 20, 1e-13) * 2.0;
            },
            [&](const kind::Atomic& k) {
                double acc = 0;
                for (const auto& a : k.atoms) acc += a.weight * std::pow(std::abs(a.position), p);
                return acc;
            },
            [&](const kind::PiecewiseDensity& k) {
                double acc = 0;
                for (std::size_t i = 0; i < k.density.size(); ++i)
                    acc += k.density[i] * (abs_power_primitive(k.breakpoints[i + 1], p) -
                                           abs_power_primitive(k.breakpoints[i], p));
                return acc;
            },
            [&](const kind::Empirical& k) {
                double acc = 0;
                for (double s : k.samples) acc += std::pow(std::abs(s), p);
                return acc / static_cast<double>(k.samples.size());
            },
        },
        m.kind());
}

double mean(const Measure& m) {
    return std::visit(
        overloaded{
            [](const kind::Uniform& k) { return 0.5 * (k.a + k.b); },
            [](const kind::ArcsineShifted&) { return 0.0; },
            [](const kind::ShiftedDiskExit&) { return 0.0; },
            [](const kind::Atomic& k) {
                double acc = 0;
                for (const auto& a : k.atoms) acc += a.weight * a.position;
                return acc;
            },
            [](const kind::PiecewiseDensity& k) {
                double acc = 0;
                for (std::size_t i = 0; i < k.density.size(); ++i) {
                    const double l = k.breakpoints[i], r = k.breakpoints[i + 1];
                    acc += k.density[i] * 0.5 * (r * r - l * l);
                }
                return acc;
            },
            [](const kind::Empirical& k) {
                return std::accumulate(k.samples.begin(), k.samples.end(), 0.0) /
                       static_cast<double>(k.samples.size());
            },
        },
        m.kind());
}

double variance(const Measure& m) {
    if (const auto* e = std::get_if<kind::Empirical>(&m.kind())) {
        const double mu = mean(m);
        double acc = 0;
        for (double s : e->samples) acc += (s - mu) * (s - mu);
        return acc / static_cast<double>(e->samples.size());
    }
    const double mu = mean(m);
    return std::max(0.0, moment(m, 2.0) - mu * mu);
}

bool is_centered(const Measure& m, double tol) { return std::abs(mean(m)) <= tol; }

double schlicht_normalization(const Measure& m) {
    return quantile_cosine_coeffs(QuantileFn(m), 1).coeffs(0);
}

}  // namespace psep
