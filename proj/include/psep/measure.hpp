#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace psep {

/// Tolerances used when validating and classifying measures.
struct MeasureTolerances {
    double mass = 1e-12;
    double centering = 1e-10;
};

namespace kind {

struct Uniform {
    double a;
    double b;
};

/// Arcsine law on (-1, 1), density 1/(pi sqrt(1 - x^2)).
struct ArcsineShifted {};

/// Law of Re(Z_tau) for Brownian motion from 0 exiting the unit disk
/// shifted by -kappa i.
struct ShiftedDiskExit {
    double kappa;
};

struct Atom {
    double position;
    double weight;
};

struct Atomic {
    std::vector<Atom> atoms;  // sorted by position, distinct positions
};

/// Piecewise-constant density; density[i] lives on [breakpoints[i], breakpoints[i+1]).
struct PiecewiseDensity {
    std::vector<double> breakpoints;
    std::vector<double> density;
    std::vector<double> cumulative;  // CDF at each breakpoint
};

struct Empirical {
    std::vector<double> samples;  // ascending
};

}  // namespace kind

/// A one-dimensional probability law. Immutable after construction; all
/// constructors validate the invariants and throw DomainError on violation.
class Measure {
public:
    using Kind = std::variant<kind::Uniform, kind::ArcsineShifted, kind::ShiftedDiskExit,
                              kind::Atomic, kind::PiecewiseDensity, kind::Empirical>;

    static Measure uniform(double a, double b);
    static Measure arcsine();
    static Measure shifted_disk_exit(double kappa);
    static Measure atomic(std::vector<kind::Atom> atoms, const MeasureTolerances& tol = {});
    static Measure piecewise_density(std::vector<double> breakpoints, std::vector<double> density,
                                     const MeasureTolerances& tol = {});
    static Measure empirical(std::vector<double> samples);

    const Kind& kind() const { return kind_; }
    std::string describe() const;

    /// Support bounds (finite for every provided kind).
    std::pair<double, double> support() const;

private:
    explicit Measure(Kind k) : kind_(std::move(k)) {}
    Kind kind_;
};

double cdf(const Measure& m, double x);

/// inf{x : F(x) >= u} for u in (0, 1); throws DomainError otherwise.
double quantile(const Measure& m, double u);

/// Absolute moment E|X|^p.
double moment(const Measure& m, double p);
double mean(const Measure& m);
double variance(const Measure& m);
bool is_centered(const Measure& m, double tol = MeasureTolerances{}.centering);

/// Density of the shifted-disk exit law at x in (-1, 1).
double shifted_disk_density(double kappa, double x);

/// (1/pi) int_{-pi}^{pi} Q(|theta|/pi) cos(theta) dtheta, which is the first
/// cosine coefficient of the quantile trace. |value| = 1 is the Schlicht
/// normalization; the sign is reported as is.
double schlicht_normalization(const Measure& m);

/// Quantile function bound to its measure.
class QuantileFn {
public:
    explicit QuantileFn(Measure m) : m_(std::move(m)) {}
    double operator()(double u) const { return quantile(m_, u); }
    const Measure& measure() const { return m_; }

private:
    Measure m_;
};

}  // namespace psep
