#pragma once

#include "psep/fourier.hpp"
#include "psep/measure.hpp"
#include "psep/rearrange.hpp"

#include <Eigen/Core>

#include <complex>
#include <numbers>
#include <string>
#include <utility>

namespace psep {

/// Truncated power series f(z) = sum_{n=1}^N c_n z^n, the image f(D) of the
/// unit disk. Univalence is not assumed; see univalence_check.
struct PowerSeriesDomain {
    Eigen::VectorXcd coeffs;
    std::string provenance = "manual";

    Eigen::Index truncation() const { return coeffs.size(); }
    std::complex<double> operator()(std::complex<double> z) const;
    std::complex<double> derivative(std::complex<double> z) const;
};

// Shape functionals on coefficient vectors. They accept any Eigen vector
// expression (real or complex) so callers can pass slices or scaled views.

/// pi sum n |c_n|^2.
template <typename Derived>
typename Derived::RealScalar area(const Eigen::MatrixBase<Derived>& c) {
    using Real = typename Derived::RealScalar;
    const auto n = Eigen::Array<Real, Eigen::Dynamic, 1>::LinSpaced(c.size(), Real(1), Real(c.size()));
    return Real(std::numbers::pi) * (n * c.derived().array().abs2()).sum();
}

/// (1/2) sum |c_n|^2 = E(tau) for a univalent map.
template <typename Derived>
typename Derived::RealScalar expected_exit_time(const Eigen::MatrixBase<Derived>& c) {
    return c.squaredNorm() / 2;
}

/// (1/4) sum n^2 |c_n|^2, partial sum only.
template <typename Derived>
typename Derived::RealScalar skorokhod_energy_sum(const Eigen::MatrixBase<Derived>& c) {
    using Real = typename Derived::RealScalar;
    const auto n = Eigen::Array<Real, Eigen::Dynamic, 1>::LinSpaced(c.size(), Real(1), Real(c.size()));
    return (n.square() * c.derived().array().abs2()).sum() / 4;
}

inline double area(const PowerSeriesDomain& d) { return area(d.coeffs); }
inline double expected_exit_time(const PowerSeriesDomain& d) { return expected_exit_time(d.coeffs); }

struct SkorokhodEnergy {
    double value = 0.0;                 // partial sum up to the truncation
    double last_decade_fraction = 0.0;  // share of terms with n > N/10
    bool converged = true;              // last decade contributes <= 1%
};

SkorokhodEnergy skorokhod_energy(const PowerSeriesDomain& d);

struct GrossOptions {
    CoefficientMethod method = CoefficientMethod::Auto;
    double centering_tol = MeasureTolerances{}.centering;
};

/// Gross power series: real coefficients equal to the cosine coefficients of
/// Q(|theta|/pi). Throws DomainError for laws that are not centered.
PowerSeriesDomain gross_domain(const Measure& m, Eigen::Index n_terms, const GrossOptions& opts = {});

PowerSeriesDomain scaled(const PowerSeriesDomain& d, double factor);

/// (Re f, Im f) sampled on the midpoint grid. Requires G even, G >= 2N + 2.
std::pair<BoundaryTrace, BoundaryTrace> boundary_trace(const PowerSeriesDomain& d,
                                                       Eigen::Index grid_size);

struct UnivalenceDiagnostic {
    bool passed = false;
    long self_intersections = 0;
    long winding_number = 0;
    double min_derivative = 0.0;  // min |f'| on |z| = 0.99
    std::string reason;
};

/// Numeric univalence screen. Requires G >= 4N.
UnivalenceDiagnostic univalence_check(const PowerSeriesDomain& d, Eigen::Index grid_size);

struct InnerCircleReport {
    int n = 0;
    double r = 0.0;
    double original_energy = 0.0;    // int_0^{2pi} |d/dtheta Re z^n|^2 at |z| = r
    double rearranged_energy = 0.0;  // same for z
    double ratio = 0.0;              // original / rearranged = n^2 r^{2n-2}
    bool inequality_holds = false;   // ratio >= 1
};

/// Compares the circle-|z|=r energies of chi_n = cos(n theta) and its
/// rearrangement cos(theta) lifted to z^n and z.
InnerCircleReport inner_circle_counterexample(int n = 3, double r = 0.5);

}  // namespace psep
