#pragma once

#include "psep/measure.hpp"
#include "psep/rearrange.hpp"

#include <Eigen/Core>

namespace psep {

/// Real cosine coefficients a_1..a_N of theta -> Q(|theta|/pi); a_0 is the
/// mean of the law and is not stored.
struct CosineSeries {
    Eigen::VectorXd coeffs;
    Eigen::Index truncation() const { return coeffs.size(); }
};

/// One-sided discrete spectrum of a trace:
/// u(theta) ~ mean_term + sum_n alpha_n cos(n theta) + beta_n sin(n theta).
struct TraceSpectrum {
    Eigen::VectorXd alpha;
    Eigen::VectorXd beta;
    double mean_term = 0.0;
    Eigen::Index truncation() const { return alpha.size(); }
};

enum class CoefficientMethod {
    Auto,        // closed form where one exists, otherwise the exact/quadrature route
    Quadrature,  // force adaptive quadrature for the closed-form kinds
};

inline constexpr Eigen::Index default_truncation = 256;

/// a_n = 2 int_0^1 Q(u) cos(n pi u) du for n = 1..N.
///
/// Step quantiles (atomic, empirical) are integrated exactly cell by cell,
/// piecewise densities have piecewise-linear quantiles and are integrated
/// exactly as well. The remaining kinds use Gauss-Kronrod panels with
/// tolerance 1e-10; uniform and arcsine laws take their closed forms unless
/// Quadrature is requested.
CosineSeries quantile_cosine_coeffs(const QuantileFn& q, Eigen::Index n_terms,
                                    CoefficientMethod method = CoefficientMethod::Auto);

/// Closed-form coefficients, available for uniform and arcsine laws only.
CosineSeries closed_form_cosine_coeffs(const Measure& m, Eigen::Index n_terms);

/// Discrete Fourier projections on the midpoint grid. Requires N <= G/2 - 1;
/// exact for trigonometric polynomials of degree <= N.
TraceSpectrum trace_spectrum(const BoundaryTrace& trace, Eigen::Index n_terms);

/// Largest admissible truncation for a grid.
inline Eigen::Index max_spectrum_terms(Eigen::Index grid_size) { return grid_size / 2 - 1; }

double evaluate_series(const CosineSeries& s, double theta);

/// sum a_n^2, i.e. twice the variance captured by the truncated series.
inline double captured_energy(const CosineSeries& s) { return s.coeffs.squaredNorm(); }

}  // namespace psep
