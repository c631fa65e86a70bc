#pragma once

#include "psep/fourier.hpp"
#include "psep/rearrange.hpp"

#include <Eigen/Core>

namespace psep {

struct SeminormReport {
    double gagliardo_value = 0.0;
    double fourier_value = 0.0;
    double s = 0.5;
    Eigen::Index grid_size = 0;
    Eigen::Index truncation = 0;
};

/// Squared periodic Gagliardo seminorm by the midpoint rule:
///   (2 pi / G)^2 sum_{j != k} |u_j - u_k|^2 / (2^{1+2s} |sin((theta_j - theta_k)/2)|^{1+2s}).
/// The diagonal cells are left out. Requires s in (0, 1).
double gagliardo_seminorm(const BoundaryTrace& trace, double s);

/// sum_n n^{2s} (alpha_n^2 + beta_n^2). With this convention cos(theta) has
/// value 1; the two-sided sum over k in Z with u_{+-1} = 1/2 gives 1/2, so
/// this is twice the two-sided form. Requires s in (0, 1].
double fourier_seminorm(const TraceSpectrum& spec, double s);

SeminormReport seminorm_report(const BoundaryTrace& trace, double s);

struct EtaEstimate {
    double mean_ratio = 0.0;       // mean Gagliardo / Fourier over pure modes
    double relative_spread = 0.0;  // (max - min) / mean
    Eigen::VectorXd ratios;        // per mode k = 1..K
};

/// Ratio of the two seminorms on the pure modes cos(k theta), k = 1..K.
EtaEstimate eta_constant(double s, Eigen::Index grid_size, Eigen::Index modes);

struct PolyaSzegoResult {
    double lhs = 0.0;  // seminorm of the rearranged trace
    double rhs = 0.0;  // seminorm of the trace
    bool ok = false;
};

PolyaSzegoResult polya_szego_check(const BoundaryTrace& trace, double s, double tol = 1e-6);

}  // namespace psep
