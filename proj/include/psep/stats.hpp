#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <vector>

namespace psep {

struct SampleStats {
    double mean = 0.0;
    double variance = 0.0;     // population variance
    double variance_se = 0.0;  // standard error of the variance estimate
    double mean_se = 0.0;
};

SampleStats sample_stats(std::span<const double> x);

/// sup |F_n - F| for ascending samples.
double ks_statistic(std::span<const double> sorted, const std::function<double(double)>& cdf);

/// Two-sample KS statistic for ascending inputs.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Asymptotic KS critical value at the 1% level for effective size n.
inline double ks_critical_1pct(double n) { return 1.628 / std::sqrt(n); }

struct ChiSquare {
    double statistic = 0.0;
    int dof = 0;
    double p_value = 0.0;
};

/// Pearson chi-square of observed counts against cell probabilities.
ChiSquare chi_square_test(std::span<const double> observed, std::span<const double> probs);

}  // namespace psep
