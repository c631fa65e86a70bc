#include "psep/stats.hpp"

#include "psep/error.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/chi_squared.hpp>

namespace psep {

SampleStats sample_stats(std::span<const double> x) {
    SampleStats s;
    const auto n = static_cast<double>(x.size());
    if (x.empty()) return s;
    double acc = 0;
    for (double v : x) acc += v;
    s.mean = acc / n;
    double m2 = 0, m4 = 0;
    for (double v : x) {
        const double d = v - s.mean;
        const double d2 = d * d;
        m2 += d2;
        m4 += d2 * d2;
    }
    m2 /= n;
    m4 /= n;
    s.variance = m2;
    s.variance_se = std::sqrt(std::max(0.0, m4 - m2 * m2) / n);
    s.mean_se = std::sqrt(m2 / n);
    return s;
}

double ks_statistic(std::span<const double> sorted, const std::function<double(double)>& cdf) {
    const auto n = static_cast<double>(sorted.size());
    double d = 0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
    }
    return d;
}

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
    const auto na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

ChiSquare chi_square_test(std::span<const double> observed, std::span<const double> probs) {
    if (observed.size() != probs.size() || observed.size() < 2)
        throw DomainError("chi-square needs matching cells");
    double total = 0;
    for (double o : observed) total += o;
    ChiSquare r;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double e = total * probs[i];
        if (e <= 0) throw DomainError("chi-square cell with zero expectation");
        r.statistic += (observed[i] - e) * (observed[i] - e) / e;
    }
    r.dof = static_cast<int>(observed.size()) - 1;
    boost::math::chi_squared dist(r.dof);
    r.p_value = boost::math::cdf(boost::math::complement(dist, r.statistic));
    return r;
}

}  // namespace psep
