#include "psep/rearrange.hpp"

#include "psep/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

namespace psep {

BoundaryTrace::BoundaryTrace(Eigen::VectorXd values) : values_(std::move(values)) {
    check_grid(values_.size());
}

double BoundaryTrace::node(Eigen::Index grid_size, Eigen::Index j) {
    const double h = 2.0 * std::numbers::pi / static_cast<double>(grid_size);
    return -std::numbers::pi + (static_cast<double>(j) + 0.5) * h;
}

void BoundaryTrace::check_grid(Eigen::Index grid_size) {
    if (grid_size < 4 || grid_size % 2 != 0)
        throw DomainError("grid size must be even and at least 4, got " +
                          std::to_string(grid_size));
}

BoundaryTrace sdr(const BoundaryTrace& trace) {
    const Eigen::Index g = trace.grid_size();
    const Eigen::Index half = g / 2;
    std::vector<double> sorted(trace.values().begin(), trace.values().end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());

    // Node half + k sits at +(k + 1/2) h, node half - 1 - k at -(k + 1/2) h.
    Eigen::VectorXd out(g);
    for (Eigen::Index k = 0; k < half; ++k) {
        out(half + k) = sorted[static_cast<std::size_t>(2 * k)];
        out(half - 1 - k) = sorted[static_cast<std::size_t>(2 * k + 1)];
    }
    return BoundaryTrace(std::move(out));
}

BoundaryTrace quantile_sdr(const QuantileFn& q, Eigen::Index grid_size) {
    return BoundaryTrace::sample(grid_size, [&](double theta) {
        return q(1.0 - std::abs(theta) / std::numbers::pi);
    });
}

bool equimeasurable(const BoundaryTrace& a, const BoundaryTrace& b, double tol) {
    if (a.grid_size() != b.grid_size()) throw DomainError("equimeasurable: grid size mismatch");
    std::vector<double> x(a.values().begin(), a.values().end());
    std::vector<double> y(b.values().begin(), b.values().end());
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!(std::abs(x[i] - y[i]) <= tol)) return false;
    return true;
}

}  // namespace psep
