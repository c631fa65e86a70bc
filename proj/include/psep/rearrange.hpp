#pragma once

#include "psep/measure.hpp"

#include <Eigen/Core>

namespace psep {

/// Samples of a real function on the midpoint grid
/// theta_j = -pi + (j + 1/2) 2 pi / G, j = 0..G-1, with G even and >= 4.
/// The grid never hits theta = 0 or theta = +-pi.
class BoundaryTrace {
public:
    explicit BoundaryTrace(Eigen::VectorXd values);

    /// Samples f(theta_j) on a grid of size G.
    template <typename F>
    static BoundaryTrace sample(Eigen::Index grid_size, F&& f) {
        check_grid(grid_size);
        Eigen::VectorXd v(grid_size);
        for (Eigen::Index j = 0; j < grid_size; ++j) v(j) = f(node(grid_size, j));
        return BoundaryTrace(std::move(v));
    }

    static double node(Eigen::Index grid_size, Eigen::Index j);
    static void check_grid(Eigen::Index grid_size);

    const Eigen::VectorXd& values() const { return values_; }
    Eigen::Index grid_size() const { return values_.size(); }
    double theta(Eigen::Index j) const { return node(grid_size(), j); }

    /// Index of the node at -theta_j.
    Eigen::Index mirror(Eigen::Index j) const { return grid_size() - 1 - j; }

private:
    Eigen::VectorXd values_;
};

/// Discrete symmetric decreasing rearrangement: values sorted descending are
/// laid onto nodes ordered by |theta|, the nonnegative node of each mirror
/// pair taking the larger value.
BoundaryTrace sdr(const BoundaryTrace& trace);

/// theta_j -> Q(1 - |theta_j| / pi).
BoundaryTrace quantile_sdr(const QuantileFn& q, Eigen::Index grid_size);

/// True iff the sorted value lists agree elementwise within tol.
bool equimeasurable(const BoundaryTrace& a, const BoundaryTrace& b, double tol);

}  // namespace psep
