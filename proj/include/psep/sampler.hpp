#pragma once

#include "psep/gross.hpp"
#include "psep/measure.hpp"

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace psep {

namespace shape {

struct Disk {
    double radius = 1.0;
};

/// Unit disk translated by -kappa i.
struct ShiftedDisk {
    double kappa = 0.0;
};

/// Axis-aligned rectangle centered at the origin.
struct Rectangle {
    double half_width = 0.5;
    double half_height = 0.5;
};

}  // namespace shape

/// Explicit planar domain containing the origin.
class GeometricDomain {
public:
    using Shape = std::variant<shape::Disk, shape::ShiftedDisk, shape::Rectangle>;

    static GeometricDomain disk(double radius);
    static GeometricDomain shifted_disk(double kappa);
    static GeometricDomain rectangle(double half_width, double half_height);

    const Shape& shape() const { return shape_; }

    bool contains(std::complex<double> p) const;
    /// Distance to the boundary; positive inside.
    double distance(std::complex<double> p) const;
    /// Nearest boundary point. Rectangle ties go to the lower-index edge
    /// (0 left, 1 right, 2 bottom, 3 top).
    std::complex<double> nearest_boundary(std::complex<double> p) const;
    double area() const;
    /// Axis-aligned bounding box (xmin, xmax, ymin, ymax).
    std::array<double, 4> bounds() const;
    std::string describe() const;

private:
    explicit GeometricDomain(Shape s) : shape_(s) {}
    Shape shape_;
};

enum class SamplerKind { ConformalExact, Mobius, WalkOnSpheres };

std::string to_string(SamplerKind k);

/// Draws of Re(Z_tau) with their provenance.
struct SampleSet {
    std::vector<double> values;
    std::uint64_t seed = 0;
    SamplerKind sampler = SamplerKind::ConformalExact;
    double eps = 0.0;        // walk-on-spheres shell width
    std::string domain;      // description of the source domain
    std::size_t excluded = 0;  // walks that ran out of steps

    std::size_t count() const { return values.size(); }
};

/// Re f(e^{i Theta}) with Theta uniform on (-pi, pi).
SampleSet conformal_exit_samples(const PowerSeriesDomain& d, std::size_t n, std::uint64_t seed);

/// Conformal map of the disk onto D - kappa i fixing 0:
/// g(z) = z (1 - kappa^2) / (1 - i kappa z).
std::complex<double> shifted_disk_map(double kappa, std::complex<double> z);

/// Re g(e^{i Theta}) for the shifted-disk map.
SampleSet mobius_shifted_disk_samples(double kappa, std::size_t n, std::uint64_t seed);

struct WosOptions {
    double eps = 1e-6;
    std::size_t max_steps = 10000;
};

/// Walk on spheres from the origin until within eps of the boundary, then
/// project to the nearest boundary point and keep its real part. Walks that
/// exhaust max_steps are dropped and counted in `excluded`.
SampleSet wos_exit_samples(const GeometricDomain& g, std::size_t n, std::uint64_t seed,
                           const WosOptions& opts = {});

struct EmpiricalLaw {
    Measure measure;
    double sample_mean = 0.0;
    double mean_se = 0.0;
    bool recentred = false;  // mean exceeded 3 standard errors and was removed
};

/// Empirical measure of a sample set (count >= 2).
EmpiricalLaw empirical_measure(const SampleSet& s);

}  // namespace psep
