#pragma once

#include "psep/gross.hpp"
#include "psep/measure.hpp"
#include "psep/sampler.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace psep {

/// Occupancy grid over a box that is symmetric about the real axis. Cell
/// (i, j) has center (x0 + (i + 1/2) h, -rows h / 2 + (j + 1/2) h).
struct RasterDomain {
    double cell_size = 0.0;
    double x0 = 0.0;
    Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> occupancy;  // columns x rows

    Eigen::Index columns() const { return occupancy.rows(); }
    Eigen::Index rows() const { return occupancy.cols(); }
    double y0() const { return -0.5 * static_cast<double>(rows()) * cell_size; }
    long count() const { return static_cast<long>(occupancy.count()); }
    double area() const { return cell_size * cell_size * static_cast<double>(count()); }
};

RasterDomain rasterize(const GeometricDomain& g, Eigen::Index resolution = 512);
RasterDomain rasterize(const PowerSeriesDomain& d, Eigen::Index resolution = 512,
                       Eigen::Index grid_size = 4096);

/// Re-stacks each column's occupied cells as one run centered on the real
/// axis; an odd count in an even number of rows sits half a cell low.
RasterDomain steiner_raster(const RasterDomain& r);

using SymmetrizationSource = std::variant<GeometricDomain, PowerSeriesDomain>;

struct SymmetrizeOptions {
    std::size_t samples = 100000;
    Eigen::Index truncation = default_truncation;
    double eps = 1e-6;
    std::uint64_t seed = 42;
    std::size_t max_steps = 10000;
};

struct SymmetrizationDiagnostics {
    SamplerKind sampler = SamplerKind::ConformalExact;
    std::uint64_t seed = 0;
    std::size_t sample_count = 0;
    std::size_t excluded = 0;
    double sample_mean = 0.0;
    double sample_variance = 0.0;
    double variance_se = 0.0;
    bool recentred = false;
    double captured_energy = 0.0;  // sum a_n^2 / (2 Var), in [0, 1]
    SkorokhodEnergy energy;
};

struct SymmetrizationReport {
    std::string source;
    Measure mu_hat = Measure::atomic({{0.0, 1.0}});
    PowerSeriesDomain gross;
    double area_B = 0.0;
    double area_U = 0.0;  // +inf for unbounded sources
    bool degenerate = false;  // point-mass exit law, zero-area image
    SymmetrizationDiagnostics diagnostics;
};

/// Exit-law sampling, empirical law, Gross reconstruction and areas.
/// Disks and shifted disks use the Mobius sampler, rectangles walk on
/// spheres, power series are sampled through their boundary map.
SymmetrizationReport brownian_symmetrize(const SymmetrizationSource& source,
                                         const SymmetrizeOptions& opts = {});

/// Gross domain of the uniform law on (-1, 1) paired with its unbounded
/// exponential-curve mu-domain; no sampling involved.
SymmetrizationReport uniform_law_fixture(Eigen::Index truncation = 10000);

struct RhoResult {
    std::optional<double> value;
    std::string annotation;
};

/// area_B / area_U when area_U is finite and positive, otherwise an annotation.
RhoResult rho(const SymmetrizationReport& report);

struct AreaTrial {
    double area_gross = 0.0;
    double area_u = 0.0;
    double tol_grid = 0.0;
    bool ok = false;
    bool equality = false;  // |area_gross - area_u| <= tol_grid
    bool skipped = false;
    std::string reason;
};

/// Deterministic Gross-area comparison: Re boundary trace -> sdr ->
/// spectrum -> pi sum n (alpha_n^2 + beta_n^2). tol_grid is ten times the
/// spectral tail area plus 1/G.
AreaTrial area_minimality_trial(const PowerSeriesDomain& u, Eigen::Index grid_size,
                                Eigen::Index truncation);

enum class SweepKind { ShiftedDisk, ThinRectangle };

struct SweepRow {
    double parameter = 0.0;
    double variance = 0.0;
    double variance_se = 0.0;
    double closed_form_variance = 0.0;  // NaN when unknown
    double area_U = 0.0;
    double area_B = 0.0;
    double rho = 0.0;
};

struct SweepOptions {
    SymmetrizeOptions symmetrize;
    double rectangle_area = 1.0;  // a, thin rectangles are Rectangle(a/(2b), b/2)
};

std::vector<SweepRow> variance_collapse_sweep(SweepKind kind, const std::vector<double>& params,
                                              const SweepOptions& opts = {});

}  // namespace psep
