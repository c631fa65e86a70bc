#include "psep/sampler.hpp"

#include "psep/error.hpp"
#include "psep/parallel.hpp"
#include "psep/rng.hpp"
#include "psep/stats.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace psep {

namespace {

using cd = std::complex<double>;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

enum Stream : std::uint64_t { conformal_stream = 1, mobius_stream = 2, wos_stream = 3 };

// Fills n values chunk by chunk; draw(rng, out) appends to out (may skip).
template <typename Draw>
std::size_t chunked_fill(std::size_t n, std::uint64_t seed, Stream stream,
                         std::vector<double>& values, Draw&& draw) {
    const std::size_t chunks = (n + sample_chunk - 1) / sample_chunk;
    std::vector<std::vector<double>> parts(chunks);
    std::vector<std::size_t> dropped(chunks, 0);
    parallel_chunks(chunks, [&](std::size_t c) {
        Rng rng(stream_seed(seed, stream, c));
        const std::size_t lo = c * sample_chunk;
        const std::size_t count = std::min(n, lo + sample_chunk) - lo;
        parts[c].reserve(count);
        for (std::size_t i = 0; i < count; ++i)
            if (!draw(rng, parts[c])) ++dropped[c];
    });
    values.clear();
    values.reserve(n);
    std::size_t excluded = 0;
    for (std::size_t c = 0; c < chunks; ++c) {
        values.insert(values.end(), parts[c].begin(), parts[c].end());
        excluded += dropped[c];
    }
    return excluded;
}

}  // namespace

GeometricDomain GeometricDomain::disk(double radius) {
    if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("disk radius must be positive");
    return GeometricDomain(shape::Disk{radius});
}

GeometricDomain GeometricDomain::shifted_disk(double kappa) {
    if (!(kappa >= 0.0 && kappa < 1.0)) throw DomainError("shifted disk requires kappa in [0, 1)");
    return GeometricDomain(shape::ShiftedDisk{kappa});
}

GeometricDomain GeometricDomain::rectangle(double half_width, double half_height) {
    if (!(half_width > 0.0 && half_height > 0.0) || !std::isfinite(half_width) ||
        !std::isfinite(half_height))
        throw DomainError("rectangle half sizes must be positive");
    return GeometricDomain(shape::Rectangle{half_width, half_height});
}

bool GeometricDomain::contains(cd p) const { return distance(p) > 0.0; }

double GeometricDomain::distance(cd p) const {
    return std::visit(overloaded{
                          [&](const shape::Disk& s) { return s.radius - std::abs(p); },
                          [&](const shape::ShiftedDisk& s) { return 1.0 - std::abs(p + cd(0, s.kappa)); },
                          [&](const shape::Rectangle& s) {
                              return std::min(s.half_width - std::abs(p.real()),
                                              s.half_height - std::abs(p.imag()));
                          },
                      },
                      shape_);
}

cd GeometricDomain::nearest_boundary(cd p) const {
    return std::visit(
        overloaded{
            [&](const shape::Disk& s) {
                const double r = std::abs(p);
                return r == 0.0 ? cd(s.radius, 0) : p * (s.radius / r);
            },
            [&](const shape::ShiftedDisk& s) {
                const cd c(0, -s.kappa);
                const cd v = p - c;
                const double r = std::abs(v);
                return r == 0.0 ? c + cd(1, 0) : c + v / r;
            },
            [&](const shape::Rectangle& s) {
                const double x = p.real(), y = p.imag();
                const double gaps[4] = {x + s.half_width, s.half_width - x, y + s.half_height,
                                        s.half_height - y};
                const auto edge = static_cast<int>(std::min_element(gaps, gaps + 4) - gaps);
                switch (edge) {
                    case 0: return cd(-s.half_width, y);
                    case 1: return cd(s.half_width, y);
                    case 2: return cd(x, -s.half_height);
                    default: return cd(x, s.half_height);
                }
            },
        },
        shape_);
}

double GeometricDomain::area() const {
    return std::visit(overloaded{
                          [](const shape::Disk& s) { return std::numbers::pi * s.radius * s.radius; },
                          [](const shape::ShiftedDisk&) { return std::numbers::pi; },
                          [](const shape::Rectangle& s) { return 4.0 * s.half_width * s.half_height; },
                      },
                      shape_);
}

std::array<double, 4> GeometricDomain::bounds() const {
    return std::visit(
        overloaded{
            [](const shape::Disk& s) { return std::array{-s.radius, s.radius, -s.radius, s.radius}; },
            [](const shape::ShiftedDisk& s) {
                return std::array{-1.0, 1.0, -1.0 - s.kappa, 1.0 - s.kappa};
            },
            [](const shape::Rectangle& s) {
                return std::array{-s.half_width, s.half_width, -s.half_height, s.half_height};
            },
        },
        shape_);
}

std::string GeometricDomain::describe() const {
    std::ostringstream os;
    os.precision(17);
    std::visit(overloaded{
                   [&](const shape::Disk& s) { os << "disk:" << s.radius; },
                   [&](const shape::ShiftedDisk& s) { os << "diskexit:" << s.kappa; },
                   [&](const shape::Rectangle& s) {
                       os << "rect:" << s.half_width << ',' << s.half_height;
                   },
               },
               shape_);
    return os.str();
}

std::string to_string(SamplerKind k) {
    switch (k) {
        case SamplerKind::ConformalExact: return "conformal";
        case SamplerKind::Mobius: return "mobius";
        case SamplerKind::WalkOnSpheres: return "wos";
    }
    return "unknown";
}

SampleSet conformal_exit_samples(const PowerSeriesDomain& d, std::size_t n, std::uint64_t seed) {
    SampleSet s;
    s.seed = seed;
    s.sampler = SamplerKind::ConformalExact;
    s.domain = d.provenance;
    chunked_fill(n, seed, conformal_stream, s.values, [&](Rng& rng, std::vector<double>& out) {
        out.push_back(d(std::polar(1.0, rng.angle())).real());
        return true;
    });
    return s;
}

cd shifted_disk_map(double kappa, cd z) {
    return z * (1.0 - kappa * kappa) / (1.0 - cd(0, kappa) * z);
}

SampleSet mobius_shifted_disk_samples(double kappa, std::size_t n, std::uint64_t seed) {
    if (!(kappa >= 0.0 && kappa < 1.0)) throw DomainError("shifted disk requires kappa in [0, 1)");
    SampleSet s;
    s.seed = seed;
    s.sampler = SamplerKind::Mobius;
    s.domain = GeometricDomain::shifted_disk(kappa).describe();
    chunked_fill(n, seed, mobius_stream, s.values, [&](Rng& rng, std::vector<double>& out) {
        out.push_back(shifted_disk_map(kappa, std::polar(1.0, rng.angle())).real());
        return true;
    });
    return s;
}

SampleSet wos_exit_samples(const GeometricDomain& g, std::size_t n, std::uint64_t seed,
                           const WosOptions& opts) {
    if (!(opts.eps > 0.0)) throw DomainError("walk-on-spheres needs eps > 0");
    if (!g.contains(cd(0, 0))) throw DomainError("origin must lie inside the domain");
    SampleSet s;
    s.seed = seed;
    s.sampler = SamplerKind::WalkOnSpheres;
    s.eps = opts.eps;
    s.domain = g.describe();
    s.excluded = chunked_fill(n, seed, wos_stream, s.values, [&](Rng& rng, std::vector<double>& out) {
        cd p(0, 0);
        for (std::size_t step = 0; step < opts.max_steps; ++step) {
            const double r = g.distance(p);
            if (r < opts.eps) {
                out.push_back(g.nearest_boundary(p).real());
                return true;
            }
            p += std::polar(r, rng.angle());
        }
        return false;
    });
    return s;
}

EmpiricalLaw empirical_measure(const SampleSet& s) {
    if (s.count() < 2) throw DomainError("empirical measure needs at least two samples");
    const SampleStats st = sample_stats(s.values);
    EmpiricalLaw law{Measure::empirical(s.values), st.mean, st.mean_se, false};
    if (std::abs(st.mean) > 3.0 * st.mean_se && st.mean_se > 0.0) {
        std::vector<double> shifted(s.values);
        for (double& v : shifted) v -= st.mean;
        law.measure = Measure::empirical(std::move(shifted));
        law.recentred = true;
    }
    return law;
}

}  // namespace psep
