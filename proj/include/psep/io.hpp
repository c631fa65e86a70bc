#pragma once

#include "psep/fourier.hpp"
#include "psep/gross.hpp"
#include "psep/measure.hpp"
#include "psep/rearrange.hpp"
#include "psep/sampler.hpp"
#include "psep/sobolev.hpp"
#include "psep/symmetrize.hpp"

#include <json.hpp>

#include <istream>
#include <string>
#include <vector>

namespace psep {

using json = nlohmann::ordered_json;

inline constexpr const char* tool_version = "0.1.0";

/// Canonical text form of a JSON document (two-space indent, trailing newline).
std::string dump(const json& j);

json to_json(const PowerSeriesDomain& d);
PowerSeriesDomain domain_from_json(const json& j);
PowerSeriesDomain read_domain_file(const std::string& path);

json to_json(const CosineSeries& s);
json to_json(const TraceSpectrum& s);
json to_json(const SeminormReport& r);
json to_json(const SkorokhodEnergy& e);
json to_json(const UnivalenceDiagnostic& u);
json to_json(const SymmetrizationReport& r);
json to_json(const AreaTrial& t);
json trace_json(const BoundaryTrace& t);

/// "# grid_size=G" followed by theta,value rows.
std::string trace_csv(const BoundaryTrace& t);
BoundaryTrace read_trace_csv(std::istream& in);

std::string samples_csv(const SampleSet& s);
std::string sweep_csv(const std::vector<SweepRow>& rows);

/// Boundary polyline of f on the midpoint grid, origin marked.
std::string boundary_svg(const PowerSeriesDomain& d, Eigen::Index grid_size = 2048);

/// Raster silhouette with a boundary curve drawn over it.
std::string overlay_svg(const RasterDomain& r, const PowerSeriesDomain& d,
                        Eigen::Index grid_size = 2048);

/// uniform:a,b | arcsine | diskexit:k | atoms:x:w,... | empirical:path | density:path
Measure parse_measure(const std::string& spec);

/// disk[:r] | diskexit:k | rect:hw,hh | series:path. Unbounded domains are
/// rejected with UnsupportedError.
SymmetrizationSource parse_domain(const std::string& spec);

}  // namespace psep
