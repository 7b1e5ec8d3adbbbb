#pragma once

#include "warplab/monotonic.hpp"
#include "warplab/regions.hpp"
#include "warplab/verifiers.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace warplab::io {

using Json = nlohmann::ordered_json;

/// {"family": "SS", "n": 3, "m": 0.1, "c": 0, ...}; keys not used by the family may be
/// omitted. Unknown keys throw InvalidParameter.
ManifoldSpec spec_from_json(const Json& j);
Json spec_to_json(const ManifoldSpec& spec);

/// {"kind": "slice" | "cone" | "geodesic_sphere" | "graph" | "right_cone3d", ...,
///  "force_minimal": false}
struct MeshRequest {
    SubmanifoldFamily family;
    bool force_minimal = false;
};

MeshRequest mesh_from_json(const Json& j, std::uint64_t default_seed = 0);
Json mesh_request_to_json(const MeshRequest& m);

Json report_to_json(const InequalityReport& r);
Json reports_to_json(const std::vector<InequalityReport>& rs);
Json moments_to_json(const GeometricMoments& g);
Json region_to_json(const RegionReport& r);
Json lower_bounds_to_json(const LowerBoundReport& r);
Json growth_to_json(const GrowthFit& f);
Json asymptotic_to_json(const AsymptoticReport& r);

/// Shortest round-trip decimal form; "nan" and "inf" for non-finite values.
std::string format_double(double x);

/// r, h, V, volume, bound
std::string trace_to_csv(const MonotoneTrace& t, const WarpProfile& p, const std::vector<double>& bound);

/// FNV-1a 64-bit hash, hex encoded.
std::string fnv1a_hex(const std::string& data);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

} // namespace warplab::io
