#include "warplab/io.hpp"

#include "warplab/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace warplab::io {

namespace {

double num(const Json& j, const char* key, double fallback)
{
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number()) fail(ErrorKind::InvalidParameter, std::string(key) + " must be a number");
    return j.at(key).get<double>();
}

void reject_unknown(const Json& j, std::initializer_list<const char*> known, const char* what)
{
    if (!j.is_object()) fail(ErrorKind::InvalidParameter, std::string(what) + " must be a JSON object");
    for (const auto& [key, _] : j.items()) {
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) fail(ErrorKind::InvalidParameter, "unknown " + std::string(what) + " key '" + key + "'");
    }
}

Json number_or_null(double x)
{
    if (std::isfinite(x)) return x;
    return nullptr;
}

GraphMode mode_from_string(const std::string& s)
{
    if (s == "constant") return GraphMode::Constant;
    if (s == "zonal") return GraphMode::Zonal;
    if (s == "tilted") return GraphMode::Tilted;
    if (s == "theta") return GraphMode::Theta;
    if (s == "random") return GraphMode::Random;
    fail(ErrorKind::InvalidParameter, "unknown graph mode '" + s + "'");
}

const char* to_string(GraphMode m)
{
    switch (m) {
    case GraphMode::Constant: return "constant";
    case GraphMode::Zonal: return "zonal";
    case GraphMode::Tilted: return "tilted";
    case GraphMode::Theta: return "theta";
    case GraphMode::Random: return "random";
    }
    return "constant";
}

Json intervals_to_json(const std::vector<SignInterval>& iv)
{
    Json a = Json::array();
    for (const auto& i : iv) a.push_back(Json{{"lo", i.lo}, {"hi", i.hi}, {"sign", i.sign}});
    return a;
}

Json pairs_to_json(const std::vector<std::pair<std::string, double>>& v)
{
    Json o = Json::object();
    for (const auto& [k, x] : v) o[k] = number_or_null(x);
    return o;
}

} // namespace

ManifoldSpec spec_from_json(const Json& j)
{
    reject_unknown(j, {"family", "n", "c", "m", "q", "B", "p", "K", "a", "fiber"}, "spec");
    if (!j.contains("family")) fail(ErrorKind::InvalidParameter, "spec needs a family");
    ManifoldSpec s;
    s.family = family_from_string(j.at("family").get<std::string>());
    if (j.contains("n")) {
        if (!j.at("n").is_number_integer()) fail(ErrorKind::InvalidParameter, "n must be an integer");
        s.n = j.at("n").get<int>();
    }
    s.c = num(j, "c", 0.0);
    s.m = num(j, "m", 0.0);
    s.q = num(j, "q", 0.0);
    s.B = num(j, "B", 0.0);
    s.p = num(j, "p", 0.0);
    s.K = num(j, "K", 0.0);
    s.a = num(j, "a", 0.0);
    if (j.contains("fiber")) s.fiber = fiber_from_string(j.at("fiber").get<std::string>());
    return s;
}

Json spec_to_json(const ManifoldSpec& s)
{
    Json j;
    j["family"] = to_string(s.family);
    j["n"] = s.n;
    switch (s.family) {
    case Family::SpaceForm: j["c"] = s.c; break;
    case Family::DeSitterSchwarzschild:
        j["m"] = s.m;
        j["c"] = s.c;
        break;
    case Family::ReissnerNordstrom:
        j["m"] = s.m;
        j["q"] = s.q;
        break;
    case Family::PowerPerturbed:
        j["B"] = s.B;
        j["p"] = s.p;
        break;
    case Family::ArctanCylinder:
    case Family::RationalDecayCylinder: j["K"] = s.K; break;
    case Family::LogFactor: j["a"] = s.a; break;
    }
    j["fiber"] = to_string(s.fiber);
    return j;
}

MeshRequest mesh_from_json(const Json& j, std::uint64_t default_seed)
{
    if (!j.is_object() || !j.contains("kind")) fail(ErrorKind::InvalidParameter, "mesh needs a kind");
    const std::string kind = j.at("kind").get<std::string>();
    MeshRequest m;
    m.force_minimal = j.value("force_minimal", false);
    if (kind == "slice") {
        reject_unknown(j, {"kind", "s", "force_minimal"}, "slice");
        m.family = Slice{num(j, "s", 1.0)};
    } else if (kind == "cone") {
        reject_unknown(j, {"kind", "k", "cap_angle", "r_lo", "r_hi", "force_minimal"}, "cone");
        RadialCone c;
        c.k = j.value("k", 2);
        c.cap_angle = num(j, "cap_angle", c.cap_angle);
        c.r_lo = num(j, "r_lo", c.r_lo);
        c.r_hi = num(j, "r_hi", c.r_hi);
        m.family = c;
    } else if (kind == "geodesic_sphere") {
        reject_unknown(j, {"kind", "radius", "force_minimal"}, "geodesic_sphere");
        m.family = GeodesicSphere{num(j, "radius", 1.0)};
    } else if (kind == "graph") {
        reject_unknown(j, {"kind", "r0", "eps", "mode", "seed", "force_minimal"}, "graph");
        RadialGraph g;
        g.r0 = num(j, "r0", g.r0);
        g.eps = num(j, "eps", g.eps);
        if (j.contains("mode")) g.mode = mode_from_string(j.at("mode").get<std::string>());
        g.seed = j.value("seed", default_seed);
        m.family = g;
    } else if (kind == "right_cone3d") {
        reject_unknown(j, {"kind", "alpha", "R", "force_minimal"}, "right_cone3d");
        m.family = RightCone3D{num(j, "alpha", 0.5), num(j, "R", 1.0)};
    } else {
        fail(ErrorKind::InvalidParameter, "unknown mesh kind '" + kind + "'");
    }
    return m;
}

Json mesh_request_to_json(const MeshRequest& m)
{
    Json j;
    std::visit(
        [&](const auto& f) {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, Slice>) {
                j["kind"] = "slice";
                j["s"] = f.s;
            } else if constexpr (std::is_same_v<T, RadialCone>) {
                j["kind"] = "cone";
                j["k"] = f.k;
                j["cap_angle"] = f.cap_angle;
                j["r_lo"] = f.r_lo;
                j["r_hi"] = f.r_hi;
            } else if constexpr (std::is_same_v<T, GeodesicSphere>) {
                j["kind"] = "geodesic_sphere";
                j["radius"] = f.radius;
            } else if constexpr (std::is_same_v<T, RadialGraph>) {
                j["kind"] = "graph";
                j["r0"] = f.r0;
                j["eps"] = f.eps;
                j["mode"] = to_string(f.mode);
                j["seed"] = f.seed;
            } else {
                j["kind"] = "right_cone3d";
                j["alpha"] = f.alpha;
                j["R"] = f.R;
            }
        },
        m.family);
    j["force_minimal"] = m.force_minimal;
    return j;
}

Json report_to_json(const InequalityReport& r)
{
    Json j;
    j["name"] = r.name;
    j["lhs"] = number_or_null(r.lhs);
    j["rhs"] = number_or_null(r.rhs);
    j["slack"] = number_or_null(r.slack);
    j["relative_slack"] = number_or_null(r.lhs != 0.0 ? r.slack / std::abs(r.lhs) : std::nan(""));
    j["verdict"] = to_string(r.verdict);
    j["equality_expected"] = r.equality_expected;
    j["terms"] = pairs_to_json(r.terms);
    Json pcs = Json::array();
    for (const auto& pc : r.preconditions) pcs.push_back(Json{{"name", pc.name}, {"pass", pc.pass}});
    j["preconditions"] = pcs;
    return j;
}

Json reports_to_json(const std::vector<InequalityReport>& rs)
{
    Json a = Json::array();
    for (const auto& r : rs) a.push_back(report_to_json(r));
    return a;
}

Json moments_to_json(const GeometricMoments& g)
{
    return Json{{"vol", g.vol},
                {"bvol", g.bvol},
                {"int_H", g.int_H},
                {"int_ric_grad", g.int_ric_grad},
                {"int_h", g.int_h},
                {"int_hprime", g.int_hprime},
                {"int_H_dot_quotient", g.int_H_dot_quotient},
                {"int_boundary_quotient", g.int_boundary_quotient},
                {"d_sigma", g.d_sigma},
                {"R_sigma", g.R_sigma},
                {"int_quotient_sq_grad", g.int_quotient_sq_grad},
                {"int_ric_quotient_sq_grad", g.int_ric_quotient_sq_grad},
                {"int_ric", g.int_ric},
                {"int_scal", g.int_scal},
                {"int_minkowski", g.int_minkowski},
                {"r_min", g.r_min},
                {"r_max", g.r_max},
                {"max_H", g.max_H}};
}

Json region_to_json(const RegionReport& r)
{
    Json j;
    j["spec"] = spec_to_json(r.spec);
    j["k"] = r.k;
    j["thresholds"] = pairs_to_json(r.thresholds);
    j["constants"] = pairs_to_json(r.constants);
    j["quotient_monotone_intervals"] = intervals_to_json(r.quotient_intervals);
    j["u_monotone_intervals"] = intervals_to_json(r.u_intervals);
    return j;
}

Json lower_bounds_to_json(const LowerBoundReport& r)
{
    Json j;
    j["r0"] = r.r0;
    j["r"] = r.r;
    j["alpha"] = r.alpha;
    j["volume"] = r.volume;
    j["C1"] = r.C1;
    j["C2"] = r.C2;
    j["B"] = r.B;
    Json b = Json::array();
    for (const auto& x : r.bounds)
        b.push_back(Json{{"name", x.name},
                         {"value", number_or_null(x.value)},
                         {"measured", x.measured},
                         {"applicable", x.applicable},
                         {"pass", x.pass}});
    j["bounds"] = b;
    return j;
}

Json growth_to_json(const GrowthFit& f)
{
    return Json{{"model", to_string(f.model)},
                {f.model == GrowthModel::Polynomial ? "order" : "rate", f.value},
                {"fit_window", Json::array({f.window_lo, f.window_hi})},
                {"residual", f.residual},
                {"reference", f.reference},
                {"samples", f.samples},
                {"matches", f.matches}};
}

Json asymptotic_to_json(const AsymptoticReport& r)
{
    return Json{{"family", to_string(r.family)},
                {"variable", r.variable},
                {"shift", r.shift},
                {"expected_order", number_or_null(r.expected_order)},
                {"fitted_order", number_or_null(r.fitted_order)},
                {"expected_coefficient", r.expected_coefficient},
                {"fitted_coefficient", r.fitted_coefficient},
                {"window", Json::array({r.window_lo, r.window_hi})},
                {"samples", r.samples},
                {"max_abs_residual", r.max_abs_residual},
                {"fit_rms", r.fit_rms}};
}

std::string format_double(double x)
{
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string trace_to_csv(const MonotoneTrace& t, const WarpProfile& p, const std::vector<double>& bound)
{
    std::ostringstream os;
    os << "r,h,V,volume,bound\n";
    for (std::size_t i = 0; i < t.r_values.size(); ++i) {
        double b = i < bound.size() ? bound[i] : std::nan("");
        os << format_double(t.r_values[i]) << ',' << format_double(p.h(t.r_values[i])) << ','
           << format_double(t.V_values[i]) << ',' << format_double(t.volumes[i]) << ',' << format_double(b) << '\n';
    }
    return os.str();
}

std::string fnv1a_hex(const std::string& data)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : data) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::InvalidParameter, "cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& contents)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::InvalidParameter, "cannot write '" + path + "'");
    out << contents;
}

} // namespace warplab::io
