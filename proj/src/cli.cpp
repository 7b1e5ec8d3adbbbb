#include "warplab/cli.hpp"

#include "warplab/curvature.hpp"
#include "warplab/errors.hpp"
#include "warplab/io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#ifndef WARPLAB_VERSION
#define WARPLAB_VERSION "dev"
#endif

namespace warplab {

const char* version() { return WARPLAB_VERSION; }

namespace {

using io::Json;

constexpr int kExitOk = 0;
constexpr int kExitViolated = 1;
constexpr int kExitUsage = 2;

struct RunConfig {
    Json spec;
    std::string command;
    std::optional<Json> mesh;
    int resolution = 4096;
    std::string out = "warplab-out";
    std::uint64_t seed = 0;
    std::map<std::string, double> tol;
    std::vector<std::string> cases;
    bool strict = false;
    std::optional<int> k;
    std::optional<double> alpha;
    std::string rgrid;
    std::string sweep;
    std::string band;
    double s_max_factor = 200.0;
};

Json to_json(const RunConfig& c)
{
    Json j;
    j["command"] = c.command;
    j["spec"] = c.spec;
    j["mesh"] = c.mesh ? *c.mesh : Json(nullptr);
    j["resolution"] = c.resolution;
    j["seed"] = c.seed;
    Json t = Json::object();
    for (const auto& [k, v] : c.tol) t[k] = v;
    j["tol"] = t;
    j["cases"] = c.cases;
    j["strict"] = c.strict;
    j["k"] = c.k ? Json(*c.k) : Json(nullptr);
    j["alpha"] = c.alpha ? Json(*c.alpha) : Json(nullptr);
    j["rgrid"] = c.rgrid;
    j["sweep"] = c.sweep;
    j["band"] = c.band;
    j["s_max_factor"] = c.s_max_factor;
    return j;
}

[[noreturn]] void usage(const std::string& what) { fail(ErrorKind::InvalidParameter, what); }

Json parse_json_arg(const std::string& s)
{
    std::string text = s;
    auto first = s.find_first_not_of(" \t\n");
    if (first == std::string::npos || s[first] != '{') text = io::read_file(s);
    try {
        return Json::parse(text);
    } catch (const Json::exception& e) {
        usage(std::string("malformed JSON: ") + e.what());
    }
}

double parse_double(const std::string& s)
{
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        usage("not a number: '" + s + "'");
    }
    if (pos != s.size()) usage("not a number: '" + s + "'");
    return v;
}

struct Range {
    double lo = 0.0, hi = 0.0;
    int count = 0;
};

// lo:hi:count
Range parse_range(const std::string& s)
{
    std::vector<std::string> parts;
    std::stringstream ss(s);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) usage("range must be lo:hi:count, got '" + s + "'");
    Range r{parse_double(parts[0]), parse_double(parts[1]), static_cast<int>(parse_double(parts[2]))};
    if (!(r.hi > r.lo) || r.count < 2) usage("range needs lo<hi and count>=2, got '" + s + "'");
    return r;
}

std::vector<double> linspace(const Range& r)
{
    std::vector<double> v;
    for (int i = 0; i + 1 < r.count; ++i) v.push_back(r.lo + (r.hi - r.lo) * i / (r.count - 1));
    v.push_back(r.hi);
    return v;
}

Tolerances tolerances(const RunConfig& c)
{
    Tolerances t;
    for (const auto& [name, v] : c.tol) {
        if (name == "eq_tol") t.eq_tol = v;
        else if (name == "check_tol") t.check_tol = v;
        else if (name == "mono_tol") t.mono_tol = v;
        else usage("unknown tolerance '" + name + "'");
    }
    return t;
}

struct Output {
    std::filesystem::path dir;
    std::vector<std::string> files;

    void write(const std::string& name, const std::string& contents)
    {
        io::write_file((dir / name).string(), contents);
        files.push_back(name);
    }
    void write_json(const std::string& name, const Json& j) { write(name, j.dump(2) + "\n"); }
};

WarpProfile profile_for(const RunConfig& c, const ManifoldSpec& spec)
{
    return build_profile(spec, std::nullopt, c.resolution);
}

SubmanifoldMesh mesh_for(const RunConfig& c, const WarpProfile& p)
{
    if (!c.mesh) usage("command '" + c.command + "' needs --mesh");
    io::MeshRequest req = io::mesh_from_json(*c.mesh, c.seed);
    SubmanifoldMesh m = make_mesh(p, req.family, c.resolution);
    return req.force_minimal ? force_minimal(std::move(m)) : m;
}

int cmd_info(const RunConfig& c, const ManifoldSpec& spec, Output& o, std::ostream& out)
{
    ValidatedSpec v = validate_spec(spec);
    WarpProfile p = profile_for(c, spec);
    DomainEndpoints d = domain_endpoints(spec);
    auto fin = [](double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); };
    Json j;
    j["spec"] = io::spec_to_json(spec);
    Json cons = Json::array();
    for (const auto& x : v.constraints)
        cons.push_back(Json{{"name", x.name},
                            {"value", fin(x.value)},
                            {"limit", fin(x.limit)},
                            {"satisfied", x.satisfied},
                            {"binding", x.binding}});
    j["constraints"] = cons;
    j["domain"] = Json{{"s0", d.s0}, {"s1", fin(d.s1)}, {"r_end", fin(d.r_end)}};
    j["profile"] = Json{{"r_max", p.r_max()}, {"s_max", p.s_max()}, {"nodes", p.r_nodes().size()}};
    RegionReport rr = region_report(p, spec.n - 1);
    Json th = Json::object();
    for (const auto& [name, x] : rr.thresholds) th[name] = fin(x);
    j["thresholds"] = th;

    std::ostringstream csv;
    csv << "r,h,h_prime,h_second,ric_radial,scalar,sec_tangential,sec_radial\n";
    Json samples = Json::array();
    constexpr int kRows = 64;
    for (int i = 1; i <= kRows; ++i) {
        double r = p.r_max() * i / kRows;
        SectionalCurvatures sc = sectional_curvatures(p, r);
        double ric = ricci_radial(p, r), scal = scalar_curvature(p, r);
        csv << io::format_double(r) << ',' << io::format_double(p.h(r)) << ',' << io::format_double(p.h_prime(r))
            << ',' << io::format_double(p.h_second(r)) << ',' << io::format_double(ric) << ','
            << io::format_double(scal) << ',' << io::format_double(sc.tangential) << ','
            << io::format_double(sc.radial) << '\n';
        if (i % 16 == 0) samples.push_back(Json{{"r", r}, {"ric_radial", ric}, {"scalar", scal}});
    }
    j["curvature_samples"] = samples;
    o.write_json("manifold.json", j);
    o.write("curvature.csv", csv.str());
    out << to_string(spec.family) << " n=" << spec.n << " s0=" << io::format_double(d.s0)
        << " r_max=" << io::format_double(p.r_max()) << "\n";
    return kExitOk;
}

int cmd_regions(const RunConfig& c, const ManifoldSpec& spec, Output& o, std::ostream& out)
{
    WarpProfile p = profile_for(c, spec);
    RegionReport rr = region_report(p, c.k.value_or(spec.n - 1));
    o.write_json("regions.json", io::region_to_json(rr));
    for (const auto& [name, x] : rr.thresholds) out << name << '=' << io::format_double(x) << '\n';
    for (const auto& [name, x] : rr.constants) out << name << '=' << io::format_double(x) << '\n';
    return kExitOk;
}

int exit_for(const std::vector<InequalityReport>& reps, bool strict)
{
    bool violated = false, unmet = false;
    for (const auto& r : reps) {
        violated = violated || r.verdict == Verdict::Violated;
        unmet = unmet || r.verdict == Verdict::PreconditionUnmet;
    }
    if (violated) return kExitViolated;
    if (strict && unmet) return kExitUsage;
    return kExitOk;
}

Range band_of(const std::string& s)
{
    return parse_range(s + ":2");
}

int cmd_verify(const RunConfig& c, const ManifoldSpec& spec, Output& o, std::ostream& out, std::ostream& err)
{
    WarpProfile p = profile_for(c, spec);
    Tolerances tol = tolerances(c);
    std::vector<InequalityReport> reps;
    if (c.mesh || c.band.empty()) {
        SubmanifoldMesh mesh = mesh_for(c, p);
        std::vector<std::string> cases = c.cases.empty() ? default_cases(mesh, p) : c.cases;
        for (const auto& name : cases) reps.push_back(run_case(name, mesh, p, tol));
    }
    if (!c.band.empty()) {
        Range b = band_of(c.band);
        for (auto& r : check_domain_corollaries(p, Band{b.lo, b.hi}, tol)) reps.push_back(r);
    }
    o.write_json("reports.json", io::reports_to_json(reps));
    for (const auto& r : reps) {
        out << r.name << ' ' << to_string(r.verdict) << " slack=" << io::format_double(r.slack) << '\n';
        if (r.verdict == Verdict::PreconditionUnmet && c.strict) {
            for (const auto& pc : r.preconditions)
                if (!pc.pass) err << "PreconditionUnmet: " << r.name << ": " << pc.name << '\n';
        }
    }
    return exit_for(reps, c.strict);
}

int cmd_monotonicity(const RunConfig& c, const ManifoldSpec& spec, Output& o, std::ostream& out)
{
    WarpProfile p = profile_for(c, spec);
    Tolerances tol = tolerances(c);
    SubmanifoldMesh mesh = mesh_for(c, p);
    const double alpha = c.alpha.value_or(minimal_alpha(mesh, p));
    std::vector<double> grid;
    if (!c.rgrid.empty()) {
        grid = linspace(parse_range(c.rgrid));
    } else {
        double hi = mesh.closed ? p.r_max() : mesh.r_hi;
        double lo = mesh.r_lo;
        constexpr int kCount = 64;
        for (int i = 1; i < kCount; ++i) grid.push_back(lo + (hi - lo) * i / kCount);
        grid.push_back(hi);
    }
    MonotoneTrace v1 = trace_V1(mesh, p, alpha, grid, tol);
    MonotoneTrace v2 = trace_V2(mesh, p, alpha, grid, tol);

    // lower bounds anchored at the first radius where Sigma cap B_r is nonempty
    std::vector<double> b1(grid.size(), std::nan("")), b2(grid.size(), std::nan(""));
    std::optional<LowerBoundReport> last;
    auto first = std::find_if(v1.volumes.begin(), v1.volumes.end(), [](double v) { return v > 0.0; });
    if (first != v1.volumes.end()) {
        std::size_t i0 = static_cast<std::size_t>(first - v1.volumes.begin());
        for (std::size_t i = i0 + 1; i < grid.size(); ++i) {
            LowerBoundReport lb = lower_bounds(mesh, p, alpha, grid[i0], grid[i], tol);
            b1[i] = lb.bounds[0].value;
            b2[i] = lb.bounds[1].value;
            last = lb;
        }
    }
    o.write("trace_v1.csv", io::trace_to_csv(v1, p, b1));
    o.write("trace_v2.csv", io::trace_to_csv(v2, p, b2));

    Json j;
    j["alpha"] = alpha;
    auto trace_json = [](const MonotoneTrace& t) {
        return Json{{"kind", to_string(t.kind)}, {"points", t.r_values.size()}, {"violations", t.violations},
                    {"monotone", t.monotone()}};
    };
    j["V1"] = trace_json(v1);
    j["V2"] = trace_json(v2);
    j["lower_bounds"] = last ? io::lower_bounds_to_json(*last) : Json(nullptr);
    Json growth = Json::object();
    try {
        growth["polynomial"] = io::growth_to_json(growth_classify(grid, v1.volumes, p, GrowthModel::Polynomial, mesh.k));
    } catch (const Error& e) {
        growth["polynomial"] = e.what();
    }
    const bool hyperbolic_end =
        (spec.family == Family::DeSitterSchwarzschild || spec.family == Family::SpaceForm) && spec.c < 0.0;
    double rate_ref = hyperbolic_end ? (mesh.k - 1.0) * std::sqrt(-spec.c) : 0.0;
    try {
        growth["exponential"] =
            io::growth_to_json(growth_classify(grid, v1.volumes, p, GrowthModel::Exponential, rate_ref));
    } catch (const Error& e) {
        growth["exponential"] = e.what();
    }
    j["growth"] = growth;
    o.write_json("monotonicity.json", j);
    out << "V1 violations=" << v1.violations.size() << " V2 violations=" << v2.violations.size()
        << " alpha=" << io::format_double(alpha) << '\n';
    return v1.monotone() && v2.monotone() ? kExitOk : kExitViolated;
}

int cmd_asymptotics(const RunConfig& c, const ManifoldSpec& spec, Output& o, std::ostream& out)
{
    WarpProfile p = is_ode_family(spec.family)
                        ? build_profile_to_area_radius(spec, c.s_max_factor * domain_endpoints(spec).s0, c.resolution)
                        : profile_for(c, spec);
    AsymptoticReport a = asymptotic_check(p);
    o.write_json("asymptotics.json", io::asymptotic_to_json(a));
    out << "order=" << io::format_double(a.fitted_order) << " expected=" << io::format_double(a.expected_order)
        << " coefficient=" << io::format_double(a.fitted_coefficient) << '\n';
    return kExitOk;
}

std::string verdict_cell(const InequalityReport& r) { return to_string(r.verdict); }

int cmd_sweep(const RunConfig& c, const ManifoldSpec& spec, Output& o, std::ostream& out)
{
    auto eq = c.sweep.find('=');
    if (eq == std::string::npos) usage("--sweep needs param=lo:hi:count");
    const std::string param = c.sweep.substr(0, eq);
    Range range = parse_range(c.sweep.substr(eq + 1));
    WarpProfile p = profile_for(c, spec);
    Tolerances tol = tolerances(c);
    std::ostringstream csv;
    auto fmt = io::format_double;
    auto row = [&](double x, const InequalityReport& r) {
        double rel = r.lhs != 0.0 ? r.slack / std::abs(r.lhs) : std::nan("");
        csv << fmt(x) << ',' << fmt(r.lhs) << ',' << fmt(r.rhs) << ',' << fmt(r.slack) << ',' << fmt(rel) << ','
            << verdict_cell(r);
    };
    auto error_row = [&](double x, const Error& e) {
        csv << fmt(x) << ",nan,nan,nan,nan," << to_string(e.kind());
    };
    std::string name;
    if (param == "s" || param == "alpha") {
        name = c.cases.empty() ? "fundamental" : c.cases.front();
        std::optional<RadialCone> cone;
        if (param == "alpha") {
            if (!c.mesh) usage("alpha sweeps need a cone --mesh");
            io::MeshRequest req = io::mesh_from_json(*c.mesh, c.seed);
            if (!std::holds_alternative<RadialCone>(req.family)) usage("alpha sweeps need a cone --mesh");
            cone = std::get<RadialCone>(req.family);
        }
        csv << param << ',' << name << ".lhs," << name << ".rhs," << name << ".slack," << name
            << ".relative_slack," << name << ".verdict\n";
        for (double x : linspace(range)) {
            try {
                SubmanifoldMesh mesh;
                if (cone) {
                    RadialCone cc = *cone;
                    cc.cap_angle = x;
                    mesh = mesh_cone(p, cc, c.resolution);
                } else {
                    mesh = mesh_slice(p, x, c.resolution);
                }
                row(x, run_case(name, mesh, p, tol));
            } catch (const Error& e) {
                error_row(x, e);
            }
            csv << '\n';
        }
    } else if (param == "d") {
        if (c.band.empty()) usage("d sweeps need --band lo:hi (hi is the outer radius)");
        const double R = band_of(c.band).hi;
        const bool rn = spec.family == Family::ReissnerNordstrom;
        name = c.cases.empty() ? (rn ? "domain-rn-i" : "domain-ss-i") : c.cases.front();
        const int k = c.k.value_or(spec.n);
        const char* constant = rn ? "C2" : "C1";
        csv << "d," << constant << ',' << name << ".lhs," << name << ".rhs," << name << ".slack," << name
            << ".relative_slack," << name << ".verdict\n";
        for (double d : linspace(range)) {
            double C = std::nan("");
            try {
                C = rn ? c2_constant(spec, d) : c1_constant(spec, d, k);
            } catch (const Error&) {
            }
            try {
                auto reps = check_domain_corollaries(p, Band{d, R}, tol);
                auto it = std::find_if(reps.begin(), reps.end(), [&](const auto& r) { return r.name == name; });
                if (it == reps.end()) usage("unknown domain case '" + name + "'");
                csv << fmt(d) << ',' << fmt(C) << ',';
                double rel = it->lhs != 0.0 ? it->slack / std::abs(it->lhs) : std::nan("");
                csv << fmt(it->lhs) << ',' << fmt(it->rhs) << ',' << fmt(it->slack) << ',' << fmt(rel) << ','
                    << verdict_cell(*it);
            } catch (const Error& e) {
                if (e.kind() == ErrorKind::InvalidParameter && std::string(e.what()).find("unknown domain") !=
                                                                   std::string::npos)
                    throw;
                csv << fmt(d) << ',' << fmt(C) << ",nan,nan,nan,nan," << to_string(e.kind());
            }
            csv << '\n';
        }
    } else {
        usage("sweep parameter must be s, alpha or d, got '" + param + "'");
    }
    o.write("sweep.csv", csv.str());
    out << "sweep " << param << " case=" << name << " points=" << range.count << '\n';
    return kExitOk;
}

void apply_config_file(RunConfig& c, const Json& j)
{
    for (const auto& [key, v] : j.items()) {
        if (key == "spec") c.spec = v;
        else if (key == "command") c.command = v.get<std::string>();
        else if (key == "mesh") c.mesh = v;
        else if (key == "resolution") c.resolution = v.get<int>();
        else if (key == "out") c.out = v.get<std::string>();
        else if (key == "seed") c.seed = v.get<std::uint64_t>();
        else if (key == "tol") {
            for (const auto& [name, x] : v.items()) c.tol[name] = x.get<double>();
        } else if (key == "cases") c.cases = v.get<std::vector<std::string>>();
        else if (key == "strict") c.strict = v.get<bool>();
        else if (key == "k") c.k = v.get<int>();
        else if (key == "alpha") c.alpha = v.get<double>();
        else if (key == "rgrid") c.rgrid = v.get<std::string>();
        else if (key == "sweep") c.sweep = v.get<std::string>();
        else if (key == "band") c.band = v.get<std::string>();
        else if (key == "s_max_factor") c.s_max_factor = v.get<double>();
        else usage("unknown config key '" + key + "'");
    }
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Numerical checks of isoperimetric and monotonicity inequalities in warped products", "warplab"};
    std::string config_path, spec_arg, mesh_arg, cases_arg;
    std::vector<std::string> tol_args;
    RunConfig flags;
    int k = 0;
    double alpha = 0.0;
    app.add_option("--config", config_path, "JSON config file; flags override its keys");
    app.add_option("--command", flags.command, "info | regions | verify | monotonicity | asymptotics | sweep")
        ->check(CLI::IsMember({"info", "regions", "verify", "monotonicity", "asymptotics", "sweep"}));
    app.add_option("--spec", spec_arg, "manifold spec: file path or inline JSON");
    app.add_option("--mesh", mesh_arg, "submanifold: file path or inline JSON");
    app.add_option("--cases", cases_arg, "comma-separated inequality cases");
    app.add_option("--resolution", flags.resolution, "quadrature nodes (>= 64)");
    app.add_option("--out", flags.out, "output directory");
    app.add_option("--seed", flags.seed, "seed for randomized graphs");
    app.add_option("--tol", tol_args, "tolerance override name=value (eq_tol, check_tol, mono_tol)");
    app.add_flag("--strict", flags.strict, "unmet preconditions exit with status 2");
    app.add_option("--k", k, "submanifold dimension for regions and d sweeps");
    app.add_option("--alpha", alpha, "mean-curvature bound for monotonicity traces");
    app.add_option("--rgrid", flags.rgrid, "trace radii lo:hi:count");
    app.add_option("--sweep", flags.sweep, "swept parameter: s=lo:hi:count, alpha=..., d=...");
    app.add_option("--band", flags.band, "band of area radii lo:hi for domain corollaries");
    app.add_option("--s-max-factor", flags.s_max_factor, "asymptotics: profile extends to h = factor * s0");
    app.set_version_flag("--version", std::string(version()));

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << version() << '\n';
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        RunConfig c;
        if (!config_path.empty()) apply_config_file(c, parse_json_arg(config_path));
        auto given = [&](const char* name) { return app.count(name) > 0; };
        if (given("--command")) c.command = flags.command;
        if (given("--spec")) c.spec = parse_json_arg(spec_arg);
        if (given("--mesh")) c.mesh = parse_json_arg(mesh_arg);
        if (given("--cases")) {
            c.cases.clear();
            std::stringstream ss(cases_arg);
            for (std::string s; std::getline(ss, s, ',');)
                if (!s.empty()) c.cases.push_back(s);
        }
        if (given("--resolution")) c.resolution = flags.resolution;
        if (given("--out")) c.out = flags.out;
        if (given("--seed")) c.seed = flags.seed;
        for (const auto& t : tol_args) {
            auto eq = t.find('=');
            if (eq == std::string::npos) usage("--tol expects name=value, got '" + t + "'");
            c.tol[t.substr(0, eq)] = parse_double(t.substr(eq + 1));
        }
        if (given("--strict")) c.strict = flags.strict;
        if (given("--k")) c.k = k;
        if (given("--alpha")) c.alpha = alpha;
        if (given("--rgrid")) c.rgrid = flags.rgrid;
        if (given("--sweep")) c.sweep = flags.sweep;
        if (given("--band")) c.band = flags.band;
        if (given("--s-max-factor")) c.s_max_factor = flags.s_max_factor;

        if (c.command.empty()) usage("--command is required");
        if (c.spec.is_null()) usage("--spec is required");
        if (c.resolution < 64) usage("resolution>=64");
        tolerances(c);
        ManifoldSpec spec = io::spec_from_json(c.spec);
        validate_spec(spec);

        Output o;
        o.dir = c.out;
        std::filesystem::create_directories(o.dir);
        int code = kExitOk;
        if (c.command == "info") code = cmd_info(c, spec, o, out);
        else if (c.command == "regions") code = cmd_regions(c, spec, o, out);
        else if (c.command == "verify") code = cmd_verify(c, spec, o, out, err);
        else if (c.command == "monotonicity") code = cmd_monotonicity(c, spec, o, out);
        else if (c.command == "asymptotics") code = cmd_asymptotics(c, spec, o, out);
        else if (c.command == "sweep") code = cmd_sweep(c, spec, o, out);
        else usage("unknown command '" + c.command + "'");

        Json config = to_json(c);
        Json manifest;
        manifest["tool"] = "warplab";
        manifest["version"] = version();
        manifest["command"] = c.command;
        manifest["config_hash"] = io::fnv1a_hex(config.dump());
        manifest["config"] = config;
        manifest["outputs"] = o.files;
        manifest["exit_code"] = code;
        io::write_file((o.dir / "manifest.json").string(), manifest.dump(2) + "\n");
        return code;
    } catch (const Error& e) {
        err << e.what() << '\n';
        return kExitUsage;
    } catch (const Json::exception& e) {
        err << "InvalidParameter: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "InvalidParameter: " << e.what() << '\n';
        return kExitUsage;
    }
}

} // namespace warplab
