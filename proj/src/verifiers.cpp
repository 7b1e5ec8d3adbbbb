#include "warplab/verifiers.hpp"

#include "warplab/errors.hpp"
#include "warplab/quadrature.hpp"
#include "warplab/regions.hpp"

#include <cmath>
#include <numbers>

namespace warplab {

const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::Holds: return "Holds";
    case Verdict::Equality: return "Equality";
    case Verdict::Violated: return "Violated";
    case Verdict::PreconditionUnmet: return "PreconditionUnmet";
    }
    return "Unknown";
}

void finalize(InequalityReport& rep, const Tolerances& tol)
{
    rep.slack = rep.rhs - rep.lhs;
    for (const auto& pc : rep.preconditions) {
        if (!pc.pass) {
            rep.verdict = Verdict::PreconditionUnmet;
            return;
        }
    }
    double scale = std::abs(rep.lhs);
    if (std::abs(rep.slack) <= tol.eq_tol * scale) rep.verdict = Verdict::Equality;
    else if (rep.slack < -tol.check_tol * scale) rep.verdict = Verdict::Violated;
    else rep.verdict = Verdict::Holds;
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool pole_anchored(const SubmanifoldMesh& mesh, const WarpProfile& p)
{
    return mesh.r_lo == 0.0 && p.h(0.0) == 0.0;
}

bool equality_family(const SubmanifoldMesh& mesh, const WarpProfile& p)
{
    if (std::holds_alternative<Slice>(mesh.family) || std::holds_alternative<GeodesicSphere>(mesh.family))
        return true;
    if (std::holds_alternative<RightCone3D>(mesh.family)) return true;
    if (std::holds_alternative<RadialCone>(mesh.family)) return pole_anchored(mesh, p);
    return false;
}

bool is_slice(const SubmanifoldMesh& mesh) { return std::holds_alternative<Slice>(mesh.family); }

double mean_curvature_budget(const GeometricMoments& g, int k) { return g.bvol + k * g.int_H; }

void add(InequalityReport& rep, const char* name, bool pass) { rep.preconditions.push_back({name, pass}); }

bool all_pass(const InequalityReport& rep)
{
    for (const auto& pc : rep.preconditions)
        if (!pc.pass) return false;
    return true;
}

void require_family(const WarpProfile& p, Family f)
{
    if (p.spec().family != f)
        fail(ErrorKind::WrongFamily, std::string("expected ") + to_string(f) + ", got " + to_string(p.spec().family));
}

} // namespace

InequalityReport check_fundamental(const SubmanifoldMesh& mesh, const WarpProfile& p, const Tolerances& tol,
                                   bool include_ricci)
{
    GeometricMoments g = moments(mesh, p);
    const int k = mesh.k, n = mesh.spec.n;
    InequalityReport rep;
    rep.name = include_ricci ? "fundamental" : "fundamental-no-ricci";
    add(rep, "k>=2", k >= 2);
    add(rep, "h'>0 on Sigma", std::isfinite(g.int_H_dot_quotient) && std::isfinite(g.int_boundary_quotient));
    double boundary = g.int_boundary_quotient / k;
    double mean = -g.int_H_dot_quotient;
    double ricci = include_ricci ? -g.int_ric_quotient_sq_grad / (k * (n - 1.0)) : 0.0;
    rep.lhs = g.vol;
    rep.rhs = boundary + mean + ricci;
    rep.terms = {{"boundary_term", boundary}, {"mean_curvature_term", mean}, {"ricci_term", ricci}};
    rep.equality_expected = include_ricci && equality_family(mesh, p);
    finalize(rep, tol);
    return rep;
}

InequalityReport check_hsiung_minkowski(const SubmanifoldMesh& mesh, const WarpProfile& p, const Tolerances& tol)
{
    if (!mesh.closed || !mesh.boundary_r.empty()) fail(ErrorKind::OpenBoundary, "Sigma must be closed");
    GeometricMoments g = moments(mesh, p);
    InequalityReport rep;
    rep.name = "hsiung-minkowski";
    add(rep, "closed", true);
    rep.lhs = std::abs(g.int_minkowski);
    rep.rhs = 0.0;
    rep.slack = -rep.lhs;
    rep.terms = {{"int_hprime", g.int_hprime},
                 {"int_h_H_dot_grad_r", g.int_minkowski - g.int_hprime},
                 {"vol", g.vol},
                 {"relative_residual", rep.lhs / g.vol}};
    rep.equality_expected = true;
    rep.verdict = rep.lhs <= tol.eq_tol * g.vol ? Verdict::Holds : Verdict::Violated;
    return rep;
}

InequalityReport check_thm_ss(const SubmanifoldMesh& mesh, const WarpProfile& p, SSCase c, const Tolerances& tol)
{
    require_family(p, Family::DeSitterSchwarzschild);
    const auto& spec = p.spec();
    SSThresholds t = ss_thresholds(spec);
    GeometricMoments g = moments(mesh, p);
    const int k = mesh.k, n = spec.n;
    const double d = g.d_sigma, R = g.R_sigma, T = t.quotient;
    InequalityReport rep;
    add(rep, "k>=2", k >= 2);
    switch (c) {
    case SSCase::I:
    case SSCase::I_C1:
        rep.name = c == SSCase::I ? "ss-i" : "ss-i-c1";
        add(rep, "d_Sigma>s0", d > t.s0);
        add(rep, "R_Sigma<(mn/2)^(1/(n-2))", R < T);
        break;
    case SSCase::II:
        rep.name = "ss-ii";
        add(rep, "c>0", spec.c > 0.0);
        add(rep, "d_Sigma>(m(n-2)/(2c))^(1/n)", t.ricci && d > *t.ricci);
        add(rep, "R_Sigma<s1", R < t.s1);
        break;
    case SSCase::III:
        rep.name = "ss-iii";
        add(rep, "d_Sigma>(mn/2)^(1/(n-2))", d > T);
        if (spec.c > 0.0) add(rep, "R_Sigma<(m(n-2)/(2c))^(1/n)", t.ricci && R < *t.ricci);
        break;
    case SSCase::IV:
        rep.name = "ss-iv";
        add(rep, "d_Sigma>(mn/2)^(1/(n-2))", d > T);
        add(rep, "R_Sigma<s1", R < t.s1);
        break;
    case SSCase::IV_Hyperbolic:
        rep.name = "ss-iv-hyperbolic";
        add(rep, "c<0", spec.c < 0.0);
        add(rep, "d_Sigma>(mn/2)^(1/(n-2))", d > T);
        break;
    }
    rep.lhs = g.vol;
    rep.rhs = kNaN;
    const double budget = mean_curvature_budget(g, k);
    rep.terms = {{"d_Sigma", d}, {"R_Sigma", R}, {"boundary_plus_mean", budget}, {"int_ric_grad", g.int_ric_grad}};
    if (c == SSCase::I_C1 && all_pass(rep)) {
        double C1 = c1_constant(spec, d, k);
        rep.terms.push_back({"C1", C1});
        add(rep, "C1(d_Sigma)>0", C1 > 0.0);
    }
    if (all_pass(rep)) {
        auto Q = [&](double s) { return horizon_function(spec, s); };
        switch (c) {
        case SSCase::I:
            rep.rhs = d / (k * std::sqrt(Q(d))) * budget - d * d / (k * (n - 1.0) * Q(d)) * g.int_ric_grad;
            break;
        case SSCase::I_C1: rep.rhs = c1_constant(spec, d, k) * budget; break;
        case SSCase::II:
            rep.rhs = R / (k * std::sqrt(Q(R))) * budget - d * d / (k * (n - 1.0) * Q(d)) * g.int_ric_grad;
            break;
        case SSCase::III:
            rep.rhs = R / (k * std::sqrt(Q(R))) * budget - R * R / (k * (n - 1.0) * Q(R)) * g.int_ric_grad;
            break;
        case SSCase::IV: rep.rhs = R / ((k - 1.0) * std::sqrt(Q(R))) * budget; break;
        case SSCase::IV_Hyperbolic: rep.rhs = budget / (std::sqrt(-spec.c) * (k - 1.0)); break;
        }
    }
    rep.equality_expected = is_slice(mesh) && (c == SSCase::I || c == SSCase::II || c == SSCase::III);
    finalize(rep, tol);
    return rep;
}

InequalityReport check_spaceform(const SubmanifoldMesh& mesh, const WarpProfile& p, const Tolerances& tol)
{
    require_family(p, Family::SpaceForm);
    const auto& spec = p.spec();
    if (spec.c == 0.0) fail(ErrorKind::WrongFamily, "space-form corollaries need c!=0");
    GeometricMoments g = moments(mesh, p);
    const int k = mesh.k;
    const double Rt = g.r_max;  // extrinsic radius about the pole
    InequalityReport rep;
    add(rep, "k>=2", k >= 2);
    add(rep, "n>=3", spec.n >= 3);
    const double budget = mean_curvature_budget(g, k);
    rep.lhs = g.vol;
    if (spec.c < 0.0) {
        rep.name = "spaceform-hyperbolic";
        double s = std::sqrt(-spec.c);
        // tanh^2(sqrt(-c) r) = -c (h/h')^2
        double tail = -spec.c * g.int_quotient_sq_grad / k;
        rep.rhs = std::tanh(s * Rt) / (s * k) * budget + tail;
        rep.terms = {{"R_tilde", Rt}, {"boundary_plus_mean", budget}, {"tanh_sq_term", tail}};
    } else {
        rep.name = "spaceform-hemisphere";
        double s = std::sqrt(spec.c);
        if (!(s * Rt < 0.5 * std::numbers::pi))
            fail(ErrorKind::HemisphereViolation, "R_tilde<pi/(2 sqrt(c))");
        double tail = spec.c * g.int_quotient_sq_grad / k;
        rep.rhs = std::tan(s * Rt) / (k * s) * budget - tail;
        rep.terms = {{"R_tilde", Rt}, {"boundary_plus_mean", budget}, {"tan_sq_term", tail}};
    }
    rep.equality_expected = std::holds_alternative<GeodesicSphere>(mesh.family) || is_slice(mesh);
    finalize(rep, tol);
    return rep;
}

InequalityReport check_thm_rn(const SubmanifoldMesh& mesh, const WarpProfile& p, RNCase c, const Tolerances& tol)
{
    require_family(p, Family::ReissnerNordstrom);
    const auto& spec = p.spec();
    RNThresholds t = rn_thresholds(spec);
    GeometricMoments g = moments(mesh, p);
    const int k = mesh.k, n = spec.n;
    const double d = g.d_sigma, R = g.R_sigma;
    const bool region_i = c == RNCase::I || c == RNCase::I_C2;
    InequalityReport rep;
    rep.name = c == RNCase::I ? "rn-i" : c == RNCase::I_C2 ? "rn-i-c2" : c == RNCase::II ? "rn-ii" : "rn-ii-c2";
    add(rep, "k>=2", k >= 2);
    if (region_i) {
        add(rep, "d_Sigma>s0", d > t.s0);
        add(rep, "R_Sigma<s2", R < t.s2);
    } else {
        add(rep, "d_Sigma>s2", d > t.s2);
    }
    const double budget = mean_curvature_budget(g, k);
    rep.lhs = g.vol;
    rep.rhs = kNaN;
    rep.terms = {{"d_Sigma", d}, {"R_Sigma", R}, {"boundary_plus_mean", budget}, {"int_ric_grad", g.int_ric_grad}};
    auto Q = [&](double s) { return horizon_function(spec, s); };
    const double s_main = region_i ? d : R;
    if (all_pass(rep)) {
        if (c == RNCase::I || c == RNCase::II) {
            rep.rhs = s_main / (k * std::sqrt(Q(s_main))) * budget -
                      s_main * s_main / (k * (n - 1.0) * Q(s_main)) * g.int_ric_grad;
        } else {
            double C2 = c2_constant(spec, d);
            rep.terms.push_back({"C2", C2});
            if (!(C2 < k)) fail(ErrorKind::ConstantInapplicable, "C2(d_Sigma)<k");
            double base = s_main / std::sqrt(Q(s_main)) * budget;
            rep.rhs = base / (k - C2);
            rep.terms.push_back({"printed_form_rhs", base / (C2 - k)});
        }
    }
    rep.equality_expected = is_slice(mesh) && (c == RNCase::I || c == RNCase::II);
    finalize(rep, tol);
    return rep;
}

BandMeasures band_measures(const WarpProfile& p, const Band& band)
{
    if (!(band.s_hi > band.s_lo)) fail(ErrorKind::InvalidParameter, "s_lo<s_hi");
    const int n = p.n();
    double ra = p.radial_coordinate(band.s_lo), rb = p.radial_coordinate(band.s_hi);
    double area = sphere_area(n - 1);
    BandMeasures m;
    m.volume = area * integrate_adaptive([&](double r) { return ipow(p.h(r), n - 1); }, ra, rb, 1e-13);
    m.boundary = area * (ipow(band.s_lo, n - 1) + ipow(band.s_hi, n - 1));
    return m;
}

std::vector<InequalityReport> check_domain_corollaries(const WarpProfile& p, const Band& band, const Tolerances& tol)
{
    const auto& spec = p.spec();
    const int n = spec.n;
    BandMeasures bm = band_measures(p, band);
    const double d = band.s_lo, R = band.s_hi;
    auto Q = [&](double s) { return horizon_function(spec, s); };
    std::vector<InequalityReport> out;
    auto base = [&](const char* name) {
        InequalityReport rep;
        rep.name = name;
        rep.lhs = bm.volume;
        rep.rhs = kNaN;
        rep.terms = {{"d_Omega", d}, {"R_Omega", R}, {"boundary", bm.boundary}};
        return rep;
    };
    if (spec.family == Family::DeSitterSchwarzschild || spec.family == Family::SpaceForm) {
        double s0 = 0.0, s1 = kInf, T = 0.0;
        if (spec.family == Family::DeSitterSchwarzschild) {
            SSThresholds t = ss_thresholds(spec);
            s0 = t.s0;
            s1 = t.s1;
            T = t.quotient;
        } else if (spec.c > 0.0) {
            s1 = 1.0 / std::sqrt(spec.c);
        }
        {
            InequalityReport rep = base("domain-ss-i");
            add(rep, "d_Omega>s0", d > s0);
            add(rep, "R_Omega<(mn/2)^(1/(n-2))", R < T);
            if (all_pass(rep)) {
                double C1 = c1_constant(spec, d, n);
                rep.terms.push_back({"C1", C1});
                add(rep, "C1(d_Omega)>0", C1 > 0.0);
                if (C1 > 0.0) rep.rhs = C1 * bm.boundary;
            }
            finalize(rep, tol);
            out.push_back(rep);
        }
        {
            InequalityReport rep = base("domain-ss-ii");
            add(rep, "d_Omega>(mn/2)^(1/(n-2))", d > T);
            add(rep, "R_Omega<s1", R < s1);
            if (all_pass(rep)) rep.rhs = R / ((n - 1.0) * std::sqrt(Q(R))) * bm.boundary;
            finalize(rep, tol);
            out.push_back(rep);
        }
        {
            InequalityReport rep = base("domain-ss-ii-hyperbolic");
            add(rep, "c<0", spec.c < 0.0);
            add(rep, "d_Omega>(mn/2)^(1/(n-2))", d > T);
            if (all_pass(rep)) rep.rhs = bm.boundary / (std::sqrt(-spec.c) * (n - 1.0));
            finalize(rep, tol);
            out.push_back(rep);
        }
        return out;
    }
    if (spec.family == Family::ReissnerNordstrom) {
        RNThresholds t = rn_thresholds(spec);
        for (int region = 0; region < 2; ++region) {
            InequalityReport rep = base(region == 0 ? "domain-rn-i" : "domain-rn-ii");
            if (region == 0) {
                add(rep, "d_Omega>s0", d > t.s0);
                add(rep, "R_Omega<s2", R < t.s2);
            } else {
                add(rep, "d_Omega>s2", d > t.s2);
            }
            if (all_pass(rep)) {
                double C2 = c2_constant(spec, d);
                rep.terms.push_back({"C2", C2});
                add(rep, "C2(d_Omega)<n", C2 < n);
                double s = region == 0 ? d : R;
                double num = s / std::sqrt(Q(s)) * bm.boundary;
                rep.terms.push_back({"printed_form_rhs", num / (C2 - n)});
                if (C2 < n) rep.rhs = num / (n - C2);
            }
            finalize(rep, tol);
            out.push_back(rep);
        }
        return out;
    }
    fail(ErrorKind::WrongFamily, "domain corollaries need SS, RN or a space form");
}

InequalityReport check_minimal_surface(const SubmanifoldMesh& mesh, const WarpProfile& p, MinimalCase c, const Tolerances& tol)
{
    if (mesh.k != 2) fail(ErrorKind::InvalidParameter, "k=2 for minimal surfaces");
    GeometricMoments g = moments(mesh, p);
    if (g.max_H > 1e-10) fail(ErrorKind::NotMinimal, "H=0 on Sigma");
    const int n = mesh.spec.n;
    InequalityReport rep;
    rep.name = c == MinimalCase::I ? "minimal-i" : "minimal-ii";
    double lo = std::max(mesh.r_lo, 1e-9 * p.r_max());
    double hi = mesh.r_hi;
    bool mono = true;
    if (hi > lo) {
        for (const auto& iv : u_monotonicity(p, lo, hi)) {
            if (c == MinimalCase::I && iv.sign < 0) mono = false;
            if (c == MinimalCase::II && iv.sign > 0) mono = false;
        }
    }
    add(rep, c == MinimalCase::I ? "u nondecreasing on [r_lo, r_hi]" : "u nonincreasing on [r_lo, r_hi]", mono);
    if (c == MinimalCase::II) add(rep, "n>=3", n >= 3);
    const double A = g.vol, L = g.bvol;
    rep.lhs = 2.0 * std::numbers::pi * A;
    if (c == MinimalCase::I) {
        double term = A / (n - 1.0) * g.int_ric;
        rep.rhs = L * L + term;
        rep.terms = {{"A", A}, {"L", L}, {"ricci_term", term}};
    } else {
        double term = 2.0 * A / ((n - 1.0) * (n - 2.0)) * (g.int_scal - 2.0 * g.int_ric);
        rep.rhs = L * L + term;
        rep.terms = {{"A", A}, {"L", L}, {"scalar_term", term}};
    }
    finalize(rep, tol);
    return rep;
}

const std::vector<std::string>& case_names()
{
    static const std::vector<std::string> names{
        "fundamental", "fundamental-no-ricci", "hsiung-minkowski", "ss-i",    "ss-i-c1", "ss-ii",
        "ss-iii",      "ss-iv",                "ss-iv-hyperbolic", "spaceform",
        "rn-i",        "rn-i-c2",              "rn-ii",            "rn-ii-c2", "minimal-i", "minimal-ii"};
    return names;
}

InequalityReport run_case(const std::string& name, const SubmanifoldMesh& mesh, const WarpProfile& p,
                          const Tolerances& tol)
{
    if (name == "fundamental") return check_fundamental(mesh, p, tol, true);
    if (name == "fundamental-no-ricci") return check_fundamental(mesh, p, tol, false);
    if (name == "hsiung-minkowski") return check_hsiung_minkowski(mesh, p, tol);
    if (name == "ss-i") return check_thm_ss(mesh, p, SSCase::I, tol);
    if (name == "ss-i-c1") return check_thm_ss(mesh, p, SSCase::I_C1, tol);
    if (name == "ss-ii") return check_thm_ss(mesh, p, SSCase::II, tol);
    if (name == "ss-iii") return check_thm_ss(mesh, p, SSCase::III, tol);
    if (name == "ss-iv") return check_thm_ss(mesh, p, SSCase::IV, tol);
    if (name == "ss-iv-hyperbolic") return check_thm_ss(mesh, p, SSCase::IV_Hyperbolic, tol);
    if (name == "spaceform") return check_spaceform(mesh, p, tol);
    if (name == "rn-i") return check_thm_rn(mesh, p, RNCase::I, tol);
    if (name == "rn-i-c2") return check_thm_rn(mesh, p, RNCase::I_C2, tol);
    if (name == "rn-ii") return check_thm_rn(mesh, p, RNCase::II, tol);
    if (name == "rn-ii-c2") return check_thm_rn(mesh, p, RNCase::II_C2, tol);
    if (name == "minimal-i") return check_minimal_surface(mesh, p, MinimalCase::I, tol);
    if (name == "minimal-ii") return check_minimal_surface(mesh, p, MinimalCase::II, tol);
    fail(ErrorKind::InvalidParameter, "unknown case '" + name + "'");
}

std::vector<std::string> default_cases(const SubmanifoldMesh& mesh, const WarpProfile& p)
{
    if (mesh.force_minimal && mesh.closed) return {"hsiung-minkowski"};
    const auto& spec = p.spec();
    GeometricMoments g = moments(mesh, p);
    const double d = g.d_sigma, R = g.R_sigma;
    switch (spec.family) {
    case Family::DeSitterSchwarzschild: {
        SSThresholds t = ss_thresholds(spec);
        if (d > t.s0 && R < t.quotient) return {"ss-i"};
        if (spec.c > 0.0 && d > *t.ricci && R < t.s1) return {"ss-ii"};
        if (d > t.quotient && (spec.c <= 0.0 || R < *t.ricci)) return {"ss-iii"};
        return {"fundamental"};
    }
    case Family::ReissnerNordstrom: {
        RNThresholds t = rn_thresholds(spec);
        if (d > t.s0 && R < t.s2) return {"rn-i"};
        if (d > t.s2) return {"rn-ii"};
        return {"fundamental"};
    }
    case Family::SpaceForm:
        if (spec.c != 0.0) return {"spaceform"};
        return {"fundamental"};
    default: return {"fundamental"};
    }
}

} // namespace warplab
