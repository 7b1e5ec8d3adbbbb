#include "warplab/manifold.hpp"

#include "warplab/errors.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace warplab {

const char* to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::RootBracketingFailure: return "RootBracketingFailure";
    case ErrorKind::DomainExceeded: return "DomainExceeded";
    case ErrorKind::IntegrationFailure: return "IntegrationFailure";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::UnsupportedFiber: return "UnsupportedFiber";
    case ErrorKind::WrongFamily: return "WrongFamily";
    case ErrorKind::OrderingViolation: return "OrderingViolation";
    case ErrorKind::SpecMismatch: return "SpecMismatch";
    case ErrorKind::DegenerateMetric: return "DegenerateMetric";
    case ErrorKind::EmptyResult: return "EmptyResult";
    case ErrorKind::OpenBoundary: return "OpenBoundary";
    case ErrorKind::HemisphereViolation: return "HemisphereViolation";
    case ErrorKind::ConstantInapplicable: return "ConstantInapplicable";
    case ErrorKind::RegionViolation: return "RegionViolation";
    case ErrorKind::NotMinimal: return "NotMinimal";
    case ErrorKind::PreconditionUnmet: return "PreconditionUnmet";
    case ErrorKind::WindowTooSmall: return "WindowTooSmall";
    }
    return "Unknown";
}

const char* to_string(Family f)
{
    switch (f) {
    case Family::SpaceForm: return "SpaceForm";
    case Family::DeSitterSchwarzschild: return "DeSitterSchwarzschild";
    case Family::ReissnerNordstrom: return "ReissnerNordstrom";
    case Family::PowerPerturbed: return "PowerPerturbed";
    case Family::ArctanCylinder: return "ArctanCylinder";
    case Family::RationalDecayCylinder: return "RationalDecayCylinder";
    case Family::LogFactor: return "LogFactor";
    }
    return "Unknown";
}

const char* to_string(Fiber f) { return f == Fiber::Sphere ? "sphere" : "torus"; }

Family family_from_string(const std::string& s)
{
    if (s == "SpaceForm") return Family::SpaceForm;
    if (s == "DeSitterSchwarzschild" || s == "SS") return Family::DeSitterSchwarzschild;
    if (s == "ReissnerNordstrom" || s == "RN") return Family::ReissnerNordstrom;
    if (s == "PowerPerturbed") return Family::PowerPerturbed;
    if (s == "ArctanCylinder") return Family::ArctanCylinder;
    if (s == "RationalDecayCylinder") return Family::RationalDecayCylinder;
    if (s == "LogFactor") return Family::LogFactor;
    fail(ErrorKind::InvalidParameter, "unknown family '" + s + "'");
}

Fiber fiber_from_string(const std::string& s)
{
    if (s == "sphere") return Fiber::Sphere;
    if (s == "torus") return Fiber::FlatTorus;
    fail(ErrorKind::InvalidParameter, "unknown fiber '" + s + "'");
}

double ipow(double x, int e)
{
    double r = 1.0;
    bool inv = e < 0;
    for (int i = 0; i < std::abs(e); ++i) r *= x;
    return inv ? 1.0 / r : r;
}

double power_difference_quotient(double s, double a, int k)
{
    double num = 0.0;
    double sj = 1.0;
    for (int j = 0; j < k; ++j) {
        num += sj * ipow(a, k - 1 - j);
        sj *= s;
    }
    return num / ipow(s * a, k);
}

namespace {

void check(std::vector<ConstraintCheck>& out, const std::string& name, double value, double limit,
           bool satisfied)
{
    double scale = std::max({std::abs(value), std::abs(limit), 1e-300});
    bool binding = satisfied && std::abs(value - limit) < 1e-3 * scale;
    out.push_back({name, value, limit, satisfied, binding});
    if (!satisfied) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "constraint " << name << " violated (" << value << " vs " << limit << ")";
        fail(ErrorKind::InvalidParameter, msg.str());
    }
}

} // namespace

ValidatedSpec validate_spec(const ManifoldSpec& spec)
{
    ValidatedSpec v{spec, {}};
    auto& cs = v.constraints;
    const int n = spec.n;
    int n_min = spec.family == Family::SpaceForm ? 2 : 3;
    check(cs, "n>=" + std::to_string(n_min), n, n_min, n >= n_min);
    check(cs, "n<=6", n, 6, n <= 6);
    auto finite = [&](const char* name, double x) {
        if (!std::isfinite(x)) fail(ErrorKind::InvalidParameter, std::string(name) + " must be finite");
    };
    finite("c", spec.c);
    finite("m", spec.m);
    finite("q", spec.q);
    finite("B", spec.B);
    finite("p", spec.p);
    finite("K", spec.K);
    finite("a", spec.a);

    switch (spec.family) {
    case Family::SpaceForm:
        break;
    case Family::DeSitterSchwarzschild: {
        check(cs, "m>0", spec.m, 0.0, spec.m > 0.0);
        if (spec.c > 0.0) {
            double lhs = std::pow(n, n) / (4.0 * std::pow(n - 2, n - 2)) * spec.m * spec.m *
                         std::pow(spec.c, n - 2);
            check(cs, "n^n/(4(n-2)^(n-2)) m^2 c^(n-2)<1", lhs, 1.0, lhs < 1.0);
        }
        break;
    }
    case Family::ReissnerNordstrom:
        check(cs, "q>0", spec.q, 0.0, spec.q > 0.0);
        check(cs, "m>2q", spec.m, 2.0 * spec.q, spec.m > 2.0 * spec.q);
        break;
    case Family::PowerPerturbed:
        check(cs, "p>0", spec.p, 0.0, spec.p > 0.0);
        break;
    case Family::ArctanCylinder:
        check(cs, "K>0", spec.K, 0.0, spec.K > 0.0);
        break;
    case Family::RationalDecayCylinder:
        check(cs, "a>0", spec.a, 0.0, spec.a > 0.0);
        check(cs, "p>0", spec.p, 0.0, spec.p > 0.0);
        break;
    case Family::LogFactor:
        check(cs, "a>0", spec.a, 0.0, spec.a > 0.0);
        break;
    }
    return v;
}

namespace {

// s^k - m - c s^(k+2) shares its sign with 1 - m s^-k - c s^2 for s > 0
double ss_poly(double s, double m, double c, int k) { return ipow(s, k) - m - c * ipow(s, k + 2); }

double bisect(double lo, double hi, double m, double c, int k)
{
    double flo = ss_poly(lo, m, c, k);
    double fhi = ss_poly(hi, m, c, k);
    if (flo * fhi > 0.0) fail(ErrorKind::RootBracketingFailure, "no sign change in horizon bracket");
    for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        double fm = ss_poly(mid, m, c, k);
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    double root = std::abs(flo) < std::abs(ss_poly(hi, m, c, k)) ? lo : hi;
    double scale = std::max(m, ipow(root, k));
    if (std::abs(ss_poly(root, m, c, k)) > 1e-12 * scale)
        fail(ErrorKind::RootBracketingFailure, "horizon root residual above 1e-12");
    return root;
}

} // namespace

DomainEndpoints area_radius_roots(const ManifoldSpec& spec)
{
    validate_spec(spec);
    DomainEndpoints d;
    const int k = spec.n - 2;
    switch (spec.family) {
    case Family::SpaceForm:
        if (spec.c > 0.0) {
            double sq = std::sqrt(spec.c);
            d.r_end = std::numbers::pi / (2.0 * sq);
            d.s1 = 1.0 / sq;
        }
        break;
    case Family::DeSitterSchwarzschild: {
        const double m = spec.m, c = spec.c;
        if (c == 0.0) {
            d.s0 = std::pow(m, 1.0 / k);
        } else if (c < 0.0) {
            d.s0 = bisect(0.0, std::pow(m, 1.0 / k), m, c, k);
        } else {
            double s_star = std::sqrt(double(k) / (c * spec.n));
            d.s0 = bisect(0.0, s_star, m, c, k);
            d.s1 = bisect(s_star, 1.0 / std::sqrt(c), m, c, k);
        }
        break;
    }
    case Family::ReissnerNordstrom: {
        double disc = std::sqrt(spec.m * spec.m - 4.0 * spec.q * spec.q);
        double beta1 = 2.0 / (spec.m + disc);
        d.s0 = std::pow(beta1, -1.0 / k);
        break;
    }
    case Family::PowerPerturbed:
        if (spec.B < 0.0) {
            d.r_end = std::pow((spec.p + 1.0) * (-spec.B), -1.0 / spec.p) * (1.0 - 1e-6);
            d.s1 = d.r_end + spec.B * std::pow(d.r_end, spec.p + 1.0);
        }
        break;
    case Family::ArctanCylinder:
        d.s1 = std::numbers::pi / (2.0 * spec.K);
        break;
    case Family::RationalDecayCylinder:
        d.s1 = std::pow(spec.a, -1.0 / spec.p);
        break;
    case Family::LogFactor:
        break;
    }
    return d;
}

} // namespace warplab
