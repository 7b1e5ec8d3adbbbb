#include "warplab/warping.hpp"

#include "warplab/errors.hpp"
#include "warplab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace warplab {

namespace detail {

// Area-radius ODE in the substitution s = s0 + u^2 (and s = s1 - (U - u)^2 on
// the upper half when a second root s1 exists), where dr/du is bounded and smooth.
struct OdeMap {
    bool rn = false;
    int k = 1;  // n - 2
    double m = 0.0, c = 0.0, q = 0.0;
    double s0 = 0.0, s1 = kInf, beta2 = 0.0;
    bool two_sided = false;
    double U = kInf;

    double g_lo(double u) const
    {
        double s = s0 + u * u;
        double S = power_difference_quotient(s, s0, k);
        if (rn) return q * q * S * (beta2 - ipow(s, -k));
        return m * S - c * (s + s0);
    }
    double g_hi(double sg) const
    {
        double s = s1 - sg * sg;
        return c * (s + s1) - m * power_difference_quotient(s, s1, k);
    }
    bool upper(double u) const { return two_sided && u > 0.5 * U; }
    double s_of_u(double u) const
    {
        if (upper(u)) {
            double v = U - u;
            return s1 - v * v;
        }
        return s0 + u * u;
    }
    double u_of_s(double s) const
    {
        if (two_sided && s > 0.5 * (s0 + s1)) return U - std::sqrt(std::max(s1 - s, 0.0));
        return std::sqrt(std::max(s - s0, 0.0));
    }
    double drdu(double u) const
    {
        return upper(u) ? 2.0 / std::sqrt(g_hi(U - u)) : 2.0 / std::sqrt(g_lo(u));
    }
    double hp_of_u(double u) const
    {
        return upper(u) ? (U - u) * std::sqrt(g_hi(U - u)) : u * std::sqrt(g_lo(u));
    }
    template <class Integrator>
    double integral(double ua, double ub, Integrator&& integ) const
    {
        auto f = [this](double u) { return drdu(u); };
        if (two_sided) {
            double mid = 0.5 * U;
            if (ua < mid && ub > mid) return integ(f, ua, mid) + integ(f, mid, ub);
        }
        return integ(f, ua, ub);
    }
    double seg(double ua, double ub) const
    {
        return integral(ua, ub, [](auto& f, double a, double b) { return integrate_gl10(f, a, b); });
    }
    double seg_adaptive(double ua, double ub) const
    {
        return integral(ua, ub,
                        [](auto& f, double a, double b) { return integrate_adaptive(f, a, b, 1e-15); });
    }
};

struct ProfileData {
    ManifoldSpec spec;
    DomainEndpoints dom;
    bool closed = true;
    int resolution = 0;
    double r_max = 0.0;
    std::vector<double> r, h, hp, hpp;
    OdeMap ode;
    std::vector<double> u, dudr;
};

} // namespace detail

using detail::OdeMap;
using detail::ProfileData;

namespace {

double cf_h(const ManifoldSpec& s, double r)
{
    switch (s.family) {
    case Family::SpaceForm:
        if (s.c == 0.0) return r;
        if (s.c < 0.0) {
            double k = std::sqrt(-s.c);
            return std::sinh(k * r) / k;
        } else {
            double k = std::sqrt(s.c);
            return std::sin(k * r) / k;
        }
    case Family::PowerPerturbed: return r + s.B * std::pow(r, s.p + 1.0);
    case Family::ArctanCylinder: return std::atan(s.K * r) / s.K;
    case Family::RationalDecayCylinder: return r * std::pow(1.0 + s.a * std::pow(r, s.p), -1.0 / s.p);
    case Family::LogFactor: return r * std::log(s.a * r * r + std::numbers::e);
    default: break;
    }
    fail(ErrorKind::WrongFamily, "not a closed-form family");
}

double cf_hp(const ManifoldSpec& s, double r)
{
    switch (s.family) {
    case Family::SpaceForm:
        if (s.c == 0.0) return 1.0;
        if (s.c < 0.0) return std::cosh(std::sqrt(-s.c) * r);
        return std::cos(std::sqrt(s.c) * r);
    case Family::PowerPerturbed: return 1.0 + s.B * (s.p + 1.0) * std::pow(r, s.p);
    case Family::ArctanCylinder: return 1.0 / (1.0 + s.K * s.K * r * r);
    case Family::RationalDecayCylinder:
        return std::pow(1.0 + s.a * std::pow(r, s.p), -1.0 - 1.0 / s.p);
    case Family::LogFactor: {
        double L = s.a * r * r + std::numbers::e;
        return std::log(L) + 2.0 * s.a * r * r / L;
    }
    default: break;
    }
    fail(ErrorKind::WrongFamily, "not a closed-form family");
}

double cf_hpp(const ManifoldSpec& s, double r)
{
    switch (s.family) {
    case Family::SpaceForm:
        if (s.c == 0.0) return 0.0;
        if (s.c < 0.0) {
            double k = std::sqrt(-s.c);
            return k * std::sinh(k * r);
        } else {
            double k = std::sqrt(s.c);
            return -k * std::sin(k * r);
        }
    case Family::PowerPerturbed: return s.B * (s.p + 1.0) * s.p * std::pow(r, s.p - 1.0);
    case Family::ArctanCylinder: {
        double w = 1.0 + s.K * s.K * r * r;
        return -2.0 * s.K * s.K * r / (w * w);
    }
    case Family::RationalDecayCylinder: {
        double w = 1.0 + s.a * std::pow(r, s.p);
        return -(s.p + 1.0) * s.a * std::pow(r, s.p - 1.0) * std::pow(w, -2.0 - 1.0 / s.p);
    }
    case Family::LogFactor: {
        const double e = std::numbers::e;
        double L = s.a * r * r + e;
        return 2.0 * s.a * r / L + 4.0 * s.a * e * r / (L * L);
    }
    default: break;
    }
    fail(ErrorKind::WrongFamily, "not a closed-form family");
}

// inverse of a closed-form h on [0, r_hi]
double cf_inverse(const ManifoldSpec& spec, double s, double r_hi)
{
    if (spec.family == Family::SpaceForm) {
        if (spec.c == 0.0) return s;
        if (spec.c < 0.0) {
            double k = std::sqrt(-spec.c);
            return std::asinh(k * s) / k;
        }
        double k = std::sqrt(spec.c);
        if (k * s > 1.0) fail(ErrorKind::OutOfDomain, "s beyond 1/sqrt(c)");
        return std::asin(k * s) / k;
    }
    double lo = 0.0, hi = std::isfinite(r_hi) ? r_hi : 1.0;
    if (!std::isfinite(r_hi)) {
        while (cf_h(spec, hi) < s) {
            hi *= 2.0;
            if (hi > 1e12) fail(ErrorKind::OutOfDomain, "area radius beyond the range of h");
        }
    } else if (cf_h(spec, hi) < s) {
        fail(ErrorKind::OutOfDomain, "area radius beyond the range of h");
    }
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        double f = cf_h(spec, x) - s;
        if (f > 0.0) hi = x; else lo = x;
        double d = cf_hp(spec, x);
        double xn = x - f / d;
        if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
        if (std::abs(xn - x) <= 1e-16 * std::max(1.0, std::abs(x))) {
            x = xn;
            break;
        }
        x = xn;
    }
    return x;
}

OdeMap make_ode(const ManifoldSpec& spec)
{
    DomainEndpoints dom = area_radius_roots(spec);
    OdeMap o;
    o.rn = spec.family == Family::ReissnerNordstrom;
    o.k = spec.n - 2;
    o.m = spec.m;
    o.c = spec.c;
    o.q = spec.q;
    o.s0 = dom.s0;
    o.s1 = dom.s1;
    if (o.rn) {
        double disc = std::sqrt(spec.m * spec.m - 4.0 * spec.q * spec.q);
        o.beta2 = (spec.m + disc) / (2.0 * spec.q * spec.q);
    }
    if (!o.rn && spec.c > 0.0) {
        o.two_sided = true;
        o.U = 2.0 * std::sqrt(0.5 * (o.s1 - o.s0));
    }
    return o;
}

double ode_default_s_max(const OdeMap& o)
{
    double s = 50.0 * o.s0;
    if (o.two_sided) s = std::min(s, o.s1 - 1e-6 * (o.s1 - o.s0));
    return s;
}

std::shared_ptr<ProfileData> tabulate_ode(const ManifoldSpec& spec, const OdeMap& o, double u_max,
                                          int N)
{
    auto d = std::make_shared<ProfileData>();
    d->spec = spec;
    d->dom = domain_endpoints(spec);
    d->closed = false;
    d->resolution = N;
    d->ode = o;
    d->u.resize(N);
    d->r.resize(N);
    d->h.resize(N);
    d->hp.resize(N);
    d->hpp.resize(N);
    d->dudr.resize(N);
    std::vector<double> seg(N, 0.0);
    const double du = u_max / (N - 1);
    for (int j = 0; j < N; ++j) d->u[j] = j == N - 1 ? u_max : du * j;

#pragma omp parallel for schedule(static)
    for (int j = 1; j < N; ++j) seg[j] = o.seg_adaptive(d->u[j - 1], d->u[j]);

    CompensatedSum acc;
    for (int j = 0; j < N; ++j) {
        acc.add(seg[j]);
        d->r[j] = acc.value();
        double s = o.s_of_u(d->u[j]);
        d->h[j] = s;
        d->hp[j] = o.hp_of_u(d->u[j]);
        d->hpp[j] = s * ode_second_ratio(spec, s);
        d->dudr[j] = 1.0 / o.drdu(d->u[j]);
    }
    d->r_max = d->r.back();
    return d;
}

std::shared_ptr<ProfileData> tabulate_closed(const ManifoldSpec& spec, double r_max, int N)
{
    auto d = std::make_shared<ProfileData>();
    d->spec = spec;
    d->dom = domain_endpoints(spec);
    d->closed = true;
    d->resolution = N;
    d->r_max = r_max;
    d->r.resize(N);
    d->h.resize(N);
    d->hp.resize(N);
    d->hpp.resize(N);
    for (int j = 0; j < N; ++j) {
        double r = j == N - 1 ? r_max : r_max * j / (N - 1);
        d->r[j] = r;
        d->h[j] = cf_h(spec, r);
        d->hp[j] = cf_hp(spec, r);
        d->hpp[j] = cf_hpp(spec, r);
    }
    return d;
}

void check_resolution(int N)
{
    if (N < 64) fail(ErrorKind::InvalidParameter, "resolution>=64");
}

// u at radial coordinate r: monotone cubic Hermite guess, then Newton against the quadrature
double ode_u_of_r(const ProfileData& d, double r)
{
    const auto& R = d.r;
    const int N = static_cast<int>(R.size());
    if (r <= 0.0) return 0.0;
    if (r >= R.back()) return d.u.back();
    int j = static_cast<int>(std::upper_bound(R.begin(), R.end(), r) - R.begin()) - 1;
    j = std::clamp(j, 0, N - 2);
    double dr = R[j + 1] - R[j];
    double t = (r - R[j]) / dr;
    double u0 = d.u[j], u1 = d.u[j + 1];
    double m0 = d.dudr[j] * dr, m1 = d.dudr[j + 1] * dr;
    double delta = u1 - u0;
    // Fritsch-Carlson limiter
    double a = m0 / delta, b = m1 / delta;
    double norm = a * a + b * b;
    if (norm > 9.0) {
        double tau = 3.0 / std::sqrt(norm);
        m0 *= tau;
        m1 *= tau;
    }
    double t2 = t * t, t3 = t2 * t;
    double u = (2 * t3 - 3 * t2 + 1) * u0 + (t3 - 2 * t2 + t) * m0 + (-2 * t3 + 3 * t2) * u1 +
               (t3 - t2) * m1;
    u = std::clamp(u, u0, u1);
    const double ustep_tol = 4e-16 * std::max(d.u.back(), 1e-300);
    for (int it = 0; it < 4; ++it) {
        double resid = R[j] + d.ode.seg(u0, u) - r;
        double step = resid / d.ode.drdu(u);
        u -= step;
        if (std::abs(step) <= ustep_tol) break;
    }
    return std::clamp(u, 0.0, d.u.back());
}

void check_r(const ProfileData& d, double r)
{
    if (!(r >= -1e-14 * std::max(1.0, d.r_max)) || r > d.r_max * (1.0 + 1e-12) + 1e-14)
        fail(ErrorKind::OutOfDomain, "r outside [0, r_max] of the profile");
}

} // namespace

double ode_rhs(const ManifoldSpec& spec, double s)
{
    const int k = spec.n - 2;
    double x = ipow(s, -k);
    if (spec.family == Family::DeSitterSchwarzschild) return 1.0 - spec.m * x - spec.c * s * s;
    if (spec.family == Family::ReissnerNordstrom) return 1.0 - spec.m * x + spec.q * spec.q * x * x;
    fail(ErrorKind::WrongFamily, "ODE right-hand side needs SS or RN");
}

double ode_second_ratio(const ManifoldSpec& spec, double s)
{
    const int n = spec.n, k = n - 2;
    if (spec.family == Family::DeSitterSchwarzschild) return spec.m * k / (2.0 * ipow(s, n)) - spec.c;
    if (spec.family == Family::ReissnerNordstrom)
        return k / (2.0 * ipow(s, n)) * (spec.m - 2.0 * spec.q * spec.q * ipow(s, -k));
    fail(ErrorKind::WrongFamily, "h''/h closed form needs SS or RN");
}

DomainEndpoints domain_endpoints(const ManifoldSpec& spec)
{
    DomainEndpoints d = area_radius_roots(spec);
    if (is_ode_family(spec.family) && std::isfinite(d.s1)) {
        OdeMap o = make_ode(spec);
        d.r_end = o.seg_adaptive(0.0, o.U);
    }
    return d;
}

double default_r_max(const ManifoldSpec& spec)
{
    if (is_ode_family(spec.family)) {
        OdeMap o = make_ode(spec);
        return o.seg_adaptive(0.0, o.u_of_s(ode_default_s_max(o)));
    }
    DomainEndpoints d = domain_endpoints(spec);
    if (std::isfinite(d.r_end)) {
        if (spec.family == Family::PowerPerturbed) return d.r_end;  // margin already applied
        return d.r_end * (1.0 - 1e-6);
    }
    return 10.0;
}

double radial_coordinate(const ManifoldSpec& spec, double s)
{
    validate_spec(spec);
    if (is_ode_family(spec.family)) {
        OdeMap o = make_ode(spec);
        if (s < o.s0 || s > o.s1) fail(ErrorKind::OutOfDomain, "s outside [s0, s1]");
        return o.seg_adaptive(0.0, o.u_of_s(s));
    }
    DomainEndpoints d = domain_endpoints(spec);
    if (s < 0.0 || s > d.s1) fail(ErrorKind::OutOfDomain, "s outside the range of h");
    return cf_inverse(spec, s, d.r_end);
}

WarpProfile build_profile(const ManifoldSpec& spec, std::optional<double> r_max, int resolution)
{
    validate_spec(spec);
    check_resolution(resolution);
    DomainEndpoints dom = domain_endpoints(spec);
    double rm = r_max ? *r_max : default_r_max(spec);
    if (!(rm > 0.0)) fail(ErrorKind::InvalidParameter, "r_max>0");
    if (rm > dom.r_end) fail(ErrorKind::DomainExceeded, "r_max beyond the radial domain");
    if (!is_ode_family(spec.family)) return WarpProfile(tabulate_closed(spec, rm, resolution));

    OdeMap o = make_ode(spec);
    double u_max;
    if (!r_max) {
        u_max = o.u_of_s(ode_default_s_max(o));
    } else {
        // solve R(u) = r_max, R increasing with R' = dr/du
        double lo = 0.0, hi = 1.0;
        if (o.two_sided) hi = o.U;
        else
            while (o.seg_adaptive(0.0, hi) < rm) hi *= 2.0;
        double u = 0.5 * (lo + hi);
        for (int it = 0; it < 200; ++it) {
            double f = o.seg_adaptive(0.0, u) - rm;
            if (f > 0.0) hi = u; else lo = u;
            double un = u - f / o.drdu(u);
            if (!(un > lo && un < hi)) un = 0.5 * (lo + hi);
            if (std::abs(un - u) <= 1e-16 * std::max(u, 1e-300)) {
                u = un;
                break;
            }
            u = un;
        }
        u_max = u;
    }
    return WarpProfile(tabulate_ode(spec, o, u_max, resolution));
}

WarpProfile build_profile_to_area_radius(const ManifoldSpec& spec, double s_max, int resolution)
{
    validate_spec(spec);
    check_resolution(resolution);
    if (!is_ode_family(spec.family)) return build_profile(spec, radial_coordinate(spec, s_max), resolution);
    OdeMap o = make_ode(spec);
    if (!(s_max > o.s0)) fail(ErrorKind::InvalidParameter, "s_max>s0");
    if (s_max >= o.s1) fail(ErrorKind::DomainExceeded, "s_max<s1");
    return WarpProfile(tabulate_ode(spec, o, o.u_of_s(s_max), resolution));
}

const ManifoldSpec& WarpProfile::spec() const { return d_->spec; }
double WarpProfile::r_max() const { return d_->r_max; }
double WarpProfile::s0() const { return d_->h.front(); }
double WarpProfile::s_max() const { return d_->h.back(); }
int WarpProfile::resolution() const { return d_->resolution; }
bool WarpProfile::closed_form() const { return d_->closed; }
const std::vector<double>& WarpProfile::r_nodes() const { return d_->r; }
const std::vector<double>& WarpProfile::h_nodes() const { return d_->h; }
const std::vector<double>& WarpProfile::h_prime_nodes() const { return d_->hp; }
const std::vector<double>& WarpProfile::h_second_nodes() const { return d_->hpp; }

double WarpProfile::h(double r) const
{
    check_r(*d_, r);
    r = std::clamp(r, 0.0, d_->r_max);
    if (d_->closed) return cf_h(d_->spec, r);
    return d_->ode.s_of_u(ode_u_of_r(*d_, r));
}

double WarpProfile::h_prime(double r) const
{
    check_r(*d_, r);
    r = std::clamp(r, 0.0, d_->r_max);
    if (d_->closed) return cf_hp(d_->spec, r);
    return d_->ode.hp_of_u(ode_u_of_r(*d_, r));
}

double WarpProfile::h_second(double r) const
{
    check_r(*d_, r);
    r = std::clamp(r, 0.0, d_->r_max);
    if (d_->closed) return cf_hpp(d_->spec, r);
    double s = d_->ode.s_of_u(ode_u_of_r(*d_, r));
    return s * ode_second_ratio(d_->spec, s);
}

double WarpProfile::quotient(double r) const
{
    check_r(*d_, r);
    r = std::clamp(r, 0.0, d_->r_max);
    if (d_->closed) return cf_h(d_->spec, r) / cf_hp(d_->spec, r);
    double u = ode_u_of_r(*d_, r);
    return d_->ode.s_of_u(u) / d_->ode.hp_of_u(u);
}

double WarpProfile::radial_coordinate(double s) const
{
    const auto& d = *d_;
    if (d.closed) {
        if (s < 0.0 || s > d.h.back() * (1.0 + 1e-12)) fail(ErrorKind::OutOfDomain, "s outside the profile");
        return std::min(cf_inverse(d.spec, std::min(s, d.h.back()), d.r_max), d.r_max);
    }
    if (s < d.ode.s0 || s > d.h.back() * (1.0 + 1e-12)) fail(ErrorKind::OutOfDomain, "s outside the profile");
    double u = std::min(d.ode.u_of_s(s), d.u.back());
    int N = static_cast<int>(d.u.size());
    int j = static_cast<int>(std::upper_bound(d.u.begin(), d.u.end(), u) - d.u.begin()) - 1;
    j = std::clamp(j, 0, N - 1);
    return d.r[j] + d.ode.seg(d.u[j], u);
}

std::optional<bool> WarpProfile::odd_extension() const
{
    const auto& s = d_->spec;
    auto even_integer = [](double p) { return p == std::floor(p) && std::fmod(p, 2.0) == 0.0; };
    switch (s.family) {
    case Family::SpaceForm:
    case Family::ArctanCylinder:
    case Family::LogFactor: return true;
    case Family::PowerPerturbed:
    case Family::RationalDecayCylinder: return even_integer(s.p);
    default: return std::nullopt;
    }
}

} // namespace warplab
