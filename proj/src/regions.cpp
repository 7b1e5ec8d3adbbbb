#include "warplab/regions.hpp"

#include "warplab/errors.hpp"

#include <algorithm>
#include <cmath>

namespace warplab {

namespace {

double ss_m(const ManifoldSpec& spec)
{
    if (spec.family == Family::DeSitterSchwarzschild) return spec.m;
    if (spec.family == Family::SpaceForm) return 0.0;
    fail(ErrorKind::WrongFamily, "expected DeSitterSchwarzschild (or SpaceForm as m=0)");
}

double bisect_root(const std::function<double(double)>& f, double lo, double hi, double tol)
{
    double flo = f(lo);
    for (int it = 0; it < 400 && hi - lo > tol * std::max(1.0, std::abs(lo)); ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

int sgn(double x) { return (x > 0.0) - (x < 0.0); }

} // namespace

double horizon_function(const ManifoldSpec& spec, double d)
{
    const int k = spec.n - 2;
    if (spec.family == Family::ReissnerNordstrom)
        return 1.0 - spec.m * ipow(d, -k) + spec.q * spec.q * ipow(d, -2 * k);
    double m = ss_m(spec);
    return 1.0 - m * ipow(d, -k) - spec.c * d * d;
}

SSThresholds ss_thresholds(const ManifoldSpec& spec)
{
    if (spec.family != Family::DeSitterSchwarzschild)
        fail(ErrorKind::WrongFamily, "SS thresholds need DeSitterSchwarzschild");
    DomainEndpoints d = area_radius_roots(spec);
    SSThresholds t;
    const int n = spec.n;
    t.s0 = d.s0;
    t.s1 = d.s1;
    t.quotient = std::pow(spec.m * n / 2.0, 1.0 / (n - 2));
    if (spec.c > 0.0) t.ricci = std::pow(spec.m * (n - 2) / (2.0 * spec.c), 1.0 / n);
    return t;
}

RNThresholds rn_thresholds(const ManifoldSpec& spec)
{
    if (spec.family != Family::ReissnerNordstrom)
        fail(ErrorKind::WrongFamily, "RN thresholds need ReissnerNordstrom");
    validate_spec(spec);
    const double m = spec.m, q = spec.q, n = spec.n;
    const int k = spec.n - 2;
    RNThresholds t;
    // stable quadratic roots: small root as 2C/(-B + sqrt(D))
    double dq = std::sqrt(m * m - 4.0 * q * q);
    t.beta1 = 2.0 / (m + dq);
    t.beta2 = (m + dq) / (2.0 * q * q);
    double half_b = m * n / 2.0;
    double dp = std::sqrt(half_b * half_b - 4.0 * (n - 1.0) * q * q);
    t.alpha1 = 2.0 / (half_b + dp);
    t.alpha2 = (half_b + dp) / (2.0 * (n - 1.0) * q * q);
    if (!(t.alpha1 < t.beta1 && t.beta1 < t.alpha2 && t.alpha2 < t.beta2))
        fail(ErrorKind::OrderingViolation, "alpha1<beta1<alpha2<beta2");
    t.s0 = std::pow(t.beta1, -1.0 / k);
    t.s2 = std::pow(t.alpha1, -1.0 / k);
    t.s3 = std::pow(t.alpha2, -1.0 / k);
    if (!(t.s3 < t.s0 && t.s0 < t.s2)) fail(ErrorKind::OrderingViolation, "s3<s0<s2");
    return t;
}

double quotient_derivative_numerator(const WarpProfile& p, double r)
{
    const auto& spec = p.spec();
    const int n = spec.n, k = n - 2;
    if (spec.family == Family::DeSitterSchwarzschild)
        return 1.0 - spec.m * n / 2.0 * ipow(p.h(r), -k);
    if (spec.family == Family::ReissnerNordstrom) {
        double u = ipow(p.h(r), -k);
        return 1.0 - spec.m * n / 2.0 * u + (n - 1.0) * spec.q * spec.q * u * u;
    }
    double hp = p.h_prime(r);
    return hp * hp - p.h(r) * p.h_second(r);
}

int quotient_derivative_sign(const WarpProfile& p, double r)
{
    return sgn(quotient_derivative_numerator(p, r));
}

double u_derivative(const WarpProfile& p, double r)
{
    const auto& spec = p.spec();
    if (is_ode_family(spec.family)) {
        double s = p.h(r);
        double f = ode_rhs(spec, s);
        if (f <= 0.0) fail(ErrorKind::DegenerateMetric, "h'=0 at the horizon");
        return 2.0 - s * s * ode_second_ratio(spec, s) / f;
    }
    double hp = p.h_prime(r);
    return 2.0 - p.h(r) * p.h_second(r) / (hp * hp);
}

std::vector<SignInterval> sign_intervals(const std::function<double(double)>& f, double lo, double hi,
                                         int samples, double tol)
{
    if (!(hi > lo)) fail(ErrorKind::InvalidParameter, "empty interval");
    std::vector<double> x(samples + 1), y(samples + 1);
    for (int i = 0; i <= samples; ++i) {
        x[i] = i == samples ? hi : lo + (hi - lo) * i / samples;
        y[i] = f(x[i]);
    }
    std::vector<SignInterval> out;
    double start = lo;
    int cur = 0;
    for (int i = 0; i <= samples; ++i) {
        int s = sgn(y[i]);
        if (s == 0) continue;
        if (cur == 0) {
            cur = s;
            continue;
        }
        if (s != cur) {
            // previous sample with nonzero sign bounds the root
            int j = i - 1;
            while (j > 0 && sgn(y[j]) == 0) --j;
            double root = bisect_root(f, x[j], x[i], tol);
            out.push_back({start, root, cur});
            start = root;
            cur = s;
        }
    }
    out.push_back({start, hi, cur});
    return out;
}

std::vector<SignInterval> u_monotonicity(const WarpProfile& p, double r_lo, double r_hi)
{
    return sign_intervals([&](double r) { return u_derivative(p, r); }, r_lo, r_hi);
}

std::vector<SignInterval> quotient_monotonicity(const WarpProfile& p, double r_lo, double r_hi)
{
    return sign_intervals([&](double r) { return quotient_derivative_numerator(p, r); }, r_lo, r_hi);
}

std::vector<double> power_perturbed_u_roots(const ManifoldSpec& spec)
{
    if (spec.family != Family::PowerPerturbed) fail(ErrorKind::WrongFamily, "expected PowerPerturbed");
    const double B = spec.B, p = spec.p;
    const double a2 = B * B * (p + 1.0) * (p + 2.0);
    const double a1 = -B * (p + 1.0) * (p - 4.0);
    const double a0 = 2.0;
    std::vector<double> out;
    if (a2 == 0.0) return out;
    double disc = a1 * a1 - 4.0 * a2 * a0;
    if (disc < 0.0) return out;
    double sq = std::sqrt(disc);
    double qv = -0.5 * (a1 + (a1 >= 0.0 ? sq : -sq));
    std::vector<double> ts{qv / a2, a0 / qv};
    std::sort(ts.begin(), ts.end());
    DomainEndpoints dom = area_radius_roots(spec);
    for (double t : ts) {
        if (!(t > 0.0)) continue;
        double r = std::pow(t, 1.0 / p);
        if (r < dom.r_end) out.push_back(r);
    }
    return out;
}

double c1_constant(const ManifoldSpec& spec, double d, int k)
{
    double m = ss_m(spec);
    const int n = spec.n;
    if (k < 2 || k > n) fail(ErrorKind::InvalidParameter, "2<=k<=n");
    double Q = horizon_function(spec, d);
    if (!(Q > 0.0) || !(d > 0.0)) fail(ErrorKind::OutOfDomain, "d outside (s0, s1)");
    double denom = (1.0 - m * n / 2.0 * ipow(d, 2 - n)) + (k - 1.0) * Q;
    return d * std::sqrt(Q) / denom;
}

double c1_onset(const ManifoldSpec& spec, int k)
{
    SSThresholds t = ss_thresholds(spec);
    const int n = spec.n;
    auto denom = [&](double d) {
        return (1.0 - spec.m * n / 2.0 * ipow(d, 2 - n)) + (k - 1.0) * horizon_function(spec, d);
    };
    double hi = std::min(t.quotient, t.s1);
    if (!(denom(t.s0) < 0.0 && denom(hi) > 0.0))
        fail(ErrorKind::ConstantInapplicable, "C1 denominator has no sign change on (s0, threshold)");
    return bisect_root(denom, t.s0, hi, 1e-15);
}

double c2_constant(const ManifoldSpec& spec, double d)
{
    if (spec.family != Family::ReissnerNordstrom) fail(ErrorKind::WrongFamily, "C2 needs ReissnerNordstrom");
    const int k = spec.n - 2;
    double Q = horizon_function(spec, d);
    if (!(Q > 0.0)) fail(ErrorKind::OutOfDomain, "d outside (s0, inf)");
    double x = ipow(d, -k);
    return k / 2.0 * x * (spec.m - 2.0 * spec.q * spec.q * x) / Q;
}

std::optional<double> c2_crossing(const ManifoldSpec& spec, int k, double s_hi)
{
    RNThresholds t = rn_thresholds(spec);
    auto f = [&](double d) { return c2_constant(spec, d) - k; };
    // C2 blows up at s0 and decays to 0: scan from just above s0
    double lo = t.s0 * (1.0 + 1e-9);
    auto iv = sign_intervals(f, lo, s_hi);
    if (iv.size() < 2) return std::nullopt;
    return iv.front().hi;
}

RegionReport region_report(const WarpProfile& p, int k)
{
    const auto& spec = p.spec();
    RegionReport rep;
    rep.spec = spec;
    rep.k = k;
    double r_lo = p.r_max() * 1e-6;
    double r_hi = p.r_max();
    if (spec.family == Family::DeSitterSchwarzschild) {
        SSThresholds t = ss_thresholds(spec);
        rep.thresholds = {{"s0", t.s0}, {"s1", t.s1}, {"quotient_threshold", t.quotient}};
        if (t.ricci) rep.thresholds.push_back({"ricci_threshold", *t.ricci});
        if (t.quotient < t.s1 && t.quotient > t.s0) {
            rep.constants.push_back({"c1_onset", c1_onset(spec, k)});
            double T = t.quotient;
            rep.constants.push_back({"c1_at_threshold", c1_constant(spec, T, k)});
            rep.constants.push_back({"c1_at_threshold_remark", 1.0 / (k - 1.0)});
        }
    } else if (spec.family == Family::ReissnerNordstrom) {
        RNThresholds t = rn_thresholds(spec);
        rep.thresholds = {{"s0", t.s0},         {"s2", t.s2},         {"s3", t.s3},
                          {"alpha1", t.alpha1}, {"alpha2", t.alpha2}, {"beta1", t.beta1},
                          {"beta2", t.beta2}};
        if (auto x = c2_crossing(spec, k, p.s_max())) rep.constants.push_back({"c2_equals_k", *x});
    } else if (spec.family == Family::PowerPerturbed) {
        auto roots = power_perturbed_u_roots(spec);
        for (std::size_t i = 0; i < roots.size(); ++i)
            rep.thresholds.push_back({"u_root_" + std::to_string(i), roots[i]});
    }
    rep.quotient_intervals = quotient_monotonicity(p, r_lo, r_hi);
    rep.u_intervals = u_monotonicity(p, r_lo, r_hi);
    return rep;
}

} // namespace warplab
