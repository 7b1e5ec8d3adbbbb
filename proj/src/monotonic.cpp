#include "warplab/monotonic.hpp"

#include "warplab/errors.hpp"
#include "warplab/quadrature.hpp"
#include "warplab/regions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace warplab {

const char* to_string(TraceKind k) { return k == TraceKind::V1 ? "V1" : "V2"; }

const char* to_string(GrowthModel m) { return m == GrowthModel::Polynomial ? "Polynomial" : "Exponential"; }

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Truncated {
    double vol = 0.0;
    double int_h = 0.0;
    double int_hprime = 0.0;
};

Truncated truncated_moments(const SubmanifoldMesh& mesh, const WarpProfile& p, double r)
{
    try {
        GeometricMoments g = moments(truncate(mesh, p, r), p);
        return {g.vol, g.int_h, g.int_hprime};
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::EmptyResult) return {};
        throw;
    }
}

// Evaluates every grid point; exceptions are rethrown after the parallel region.
std::vector<Truncated> truncated_trace(const SubmanifoldMesh& mesh, const WarpProfile& p,
                                       const std::vector<double>& r_grid)
{
    std::vector<Truncated> out(r_grid.size());
    std::vector<std::optional<Error>> errs(r_grid.size());
    const int N = static_cast<int>(r_grid.size());
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < N; ++i) {
        try {
            out[i] = truncated_moments(mesh, p, r_grid[i]);
        } catch (const Error& e) {
            errs[i] = e;
        }
    }
    for (auto& e : errs)
        if (e) throw *e;
    return out;
}

void require(bool ok, const std::string& what)
{
    if (!ok) fail(ErrorKind::PreconditionUnmet, what);
}

bool quotient_nondecreasing(const WarpProfile& p, double lo, double hi)
{
    if (!(hi > lo)) return quotient_derivative_sign(p, lo) >= 0;
    const double slack = 1e-8 * (hi - lo);
    for (const auto& iv : quotient_monotonicity(p, lo, hi))
        if (iv.sign < 0 && iv.hi - iv.lo > slack) return false;
    return true;
}

void check_hypotheses(const SubmanifoldMesh& mesh, const WarpProfile& p, const GeometricMoments& g, double alpha,
                      double r_hi)
{
    require(alpha >= 0.0, "alpha>=0");
    const double eps = 1e-12 * std::max(1.0, g.max_H * mesh.k);
    require(alpha + eps >= mesh.k * g.max_H || g.min_H_dot >= -1e-12,
            "alpha>=k max|H| or <H, grad r> >= 0 on Sigma");
    double lo = std::max(g.r_min, 1e-9 * p.r_max());
    require(quotient_nondecreasing(p, lo, std::max(lo, r_hi)), "h/h' nondecreasing on the traced range");
}

MonotoneTrace trace(const SubmanifoldMesh& mesh, const WarpProfile& p, double alpha,
                    const std::vector<double>& r_grid, const Tolerances& tol, TraceKind kind)
{
    if (r_grid.empty()) fail(ErrorKind::InvalidParameter, "r_grid must not be empty");
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
        if (!(r_grid[i] > 0.0) || r_grid[i] > p.r_max())
            fail(ErrorKind::OutOfDomain, "r_grid inside (0, r_max]");
        if (i > 0 && !(r_grid[i] > r_grid[i - 1])) fail(ErrorKind::InvalidParameter, "r_grid increasing");
    }
    GeometricMoments g = moments(mesh, p);
    check_hypotheses(mesh, p, g, alpha, r_grid.back());
    // an outer boundary at r_hi breaks the identity behind the formula
    if (!mesh.closed) require(r_grid.back() <= mesh.r_hi * (1.0 + 1e-12), "r <= outer boundary radius of Sigma");

    MonotoneTrace t;
    t.kind = kind;
    t.alpha = alpha;
    t.r_values = r_grid;
    auto tr = truncated_trace(mesh, p, r_grid);
    const int k = mesh.k;
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
        double r = r_grid[i];
        double w = kind == TraceKind::V1 ? tr[i].int_h : tr[i].int_hprime;
        t.V_values.push_back(std::exp(alpha * r) / ipow(p.h(r), k) * w);
        t.volumes.push_back(tr[i].vol);
        if (i > 0 && t.V_values[i] < t.V_values[i - 1] * (1.0 - tol.mono_tol)) t.violations.push_back(i);
    }
    return t;
}

struct Line {
    double slope = 0.0;
    double intercept = 0.0;
    double rms = 0.0;
};

Line least_squares(const std::vector<double>& x, const std::vector<double>& y)
{
    const double N = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= N;
    my /= N;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    Line l;
    l.slope = sxy / sxx;
    l.intercept = my - l.slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double e = y[i] - (l.intercept + l.slope * x[i]);
        ss += e * e;
    }
    l.rms = std::sqrt(ss / N);
    return l;
}

} // namespace

double minimal_alpha(const SubmanifoldMesh& mesh, const WarpProfile& p) { return mesh.k * moments(mesh, p).max_H; }

std::vector<double> volume_trace(const SubmanifoldMesh& mesh, const WarpProfile& p, const std::vector<double>& r_grid)
{
    std::vector<double> out;
    for (const auto& t : truncated_trace(mesh, p, r_grid)) out.push_back(t.vol);
    return out;
}

MonotoneTrace trace_V1(const SubmanifoldMesh& mesh, const WarpProfile& p, double alpha,
                       const std::vector<double>& r_grid, const Tolerances& tol)
{
    return trace(mesh, p, alpha, r_grid, tol, TraceKind::V1);
}

MonotoneTrace trace_V2(const SubmanifoldMesh& mesh, const WarpProfile& p, double alpha,
                       const std::vector<double>& r_grid, const Tolerances& tol)
{
    return trace(mesh, p, alpha, r_grid, tol, TraceKind::V2);
}

LowerBoundReport lower_bounds(const SubmanifoldMesh& mesh, const WarpProfile& p, double alpha, double r0, double r,
                              const Tolerances& tol)
{
    require(r > r0, "r>r0");
    require(r0 > 0.0 && r <= p.r_max(), "0<r0<r<=r_max");
    GeometricMoments g = moments(mesh, p);
    check_hypotheses(mesh, p, g, alpha, r);
    if (!mesh.closed) require(r <= mesh.r_hi * (1.0 + 1e-12), "r <= outer boundary radius of Sigma");

    const int k = mesh.k;
    Truncated a = truncated_moments(mesh, p, r0);
    Truncated b = truncated_moments(mesh, p, r);
    LowerBoundReport rep;
    rep.r0 = r0;
    rep.r = r;
    rep.alpha = alpha;
    rep.volume = b.vol;
    rep.C1 = std::exp(alpha * r0) / ipow(p.h(r0), k) * a.int_h;
    rep.C2 = std::exp(alpha * r0) / ipow(p.h(r0), k) * a.int_hprime;

    // h' and h'' over every radius Sigma cap B_r reaches
    const double lo = g.r_min;
    double B = 0.0;
    bool convex = true;
    constexpr int kSamples = 2048;
    for (int i = 0; i <= kSamples; ++i) {
        double s = lo + (r - lo) * i / kSamples;
        B = std::max(B, p.h_prime(s));
        if (!(p.h_second(s) > 0.0)) convex = false;
    }
    const auto& rn = p.r_nodes();
    const auto& hp = p.h_prime_nodes();
    for (std::size_t i = 0; i < rn.size(); ++i)
        if (rn[i] >= lo && rn[i] <= r) B = std::max(B, hp[i]);
    rep.B = B;

    const double decay = std::exp(-alpha * r);
    const double hr = p.h(r);
    auto push = [&](const char* name, double value, double measured, bool applicable) {
        LowerBound lb{name, value, measured, applicable, false};
        lb.pass = applicable && measured >= value * (1.0 - tol.mono_tol);
        rep.bounds.push_back(lb);
    };
    push("v1_bound", rep.C1 * decay * ipow(hr, k - 1), b.vol, true);
    push("v2_bound", rep.C2 / B * decay * ipow(hr, k), b.vol, B > 0.0);
    push("v2_bound_convex", convex ? rep.C2 / p.h_prime(r) * decay * ipow(hr, k) : kNaN, b.vol, convex);
    const bool through_pole = mesh.r_lo == 0.0 && p.h(0.0) == 0.0 && std::abs(p.h_prime(0.0) - 1.0) < 1e-9;
    push("unit_ball", through_pole ? unit_ball_volume(k) * decay * ipow(hr, k) : kNaN, b.int_hprime, through_pole);
    return rep;
}

GrowthFit growth_classify(const std::vector<double>& r_values, const std::vector<double>& volumes,
                          const WarpProfile& p, GrowthModel model, double reference)
{
    if (r_values.size() != volumes.size()) fail(ErrorKind::InvalidParameter, "trace arrays differ in length");
    if (r_values.size() < 4) fail(ErrorKind::WindowTooSmall, "at least 4 trace points");
    std::size_t start = 0;
    if (model == GrowthModel::Polynomial) {
        double h_end = p.h(r_values.back());
        bool found = false;
        for (std::size_t i = 0; i < r_values.size(); ++i) {
            if (p.h(r_values[i]) <= h_end / 10.0) {
                start = i;
                found = true;
            }
        }
        if (!found) fail(ErrorKind::WindowTooSmall, "trace must span the last decade of h");
    } else {
        double mid = 0.5 * (r_values.front() + r_values.back());
        while (r_values[start] < mid) ++start;
    }
    std::vector<double> x, y;
    for (std::size_t i = start; i < r_values.size(); ++i) {
        if (!(volumes[i] > 0.0)) continue;
        double hr = p.h(r_values[i]);
        if (model == GrowthModel::Polynomial && !(hr > 0.0)) continue;
        x.push_back(model == GrowthModel::Polynomial ? std::log(hr) : r_values[i]);
        y.push_back(std::log(volumes[i]));
    }
    if (x.size() < 4) fail(ErrorKind::WindowTooSmall, "at least 4 samples with positive volume in the fit window");
    Line l = least_squares(x, y);
    GrowthFit f;
    f.model = model;
    f.value = l.slope;
    f.window_lo = r_values[start];
    f.window_hi = r_values.back();
    f.residual = l.rms;
    f.reference = reference;
    f.samples = x.size();
    f.matches = std::abs(f.value - reference) <= 0.1 * std::abs(reference);
    return f;
}

namespace {

// int_s^inf (1/sqrt(Q) - 1/sqrt(1 + kappa t^2)) dt for SS with c = -kappa < 0, via t = s/u
double ss_tail(const ManifoldSpec& spec, double s)
{
    const double kappa = -spec.c, m = spec.m;
    const int n = spec.n;
    auto f = [&](double u) {
        if (u <= 0.0) return 0.0;
        double t = s / u;
        double P = 1.0 + kappa * t * t;
        double d = m * ipow(t, 2 - n);
        double Q = P - d;
        double sp = std::sqrt(P), sq = std::sqrt(Q);
        return d / (sp * sq * (sp + sq)) * s / (u * u);
    };
    return integrate_adaptive(f, 0.0, 1.0);
}

// int_s^inf (1/sqrt(Q) - 1) dt for RN, via t = s/u
double rn_tail(const ManifoldSpec& spec, double s)
{
    const int k = spec.n - 2;
    auto f = [&](double u) {
        if (u <= 0.0) return 0.0;
        double t = s / u;
        double x = ipow(t, -k);
        double d = x * (spec.m - spec.q * spec.q * x);  // 1 - Q
        double sq = std::sqrt(1.0 - d);
        return d / (sq * (1.0 + sq)) * s / (u * u);
    };
    return integrate_adaptive(f, 0.0, 1.0);
}

} // namespace

AsymptoticReport asymptotic_check(const WarpProfile& p, int samples)
{
    const ManifoldSpec& spec = p.spec();
    AsymptoticReport rep;
    rep.family = spec.family;
    if (spec.family == Family::SpaceForm) {
        rep.variable = "exact";
        rep.expected_order = rep.fitted_order = kNaN;
        rep.window_lo = p.h(0.0);
        rep.window_hi = p.s_max();
        const auto& rn = p.r_nodes();
        const auto& hn = p.h_nodes();
        const double c = spec.c, sc = std::sqrt(std::abs(c));
        for (std::size_t i = 0; i < rn.size(); ++i) {
            double exact = c == 0.0 ? rn[i] : c < 0.0 ? std::sinh(sc * rn[i]) / sc : std::sin(sc * rn[i]) / sc;
            rep.max_abs_residual = std::max(rep.max_abs_residual, std::abs(hn[i] - exact));
        }
        rep.samples = rn.size();
        return rep;
    }
    const bool ss = spec.family == Family::DeSitterSchwarzschild && spec.c < 0.0;
    const bool rn = spec.family == Family::ReissnerNordstrom && spec.n >= 4;
    if (!ss && !rn) fail(ErrorKind::WrongFamily, "asymptotics need SS with c<0, RN with n>=4, or a space form");
    if (samples < 8) fail(ErrorKind::WindowTooSmall, "at least 8 samples");
    const int n = spec.n;
    const double s0 = p.s0(), s_hi = p.s_max();
    if (s_hi < 50.0 * s0 * (1.0 - 1e-12)) fail(ErrorKind::WindowTooSmall, "h(r_max)>=50 s0");
    const double s_lo = s_hi / 10.0;
    rep.window_lo = s_lo;
    rep.window_hi = s_hi;

    const double kappa = ss ? -spec.c : 0.0, sk = std::sqrt(kappa);
    auto r_normalized = [&](double s) {
        return ss ? std::asinh(sk * s) / sk - ss_tail(spec, s) : s - rn_tail(spec, s);
    };
    rep.shift = r_normalized(s_hi) - p.radial_coordinate(s_hi);
    rep.variable = ss ? "sinh" : "r";
    rep.expected_order = ss ? -(n + 1.0) : 5.0 - 2.0 * n;
    rep.expected_coefficient = ss ? spec.m / (2.0 * n) * std::pow(kappa, 0.5 * (n - 3)) : spec.m / (2.0 * (n - 3));
    const double lead_power = ss ? 1.0 - n : 3.0 - n;

    std::vector<double> lx, ly, cx, cy;
    for (int i = 0; i < samples; ++i) {
        double s = s_lo * std::pow(10.0, static_cast<double>(i) / (samples - 1));
        double rL = p.radial_coordinate(s) + rep.shift;
        double base = ss ? std::sinh(sk * rL) : rL;  // expansion variable
        double leading = ss ? base / sk : base;
        double correction = s - leading;
        double residual = correction - rep.expected_coefficient * std::pow(base, lead_power);
        rep.max_abs_residual = std::max(rep.max_abs_residual, std::abs(residual));
        if (residual != 0.0) {
            lx.push_back(std::log(base));
            ly.push_back(std::log(std::abs(residual)));
        }
        cx.push_back(std::pow(base, rep.expected_order - lead_power));
        cy.push_back(correction * std::pow(base, -lead_power));
    }
    if (lx.size() < 8) fail(ErrorKind::WindowTooSmall, "residual vanishes in the fit window");
    Line order = least_squares(lx, ly);
    rep.fitted_order = order.slope;
    rep.fit_rms = order.rms;
    rep.fitted_coefficient = least_squares(cx, cy).intercept;
    rep.samples = static_cast<std::size_t>(samples);
    return rep;
}

} // namespace warplab
