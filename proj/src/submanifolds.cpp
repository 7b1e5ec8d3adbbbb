#include "warplab/submanifolds.hpp"

#include "warplab/errors.hpp"
#include "warplab/kernels.hpp"
#include "warplab/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace warplab {

namespace {

constexpr double kPi = std::numbers::pi;

int per_axis_for(int resolution, int dims)
{
    if (resolution < 64) fail(ErrorKind::InvalidParameter, "resolution>=64");
    return std::max(4, static_cast<int>(std::lround(std::pow(double(resolution), 1.0 / dims))));
}

void require_sphere_fiber(const WarpProfile& p)
{
    if (p.spec().fiber != Fiber::Sphere)
        fail(ErrorKind::UnsupportedFiber, "submanifold meshes need the round sphere fiber");
}

void require_r(const WarpProfile& p, double r, const char* what)
{
    if (!(r >= 0.0) || r > p.r_max() * (1.0 + 1e-12))
        fail(ErrorKind::OutOfDomain, std::string(what) + " outside [0, r_max] of the profile");
}

SubmanifoldMesh base(const WarpProfile& p, SubmanifoldFamily f, int k, int chart_dim, int resolution)
{
    SubmanifoldMesh m;
    m.family = std::move(f);
    m.spec = p.spec();
    m.k = k;
    m.chart_dim = chart_dim;
    m.resolution = resolution;
    return m;
}

void reserve(SubmanifoldMesh& m, std::size_t n)
{
    m.r.resize(n);
    m.angles.resize(n * m.chart_dim);
    m.weight.resize(n);
    m.H_norm.resize(n);
    m.H_dot_grad_r.resize(n);
    m.grad_r_sq.resize(n);
    m.cell_extent.assign(n, 0.0);
}

// radial slice at coordinate r with precomputed h, h'
SubmanifoldMesh sphere_mesh(const WarpProfile& p, SubmanifoldFamily f, double r, double h, double hp,
                            int resolution)
{
    const int d = p.n() - 1;
    SubmanifoldMesh m = base(p, std::move(f), d, d, resolution);
    SphereQuadrature q = sphere_quadrature(d, per_axis_for(resolution, d));
    reserve(m, q.size());
    const double hd = ipow(h, d);
    for (std::size_t i = 0; i < q.size(); ++i) {
        m.r[i] = r;
        for (int a = 0; a < d; ++a) m.angles[i * d + a] = q.angles[i * d + a];
        m.weight[i] = hd * q.weights[i];
        m.H_norm[i] = hp / h;
        m.H_dot_grad_r[i] = -hp / h;
        m.grad_r_sq[i] = 0.0;
    }
    m.r_lo = m.r_hi = r;
    m.closed = true;
    return m;
}

} // namespace

std::string family_name(const SubmanifoldFamily& f)
{
    struct V {
        std::string operator()(const Slice&) const { return "Slice"; }
        std::string operator()(const RadialCone&) const { return "RadialCone"; }
        std::string operator()(const GeodesicSphere&) const { return "GeodesicSphere"; }
        std::string operator()(const RadialGraph&) const { return "RadialGraph"; }
        std::string operator()(const RightCone3D&) const { return "RightCone3D"; }
    };
    return std::visit(V{}, f);
}

double RadialGraph::phi(double th, double ph) const
{
    if (custom) return custom(th, ph);
    const double ct = std::cos(th), st = std::sin(th);
    switch (mode) {
    case GraphMode::Constant: return r0;
    case GraphMode::Zonal: return r0 + eps * ct;
    case GraphMode::Tilted: return r0 + eps * st * std::cos(ph);
    case GraphMode::Theta: return r0 + eps * th;
    case GraphMode::Random: {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> U(-1.0, 1.0);
        const std::array<double, 8> basis{ct,
                                          st * std::cos(ph),
                                          st * std::sin(ph),
                                          0.5 * (3.0 * ct * ct - 1.0),
                                          st * ct * std::cos(ph),
                                          st * ct * std::sin(ph),
                                          st * st * std::cos(2.0 * ph),
                                          st * st * std::sin(2.0 * ph)};
        double v = 0.0;
        for (double b : basis) v += U(rng) * b;
        return r0 + eps * v / 8.0;
    }
    }
    return r0;
}

SubmanifoldMesh mesh_slice(const WarpProfile& p, double s, int resolution)
{
    require_sphere_fiber(p);
    double r = p.radial_coordinate(s);
    double h = p.h(r), hp = p.h_prime(r);
    if (!(h > 0.0)) fail(ErrorKind::DegenerateMetric, "slice at h=0");
    return sphere_mesh(p, Slice{s}, r, h, hp, resolution);
}

SubmanifoldMesh mesh_geodesic_sphere(const WarpProfile& p, double radius, int resolution)
{
    require_sphere_fiber(p);
    const auto& spec = p.spec();
    if (spec.family != Family::SpaceForm) fail(ErrorKind::WrongFamily, "geodesic spheres need a space form");
    if (!(radius > 0.0)) fail(ErrorKind::InvalidParameter, "radius>0");
    require_r(p, radius, "geodesic sphere radius");
    double h, hp;
    if (spec.c == 0.0) {
        h = radius;
        hp = 1.0;
    } else if (spec.c < 0.0) {
        double k = std::sqrt(-spec.c);
        h = std::sinh(k * radius) / k;
        hp = std::cosh(k * radius);
    } else {
        double k = std::sqrt(spec.c);
        h = std::sin(k * radius) / k;
        hp = std::cos(k * radius);
    }
    return sphere_mesh(p, GeodesicSphere{radius}, radius, h, hp, resolution);
}

SubmanifoldMesh mesh_cone(const WarpProfile& p, const RadialCone& cone, int resolution)
{
    require_sphere_fiber(p);
    const int n = p.n(), k = cone.k;
    if (k < 2 || k > n - 1) fail(ErrorKind::InvalidParameter, "2<=k<=n-1 for cones");
    if (!(cone.cap_angle > 0.0 && cone.cap_angle < kPi)) fail(ErrorKind::InvalidParameter, "0<cap_angle<pi");
    if (!(cone.r_lo >= 0.0 && cone.r_hi > cone.r_lo)) fail(ErrorKind::InvalidParameter, "0<=r_lo<r_hi");
    require_r(p, cone.r_lo, "r_lo");
    require_r(p, cone.r_hi, "r_hi");
    const double h_lo = p.h(cone.r_lo);
    if (h_lo > 0.0 && cone.r_lo <= 0.0)
        fail(ErrorKind::OutOfDomain, "r_lo>0 where h(0)>0 (h/h' is unbounded at the horizon)");

    const int per_axis = per_axis_for(resolution, k);
    GaussRule g = gauss_legendre(per_axis);
    SphereQuadrature fq = sphere_quadrature(k - 1, per_axis);
    const int d = k - 1;
    SubmanifoldMesh m = base(p, cone, k, d, resolution);
    reserve(m, g.nodes.size() * fq.size());
    const double sa = std::sin(cone.cap_angle);
    const double cot = std::abs(std::cos(cone.cap_angle) / sa);
    const double half = 0.5 * (cone.r_hi - cone.r_lo), mid = 0.5 * (cone.r_hi + cone.r_lo);
    const double sad = ipow(sa, d);
    const int nr = static_cast<int>(g.nodes.size());
    const std::size_t nf = fq.size();

#pragma omp parallel for schedule(static)
    for (int i = 0; i < nr; ++i) {
        double r = mid + half * g.nodes[i];
        double h = p.h(r);
        double wr = half * g.weights[i] * ipow(h, d) * sad;
        double Hn = (k - 1.0) * cot / (k * h);
        for (std::size_t j = 0; j < nf; ++j) {
            std::size_t idx = static_cast<std::size_t>(i) * nf + j;
            m.r[idx] = r;
            for (int a = 0; a < d; ++a) m.angles[idx * d + a] = fq.angles[j * d + a];
            m.weight[idx] = wr * fq.weights[j];
            m.H_norm[idx] = Hn;
            m.H_dot_grad_r[idx] = 0.0;
            m.grad_r_sq[idx] = 1.0;
        }
    }
    auto add_boundary = [&](double r) {
        double hb = p.h(r);
        for (std::size_t j = 0; j < nf; ++j) {
            m.boundary_r.push_back(r);
            for (int a = 0; a < d; ++a) m.boundary_angles.push_back(fq.angles[j * d + a]);
            m.boundary_weight.push_back(ipow(hb, d) * sad * fq.weights[j]);
        }
    };
    if (h_lo > 0.0) add_boundary(cone.r_lo);
    add_boundary(cone.r_hi);
    m.r_lo = cone.r_lo;
    m.r_hi = cone.r_hi;
    m.closed = false;
    return m;
}

SubmanifoldMesh mesh_right_cone3d(const WarpProfile& p, const RightCone3D& cone, int resolution)
{
    const auto& spec = p.spec();
    if (spec.family != Family::SpaceForm || spec.c != 0.0 || spec.n != 3)
        fail(ErrorKind::WrongFamily, "RightCone3D lives in flat R^3");
    if (!(cone.alpha > 0.0 && cone.alpha < 0.5 * kPi)) fail(ErrorKind::InvalidParameter, "0<alpha<pi/2");
    if (!(cone.R > 0.0)) fail(ErrorKind::InvalidParameter, "R>0");
    require_r(p, cone.R, "R");

    const int per_axis = per_axis_for(resolution, 2);
    GaussRule g = gauss_legendre(per_axis);
    const int nt = 2 * per_axis;
    const double dt = 2.0 * kPi / nt;
    const double sa = std::sin(cone.alpha), ca = std::cos(cone.alpha);
    SubmanifoldMesh m = base(p, cone, 2, 1, resolution);
    reserve(m, static_cast<std::size_t>(per_axis) * nt);

    using V3 = std::array<double, 3>;
    auto dot = [](const V3& a, const V3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; };
    auto cross = [](const V3& a, const V3& b) {
        return V3{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
    };
    // embedding F(r, t) = r (sin a cos t, sin a sin t, cos a)
    for (int i = 0; i < per_axis; ++i) {
        double r = 0.5 * cone.R * (g.nodes[i] + 1.0);
        double wr = 0.5 * cone.R * g.weights[i];
        for (int j = 0; j < nt; ++j) {
            double t = j * dt;
            V3 x{r * sa * std::cos(t), r * sa * std::sin(t), r * ca};
            V3 Fr{sa * std::cos(t), sa * std::sin(t), ca};
            V3 Ft{-r * sa * std::sin(t), r * sa * std::cos(t), 0.0};
            V3 Frt{-sa * std::sin(t), sa * std::cos(t), 0.0};
            V3 Ftt{-r * sa * std::cos(t), -r * sa * std::sin(t), 0.0};
            V3 nrm = cross(Fr, Ft);
            double area = std::sqrt(dot(nrm, nrm));
            for (double& c : nrm) c /= area;
            double E = dot(Fr, Fr), F = dot(Fr, Ft), G = dot(Ft, Ft);
            double L = 0.0, M = dot(Frt, nrm), N = dot(Ftt, nrm);
            double Hs = (E * N - 2.0 * F * M + G * L) / (2.0 * (E * G - F * F));
            double rr = std::sqrt(dot(x, x));
            V3 xh{x[0] / rr, x[1] / rr, x[2] / rr};
            double xn = dot(xh, nrm);
            std::size_t idx = static_cast<std::size_t>(i) * nt + j;
            m.r[idx] = r;
            m.angles[idx] = t;
            m.weight[idx] = area * wr * dt;
            m.H_norm[idx] = std::abs(Hs);
            m.H_dot_grad_r[idx] = Hs * xn;
            m.grad_r_sq[idx] = 1.0 - xn * xn;
        }
    }
    for (int j = 0; j < nt; ++j) {
        double t = j * dt;
        V3 Ft{-cone.R * sa * std::sin(t), cone.R * sa * std::cos(t), 0.0};
        m.boundary_r.push_back(cone.R);
        m.boundary_angles.push_back(t);
        m.boundary_weight.push_back(std::sqrt(dot(Ft, Ft)) * dt);
    }
    m.r_lo = 0.0;
    m.r_hi = cone.R;
    m.closed = false;
    return m;
}

SubmanifoldMesh mesh_radial_graph(const WarpProfile& p, const RadialGraph& graph, int resolution)
{
    require_sphere_fiber(p);
    if (p.n() != 3) fail(ErrorKind::InvalidParameter, "radial graphs need n=3");
    const int nt = std::max(8, static_cast<int>(std::lround(std::sqrt(resolution / 2.0))));
    const int np = 2 * nt;
    const double dphi = 2.0 * kPi / np;
    GaussRule g = gauss_legendre(nt);
    std::vector<double> th(nt), wt(nt), face(nt + 1);
    for (int j = 0; j < nt; ++j) {
        th[j] = std::acos(-g.nodes[j]);
        wt[j] = g.weights[j];
    }
    face[0] = 0.0;
    face[nt] = kPi;
    for (int j = 1; j < nt; ++j) face[j] = 0.5 * (th[j - 1] + th[j]);

    std::vector<double> phi(static_cast<std::size_t>(nt) * np);
    for (int j = 0; j < nt; ++j)
        for (int l = 0; l < np; ++l) phi[j * np + l] = graph.phi(th[j], l * dphi);
    double lo = kInf, hi = -kInf;
    for (double v : phi) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (!(lo > 0.0) || hi > p.r_max()) fail(ErrorKind::OutOfDomain, "graph leaves (0, r_max]");

    auto wrap = [np](int l) { return ((l % np) + np) % np; };
    // phi on the extended theta grid j in [-1, nt] via reflection through the poles
    auto P = [&](int j, int l) {
        if (j < 0) return phi[0 * np + wrap(l + np / 2)];
        if (j >= nt) return phi[(nt - 1) * np + wrap(l + np / 2)];
        return phi[j * np + wrap(l)];
    };
    auto T = [&](int j) {
        if (j < 0) return -th[0];
        if (j >= nt) return 2.0 * kPi - th[nt - 1];
        return th[j];
    };
    std::vector<double> pt(phi.size()), pp(phi.size());
    for (int j = 0; j < nt; ++j) {
        double h1 = T(j) - T(j - 1), h2 = T(j + 1) - T(j);
        for (int l = 0; l < np; ++l) {
            pt[j * np + l] = -h2 / (h1 * (h1 + h2)) * P(j - 1, l) + (h2 - h1) / (h1 * h2) * P(j, l) +
                             h1 / (h2 * (h1 + h2)) * P(j + 1, l);
            pp[j * np + l] = (P(j, l + 1) - P(j, l - 1)) / (2.0 * dphi);
        }
    }

    SubmanifoldMesh m = base(p, graph, 2, 2, resolution);
    reserve(m, phi.size());
    const int total = nt * np;

#pragma omp parallel for schedule(static)
    for (int idx = 0; idx < total; ++idx) {
        const int j = idx / np, l = idx % np;
        const double r = phi[idx];
        const double h = p.h(r), hp = p.h_prime(r);
        const double h2 = h * h;
        const double st = std::sin(th[j]);
        const double ft0 = pt[idx], fp0 = pp[idx];
        const double G = ft0 * ft0 + fp0 * fp0 / (st * st);
        const double W = std::sqrt(1.0 + G / h2);

        auto theta_flux = [&](int ja, int jb) {  // face between rows ja < jb
            double sf = std::sin(face[jb]);
            double ft = (P(jb, l) - P(ja, l)) / (th[jb] - th[ja]);
            double fp = 0.5 * (pp[ja * np + l] + pp[jb * np + l]);
            double Wf = std::sqrt(1.0 + (ft * ft + fp * fp / (sf * sf)) / h2);
            return -sf * ft / (h2 * Wf);
        };
        auto phi_flux = [&](int la, int lb) {  // face between columns la and la+1
            double fp = (P(j, lb) - P(j, la)) / dphi;
            double ft = 0.5 * (pt[j * np + wrap(la)] + pt[j * np + wrap(lb)]);
            double Wf = std::sqrt(1.0 + (ft * ft + fp * fp / (st * st)) / h2);
            return -fp / (h2 * st * Wf);
        };
        double F_up = j < nt - 1 ? theta_flux(j, j + 1) : 0.0;
        double F_lo = j > 0 ? theta_flux(j - 1, j) : 0.0;
        double Fp_up = phi_flux(l, l + 1);
        double Fp_lo = phi_flux(l - 1, l);
        double mu = std::cos(face[j]) - std::cos(face[j + 1]);
        double dth = face[j + 1] - face[j];
        double Dh = ((F_up - F_lo) + (Fp_up - Fp_lo) * dth / dphi) / mu;
        double Dr = G * hp / (h2 * h * W * W * W) + 2.0 * hp / (h * W);
        double divN = Dr + Dh;

        m.r[idx] = r;
        m.angles[2 * idx] = th[j];
        m.angles[2 * idx + 1] = l * dphi;
        m.weight[idx] = h2 * W * wt[j] * dphi;
        m.H_norm[idx] = 0.5 * std::abs(divN);
        m.H_dot_grad_r[idx] = -divN / (2.0 * W);
        m.grad_r_sq[idx] = 1.0 - 1.0 / (W * W);
        m.cell_extent[idx] = 0.5 * (std::abs(ft0) * dth + std::abs(fp0) * dphi);
    }
    m.r_lo = lo;
    m.r_hi = hi;
    m.closed = true;
    return m;
}

SubmanifoldMesh make_mesh(const WarpProfile& p, const SubmanifoldFamily& f, int resolution)
{
    struct V {
        const WarpProfile& p;
        int res;
        SubmanifoldMesh operator()(const Slice& s) const { return mesh_slice(p, s.s, res); }
        SubmanifoldMesh operator()(const RadialCone& c) const { return mesh_cone(p, c, res); }
        SubmanifoldMesh operator()(const GeodesicSphere& g) const { return mesh_geodesic_sphere(p, g.radius, res); }
        SubmanifoldMesh operator()(const RadialGraph& g) const { return mesh_radial_graph(p, g, res); }
        SubmanifoldMesh operator()(const RightCone3D& c) const { return mesh_right_cone3d(p, c, res); }
    };
    return std::visit(V{p, resolution}, f);
}

SubmanifoldMesh force_minimal(SubmanifoldMesh mesh)
{
    std::fill(mesh.H_norm.begin(), mesh.H_norm.end(), 0.0);
    std::fill(mesh.H_dot_grad_r.begin(), mesh.H_dot_grad_r.end(), 0.0);
    mesh.force_minimal = true;
    return mesh;
}

SubmanifoldMesh truncate(const SubmanifoldMesh& mesh, const WarpProfile& p, double r_cut)
{
    auto rebuild = [&](SubmanifoldMesh m) { return mesh.force_minimal ? force_minimal(std::move(m)) : m; };
    if (std::holds_alternative<Slice>(mesh.family) || std::holds_alternative<GeodesicSphere>(mesh.family)) {
        if (mesh.r_hi <= r_cut) return mesh;
        fail(ErrorKind::EmptyResult, "slice lies outside B_r");
    }
    if (const auto* c = std::get_if<RadialCone>(&mesh.family)) {
        if (r_cut <= c->r_lo) fail(ErrorKind::EmptyResult, "cone lies outside B_r");
        if (r_cut >= c->r_hi) return mesh;
        RadialCone t = *c;
        t.r_hi = r_cut;
        return rebuild(mesh_cone(p, t, mesh.resolution));
    }
    if (const auto* c = std::get_if<RightCone3D>(&mesh.family)) {
        if (r_cut <= 0.0) fail(ErrorKind::EmptyResult, "cone lies outside B_r");
        if (r_cut >= c->R) return mesh;
        RightCone3D t = *c;
        t.R = r_cut;
        return rebuild(mesh_right_cone3d(p, t, mesh.resolution));
    }
    // graph: keep whole cells below the cut, clip straddling cells linearly
    SubmanifoldMesh out = mesh;
    out.boundary_r.clear();
    out.boundary_angles.clear();
    out.boundary_weight.clear();
    std::size_t kept = 0;
    bool any_clip = false;
    for (std::size_t i = 0; i < mesh.size(); ++i) {
        double e = mesh.cell_extent[i];
        double frac;
        if (e <= 0.0) frac = mesh.r[i] <= r_cut ? 1.0 : 0.0;
        else frac = std::clamp((r_cut - (mesh.r[i] - e)) / (2.0 * e), 0.0, 1.0);
        if (frac <= 0.0) {
            any_clip = true;
            continue;
        }
        if (frac < 1.0) any_clip = true;
        out.r[kept] = mesh.r[i];
        for (int a = 0; a < mesh.chart_dim; ++a)
            out.angles[kept * mesh.chart_dim + a] = mesh.angles[i * mesh.chart_dim + a];
        out.weight[kept] = mesh.weight[i] * frac;
        out.H_norm[kept] = mesh.H_norm[i];
        out.H_dot_grad_r[kept] = mesh.H_dot_grad_r[i];
        out.grad_r_sq[kept] = mesh.grad_r_sq[i];
        out.cell_extent[kept] = mesh.cell_extent[i];
        ++kept;
    }
    if (kept == 0) fail(ErrorKind::EmptyResult, "graph lies outside B_r");
    if (!any_clip) return mesh;
    out.r.resize(kept);
    out.angles.resize(kept * mesh.chart_dim);
    out.weight.resize(kept);
    out.H_norm.resize(kept);
    out.H_dot_grad_r.resize(kept);
    out.grad_r_sq.resize(kept);
    out.cell_extent.resize(kept);
    out.r_hi = std::min(mesh.r_hi, r_cut);
    out.closed = false;
    out.clipped = true;
    return out;
}

GeometricMoments moments(const SubmanifoldMesh& mesh, const WarpProfile& p)
{
    return kernels::moments_parallel(mesh, p);
}

std::string mesh_to_text(const SubmanifoldMesh& mesh)
{
    std::ostringstream os;
    os.precision(17);
    os << "# warplab mesh\n";
    os << "family " << family_name(mesh.family) << "\n";
    os << "ambient " << to_string(mesh.spec.family) << " n " << mesh.spec.n << "\n";
    os << "k " << mesh.k << "\n";
    os << "nodes " << mesh.size() << " boundary " << mesh.boundary_r.size() << " angles " << mesh.chart_dim
       << "\n";
    for (std::size_t i = 0; i < mesh.size(); ++i) {
        os << mesh.r[i];
        for (int a = 0; a < mesh.chart_dim; ++a) os << ' ' << mesh.angles[i * mesh.chart_dim + a];
        os << ' ' << mesh.weight[i] << '\n';
    }
    const int bd = mesh.boundary_r.empty() ? 0 : static_cast<int>(mesh.boundary_angles.size() / mesh.boundary_r.size());
    for (std::size_t i = 0; i < mesh.boundary_r.size(); ++i) {
        os << "b " << mesh.boundary_r[i];
        for (int a = 0; a < bd; ++a) os << ' ' << mesh.boundary_angles[i * bd + a];
        os << ' ' << mesh.boundary_weight[i] << '\n';
    }
    return os.str();
}

} // namespace warplab
