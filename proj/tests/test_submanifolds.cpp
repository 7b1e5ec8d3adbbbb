#include "warplab/errors.hpp"
#include "warplab/quadrature.hpp"
#include "warplab/submanifolds.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace warplab;

namespace {

constexpr double kPi = std::numbers::pi;

ManifoldSpec space_form(int n, double c)
{
    ManifoldSpec s;
    s.family = Family::SpaceForm;
    s.n = n;
    s.c = c;
    return s;
}

ManifoldSpec ss(int n, double m, double c)
{
    ManifoldSpec s;
    s.family = Family::DeSitterSchwarzschild;
    s.n = n;
    s.m = m;
    s.c = c;
    return s;
}

// composite Simpson, used as an independent radial oracle
template <class F>
double simpson(F f, double a, double b, int n = 20000)
{
    double h = (b - a) / n, s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4 : 2);
    return s * h / 3;
}

ErrorKind kind_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error";
    return ErrorKind::InvalidParameter;
}

} // namespace

TEST(Slice, AreaAndUmbilicData)
{
    for (int n : {3, 4, 5}) {
        WarpProfile p = build_profile(ss(n, 0.3, -0.2));
        double s = 2.0 * p.s0();
        SubmanifoldMesh m = mesh_slice(p, s, 4096);
        GeometricMoments g = moments(m, p);
        EXPECT_NEAR(g.vol, sphere_area(n - 1) * std::pow(s, n - 1), 1e-11 * g.vol);
        EXPECT_TRUE(m.closed);
        EXPECT_TRUE(m.boundary_r.empty());
        double r = p.radial_coordinate(s);
        EXPECT_NEAR(g.max_H, p.h_prime(r) / s, 1e-12);
        EXPECT_NEAR(g.d_sigma, s, 1e-12 * s);
        EXPECT_NEAR(g.R_sigma, s, 1e-12 * s);
    }
}

TEST(Cone, VolumeMatchesRadialOracle)
{
    WarpProfile p = build_profile(ss(4, 0.2, -1.0));
    RadialCone c{3, 0.9, 0.3, 1.7};
    SubmanifoldMesh m = mesh_cone(p, c, 8000);
    GeometricMoments g = moments(m, p);
    // |C| = |S^{k-1}| sin^{k-1}(cap), volume element h^{k-1}
    double oracle =
        sphere_area(2) * std::pow(std::sin(0.9), 2) * simpson([&](double r) { return std::pow(p.h(r), 2); }, 0.3, 1.7);
    EXPECT_NEAR(g.vol, oracle, 1e-9 * oracle);
    double bvol = sphere_area(2) * std::pow(std::sin(0.9), 2) * (std::pow(p.h(0.3), 2) + std::pow(p.h(1.7), 2));
    EXPECT_NEAR(g.bvol, bvol, 1e-11 * bvol);
    // cones are tangent to grad r: <H, grad r> = 0 and |grad_S r| = 1
    for (std::size_t i = 0; i < m.size(); ++i) {
        EXPECT_EQ(m.H_dot_grad_r[i], 0.0);
        EXPECT_EQ(m.grad_r_sq[i], 1.0);
    }
}

TEST(Cone, TotallyGeodesicConesAreMinimal)
{
    WarpProfile p = build_profile(space_form(3, -1.0));
    SubmanifoldMesh m = mesh_cone(p, RadialCone{2, kPi / 2, 0.0, 2.0}, 4096);
    EXPECT_NEAR(moments(m, p).max_H, 0.0, 1e-12);
    EXPECT_EQ(m.boundary_r.size() > 0, true);
    // disk of radius 2 in the hyperbolic plane
    EXPECT_NEAR(moments(m, p).vol, 2 * kPi * (std::cosh(2.0) - 1.0), 1e-11);
}

TEST(Cone, HorizonFamiliesNeedPositiveInnerRadius)
{
    WarpProfile p = build_profile(ss(3, 0.3, 0.0));
    EXPECT_EQ(kind_of([&] { mesh_cone(p, RadialCone{2, 1.0, 0.0, 1.0}, 1024); }), ErrorKind::OutOfDomain);
    EXPECT_EQ(kind_of([&] { mesh_cone(p, RadialCone{3, 1.0, 0.1, 1.0}, 1024); }), ErrorKind::InvalidParameter);
}

TEST(GeodesicSphere, AreaInSpaceForms)
{
    WarpProfile h = build_profile(space_form(3, -1.0));
    GeometricMoments g = moments(mesh_geodesic_sphere(h, 1.3, 4096), h);
    EXPECT_NEAR(g.vol, 4 * kPi * std::pow(std::sinh(1.3), 2), 1e-11 * g.vol);
    WarpProfile s = build_profile(space_form(4, 1.0));
    GeometricMoments gs = moments(mesh_geodesic_sphere(s, 1.0, 4096), s);
    EXPECT_NEAR(gs.vol, 2 * kPi * kPi * std::pow(std::sin(1.0), 3), 1e-11 * gs.vol);
    EXPECT_EQ(kind_of([&] { mesh_geodesic_sphere(build_profile(ss(3, 0.1, 0.0)), 1.0, 1024); }),
              ErrorKind::WrongFamily);
}

TEST(RightCone, AreaAndBoundaryIntegral)
{
    WarpProfile p = build_profile(space_form(3, 0.0));
    for (double a : {0.2, 0.7, 1.3}) {
        for (double R : {0.5, 2.0}) {
            SubmanifoldMesh m = mesh_right_cone3d(p, RightCone3D{a, R}, 4096);
            GeometricMoments g = moments(m, p);
            double area = kPi * R * R * std::sin(a);
            EXPECT_NEAR(g.vol, area, 1e-12 * area);
            EXPECT_NEAR(0.5 * g.int_boundary_quotient, area, 1e-12 * area);
            EXPECT_NEAR(g.int_H_dot_quotient, 0.0, 1e-12);
        }
    }
}

TEST(Graph, ConstantGraphIsASlice)
{
    WarpProfile p = build_profile(space_form(3, -1.0));
    RadialGraph gr;
    gr.r0 = 1.1;
    SubmanifoldMesh m = mesh_radial_graph(p, gr, 4096);
    GeometricMoments g = moments(m, p);
    double h = std::sinh(1.1);
    EXPECT_NEAR(g.vol, 4 * kPi * h * h, 1e-12 * g.vol);
    EXPECT_NEAR(g.max_H, std::cosh(1.1) / h, 1e-12);
    EXPECT_NEAR(g.int_minkowski, 0.0, 1e-10 * g.vol);
}

// a round sphere of radius a centred at distance e from the origin of R^3
// is a graph r(theta) = e cos(theta) + sqrt(a^2 - e^2 sin^2(theta))
TEST(Graph, OffCentreSphereHasConstantMeanCurvature)
{
    WarpProfile p = build_profile(space_form(3, 0.0));
    const double a = 1.0, e = 0.3;
    RadialGraph gr;
    gr.custom = [&](double th, double) {
        double s = std::sin(th);
        return e * std::cos(th) + std::sqrt(a * a - e * e * s * s);
    };
    SubmanifoldMesh m = mesh_radial_graph(p, gr, 16384);
    GeometricMoments g = moments(m, p);
    EXPECT_NEAR(g.vol, 4 * kPi * a * a, 2e-4 * g.vol);
    EXPECT_NEAR(g.int_H, 4 * kPi * a, 1e-3 * 4 * kPi * a);
    EXPECT_LT(std::abs(g.int_minkowski), 1e-3 * g.vol);
}

TEST(Graph, MinkowskiResidualShrinksWithResolution)
{
    WarpProfile p = build_profile(space_form(3, -1.0));
    RadialGraph gr;
    gr.r0 = 1.0;
    gr.eps = 0.15;
    gr.mode = GraphMode::Random;
    gr.seed = 11;
    double coarse = std::abs(moments(mesh_radial_graph(p, gr, 2048), p).int_minkowski);
    double fine = std::abs(moments(mesh_radial_graph(p, gr, 32768), p).int_minkowski);
    EXPECT_LT(fine, 0.5 * coarse);
}

TEST(Truncate, ConesAreRebuiltAndSlicesAllOrNothing)
{
    WarpProfile p = build_profile(space_form(3, 0.0));
    SubmanifoldMesh c = mesh_cone(p, RadialCone{2, kPi / 2, 0.0, 3.0}, 4096);
    SubmanifoldMesh t = truncate(c, p, 1.5);
    EXPECT_NEAR(moments(t, p).vol, kPi * 1.5 * 1.5, 1e-12);
    EXPECT_EQ(kind_of([&] { truncate(mesh_cone(p, RadialCone{2, 1.0, 1.0, 2.0}, 1024), p, 0.5); }),
              ErrorKind::EmptyResult);
    SubmanifoldMesh s = mesh_slice(p, 2.0, 1024);
    EXPECT_EQ(truncate(s, p, 2.5).size(), s.size());
    EXPECT_EQ(kind_of([&] { truncate(s, p, 1.0); }), ErrorKind::EmptyResult);
}

TEST(Truncate, GraphCellsAreClippedLinearly)
{
    WarpProfile p = build_profile(space_form(3, 0.0));
    RadialGraph gr;
    gr.r0 = 1.0;
    gr.eps = 0.2;
    gr.mode = GraphMode::Zonal;
    SubmanifoldMesh m = mesh_radial_graph(p, gr, 4096);
    SubmanifoldMesh t = truncate(m, p, 1.0);
    EXPECT_TRUE(t.clipped);
    EXPECT_FALSE(t.closed);
    double full = moments(m, p).vol, half = moments(t, p).vol;
    EXPECT_GT(half, 0.4 * full);
    EXPECT_LT(half, 0.6 * full);
}

TEST(Mesh, ForceMinimalAndTextExport)
{
    WarpProfile p = build_profile(space_form(3, 0.0));
    SubmanifoldMesh m = force_minimal(mesh_slice(p, 1.0, 256));
    EXPECT_TRUE(m.force_minimal);
    EXPECT_EQ(moments(m, p).max_H, 0.0);
    std::string text = mesh_to_text(m);
    EXPECT_EQ(text.rfind("# ", 0), 0u);
    EXPECT_EQ(kind_of([&] { mesh_slice(p, 1.0, 10); }), ErrorKind::InvalidParameter);
}

TEST(Mesh, TorusFiberUnsupported)
{
    ManifoldSpec s = space_form(3, 0.0);
    s.fiber = Fiber::FlatTorus;
    WarpProfile p = build_profile(s);
    EXPECT_EQ(kind_of([&] { mesh_slice(p, 1.0, 256); }), ErrorKind::UnsupportedFiber);
}
