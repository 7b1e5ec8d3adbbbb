#include "warplab/errors.hpp"
#include "warplab/monotonic.hpp"
#include "warplab/quadrature.hpp"
#include "warplab/regions.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace warplab;

namespace {

constexpr double kPi = std::numbers::pi;

ManifoldSpec make(Family f, int n)
{
    ManifoldSpec s;
    s.family = f;
    s.n = n;
    return s;
}

std::vector<double> grid(double lo, double hi, int count)
{
    std::vector<double> g;
    for (int i = 0; i + 1 < count; ++i) g.push_back(lo + (hi - lo) * i / (count - 1));
    g.push_back(hi);
    return g;
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

// Flat disk of radius R: int_{B_r} |x| = 2 pi r^3 / 3 and |B_r| = pi r^2.
TEST(Traces, FlatPlaneAgainstShellIntegrals)
{
    WarpProfile p = build_profile(make(Family::SpaceForm, 3));
    SubmanifoldMesh disk = mesh_cone(p, RadialCone{2, kPi / 2, 0.0, 4.0}, 4096);
    auto r = grid(0.0625, 4.0, 64);
    MonotoneTrace v1 = trace_V1(disk, p, 0.0, r);
    MonotoneTrace v2 = trace_V2(disk, p, 0.0, r);
    for (std::size_t i = 0; i < r.size(); ++i) {
        EXPECT_NEAR(v1.V_values[i], 2.0 * kPi * r[i] / 3.0, 1e-10 * r[i]);
        EXPECT_NEAR(v2.V_values[i], kPi, 1e-10);
        EXPECT_NEAR(v1.volumes[i], kPi * r[i] * r[i], 1e-10 * r[i] * r[i]);
    }
    EXPECT_TRUE(v1.monotone());
    EXPECT_TRUE(v2.monotone());
}

TEST(Traces, FlatKPlanesInHigherDimension)
{
    WarpProfile p = build_profile(make(Family::SpaceForm, 5));
    for (int k = 2; k <= 4; ++k) {
        SubmanifoldMesh plane = mesh_cone(p, RadialCone{k, kPi / 2, 0.0, 2.0}, 4096);
        MonotoneTrace v2 = trace_V2(plane, p, 0.0, grid(0.25, 2.0, 8));
        for (double v : v2.V_values) EXPECT_NEAR(v, unit_ball_volume(k), 1e-9 * v) << k;
    }
}

TEST(Traces, CapConesAboveThresholdAreMonotone)
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int i = 0; i < 12; ++i) {
        ManifoldSpec s = make(Family::DeSitterSchwarzschild, 3 + i % 3);
        s.m = 0.1 + 0.4 * U(rng);
        s.c = -U(rng);
        WarpProfile p = build_profile(s);
        double t = ss_thresholds(s).quotient;
        double r_lo = p.radial_coordinate(t * (1.05 + U(rng)));
        double r_hi = std::min(p.r_max(), r_lo + 2.0 + 2.0 * U(rng));
        SubmanifoldMesh cone = mesh_cone(p, RadialCone{2, 0.3 + 1.2 * U(rng), r_lo, r_hi}, 2048);
        double alpha = minimal_alpha(cone, p);
        auto r = grid(r_lo + 0.01, r_hi, 32);
        ASSERT_LE(r.back(), p.r_max()) << i << " " << r_lo << " " << r_hi << " " << p.r_max();
        ASSERT_GT(r.front(), 0.0) << i;
        EXPECT_TRUE(trace_V1(cone, p, alpha, r).monotone()) << i;
        EXPECT_TRUE(trace_V2(cone, p, alpha, r).monotone()) << i;
    }
}

TEST(Traces, ChargedConesAboveS2AreMonotone)
{
    ManifoldSpec s = make(Family::ReissnerNordstrom, 4);
    s.m = 1.0;
    s.q = 0.3;
    WarpProfile p = build_profile(s);
    double r_lo = p.radial_coordinate(1.1 * rn_thresholds(s).s2);
    SubmanifoldMesh cone = mesh_cone(p, RadialCone{3, 1.0, r_lo, r_lo + 5.0}, 4096);
    double alpha = minimal_alpha(cone, p);
    auto r = grid(r_lo + 0.05, r_lo + 5.0, 32);
    EXPECT_TRUE(trace_V1(cone, p, alpha, r).monotone());
    EXPECT_TRUE(trace_V2(cone, p, alpha, r).monotone());
}

TEST(Traces, V2NearThePoleIsTheUnitBallVolume)
{
    std::vector<ManifoldSpec> specs;
    specs.push_back(make(Family::SpaceForm, 3));
    specs.back().c = -1.0;
    specs.push_back(make(Family::SpaceForm, 4));
    specs.back().c = 1.0;
    specs.push_back(make(Family::PowerPerturbed, 3));
    specs.back().B = 0.01;
    specs.back().p = 8.0;
    specs.push_back(make(Family::ArctanCylinder, 3));
    specs.back().K = 2.0;
    specs.push_back(make(Family::RationalDecayCylinder, 4));
    specs.back().a = 1.0;
    specs.back().p = 2.0;
    specs.push_back(make(Family::LogFactor, 3));
    specs.back().a = 1.0;
    for (const auto& s : specs) {
        WarpProfile p = build_profile(s);
        SubmanifoldMesh plane = mesh_cone(p, RadialCone{2, kPi / 2, 0.0, 0.5}, 4096);
        MonotoneTrace v2 = trace_V2(plane, p, 0.0, {1e-3});
        EXPECT_NEAR(v2.V_values[0], kPi, 0.01 * kPi) << to_string(s.family);
    }
}

TEST(Traces, PreconditionsAreEnforced)
{
    ManifoldSpec s = make(Family::DeSitterSchwarzschild, 3);
    s.m = 0.3;
    WarpProfile p = build_profile(s);
    double t = ss_thresholds(s).quotient;
    // closed slice: |H| > 0 and <H, grad r> < 0
    SubmanifoldMesh slice = mesh_slice(p, 2.0 * t, 512);
    EXPECT_EQ(kind_of([&] { trace_V1(slice, p, 0.0, {p.r_max()}); }), ErrorKind::PreconditionUnmet);
    // cone reaching below the quotient threshold
    SubmanifoldMesh low = mesh_cone(p, RadialCone{2, 1.0, p.radial_coordinate(0.5 * (p.s0() + t)), 3.0}, 512);
    EXPECT_EQ(kind_of([&] { trace_V2(low, p, minimal_alpha(low, p), {3.0}); }), ErrorKind::PreconditionUnmet);
    // past the outer boundary
    SubmanifoldMesh high = mesh_cone(p, RadialCone{2, 1.0, p.radial_coordinate(2.0 * t), 3.0}, 512);
    EXPECT_EQ(kind_of([&] { trace_V2(high, p, minimal_alpha(high, p), {3.5}); }), ErrorKind::PreconditionUnmet);
    EXPECT_EQ(kind_of([&] { trace_V2(high, p, minimal_alpha(high, p), {2.0, 1.5}); }), ErrorKind::InvalidParameter);
}

TEST(LowerBounds, NeverExceedMeasuredVolume)
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int i = 0; i < 10; ++i) {
        ManifoldSpec s = make(Family::DeSitterSchwarzschild, 3 + i % 2);
        s.m = 0.2 + 0.3 * U(rng);
        s.c = i % 3 == 0 ? 0.02 : -U(rng);
        WarpProfile p = build_profile(s);
        double r_lo = p.radial_coordinate(ss_thresholds(s).quotient * (1.1 + U(rng)));
        double r_hi = std::min(p.r_max(), r_lo + 3.0);
        SubmanifoldMesh cone = mesh_cone(p, RadialCone{2, 0.4 + U(rng), r_lo, r_hi}, 2048);
        double alpha = minimal_alpha(cone, p);
        for (double f : {0.3, 0.6, 1.0}) {
            LowerBoundReport rep = lower_bounds(cone, p, alpha, r_lo + 0.2, r_lo + 0.2 + f * (r_hi - r_lo - 0.2));
            for (const auto& b : rep.bounds)
                if (b.applicable) EXPECT_TRUE(b.pass) << b.name << " " << b.value << " > " << b.measured;
        }
    }
}

TEST(LowerBounds, FlatPlaneIsTight)
{
    WarpProfile p = build_profile(make(Family::SpaceForm, 3));
    SubmanifoldMesh disk = mesh_cone(p, RadialCone{2, kPi / 2, 0.0, 3.0}, 4096);
    LowerBoundReport rep = lower_bounds(disk, p, 0.0, 1.0, 2.5);
    EXPECT_DOUBLE_EQ(rep.B, 1.0);
    EXPECT_NEAR(rep.C2, kPi, 1e-12);
    ASSERT_EQ(rep.bounds.size(), 4u);
    EXPECT_NEAR(rep.bounds[1].value, rep.volume, 1e-10 * rep.volume);
    EXPECT_TRUE(rep.bounds[3].applicable);
    EXPECT_FALSE(rep.bounds[2].applicable);  // h'' = 0
}

TEST(Growth, FlatPlaneIsPolynomialOfOrderK)
{
    WarpProfile p = build_profile(make(Family::SpaceForm, 4));
    for (int k = 2; k <= 3; ++k) {
        SubmanifoldMesh plane = mesh_cone(p, RadialCone{k, kPi / 2, 0.0, 10.0}, 4096);
        auto r = grid(0.15625, 10.0, 64);
        GrowthFit f = growth_classify(r, volume_trace(plane, p, r), p, GrowthModel::Polynomial, k);
        EXPECT_NEAR(f.value, k, 0.01 * k);
        EXPECT_TRUE(f.matches);
    }
}

TEST(Growth, HyperbolicSchwarzschildConeIsExponential)
{
    ManifoldSpec s = make(Family::DeSitterSchwarzschild, 4);
    s.m = 0.3;
    s.c = -1.0;
    WarpProfile p = build_profile(s);
    SubmanifoldMesh cone = mesh_cone(p, RadialCone{3, kPi / 2, 0.05, p.r_max()}, 4096);
    auto r = grid(0.1, p.r_max(), 64);
    GrowthFit f = growth_classify(r, volume_trace(cone, p, r), p, GrowthModel::Exponential, 2.0);
    EXPECT_GE(f.value, 0.9 * 2.0);
    EXPECT_TRUE(f.matches);
}

TEST(Growth, ChargedConeIsPolynomialOfOrderK)
{
    ManifoldSpec s = make(Family::ReissnerNordstrom, 4);
    s.m = 1.0;
    s.q = 0.25;
    WarpProfile p = build_profile_to_area_radius(s, 200.0 * rn_thresholds(s).s0);
    SubmanifoldMesh cone = mesh_cone(p, RadialCone{3, kPi / 2, 0.05, p.r_max()}, 4096);
    auto r = grid(p.r_max() / 64, p.r_max(), 64);
    GrowthFit f = growth_classify(r, volume_trace(cone, p, r), p, GrowthModel::Polynomial, 3.0);
    EXPECT_NEAR(f.value, 3.0, 0.3);
    EXPECT_TRUE(f.matches);
}

TEST(Growth, ShortWindowsThrow)
{
    WarpProfile p = build_profile(make(Family::SpaceForm, 3));
    std::vector<double> r{5.0, 6.0, 7.0, 8.0};
    std::vector<double> v{1.0, 2.0, 3.0, 4.0};
    EXPECT_EQ(kind_of([&] { growth_classify(r, v, p, GrowthModel::Polynomial, 2.0); }), ErrorKind::WindowTooSmall);
    EXPECT_EQ(kind_of([&] { growth_classify({1.0, 2.0}, {1.0, 2.0}, p, GrowthModel::Exponential, 1.0); }),
              ErrorKind::WindowTooSmall);
}

TEST(Asymptotics, HyperbolicSchwarzschildSinhExpansion)
{
    for (double m : {0.2, 0.5, 1.0}) {
        ManifoldSpec s = make(Family::DeSitterSchwarzschild, 3);
        s.m = m;
        s.c = -1.0;
        WarpProfile p = build_profile_to_area_radius(s, 200.0 * ss_thresholds(s).s0);
        AsymptoticReport a = asymptotic_check(p);
        EXPECT_EQ(a.variable, "sinh");
        EXPECT_NEAR(a.fitted_order, -4.0, 0.2) << m;
        EXPECT_NEAR(a.fitted_coefficient, m / 6.0, 0.02 * m / 6.0) << m;
    }
}

TEST(Asymptotics, ChargedExpansionInR)
{
    ManifoldSpec s = make(Family::ReissnerNordstrom, 4);
    s.m = 1.0;
    s.q = 0.25;
    WarpProfile p = build_profile_to_area_radius(s, 200.0 * rn_thresholds(s).s0);
    AsymptoticReport a = asymptotic_check(p);
    EXPECT_NEAR(a.fitted_order, -3.0, 0.2);
    EXPECT_NEAR(a.fitted_coefficient, 0.5, 0.01);

    ManifoldSpec five = s;
    five.n = 5;
    AsymptoticReport b = asymptotic_check(build_profile_to_area_radius(five, 200.0 * rn_thresholds(five).s0));
    EXPECT_NEAR(b.fitted_order, -5.0, 0.2);
}

TEST(Asymptotics, SpaceFormsAreExactAndOtherFamiliesRejected)
{
    AsymptoticReport a = asymptotic_check(build_profile(make(Family::SpaceForm, 3)));
    EXPECT_EQ(a.variable, "exact");
    EXPECT_EQ(a.max_abs_residual, 0.0);

    ManifoldSpec rn3 = make(Family::ReissnerNordstrom, 3);
    rn3.m = 1.0;
    rn3.q = 0.25;
    EXPECT_EQ(kind_of([&] { asymptotic_check(build_profile(rn3)); }), ErrorKind::WrongFamily);
    ManifoldSpec ss0 = make(Family::DeSitterSchwarzschild, 3);
    ss0.m = 0.3;
    EXPECT_EQ(kind_of([&] { asymptotic_check(build_profile(ss0)); }), ErrorKind::WrongFamily);
    ManifoldSpec ssh = ss0;
    ssh.c = -1.0;
    EXPECT_EQ(kind_of([&] { asymptotic_check(build_profile(ssh, 1.0)); }), ErrorKind::WindowTooSmall);
}
