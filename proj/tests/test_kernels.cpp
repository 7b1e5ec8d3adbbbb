#include "warplab/errors.hpp"
#include "warplab/kernels.hpp"

#include <gtest/gtest.h>
#include <omp.h>

#include <cmath>
#include <cstring>
#include <random>

using namespace warplab;

namespace {

bool same_bits(const GeometricMoments& a, const GeometricMoments& b)
{
    return std::memcmp(&a, &b, sizeof a) == 0;
}

void expect_close(const GeometricMoments& a, const GeometricMoments& b, double tol)
{
    auto near = [&](double x, double y, const char* name) {
        EXPECT_NEAR(x, y, tol * std::max(1.0, std::abs(y))) << name;
    };
    near(a.vol, b.vol, "vol");
    near(a.bvol, b.bvol, "bvol");
    near(a.int_H, b.int_H, "int_H");
    near(a.int_ric_grad, b.int_ric_grad, "int_ric_grad");
    near(a.int_h, b.int_h, "int_h");
    near(a.int_hprime, b.int_hprime, "int_hprime");
    near(a.int_H_dot_quotient, b.int_H_dot_quotient, "int_H_dot_quotient");
    near(a.int_boundary_quotient, b.int_boundary_quotient, "int_boundary_quotient");
    near(a.int_quotient_sq_grad, b.int_quotient_sq_grad, "int_quotient_sq_grad");
    near(a.int_ric_quotient_sq_grad, b.int_ric_quotient_sq_grad, "int_ric_quotient_sq_grad");
    near(a.int_ric, b.int_ric, "int_ric");
    near(a.int_scal, b.int_scal, "int_scal");
    near(a.int_minkowski, b.int_minkowski, "int_minkowski");
    EXPECT_EQ(a.max_H, b.max_H);
}

SubmanifoldMesh graph_mesh(const WarpProfile& p)
{
    RadialGraph g;
    g.r0 = 1.0;
    g.eps = 0.2;
    g.mode = GraphMode::Random;
    g.seed = 5;
    return mesh_radial_graph(p, g, 20000);
}

WarpProfile hyperbolic()
{
    ManifoldSpec s;
    s.family = Family::SpaceForm;
    s.n = 3;
    s.c = -1.0;
    return build_profile(s);
}

} // namespace

TEST(DeterministicSum, IndependentOfThreadCount)
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::vector<double> x(100003);
    for (double& v : x) v = U(rng) * std::pow(10.0, 8 * U(rng));
    int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    double ref = kernels::deterministic_sum(x.data(), x.size());
    for (int t : {2, 3, 4, 8}) {
        omp_set_num_threads(t);
        double v = kernels::deterministic_sum(x.data(), x.size());
        EXPECT_EQ(std::memcmp(&v, &ref, sizeof v), 0) << t;
    }
    omp_set_num_threads(saved);
    EXPECT_EQ(kernels::deterministic_sum(x.data(), 0), 0.0);
    std::vector<double> ones(kernels::kBlock * 5 + 7, 1.0);
    EXPECT_EQ(kernels::deterministic_sum(ones.data(), ones.size()), double(ones.size()));
}

TEST(Moments, ParallelMatchesSerialReference)
{
    WarpProfile p = hyperbolic();
    for (const SubmanifoldMesh& m :
         {graph_mesh(p), mesh_cone(p, RadialCone{2, 0.8, 0.2, 2.0}, 4096), mesh_slice(p, 1.5, 4096)}) {
        expect_close(kernels::moments_parallel(m, p), kernels::moments_serial(m, p), 1e-12);
    }
}

TEST(Moments, BitIdenticalAcrossThreadCounts)
{
    WarpProfile p = hyperbolic();
    SubmanifoldMesh m = graph_mesh(p);
    int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    GeometricMoments ref = kernels::moments_parallel(m, p);
    for (int t : {2, 5, 8}) {
        omp_set_num_threads(t);
        EXPECT_TRUE(same_bits(kernels::moments_parallel(m, p), ref)) << t;
    }
    omp_set_num_threads(saved);
}

TEST(Moments, ProfileMustMatchTheMeshAmbient)
{
    WarpProfile p = hyperbolic();
    SubmanifoldMesh m = mesh_slice(p, 1.0, 256);
    ManifoldSpec other = p.spec();
    other.c = -2.0;
    try {
        moments(m, build_profile(other));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::SpecMismatch);
    }
}
