#include "warplab/errors.hpp"
#include "warplab/warping.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace warplab;

namespace {

ManifoldSpec ss(int n, double m, double c)
{
    ManifoldSpec s;
    s.family = Family::DeSitterSchwarzschild;
    s.n = n;
    s.m = m;
    s.c = c;
    return s;
}

ManifoldSpec rn(int n, double m, double q)
{
    ManifoldSpec s;
    s.family = Family::ReissnerNordstrom;
    s.n = n;
    s.m = m;
    s.q = q;
    return s;
}

double q_of(const ManifoldSpec& s, double h)
{
    const int k = s.n - 2;
    if (s.family == Family::ReissnerNordstrom) return 1.0 - s.m * std::pow(h, -k) + s.q * s.q * std::pow(h, -2 * k);
    return 1.0 - s.m * std::pow(h, -k) - s.c * h * h;
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

TEST(ClosedForm, SpaceFormsMatchTrigAndHyperbolicFunctions)
{
    ManifoldSpec s;
    s.family = Family::SpaceForm;
    s.n = 3;
    s.c = -4.0;
    WarpProfile p = build_profile(s);
    for (double r : {0.1, 0.7, 2.0}) {
        EXPECT_NEAR(p.h(r), std::sinh(2 * r) / 2, 1e-14 * std::cosh(2 * r));
        EXPECT_NEAR(p.h_prime(r), std::cosh(2 * r), 1e-14 * std::cosh(2 * r));
        EXPECT_NEAR(p.h_second(r), 2 * std::sinh(2 * r), 1e-13 * std::cosh(2 * r));
    }
    s.c = 1.0;
    WarpProfile q = build_profile(s);
    EXPECT_LT(q.r_max(), std::acos(-1.0) / 2);
    EXPECT_NEAR(q.h(1.0), std::sin(1.0), 1e-15);
}

// r(s) for n = 3, c = 0 in closed form: sqrt(s(s-m)) + m log((sqrt s + sqrt(s-m))/sqrt m)
TEST(OdeProfile, SchwarzschildRadialCoordinateMatchesClosedForm)
{
    const double m = 0.7;
    WarpProfile p = build_profile(ss(3, m, 0.0));
    EXPECT_NEAR(p.s0(), m, 1e-14);
    for (double s : {0.71, 0.9, 1.5, 4.0, 20.0, 34.9}) {
        double exact = std::sqrt(s * (s - m)) + m * std::log((std::sqrt(s) + std::sqrt(s - m)) / std::sqrt(m));
        EXPECT_NEAR(p.radial_coordinate(s), exact, 1e-11 * (1 + exact)) << s;
        EXPECT_NEAR(p.h(exact), s, 1e-10 * s) << s;
    }
}

// n = 3 RN: Q = (t-a)(t-b)/t^2, r(s) = sqrt(P) + (a+b)/2 log((2 sqrt(P) + 2s - a - b)/(a - b))
TEST(OdeProfile, ThreeDimensionalChargedRadialCoordinateMatchesClosedForm)
{
    const double m = 1.0, q = 0.3;
    WarpProfile p = build_profile(rn(3, m, q));
    const double a = (m + std::sqrt(m * m - 4 * q * q)) / 2, b = (m - std::sqrt(m * m - 4 * q * q)) / 2;
    EXPECT_NEAR(p.s0(), a, 1e-13);
    for (double s : {a * 1.001, 1.2, 3.0, 10.0, 40.0}) {
        double P = (s - a) * (s - b);
        double exact = std::sqrt(P) + 0.5 * (a + b) * std::log((2 * std::sqrt(P) + 2 * s - a - b) / (a - b));
        EXPECT_NEAR(p.radial_coordinate(s), exact, 1e-11 * (1 + exact)) << s;
    }
}

TEST(OdeProfile, NodesSatisfyDefiningOde)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int trial = 0; trial < 12; ++trial) {
        int n = 3 + trial % 4;
        ManifoldSpec s = trial % 2 ? rn(n, 0.5 + U(rng), 0.0) : ss(n, 0.05 + 0.5 * U(rng), -U(rng));
        if (s.family == Family::ReissnerNordstrom) s.q = 0.45 * s.m * U(rng) + 0.01;
        WarpProfile p = build_profile(s, std::nullopt, 1024);
        const auto& r = p.r_nodes();
        const auto& h = p.h_nodes();
        const auto& hp = p.h_prime_nodes();
        for (std::size_t i = 1; i < r.size(); ++i) {
            double Q = q_of(s, h[i]);
            EXPECT_NEAR(hp[i] * hp[i], Q, 1e-9 * std::max(1.0, Q)) << trial << " node " << i;
            EXPECT_NEAR(p.h(r[i]), h[i], 1e-12 * h[i]);
            EXPECT_GT(h[i], h[i - 1]);
        }
    }
}

TEST(OdeProfile, RoundTripAndStrictMonotonicity)
{
    for (const ManifoldSpec& s : {ss(3, 0.3, 0.0), ss(4, 0.2, 0.05), ss(5, 0.4, -1.0), rn(4, 1.0, 0.25)}) {
        WarpProfile p = build_profile(s);
        EXPECT_NEAR(p.s_max(), std::min(50.0 * p.s0(), p.s_max()), 1e-9 * p.s_max());
        double prev = -1.0;
        for (int i = 1; i <= 5000; ++i) {
            double r = p.r_max() * i / 5000.0;
            double h = p.h(r);
            EXPECT_GT(h, prev);
            prev = h;
            if (i % 50 == 0) EXPECT_NEAR(p.radial_coordinate(h), r, 1e-9 * r);
        }
    }
}

TEST(OdeProfile, SecondDerivativeFollowsFromFirst)
{
    WarpProfile p = build_profile(ss(4, 0.3, -0.5));
    for (double r : {0.5, 1.0, 2.0}) {
        double e = 1e-5;
        double fd = (p.h_prime(r + e) - p.h_prime(r - e)) / (2 * e);
        EXPECT_NEAR(p.h_second(r), fd, 1e-6);
    }
}

TEST(OdeProfile, TwoSidedDomainStopsBelowCosmologicalHorizon)
{
    ManifoldSpec s = ss(3, 0.1, 0.5);
    DomainEndpoints d = domain_endpoints(s);
    EXPECT_TRUE(std::isfinite(d.s1));
    EXPECT_TRUE(std::isfinite(d.r_end));
    WarpProfile p = build_profile(s);
    EXPECT_LT(p.s_max(), d.s1);
    EXPECT_GT(p.s_max(), d.s1 * (1 - 1e-5));
    EXPECT_EQ(kind_of([&] { build_profile(s, d.r_end * 1.01); }), ErrorKind::DomainExceeded);
}

TEST(Profile, ErrorsNameTheViolatedConstraint)
{
    EXPECT_EQ(kind_of([] { build_profile(rn(3, 1.0, 0.6)); }), ErrorKind::InvalidParameter);
    try {
        build_profile(rn(3, 1.0, 0.6));
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("m>2q"), std::string::npos);
    }
    WarpProfile p = build_profile(ss(3, 0.2, 0.0));
    EXPECT_EQ(kind_of([&] { p.h(p.r_max() * 1.5); }), ErrorKind::OutOfDomain);
    EXPECT_EQ(kind_of([&] { p.h(-0.1); }), ErrorKind::OutOfDomain);
    ManifoldSpec low_dim = ss(3, 0.2, 0.0);
    low_dim.n = 2;
    EXPECT_EQ(kind_of([&] { build_profile(low_dim); }), ErrorKind::InvalidParameter);
}

TEST(Profile, HorizonStartsWithZeroSlope)
{
    WarpProfile p = build_profile(ss(3, 0.4, 0.0));
    EXPECT_NEAR(p.h(0.0), 0.4, 1e-14);
    EXPECT_NEAR(p.h_prime(0.0), 0.0, 1e-12);
    // h'' at the horizon is (n-2) m / (2 s0^(n-1)) for c = 0
    EXPECT_NEAR(p.h_second(0.0), 0.4 / (2 * 0.4 * 0.4), 1e-9);
}
