#include "warplab/kernels.hpp"

#include "warplab/curvature.hpp"
#include "warplab/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace warplab::kernels {

namespace {

double pairwise(const double* x, std::size_t n)
{
    if (n == 0) return 0.0;
    if (n == 1) return x[0];
    std::size_t h = n / 2;
    return pairwise(x, h) + pairwise(x + h, n - h);
}

// Integrands per node, in the order of the GeometricMoments accumulators.
enum Slot {
    kVol,
    kH,
    kRicGrad,
    kH_,
    kHp,
    kHdotQ,
    kHQ,
    kQ2Grad,
    kRicQ2Grad,
    kRic,
    kScal,
    kMink,
    kSlots
};

struct NodeValues {
    std::array<double, kSlots> v;
};

inline NodeValues node_values(const SubmanifoldMesh& m, const WarpProfile& p, std::size_t i,
                              double scal_fiber)
{
    const int n = m.spec.n;
    const double r = m.r[i], w = m.weight[i];
    const double h = p.h(r), hp = p.h_prime(r), hpp = p.h_second(r);
    const double q = h / hp;
    const double ric = -(n - 1) * hpp / h;
    const double scal = (scal_fiber - (n - 1.0) * (n - 2.0) * hp * hp) / (h * h) - 2.0 * (n - 1) * hpp / h;
    const double g2 = m.grad_r_sq[i], Hn = m.H_norm[i], Hd = m.H_dot_grad_r[i];
    NodeValues out;
    out.v[kVol] = w;
    out.v[kH] = w * Hn;
    out.v[kRicGrad] = w * ric * g2;
    out.v[kH_] = w * h;
    out.v[kHp] = w * hp;
    out.v[kHdotQ] = w * Hd * q;
    out.v[kHQ] = w * Hn * q;
    out.v[kQ2Grad] = w * q * q * g2;
    out.v[kRicQ2Grad] = w * ric * q * q * g2;
    out.v[kRic] = w * ric;
    out.v[kScal] = w * scal;
    out.v[kMink] = w * (hp + h * Hd);
    return out;
}

void fill(GeometricMoments& g, const std::array<double, kSlots>& s)
{
    g.vol = s[kVol];
    g.int_H = s[kH];
    g.int_ric_grad = s[kRicGrad];
    g.int_h = s[kH_];
    g.int_hprime = s[kHp];
    g.int_H_dot_quotient = s[kHdotQ];
    g.int_H_quotient = s[kHQ];
    g.int_quotient_sq_grad = s[kQ2Grad];
    g.int_ric_quotient_sq_grad = s[kRicQ2Grad];
    g.int_ric = s[kRic];
    g.int_scal = s[kScal];
    g.int_minkowski = s[kMink];
}

void extrema(GeometricMoments& g, const SubmanifoldMesh& m, const WarpProfile& p)
{
    g.r_min = m.r_lo;
    g.r_max = m.r_hi;
    g.d_sigma = p.h(m.r_lo);
    g.R_sigma = p.h(m.r_hi);
    double mx = 0.0, mn = kInf;
    for (std::size_t i = 0; i < m.size(); ++i) {
        mx = std::max(mx, m.H_norm[i]);
        mn = std::min(mn, m.H_dot_grad_r[i]);
    }
    g.max_H = mx;
    g.min_H_dot = m.size() ? mn : 0.0;
}

void check_mesh(const SubmanifoldMesh& m, const WarpProfile& p)
{
    const auto& a = m.spec;
    const auto& b = p.spec();
    if (a.family != b.family || a.n != b.n || a.c != b.c || a.m != b.m || a.q != b.q || a.B != b.B ||
        a.p != b.p || a.K != b.K || a.a != b.a)
        fail(ErrorKind::SpecMismatch, "mesh and profile built from different specs");
}

} // namespace

double deterministic_sum(const double* x, std::size_t n)
{
    const std::size_t nb = (n + kBlock - 1) / kBlock;
    std::vector<double> blocks(nb);
    const long long nbl = static_cast<long long>(nb);
#pragma omp parallel for schedule(static)
    for (long long b = 0; b < nbl; ++b) {
        std::size_t lo = static_cast<std::size_t>(b) * kBlock, hi = std::min(n, lo + kBlock);
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += x[i];
        blocks[b] = s;
    }
    return pairwise(blocks.data(), nb);
}

GeometricMoments moments_parallel(const SubmanifoldMesh& m, const WarpProfile& p)
{
    check_mesh(m, p);
    const std::size_t n = m.size();
    const double scal_fiber = fiber_scalar_curvature(m.spec);
    std::vector<std::vector<double>> cols(kSlots, std::vector<double>(n));
    const long long nl = static_cast<long long>(n);
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < nl; ++i) {
        NodeValues v = node_values(m, p, static_cast<std::size_t>(i), scal_fiber);
        for (int s = 0; s < kSlots; ++s) cols[s][i] = v.v[s];
    }
    std::array<double, kSlots> sums{};
    for (int s = 0; s < kSlots; ++s) sums[s] = deterministic_sum(cols[s].data(), n);

    GeometricMoments g;
    fill(g, sums);
    const std::size_t nb = m.boundary_r.size();
    std::vector<double> bw(nb), bq(nb);
    const long long nbl = static_cast<long long>(nb);
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < nbl; ++i) {
        double r = m.boundary_r[i];
        bw[i] = m.boundary_weight[i];
        bq[i] = m.boundary_weight[i] * p.quotient(r);
    }
    g.bvol = deterministic_sum(bw.data(), nb);
    g.int_boundary_quotient = deterministic_sum(bq.data(), nb);
    extrema(g, m, p);
    return g;
}

GeometricMoments moments_serial(const SubmanifoldMesh& m, const WarpProfile& p)
{
    check_mesh(m, p);
    const double scal_fiber = fiber_scalar_curvature(m.spec);
    std::array<double, kSlots> sums{};
    for (std::size_t i = 0; i < m.size(); ++i) {
        NodeValues v = node_values(m, p, i, scal_fiber);
        for (int s = 0; s < kSlots; ++s) sums[s] += v.v[s];
    }
    GeometricMoments g;
    fill(g, sums);
    for (std::size_t i = 0; i < m.boundary_r.size(); ++i) {
        g.bvol += m.boundary_weight[i];
        g.int_boundary_quotient += m.boundary_weight[i] * p.quotient(m.boundary_r[i]);
    }
    extrema(g, m, p);
    return g;
}

} // namespace warplab::kernels
