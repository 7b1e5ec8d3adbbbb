#include "warplab/curvature.hpp"

#include "warplab/errors.hpp"

#include <cmath>

namespace warplab {

namespace {

double second_ratio(const WarpProfile& p, double r)
{
    double h = p.h(r);
    if (h <= 0.0) fail(ErrorKind::DegenerateMetric, "h=0 (curvature at the pole is a limit)");
    return p.h_second(r) / h;
}

} // namespace

double fiber_scalar_curvature(const ManifoldSpec& spec)
{
    return spec.fiber == Fiber::Sphere ? double(spec.n - 1) * (spec.n - 2) : 0.0;
}

double ricci_radial(const WarpProfile& p, double r) { return -(p.n() - 1) * second_ratio(p, r); }

double scalar_curvature(const WarpProfile& p, double r, double scal_fiber)
{
    const int n = p.n();
    double h = p.h(r);
    if (h <= 0.0) fail(ErrorKind::DegenerateMetric, "h=0 (curvature at the pole is a limit)");
    double hp = p.h_prime(r);
    return (scal_fiber - (n - 1.0) * (n - 2.0) * hp * hp) / (h * h) - 2.0 * (n - 1) * second_ratio(p, r);
}

double scalar_curvature(const WarpProfile& p, double r)
{
    return scalar_curvature(p, r, fiber_scalar_curvature(p.spec()));
}

SectionalCurvatures sectional_curvatures(const WarpProfile& p, double r)
{
    double h = p.h(r);
    if (h <= 0.0) fail(ErrorKind::DegenerateMetric, "h=0 (curvature at the pole is a limit)");
    double hp = p.h_prime(r);
    double kappa = p.spec().fiber == Fiber::Sphere ? 1.0 : 0.0;
    return {(kappa - hp * hp) / (h * h), -second_ratio(p, r)};
}

double inner(const TangentVector& u, const TangentVector& v)
{
    if (u.fiber.size() != v.fiber.size()) fail(ErrorKind::InvalidParameter, "tangent vectors of equal dimension");
    double s = u.radial * v.radial;
    for (std::size_t i = 0; i < u.fiber.size(); ++i) s += u.fiber[i] * v.fiber[i];
    return s;
}

double hessian_r(const WarpProfile& p, double r, const TangentVector& u, const TangentVector& v)
{
    double h = p.h(r);
    if (h <= 0.0) fail(ErrorKind::DegenerateMetric, "Hess r undefined where h=0");
    return p.h_prime(r) / h * (inner(u, v) - u.radial * v.radial);
}

double laplacian_r_on_submanifold(const WarpProfile& p, double r, int k, double grad_r_sq,
                                  double H_dot_grad_r)
{
    if (k < 1 || k > p.n()) fail(ErrorKind::InvalidParameter, "1<=k<=n");
    double h = p.h(r);
    if (h <= 0.0) fail(ErrorKind::DegenerateMetric, "Laplacian of r undefined where h=0");
    return p.h_prime(r) / h * (k - grad_r_sq) + k * H_dot_grad_r;
}

} // namespace warplab
