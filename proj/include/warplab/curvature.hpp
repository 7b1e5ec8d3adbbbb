#pragma once

#include "warplab/warping.hpp"

#include <vector>

namespace warplab {

/// ric(grad r, grad r) = -(n-1) h''/h
double ricci_radial(const WarpProfile& p, double r);

/// Scalar curvature; the fiber contributes (n-1)(n-2) for the unit sphere and 0 for the flat torus.
double scalar_curvature(const WarpProfile& p, double r);
double scalar_curvature(const WarpProfile& p, double r, double scal_fiber);

struct SectionalCurvatures {
    double tangential;  // (kappa_N - h'^2)/h^2, planes tangent to the fiber
    double radial;      // -h''/h, planes containing grad r
};

SectionalCurvatures sectional_curvatures(const WarpProfile& p, double r);

/// Tangent vector in an orthonormal frame (grad r, e_1, ..., e_{n-1}) where the e_i
/// are tangent to the fiber.
struct TangentVector {
    double radial = 0.0;
    std::vector<double> fiber;
};

double inner(const TangentVector& u, const TangentVector& v);

/// Hess r(U, V) = (h'/h)(<U,V> - <grad r,U><grad r,V>)
double hessian_r(const WarpProfile& p, double r, const TangentVector& u, const TangentVector& v);

/// Delta_Sigma r on a k-dimensional submanifold:
/// (h'/h)(k - |grad_Sigma r|^2) + k <H, grad r>
double laplacian_r_on_submanifold(const WarpProfile& p, double r, int k, double grad_r_sq,
                                  double H_dot_grad_r);

double fiber_scalar_curvature(const ManifoldSpec& spec);

} // namespace warplab
