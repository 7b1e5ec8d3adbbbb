#pragma once

#include "warplab/warping.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace warplab {

/// {h^-1(s)} x S^{n-1}
struct Slice {
    double s = 1.0;
};

/// k-dimensional cone [r_lo, r_hi] x C over the small sphere C of angular radius
/// cap_angle inside a great S^k of the fiber. cap_angle = pi/2 gives the totally
/// geodesic cone.
struct RadialCone {
    int k = 2;
    double cap_angle = 1.5707963267948966;
    double r_lo = 0.0;
    double r_hi = 1.0;
};

/// Geodesic sphere about the pole of a space form.
struct GeodesicSphere {
    double radius = 1.0;
};

enum class GraphMode { Constant, Zonal, Tilted, Theta, Random };

/// Hypersurface r = phi(theta, varphi) over the S^2 fiber chart (n = 3).
struct RadialGraph {
    double r0 = 1.0;
    double eps = 0.0;
    GraphMode mode = GraphMode::Constant;
    std::uint64_t seed = 0;
    std::function<double(double, double)> custom;  // overrides mode when set

    double phi(double theta, double varphi) const;
};

/// Right circular cone of half-angle alpha truncated at slant height R, flat R^3.
struct RightCone3D {
    double alpha = 0.5;
    double R = 1.0;
};

using SubmanifoldFamily = std::variant<Slice, RadialCone, GeodesicSphere, RadialGraph, RightCone3D>;

std::string family_name(const SubmanifoldFamily& f);

/// Quadrature mesh of a compact submanifold. Struct of arrays, one entry per node.
/// H is the normalized mean curvature vector (trace of II divided by k).
struct SubmanifoldMesh {
    SubmanifoldFamily family;
    ManifoldSpec spec;
    int k = 0;
    int chart_dim = 0;  // angles stored per node
    int resolution = 0;

    std::vector<double> r;
    std::vector<double> angles;
    std::vector<double> weight;
    std::vector<double> H_norm;
    std::vector<double> H_dot_grad_r;
    std::vector<double> grad_r_sq;
    std::vector<double> cell_extent;  // radial half-width of each cell (graphs)

    std::vector<double> boundary_r;
    std::vector<double> boundary_angles;
    std::vector<double> boundary_weight;

    double r_lo = 0.0;  // radial extent of the submanifold
    double r_hi = 0.0;
    bool closed = false;
    bool force_minimal = false;
    bool clipped = false;  // truncated graph: boundary along the cut is not resolved

    std::size_t size() const { return r.size(); }
};

SubmanifoldMesh mesh_slice(const WarpProfile& p, double s, int resolution);
SubmanifoldMesh mesh_cone(const WarpProfile& p, const RadialCone& cone, int resolution);
SubmanifoldMesh mesh_geodesic_sphere(const WarpProfile& p, double radius, int resolution);
SubmanifoldMesh mesh_radial_graph(const WarpProfile& p, const RadialGraph& graph, int resolution);
SubmanifoldMesh mesh_right_cone3d(const WarpProfile& p, const RightCone3D& cone, int resolution);
SubmanifoldMesh make_mesh(const WarpProfile& p, const SubmanifoldFamily& f, int resolution);

/// Debug hook: zeroes the mean curvature data (used to exhibit nonexistence of
/// closed minimal submanifolds).
SubmanifoldMesh force_minimal(SubmanifoldMesh mesh);

/// Sigma intersected with B_r = {r <= r_cut}. Slices and spheres are all-or-nothing,
/// cones are rebuilt on the shortened radial interval, graph cells straddling the cut
/// are clipped linearly. Throws EmptyResult when nothing remains.
SubmanifoldMesh truncate(const SubmanifoldMesh& mesh, const WarpProfile& p, double r_cut);

struct GeometricMoments {
    double vol = 0.0;
    double bvol = 0.0;
    double int_H = 0.0;                   // int |H|
    double int_ric_grad = 0.0;            // int ric(grad r) |grad_S r|^2
    double int_h = 0.0;
    double int_hprime = 0.0;
    double int_H_dot_quotient = 0.0;      // int <H, grad r> h/h'
    double int_boundary_quotient = 0.0;   // int_dS h/h'
    double d_sigma = 0.0;                 // min h over Sigma
    double R_sigma = 0.0;                 // max h over Sigma
    double int_H_quotient = 0.0;          // int |H| h/h'
    double int_quotient_sq_grad = 0.0;    // int (h/h')^2 |grad_S r|^2
    double int_ric_quotient_sq_grad = 0.0;
    double int_ric = 0.0;
    double int_scal = 0.0;
    double int_minkowski = 0.0;           // int h' + h <H, grad r>
    double r_min = 0.0;
    double r_max = 0.0;
    double max_H = 0.0;
    double min_H_dot = 0.0;
};

/// OpenMP kernel with deterministic block-pairwise summation.
GeometricMoments moments(const SubmanifoldMesh& mesh, const WarpProfile& p);

/// Plain-text export: header then one node per line (r, angles..., weight).
std::string mesh_to_text(const SubmanifoldMesh& mesh);

} // namespace warplab
