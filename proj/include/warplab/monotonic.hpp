#pragma once

#include "warplab/verifiers.hpp"

#include <string>
#include <vector>

namespace warplab {

enum class TraceKind { V1, V2 };

const char* to_string(TraceKind k);

/// V(r) = e^{alpha r} h(r)^-k int_{Sigma cap B_r} w, with w = h (V1) or h' (V2).
struct MonotoneTrace {
    TraceKind kind = TraceKind::V1;
    double alpha = 0.0;
    std::vector<double> r_values;
    std::vector<double> V_values;
    std::vector<double> volumes;  // |Sigma cap B_r|
    std::vector<std::size_t> violations;  // i with V[i] < V[i-1] (1 - mono_tol)

    bool monotone() const { return violations.empty(); }
};

/// Smallest admissible mean-curvature bound: k max|H|.
double minimal_alpha(const SubmanifoldMesh& mesh, const WarpProfile& p);

/// |Sigma cap B_r| at each r; zero where the truncation is empty.
std::vector<double> volume_trace(const SubmanifoldMesh& mesh, const WarpProfile& p,
                                 const std::vector<double>& r_grid);

/// Requires alpha >= k max|H| (or alpha = 0 with <H, grad r> >= 0), h/h' nondecreasing
/// on the traced range, and r_grid inside the boundary-free part of Sigma.
/// Throws PreconditionUnmet otherwise.
MonotoneTrace trace_V1(const SubmanifoldMesh& mesh, const WarpProfile& p, double alpha,
                       const std::vector<double>& r_grid, const Tolerances& tol = {});
MonotoneTrace trace_V2(const SubmanifoldMesh& mesh, const WarpProfile& p, double alpha,
                       const std::vector<double>& r_grid, const Tolerances& tol = {});

struct LowerBound {
    std::string name;
    double value = 0.0;     // the bound
    double measured = 0.0;  // what it bounds
    bool applicable = false;
    bool pass = false;
};

struct LowerBoundReport {
    double r0 = 0.0;
    double r = 0.0;
    double alpha = 0.0;
    double volume = 0.0;  // |Sigma cap B_r|
    double C1 = 0.0;
    double C2 = 0.0;
    double B = 0.0;  // max h' over [r_min(Sigma), r]
    std::vector<LowerBound> bounds;
};

/// v1_bound, v2_bound, v2_bound_convex and, for pole-anchored Sigma in families with h(0) = 0, the
/// omega_k bound on int h'.
LowerBoundReport lower_bounds(const SubmanifoldMesh& mesh, const WarpProfile& p, double alpha, double r0,
                              double r, const Tolerances& tol = {});

enum class GrowthModel { Polynomial, Exponential };

const char* to_string(GrowthModel m);

struct GrowthFit {
    GrowthModel model = GrowthModel::Polynomial;
    double value = 0.0;  // order (polynomial) or rate (exponential)
    double window_lo = 0.0;
    double window_hi = 0.0;
    double residual = 0.0;  // rms of the log fit
    double reference = 0.0;
    std::size_t samples = 0;
    bool matches = false;  // |value - reference| <= 10% of reference
};

/// Least squares of log vol against log h (last decade of h) or against r (last half
/// of the trace). Throws WindowTooSmall when fewer than 4 usable samples remain or the
/// polynomial window does not span a decade.
GrowthFit growth_classify(const std::vector<double>& r_values, const std::vector<double>& volumes,
                          const WarpProfile& p, GrowthModel model, double reference);

/// Residual of h after the leading asymptotic terms.
struct AsymptoticReport {
    Family family = Family::SpaceForm;
    std::string variable;      // "sinh", "r" or "exact"
    double shift = 0.0;        // normalized radial coordinate minus profile r
    double expected_order = 0.0;
    double fitted_order = 0.0;
    double expected_coefficient = 0.0;
    double fitted_coefficient = 0.0;
    double window_lo = 0.0;    // area radius
    double window_hi = 0.0;
    std::size_t samples = 0;
    double max_abs_residual = 0.0;
    double fit_rms = 0.0;
};

/// SS with c < 0, RN with n >= 4, or a space form (exact, zero residual).
AsymptoticReport asymptotic_check(const WarpProfile& p, int samples = 64);

} // namespace warplab
