#pragma once

#include "warplab/warping.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace warplab {

struct SSThresholds {
    double s0 = 0.0;
    double s1 = kInf;
    double quotient = 0.0;               // (mn/2)^(1/(n-2)): h/h' turns from decreasing to increasing
    std::optional<double> ricci;          // (m(n-2)/(2c))^(1/n) when c > 0
};

SSThresholds ss_thresholds(const ManifoldSpec& spec);

struct RNThresholds {
    double s0 = 0.0;
    double s2 = 0.0;  // alpha1^(-1/(n-2)): h/h' decreasing on (s0, s2), increasing after
    double s3 = 0.0;  // alpha2^(-1/(n-2)) < s0
    double alpha1 = 0.0, alpha2 = 0.0;  // roots of 1 - (mn/2)u + (n-1)q^2 u^2
    double beta1 = 0.0, beta2 = 0.0;    // roots of 1 - m u + q^2 u^2
};

/// Throws OrderingViolation unless alpha1 < beta1 < alpha2 < beta2.
RNThresholds rn_thresholds(const ManifoldSpec& spec);

/// Numerator of d/dr(h/h') = 1 - h h''/h'^2 (times h'^2): the polynomial
/// 1 - (mn/2)h^(2-n) (SS), 1 - (mn/2)u + (n-1)q^2u^2 with u = h^(2-n) (RN),
/// or h'^2 - h h'' (closed-form families).
double quotient_derivative_numerator(const WarpProfile& p, double r);
int quotient_derivative_sign(const WarpProfile& p, double r);

/// u'(r) for u = r + h/h', i.e. 2 - h h''/h'^2.
double u_derivative(const WarpProfile& p, double r);

struct SignInterval {
    double lo = 0.0;
    double hi = 0.0;
    int sign = 0;
};

/// Sign pattern of f on [lo, hi]: 1024-point scan, bisection of each sign change to 1e-10.
std::vector<SignInterval> sign_intervals(const std::function<double(double)>& f, double lo, double hi,
                                         int samples = 1024, double tol = 1e-10);

std::vector<SignInterval> u_monotonicity(const WarpProfile& p, double r_lo, double r_hi);
std::vector<SignInterval> quotient_monotonicity(const WarpProfile& p, double r_lo, double r_hi);

/// Positive roots of B^2(p+1)(p+2)t^2 - B(p+1)(p-4)t + 2 in t = r^p, returned as r values.
std::vector<double> power_perturbed_u_roots(const ManifoldSpec& spec);

/// C1(d) = d sqrt(Q) / ((1 - (mn/2)d^(2-n)) + (k-1)Q), Q = 1 - m d^(2-n) - c d^2.
/// SpaceForm is accepted as the m = 0 limit.
double c1_constant(const ManifoldSpec& spec, double d, int k);

/// Zero of the C1 denominator in (s0, threshold): C1 > 0 to its right.
double c1_onset(const ManifoldSpec& spec, int k);

/// C2(d) = (n-2)/(2d^(n-2)) (m - 2q^2/d^(n-2)) / (1 - m d^(2-n) + q^2 d^(4-2n)).
double c2_constant(const ManifoldSpec& spec, double d);

/// Area radius where C2 reaches k, if any, on (s0, s_hi).
std::optional<double> c2_crossing(const ManifoldSpec& spec, int k, double s_hi);

/// Q(d) = 1 - m d^(2-n) - c d^2 for SS (m = 0 for SpaceForm), or the RN analogue.
double horizon_function(const ManifoldSpec& spec, double d);

struct RegionReport {
    ManifoldSpec spec;
    int k = 0;
    std::vector<std::pair<std::string, double>> thresholds;
    std::vector<SignInterval> quotient_intervals;
    std::vector<SignInterval> u_intervals;
    std::vector<std::pair<std::string, double>> constants;
};

RegionReport region_report(const WarpProfile& p, int k);

} // namespace warplab
