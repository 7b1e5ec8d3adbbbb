#pragma once

#include <functional>
#include <vector>

namespace warplab {

struct GaussRule {
    std::vector<double> nodes;   // on [-1, 1], ascending
    std::vector<double> weights;
};

/// Gauss-Legendre rule with n points (Newton iteration on P_n).
GaussRule gauss_legendre(int n);

/// Cached 10-point rule on [a, b].
double integrate_gl10(const std::function<double(double)>& f, double a, double b);

/// Adaptive Gauss-Legendre: splits until the 10-point and 2x10-point panels agree.
/// Throws IntegrationFailure when max_depth is exhausted.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-14, int max_depth = 40);

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double x);
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Product quadrature on the unit sphere S^d, d >= 1, in hyperspherical angles
/// (theta_1, ..., theta_{d-1}, phi). A polar factor sin^e(theta) becomes the weight
/// (1 - t^2)^((e-1)/2) in t = cos(theta), integrated by the matching Gauss-Gegenbauer
/// rule. The azimuth uses the uniform rule.
struct SphereQuadrature {
    int dim = 0;                 // d
    std::vector<double> angles;  // d entries per node
    std::vector<double> weights;
    std::size_t size() const { return weights.size(); }
};

SphereQuadrature sphere_quadrature(int d, int per_axis);

/// Nodes and weights for int_{-1}^{1} f(t) (1 - t^2)^(lambda - 1/2) dt (Golub-Welsch).
GaussRule gauss_gegenbauer(int n, double lambda);

/// |S^d|
double sphere_area(int d);

/// Volume of the unit ball in R^k.
double unit_ball_volume(int k);

/// Map hyperspherical angles of S^d to a unit vector in R^{d+1}.
std::vector<double> sphere_point(const double* angles, int d);

} // namespace warplab
