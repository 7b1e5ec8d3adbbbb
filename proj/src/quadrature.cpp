#include "warplab/quadrature.hpp"

#include "warplab/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace warplab {

GaussRule gauss_legendre(int n)
{
    if (n < 1) fail(ErrorKind::InvalidParameter, "quadrature order n>=1");
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) { p1 = x; p0 = 1.0; }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // recompute derivative at the converged node
        double p0 = 1.0, p1 = x;
        for (int j = 2; j <= n; ++j) {
            double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
            p0 = p1;
            p1 = p2;
        }
        if (n == 1) { p1 = x; p0 = 1.0; }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

namespace {

const GaussRule& gl10()
{
    static const GaussRule rule = gauss_legendre(10);
    return rule;
}

double panel(const std::function<double(double)>& f, double a, double b)
{
    const auto& g = gl10();
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) s += g.weights[i] * f(mid + half * g.nodes[i]);
    return s * half;
}

double adapt(const std::function<double(double)>& f, double a, double b, double whole, double tol,
             int depth)
{
    double mid = 0.5 * (a + b);
    double left = panel(f, a, mid), right = panel(f, mid, b);
    double both = left + right;
    if (std::abs(both - whole) <= tol || std::abs(b - a) < 1e-300) return both;
    if (depth <= 0) fail(ErrorKind::IntegrationFailure, "adaptive quadrature depth exhausted");
    return adapt(f, a, mid, left, 0.5 * tol, depth - 1) + adapt(f, mid, b, right, 0.5 * tol, depth - 1);
}

} // namespace

double integrate_gl10(const std::function<double(double)>& f, double a, double b)
{
    return panel(f, a, b);
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double rel_tol,
                          int max_depth)
{
    if (a == b) return 0.0;
    double whole = panel(f, a, b);
    if (!std::isfinite(whole)) fail(ErrorKind::IntegrationFailure, "non-finite integrand");
    double tol = rel_tol * std::max(std::abs(whole), 1e-300);
    double v = adapt(f, a, b, whole, tol, max_depth);
    if (!std::isfinite(v)) fail(ErrorKind::IntegrationFailure, "non-finite integral");
    return v;
}

void CompensatedSum::add(double x)
{
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
        comp_ += (sum_ - t) + x;
    else
        comp_ += (x - t) + sum_;
    sum_ = t;
}

GaussRule gauss_gegenbauer(int n, double lambda)
{
    if (n < 1) fail(ErrorKind::InvalidParameter, "quadrature order n>=1");
    if (!(lambda > 0.0)) fail(ErrorKind::InvalidParameter, "lambda>0");
    // monic recurrence p_{k+1} = t p_k - beta_k p_{k-1}
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd off(std::max(n - 1, 0));
    for (int k = 1; k < n; ++k)
        off[k - 1] = std::sqrt(k * (k + 2.0 * lambda - 1.0) / (4.0 * (k + lambda) * (k + lambda - 1.0)));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success) fail(ErrorKind::IntegrationFailure, "Gauss-Gegenbauer eigenproblem");
    const double mu0 = std::sqrt(std::numbers::pi) * std::exp(std::lgamma(lambda + 0.5) - std::lgamma(lambda + 1.0));
    GaussRule rule;
    for (int i = 0; i < n; ++i) {
        double v = es.eigenvectors()(0, i);
        rule.nodes.push_back(es.eigenvalues()[i]);
        rule.weights.push_back(mu0 * v * v);
    }
    // exact symmetry about t = 0
    for (int i = 0; i < n / 2; ++i) {
        double x = 0.5 * (rule.nodes[n - 1 - i] - rule.nodes[i]);
        double w = 0.5 * (rule.weights[i] + rule.weights[n - 1 - i]);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

SphereQuadrature sphere_quadrature(int d, int per_axis)
{
    if (d < 1 || d > 5) fail(ErrorKind::InvalidParameter, "sphere dimension 1<=d<=5");
    if (per_axis < 2) fail(ErrorKind::InvalidParameter, "per-axis nodes >= 2");
    SphereQuadrature q;
    q.dim = d;

    // 1D factors: polar angles theta_j carry sin^(d-j)
    struct Factor {
        std::vector<double> x, w;
    };
    std::vector<Factor> factors;
    for (int j = 1; j <= d - 1; ++j) {
        const GaussRule g = gauss_gegenbauer(per_axis, 0.5 * (d - j));
        Factor f;
        for (int i = 0; i < per_axis; ++i) {
            f.x.push_back(std::acos(-g.nodes[i]));
            f.w.push_back(g.weights[i]);
        }
        factors.push_back(std::move(f));
    }
    int n_phi = per_axis % 2 == 0 ? per_axis : per_axis + 1;
    if (d == 1) n_phi = std::max(n_phi, 2 * per_axis);
    Factor az;
    for (int i = 0; i < n_phi; ++i) {
        az.x.push_back(2.0 * std::numbers::pi * i / n_phi);
        az.w.push_back(2.0 * std::numbers::pi / n_phi);
    }
    factors.push_back(std::move(az));

    std::size_t total = 1;
    for (const auto& f : factors) total *= f.x.size();
    q.angles.resize(total * d);
    q.weights.resize(total);
    std::vector<std::size_t> idx(factors.size(), 0);
    for (std::size_t p = 0; p < total; ++p) {
        double w = 1.0;
        for (std::size_t a = 0; a < factors.size(); ++a) {
            q.angles[p * d + a] = factors[a].x[idx[a]];
            w *= factors[a].w[idx[a]];
        }
        q.weights[p] = w;
        for (std::size_t a = factors.size(); a-- > 0;) {
            if (++idx[a] < factors[a].x.size()) break;
            idx[a] = 0;
        }
    }
    return q;
}

double sphere_area(int d)
{
    return 2.0 * std::pow(std::numbers::pi, 0.5 * (d + 1)) / std::tgamma(0.5 * (d + 1));
}

double unit_ball_volume(int k)
{
    return std::pow(std::numbers::pi, 0.5 * k) / std::tgamma(0.5 * k + 1.0);
}

std::vector<double> sphere_point(const double* angles, int d)
{
    std::vector<double> x(d + 1);
    double prod = 1.0;
    for (int j = 0; j < d - 1; ++j) {
        x[j] = prod * std::cos(angles[j]);
        prod *= std::sin(angles[j]);
    }
    x[d - 1] = prod * std::cos(angles[d - 1]);
    x[d] = prod * std::sin(angles[d - 1]);
    return x;
}

} // namespace warplab
