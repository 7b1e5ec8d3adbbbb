#pragma once

#include "warplab/manifold.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace warplab {

namespace detail {
struct ProfileData;
}

/// Tabulated warping function. Closed-form families are evaluated directly; the
/// two ODE families are evaluated by inverting r = F(s) with monotone Hermite
/// interpolation polished by Newton steps against the quadrature.
class WarpProfile {
public:
    WarpProfile() = default;

    const ManifoldSpec& spec() const;
    int n() const { return spec().n; }

    double h(double r) const;
    double h_prime(double r) const;
    double h_second(double r) const;
    /// h / h'
    double quotient(double r) const;

    /// Inverse of h: the r with h(r) = s.
    double radial_coordinate(double s) const;

    double r_max() const;
    double s0() const;     // h(0)
    double s_max() const;  // h(r_max)
    int resolution() const;
    bool closed_form() const;

    /// Whether h extends to an odd function through r = 0 (smoothness at the pole).
    /// Empty for families with h(0) > 0.
    std::optional<bool> odd_extension() const;

    const std::vector<double>& r_nodes() const;
    const std::vector<double>& h_nodes() const;
    const std::vector<double>& h_prime_nodes() const;
    const std::vector<double>& h_second_nodes() const;

    explicit WarpProfile(std::shared_ptr<const detail::ProfileData> d) : d_(std::move(d)) {}

private:
    std::shared_ptr<const detail::ProfileData> d_;
};

constexpr int kDefaultResolution = 4096;

/// Endpoints including r_end for the ODE families (F(s1) when s1 is finite).
DomainEndpoints domain_endpoints(const ManifoldSpec& spec);

/// Default extent: h(r_max) = 50 s0 for the ODE families (capped just below s1),
/// r = 10 or the domain end (minus a 1e-6 relative margin) otherwise.
double default_r_max(const ManifoldSpec& spec);

WarpProfile build_profile(const ManifoldSpec& spec, std::optional<double> r_max = std::nullopt,
                          int resolution = kDefaultResolution);

/// Profile extending until h reaches s_max.
WarpProfile build_profile_to_area_radius(const ManifoldSpec& spec, double s_max,
                                         int resolution = kDefaultResolution);

/// F(s) computed from scratch by quadrature (no profile needed).
double radial_coordinate(const ManifoldSpec& spec, double s);

inline double h_at(const WarpProfile& p, double r) { return p.h(r); }
inline double h_prime_at(const WarpProfile& p, double r) { return p.h_prime(r); }
inline double h_second_at(const WarpProfile& p, double r) { return p.h_second(r); }
inline double radial_coordinate(const WarpProfile& p, double s) { return p.radial_coordinate(s); }

/// h''/h as a function of the area radius s for the ODE families.
double ode_second_ratio(const ManifoldSpec& spec, double s);

/// h'^2 as a function of s for the ODE families: 1 - m s^(2-n) - c s^2 or
/// 1 - m s^(2-n) + q^2 s^(4-2n).
double ode_rhs(const ManifoldSpec& spec, double s);

} // namespace warplab
