#pragma once

#include <limits>
#include <string>
#include <vector>

namespace warplab {

enum class Family {
    SpaceForm,
    DeSitterSchwarzschild,
    ReissnerNordstrom,
    PowerPerturbed,
    ArctanCylinder,
    RationalDecayCylinder,
    LogFactor,
};

enum class Fiber { Sphere, FlatTorus };

const char* to_string(Family f);
const char* to_string(Fiber f);
Family family_from_string(const std::string& s);
Fiber fiber_from_string(const std::string& s);

/// Parameters of a warped product M = I x_h N^{n-1}, metric dr^2 + h(r)^2 g_N.
/// Only the fields relevant to `family` are read.
struct ManifoldSpec {
    Family family = Family::SpaceForm;
    int n = 3;
    double c = 0.0;
    double m = 0.0;
    double q = 0.0;
    double B = 0.0;
    double p = 0.0;
    double K = 0.0;
    double a = 0.0;
    Fiber fiber = Fiber::Sphere;
};

struct ConstraintCheck {
    std::string name;   // e.g. "m>2q"
    double value;       // left-hand quantity
    double limit;       // bound it is compared to
    bool satisfied;
    bool binding;       // satisfied with relative margin below 1e-3
};

struct ValidatedSpec {
    ManifoldSpec spec;
    std::vector<ConstraintCheck> constraints;
};

/// Checks every family constraint; throws InvalidParameter naming the first violated one.
ValidatedSpec validate_spec(const ManifoldSpec& spec);

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Range of h (area radii) and of the radial coordinate.
struct DomainEndpoints {
    double s0 = 0.0;      // h(0+)
    double s1 = kInf;     // sup h over the domain
    double r_end = kInf;  // right end of the radial domain
};

/// Endpoints in closed form or by root bracketing; r_end is left infinite for the
/// ODE families (see domain_endpoints in warping.hpp).
DomainEndpoints area_radius_roots(const ManifoldSpec& spec);

/// True for the two families given by the area-radius ODE.
inline bool is_ode_family(Family f)
{
    return f == Family::DeSitterSchwarzschild || f == Family::ReissnerNordstrom;
}

/// sum_{j<k} s^j a^(k-1-j) / (s a)^k, i.e. (a^-k - s^-k)/(s - a) without cancellation.
double power_difference_quotient(double s, double a, int k);

double ipow(double x, int e);

} // namespace warplab
