#pragma once

#include "warplab/submanifolds.hpp"

#include <string>
#include <utility>
#include <vector>

namespace warplab {

enum class Verdict { Holds, Equality, Violated, PreconditionUnmet };

const char* to_string(Verdict v);

struct Tolerances {
    double eq_tol = 1e-6;     // |slack| < eq_tol |lhs|  => Equality
    double check_tol = 1e-3;  // slack < -check_tol |lhs| => Violated
    double mono_tol = 1e-4;   // relative per-step drop allowed in monotone traces
};

struct Precondition {
    std::string name;
    bool pass = false;
};

/// lhs <= rhs, slack = rhs - lhs.
struct InequalityReport {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    std::vector<std::pair<std::string, double>> terms;
    double slack = 0.0;
    Verdict verdict = Verdict::Holds;
    std::vector<Precondition> preconditions;
    bool equality_expected = false;
};

/// Sets slack and verdict from lhs, rhs and the preconditions.
void finalize(InequalityReport& rep, const Tolerances& tol);

/// |Sigma| <= (1/k)[int_dS h/h' + int <-kH, grad r> h/h'] - 1/(k(n-1)) int ric (h/h')^2 |grad_S r|^2
InequalityReport check_fundamental(const SubmanifoldMesh& mesh, const WarpProfile& p,
                                   const Tolerances& tol = {}, bool include_ricci = true);

/// int h' + h <H, grad r> = 0 on closed submanifolds. Holds when the residual is
/// below eq_tol |Sigma|; closed minimal submanifolds therefore show up as Violated.
InequalityReport check_hsiung_minkowski(const SubmanifoldMesh& mesh, const WarpProfile& p,
                                        const Tolerances& tol = {});

enum class SSCase { I, I_C1, II, III, IV, IV_Hyperbolic };
InequalityReport check_thm_ss(const SubmanifoldMesh& mesh, const WarpProfile& p, SSCase c,
                              const Tolerances& tol = {});

/// Hyperbolic (c < 0) or hemisphere (c > 0) corollary, chosen by the sign of c.
InequalityReport check_spaceform(const SubmanifoldMesh& mesh, const WarpProfile& p,
                                     const Tolerances& tol = {});

/// The *_C2 forms divide by (k - C2(d)) and need C2(d) < k; the printed
/// (C2 - k) value is reported in the terms.
enum class RNCase { I, I_C2, II, II_C2 };
InequalityReport check_thm_rn(const SubmanifoldMesh& mesh, const WarpProfile& p, RNCase c,
                              const Tolerances& tol = {});

/// Annular band {s_lo <= h <= s_hi}, an n-dimensional domain.
struct Band {
    double s_lo = 0.0;
    double s_hi = 0.0;
};

struct BandMeasures {
    double volume = 0.0;
    double boundary = 0.0;
};

BandMeasures band_measures(const WarpProfile& p, const Band& band);

/// Domain corollaries (k = n) for SS (SpaceForm as m = 0) and RN.
std::vector<InequalityReport> check_domain_corollaries(const WarpProfile& p, const Band& band,
                                                       const Tolerances& tol = {});

enum class MinimalCase { I, II };
/// 2 pi A <= L^2 + (A/(n-1)) int ric                       (u nondecreasing)
/// 2 pi A <= L^2 + 2A/((n-1)(n-2)) int (scal - 2 ric)      (u nonincreasing)
InequalityReport check_minimal_surface(const SubmanifoldMesh& mesh, const WarpProfile& p, MinimalCase c,
                             const Tolerances& tol = {});

/// Runs a case by name: fundamental, fundamental-no-ricci, hsiung-minkowski, ss-i, ss-i-c1,
/// ss-ii, ss-iii, ss-iv, ss-iv-hyperbolic, spaceform, rn-i, rn-i-c2, rn-ii, rn-ii-c2,
/// minimal-i, minimal-ii.
InequalityReport run_case(const std::string& name, const SubmanifoldMesh& mesh, const WarpProfile& p,
                          const Tolerances& tol = {});

const std::vector<std::string>& case_names();

/// Cases that apply to the mesh's region when none are requested explicitly.
std::vector<std::string> default_cases(const SubmanifoldMesh& mesh, const WarpProfile& p);

} // namespace warplab
