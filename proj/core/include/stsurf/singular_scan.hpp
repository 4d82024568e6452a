#ifndef STSURF_SINGULAR_SCAN_HPP
#define STSURF_SINGULAR_SCAN_HPP

#include "stsurf/weierstrass.hpp"

namespace stsurf {

/// A nontrivial solution of phi(z) = conj(psi(z)) away from the punctures.
struct SingularPoint {
    ExtComplex z;
    ExtComplex value; ///< the common value t
    int m = 1, n = 1; ///< multiplicities of phi - t and psi - conj t
    enum class Kind { Good, Bad } kind = Kind::Good;
    double residual = 0.0; ///< |phi(z) - conj(psi(z))| after refinement
};

struct ScanGrid {
    int n = 512;                      ///< polar resolution per chart (n x n)
    double puncture_exclusion = 1e-4; ///< chart-local radius around punctures
    double accept_residual = 1e-8;
    double suspicious_threshold = 1e-3; ///< unconverged minima below this are reported
    int newton_max_iter = 60;
};

struct SuspiciousMinimum {
    ExtComplex z;
    double residual;
};

struct ScanResult {
    std::vector<SingularPoint> points; ///< sorted by |z|, then arg z
    std::vector<SuspiciousMinimum> suspicious;
    int grid_n = 0;
    /// true when no singular point was found at this resolution; not a proof
    bool clean() const { return points.empty() && suspicious.empty(); }
};

/// Samples |phi - conj psi| on two polar charts covering the sphere, refines
/// grid minima by damped Newton on the two real unknowns, deduplicates, and
/// classifies multiplicities by winding numbers on small circles.
ScanResult scan_singular_points(const WeierstrassData& data, const ScanGrid& grid = {});

/// Grid minimum of the closure obstruction for the one-parameter singular-end
/// family, together with the analytic positivity bound
/// (|w|^2+1) - (eps + sqrt(2 eps + eps^2)) (|w|+2) minimized over |w| >= 0.
struct ObstructionScan {
    double eps = 0.0;
    double grid_min = 0.0;
    double argmin_r = 0.0, argmin_theta = 0.0;
    double analytic_bound = 0.0;
    bool bound_positive = false;
};
ObstructionScan epsilon_family_obstruction(double eps, int n_r = 400, int n_theta = 400);

/// Largest eps for which the analytic lower bound stays positive (bisection).
double obstruction_positive_eps_limit();

/// The singular pair of the four-punctured candidate: lambda0 = cos(2 theta0)
/// solves sqrt(3) sqrt(1-l^2) = 2l^2 + l - 1 on (1/2, 1) by bisection,
/// r0 > 1 solves r^2 + 1/r^2 = 2 l (2l^2 + 2l + 1), z0 = r0 e^{i theta0}.
struct CandidateRoot {
    double lambda0 = 0.0, theta0 = 0.0, r0 = 0.0;
    Complex z0, t;
    double eq_residual = 0.0;      ///< equation residual at lambda0
    double phi_psi_residual = 0.0; ///< |phi(z0) - conj(psi(z0))|
    std::vector<double> minus_branch_roots; ///< interior roots of the minus branch
};
CandidateRoot candidate_singular_root();

/// Residuals of the four symmetric-function identities for a monic quartic
/// against a claimed root set.
std::array<double, 4> viete_verify(const Poly& quartic, const std::array<Complex, 4>& roots);

} // namespace stsurf

#endif
