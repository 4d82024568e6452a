#ifndef STSURF_CURVATURE_QUADRATURE_HPP
#define STSURF_CURVATURE_QUADRATURE_HPP

#include <iosfwd>
#include <optional>

#include "stsurf/weierstrass.hpp"

namespace stsurf {

struct QuadratureConfig {
    double inner_radius = 1e-3; ///< chart-local cutoff around each end
    double outer_radius = 1.0;  ///< unit-disk charts unless punctures force a wider split
    int radial_nodes = 64;      ///< level-0 cells per chart
    int angular_nodes = 64;
    int refinement_levels = 4;  ///< grid doublings after level 0
    double target_rel_error = 1e-3;

    void validate() const;
};

struct QuadratureLevel {
    int level = 0;
    int n_r = 0, n_t = 0;
    double totalK = 0.0;     ///< -int K at this level (cover)
    double totalKperp = 0.0; ///< int K-perp at this level
    double total_abs = 0.0;  ///< int |density|, the absolute curvature mass
};

struct CurvatureQuadrature {
    double totalK = 0.0;
    double totalKperp = 0.0;
    double total_abs = 0.0;
    double error_estimate = 0.0; ///< absolute, from the last refinement step
    bool converged = false;
    std::optional<double> quotient; ///< totalK / 2, for verified antipodal data
    double chartA = 0.0, chartB = 0.0; ///< -K split between the two charts
    std::vector<QuadratureLevel> levels;
};

/// Pointwise curvature density in the du dv area element:
/// (-K + i K-perp) e^{2w} = 4 phi'(z) conj(psi'(z)) / (phi(z) - conj(psi(z)))^2,
/// evaluated as 4 (phi'/delta)(conj(psi')/delta) so huge intermediate
/// magnitudes cancel. Throws at a singular point.
Complex curvature_density(const WeierstrassData& data, Complex z);

/// Adaptive polar quadrature of the curvature density over the punctured
/// sphere: two polar charts, geometric radial grading toward the ends,
/// exclusion disks with local polar rings around punctures away from the
/// chart centers, Richardson extrapolation across grid doublings. The totals
/// are over the oriented double cover.
CurvatureQuadrature integrate_curvature(const WeierstrassData& data,
                                        const QuadratureConfig& config = {},
                                        bool involution_verified = false);

/// Convergence table as CSV: level, n_r, n_t, totalK, totalKperp, total_abs.
void write_convergence_csv(const CurvatureQuadrature& result, std::ostream& os);

} // namespace stsurf

#endif
