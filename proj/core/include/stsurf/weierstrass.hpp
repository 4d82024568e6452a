#ifndef STSURF_WEIERSTRASS_HPP
#define STSURF_WEIERSTRASS_HPP

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stsurf/rational.hpp"

namespace stsurf {

/// Evaluator pair for a non-rational map. The factory checks the derivative
/// against central finite differences at construction.
struct GaussMapCallable {
    std::function<Complex(Complex)> evaluate;
    std::function<Complex(Complex)> derivative;
    std::string description;
};

GaussMapCallable make_checked_callable(std::function<Complex(Complex)> evaluate,
                                       std::function<Complex(Complex)> derivative,
                                       std::string description);

/// Weierstrass data for a spacelike zero-mean-curvature surface in R^4_1:
/// Gauss maps phi, psi and height differential dh = h(z) dz on the sphere
/// punctured at the listed ends. Either the rational triple or the callable
/// triple is populated.
struct WeierstrassData {
    RationalMap phi, psi, h;
    bool is_rational = true;

    GaussMapCallable phi_fn, psi_fn, h_fn;
    std::string callable_name;
    std::map<std::string, double> callable_params;

    std::vector<ExtComplex> punctures;
    bool involution_antipodal = false;
    std::string metadata;

    ExtComplex eval_phi(const ExtComplex& z) const;
    ExtComplex eval_psi(const ExtComplex& z) const;
    Complex phi_at(Complex z) const;
    Complex psi_at(Complex z) const;
    Complex h_at(Complex z) const;
    Complex phi_prime(Complex z) const;
    Complex psi_prime(Complex z) const;

    bool is_puncture(const ExtComplex& p, double radius = 1e-9) const;
};

/// Punctures pairwise distinct, neither Gauss map constant. Throws
/// std::invalid_argument on violation.
void validate_data_shape(const WeierstrassData& data);

/// The four components of x_z dz: ((phi+psi)h, -i(phi-psi)h, (1-phi psi)h,
/// (1+phi psi)h). Rational data only.
std::array<RationalMap, 4> xz_components(const WeierstrassData& data);

/// x_z at a finite non-puncture point, for rational or callable data.
std::array<Complex, 4> xz_eval(const WeierstrassData& data, Complex z);

// ---------------------------------------------------------------------------
// Regularity (poles of the Gauss maps vs zeros of dh)

struct RegularityIssue {
    ExtComplex point;
    std::string what;
};

struct RegularityReport {
    bool applicable = true; ///< false for non-rational data (structure not enumerable)
    std::vector<RegularityIssue> coincident_poles; ///< poles of phi and psi meeting off the ends
    std::vector<RegularityIssue> dh_mismatches;    ///< dh zero/pole-order mismatches off the ends
    std::vector<RegularityIssue> stray_xz_poles;   ///< poles of x_z dz outside the puncture set
    std::string note; ///< the global phi != conj(psi) scan is a separate pass
    bool pass() const
    {
        return coincident_poles.empty() && dh_mismatches.empty() && stray_xz_poles.empty();
    }
};

RegularityReport check_regularity(const WeierstrassData& data);

// ---------------------------------------------------------------------------
// Periods (residues of h, phi h, psi h, phi psi h at each end)

struct PunctureResidues {
    ExtComplex point;
    Complex res_h, res_phih, res_psih, res_phipsih;
    /// |2 pi i Res(phi h) + conj(2 pi i Res(psi h))|
    double horizontal_defect = 0.0;
    /// |Re(2 pi i Res(h))| and |Re(2 pi i Res(phi psi h))|
    double vertical_defect_h = 0.0;
    double vertical_defect_phipsih = 0.0;
};

struct PeriodReport {
    std::vector<PunctureResidues> per_puncture;
    double tolerance = 1e-9;
    bool horizontal_pass = true;
    bool vertical_pass = true;
    bool pass() const { return horizontal_pass && vertical_pass; }
};

/// Throws std::domain_error for non-rational data (periods are then numeric
/// loop integrals; see the quadrature and mesh modules).
PeriodReport check_periods(const WeierstrassData& data, double tol = 1e-9);

// ---------------------------------------------------------------------------
// End classification and indices

enum class EndKind { Regular, GoodSingular, BadSingular };

struct EndReport {
    ExtComplex point;
    EndKind kind = EndKind::Regular;
    ExtComplex value;      ///< common value phi(p) = conj(psi(p)) at a singular end
    int m = 0, n = 0;      ///< multiplicities of phi and psi at the common value
    int ind = 0;           ///< m if m < n, -n if m > n, 0 at regular ends
    int ind_plus = 0;      ///< |ind|
    int ind10 = 0, ind01 = 0; ///< (ind+ +- ind)/2
    int d = 0;             ///< pole order of x_z dz at p, minus 1
    int d_tilde = 0;       ///< d - ind+
    bool complete = false; ///< d_tilde >= 1
};

EndReport classify_end(const WeierstrassData& data, const ExtComplex& p);

struct EndMultiplicity {
    int d = 0;
    int d_tilde = 0;
    bool complete = false;
};
EndMultiplicity end_multiplicity(const WeierstrassData& data, const ExtComplex& p);

// ---------------------------------------------------------------------------
// Total curvature via the index formulas

struct CurvatureReport {
    double by_deg_phi = 0.0;     ///< -int K over the double cover, in radians^0 (multiple of pi)
    double by_deg_psi = 0.0;
    double by_jorge_meeks = 0.0;
    bool agreement = false;
    std::optional<double> quotient_value; ///< cover value / 2, only for verified involution data
    int n_deg_phi = 0, n_deg_psi = 0, n_jorge_meeks = 0; ///< the integer multiples of pi
    std::vector<EndReport> ends;
};

/// Index-formula total curvature (rational data, no bad singular ends, all
/// ends complete). `involution_verified` gates the quotient output; pass the
/// result of the involution check, never the data's own flag.
CurvatureReport total_curvature(const WeierstrassData& data, bool involution_verified = false);

// ---------------------------------------------------------------------------
// Catalog of built-in families

/// Moebius-strip family phi = z^{2m} (z-lambda)/(z-conj lambda),
/// |lambda| = 1, lambda != +-1, m >= 1.
WeierstrassData catalog_meeks(Complex lambda, int m);

/// One-parameter family with a good singular end at 0 (eps > 0):
/// phi = z(z-1)/(z^4 + (1+eps) z^3 + sqrt(2 eps + eps^2)).
WeierstrassData catalog_epsilon(double eps);

/// Essential-singularity family phi = z^{2p-1} e^{(z-1/z)/2}, p >= 2
/// (callable-backed).
WeierstrassData catalog_essential(int p);

/// Four-punctured candidate with two regular and two good singular ends;
/// violates the global regularity condition at four interior points.
WeierstrassData catalog_section4();

/// Dispatcher: name in {meeks, epsilon_family, essential, section4_candidate}
/// with parameters lambda_re/lambda_im/m, eps, p.
WeierstrassData catalog(const std::string& name, const std::map<std::string, double>& params);

} // namespace stsurf

#endif
