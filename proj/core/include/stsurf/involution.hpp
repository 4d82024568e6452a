#ifndef STSURF_INVOLUTION_HPP
#define STSURF_INVOLUTION_HPP

#include "stsurf/vector_form.hpp"
#include "stsurf/weierstrass.hpp"

namespace stsurf {

/// Verification of the antipodal symmetry phi(I(z)) = conj(psi(z)),
/// psi(I(z)) = conj(phi(z)), I*dh = conj(dh) with I(z) = -1/conj(z),
/// sampled on the circle pair |z| = 1/2 and |z| = 2.
struct InvolutionReport {
    double phi_symmetry_residual = 0.0;
    double psi_symmetry_residual = 0.0;
    double dh_symmetry_residual = 0.0;
    bool fixed_point_free = true;          ///< no puncture is its own antipode
    bool punctures_closed = true;          ///< the puncture set is I-invariant
    std::vector<std::pair<int, int>> puncture_pairing;
    bool structural_ok() const { return fixed_point_free && punctures_closed; }
    bool pass(double tol = 1e-9) const
    {
        return structural_ok() && phi_symmetry_residual <= tol &&
               psi_symmetry_residual <= tol && dh_symmetry_residual <= tol;
    }
};

InvolutionReport check_involution(const WeierstrassData& data);

/// Componentwise residues of x_z dz at p (the coefficient vector of
/// dz/(z-p)). Rational data only.
Vec4C residue_vector(const WeierstrassData& data, const ExtComplex& p);

/// Period/flux vector of an end: all four components of the loop period of
/// x_z dz must vanish for antipodally symmetric data.
struct FluxVector {
    std::array<double, 4> components{0, 0, 0, 0};
    double norm() const;
};

struct FluxCheck {
    ExtComplex point;
    FluxVector flux;                 ///< 2 Re(2 pi i ResVec), the closure defect
    double residue_imag_norm = 0.0;  ///< ||Im ResVec||: zero under the period conditions
    double residue_real_norm = 0.0;  ///< ||Re ResVec||: zero by the antipodal antisymmetry
    double pair_antisymmetry = 0.0;  ///< ||ResVec(I(p)) + conj(ResVec(p))||
    bool pass(double tol = 1e-9) const
    {
        return residue_imag_norm <= tol && residue_real_norm <= tol && pair_antisymmetry <= tol;
    }
};

struct FluxReport {
    std::vector<FluxCheck> per_end;
    bool pass(double tol = 1e-9) const
    {
        for (const auto& f : per_end)
            if (!f.pass(tol)) return false;
        return true;
    }
};

/// Requires the involution to have been verified first (the antisymmetry
/// sub-check quotes it).
FluxReport flux_vanishing_check(const WeierstrassData& data);

/// Topology of the quotient surface: genus-0 double cover with an even
/// puncture count descends to a projective plane minus half as many points.
struct QuotientReport {
    int cover_genus = 0;
    int cover_punctures = 0;
    int quotient_punctures = 0;
    int euler_characteristic = 0; ///< chi(P^2 minus k points) = 1 - k
    bool orientable = false;
    bool moebius_strip = false;   ///< one quotient end
    std::string description;
};

QuotientReport quotient_report(const WeierstrassData& data);

} // namespace stsurf

#endif
