#ifndef STSURF_VECTOR_FORM_HPP
#define STSURF_VECTOR_FORM_HPP

#include <array>

#include "stsurf/weierstrass.hpp"

namespace stsurf {

/// Complexified vector in R^4_1 with the (+,+,+,-) inner product.
struct Vec4C {
    std::array<Complex, 4> x{Complex(0), Complex(0), Complex(0), Complex(0)};

    Complex& operator[](size_t i) { return x[i]; }
    const Complex& operator[](size_t i) const { return x[i]; }
    Vec4C operator+(const Vec4C& o) const;
    Vec4C operator*(Complex s) const;
    double norm() const;
    Vec4C conj() const;
    Vec4C real_part() const;
    Vec4C imag_part() const;
};

/// Bilinear Lorentz product u1 v1 + u2 v2 + u3 v3 - u4 v4, no conjugation.
Complex lorentz_dot(const Vec4C& u, const Vec4C& v);

/// Basis element of a vector-valued partial fraction sum: 1/(z-center)^power
/// or z^power.
struct VectorBasisTerm {
    bool pole = false;
    Complex center{0};
    int power = 0;
    Complex eval(Complex z) const;
    bool same(const VectorBasisTerm& o) const;
};

/// x_z as a finite sum of basis fractions and monomials with Vec4C
/// coefficients.
struct VectorForm {
    std::vector<std::pair<VectorBasisTerm, Vec4C>> terms;
    Vec4C eval(Complex z) const;
};

/// Partial-fraction assembly of x_z = ((phi+psi)h, -i(phi-psi)h,
/// (1-phi psi)h, (1+phi psi)h). Rational data only.
VectorForm xz_from_data(const WeierstrassData& data);

/// Expands <vf, vf> by cross-multiplying term pairs through the scalar
/// partial-fraction engine and accumulating per basis element; the Weierstrass
/// integrand satisfies <x_z, x_z> = 0 identically.
struct IsotropyReport {
    double max_coeff = 0.0;  ///< largest accumulated basis coefficient magnitude
    double scale = 0.0;      ///< largest intermediate contribution (conditioning)
    bool pass(double tol = 1e-9) const { return max_coeff <= tol; }
};
IsotropyReport check_isotropy(const VectorForm& vf);

/// Normal form of x_z at a good singular end p with ind = m, d~ = 1 and zero
/// flux: x_z = (sum alpha_{k+2} / (z-p)^{k+2}) v0 + v1/(z-p)^2 + O(1) with v0
/// real lightlike and v1 isotropic, <v0, v1> = 0.
struct LaurentNormalForm {
    Vec4C v0;
    Vec4C v1;
    std::vector<Complex> alphas; ///< alpha_3 .. alpha_{m+2}, alpha_{m+2} = 1
    bool degenerate_span_ok = false;
    double worst_residual = 0.0;
};
LaurentNormalForm laurent_normal_form(const VectorForm& vf, Complex p, int m);

/// Conformality obstruction for two regular ends at {0, inf, c, -1/c}:
/// assembles the six coefficient equations of <x_z, x_z> = 0 from partial
/// fractions, solves for the inner products, and tests the real constraints.
/// The verdict is infeasible for every real c != 0.
struct TwoEndObstructionReport {
    double c = 0.0;
    Complex v1u1_solved, v1u1bar_solved;
    double u1sq_solved = 0.0;
    Complex v1u1_closed, v1u1bar_closed;
    double u1sq_closed = 0.0;
    double solve_residual = 0.0;   ///< residual of the linear system
    double closed_form_gap = 0.0;  ///< max |solved - closed form|
    double alpha1 = 0.0, beta2 = 0.0;
    double g1 = 0.0, g2 = 0.0;     ///< (1+c^2)^2 - alpha1^2, (1+c^2)^2 - beta2^2
    double infeasibility_margin = 0.0; ///< lower bound on |a3 b3 - a4 b4|
    bool feasible = true;
};
TwoEndObstructionReport two_end_obstruction(double c);

} // namespace stsurf

#endif
