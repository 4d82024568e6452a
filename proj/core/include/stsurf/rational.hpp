#ifndef STSURF_RATIONAL_HPP
#define STSURF_RATIONAL_HPP

#include <optional>
#include <utility>
#include <vector>

#include "stsurf/poly.hpp"

namespace stsurf {

/// One summand of a partial fraction decomposition: either coeff/(z-center)^power
/// or coeff * z^power.
struct FractionTerm {
    enum class Kind { PolePower, Monomial };
    Kind kind = Kind::Monomial;
    Complex center{0};
    int power = 0;
    Complex coeff{0};

    Complex eval(Complex z) const;
};

/// Reduced ratio of two complex polynomials, a holomorphic map of the Riemann
/// sphere to itself. The denominator is kept monic; numerator and denominator
/// share no root within the clustering tolerance.
class RationalMap {
public:
    RationalMap() : num_(Poly::constant(Complex(0))), den_(Poly::constant(Complex(1))) {}
    RationalMap(Poly num, Poly den);

    static RationalMap constant(Complex c) { return RationalMap(Poly::constant(c), Poly::constant(Complex(1))); }
    static RationalMap identity() { return RationalMap(Poly::identity(), Poly::constant(Complex(1))); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.degree() == 0 && den_.degree() == 0; }

    /// Topological degree: max(deg num, deg den).
    int degree() const { return std::max(num_.degree(), den_.degree()); }

    /// Value on the sphere; 0/0 cannot occur on the reduced form.
    ExtComplex eval(const ExtComplex& z) const;
    /// Convenience for finite sample points away from poles.
    Complex eval_finite(Complex z) const { return num_.eval(z) / den_.eval(z); }

    RationalMap derivative() const;
    RationalMap operator+(const RationalMap& o) const;
    RationalMap operator-(const RationalMap& o) const;
    RationalMap operator*(const RationalMap& o) const;
    RationalMap operator*(Complex s) const;
    RationalMap reciprocal() const;

    /// g with g(z) = conj(f(conj z)): coefficient-wise conjugation.
    RationalMap conj_map() const;
    /// f(1/z) as a rational map.
    RationalMap invert_arg() const;

    /// Order of f at p: positive = zero of that order, negative = pole order,
    /// 0 = finite nonzero value. At infinity the order is deg den - deg num.
    int order_at(const ExtComplex& p) const;

private:
    Poly num_, den_;
};

/// All zeros (positive order) and poles (negative order) of f on the sphere;
/// the orders sum to zero. f must be nonzero.
std::vector<std::pair<ExtComplex, int>> zeros_poles(const RationalMap& f);

/// Coefficient of (z-p)^{-1} in the Laurent expansion at p; 0 at a regular
/// point. At p = infinity the residue is taken so that the sum over the whole
/// sphere vanishes (residue of the form f dz at infinity).
Complex residue(const RationalMap& f, const ExtComplex& p);

/// Residue at p of the 1-form f dz (identical to residue() at finite p; the
/// same value at infinity).
Complex form_residue(const RationalMap& f, const ExtComplex& p);

/// Order of the 1-form f dz at p (the chart correction shifts the order at
/// infinity by -2).
int form_order_at(const RationalMap& f, const ExtComplex& p);

/// Exact decomposition of f into pole powers and monomials; re-summing the
/// terms reproduces f. Throws if two denominator root clusters are ambiguously
/// close (never merges silently).
std::vector<FractionTerm> partial_fractions(const RationalMap& f);

Complex eval_terms(const std::vector<FractionTerm>& terms, Complex z);

/// g(z) = conj(f(-1/conj z)): pullback under the antipodal involution
/// composed with conjugation. An involution on rational maps.
RationalMap involution_pullback(const RationalMap& f);

/// Fractional linear transformation with ad - bc = 1 (rescaled on
/// construction; det 0 rejected).
struct MobiusTransform {
    Complex a{1}, b{0}, c{0}, d{1};
    MobiusTransform() = default;
    MobiusTransform(Complex a_, Complex b_, Complex c_, Complex d_);

    ExtComplex apply(const ExtComplex& z) const;
    /// (a f + b) / (c f + d)
    RationalMap apply(const RationalMap& f) const;
};

/// Simultaneous change of Weierstrass data under a Lorentz rotation:
/// phi -> (a phi + b)/(c phi + d), psi -> (conj a psi + conj b)/(conj c psi + conj d),
/// h -> (c phi + d)(conj c psi + conj d) h.
struct WeierstrassTriple {
    RationalMap phi, psi, h;
};
WeierstrassTriple mobius_apply_data(const MobiusTransform& A, const RationalMap& phi,
                                    const RationalMap& psi, const RationalMap& h);

} // namespace stsurf

#endif
