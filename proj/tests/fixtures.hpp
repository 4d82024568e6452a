#ifndef STSURF_TESTS_FIXTURES_HPP
#define STSURF_TESTS_FIXTURES_HPP

#include "stsurf/weierstrass.hpp"

namespace stsurf_tests {

using namespace stsurf;

// The m = 2 branch of the one-good-singular-end construction with
// D = z^5 + 1: phi = z^2/(z^5+1), psi = z^3/(z^5-1), dh = i (z^10-1)/z^6 dz.
// phi psi dh = i dz/z regardless of the coefficients, so the vertical period
// condition fails with Re loop = -2 pi; everything else is consistent.
inline WeierstrassData m2_rejected()
{
    using Cx = Complex;
    const Cx I(0.0, 1.0);
    WeierstrassData d;
    Poly D({Cx(1), Cx(0), Cx(0), Cx(0), Cx(0), Cx(1)});
    d.phi = RationalMap(Poly({Cx(0), Cx(0), Cx(1)}), D);
    d.psi = involution_pullback(d.phi);
    d.h = RationalMap(D * D.involution_star() * I,
                      Poly({Cx(0), Cx(0), Cx(0), Cx(0), Cx(0), Cx(0), Cx(1)}));
    d.punctures = {ExtComplex(Cx(0)), ExtComplex::inf()};
    d.involution_antipodal = true;
    return d;
}

// phi = z, psi = 2z, dh = dz/z^2: an isolated singular structure at 0 with
// equal multiplicities (m = n = 1). The absolute curvature integral diverges
// logarithmically at 0.
inline WeierstrassData bad_end_datum()
{
    using Cx = Complex;
    WeierstrassData d;
    d.phi = RationalMap::identity();
    d.psi = RationalMap::identity() * Cx(2);
    d.h = RationalMap(Poly::constant(Cx(1)), Poly({Cx(0), Cx(0), Cx(1)}));
    d.punctures = {ExtComplex(Cx(0)), ExtComplex::inf()};
    return d;
}

} // namespace stsurf_tests

#endif
