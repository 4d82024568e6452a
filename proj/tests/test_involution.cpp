#include "doctest.h"

#include "stsurf/involution.hpp"

using namespace stsurf;
using Cx = Complex;

namespace {
const Cx I(0.0, 1.0);
const ExtComplex kZero{Cx(0)};
const ExtComplex kInf = ExtComplex::inf();
} // namespace

TEST_CASE("check_involution: catalog entries carry the antipodal symmetry")
{
    for (const auto& d : {catalog_meeks(I, 1), catalog_meeks(Cx(0.6, 0.8), 2),
                          catalog_epsilon(0.1), catalog_section4()}) {
        InvolutionReport rep = check_involution(d);
        CHECK(rep.structural_ok());
        CHECK(rep.phi_symmetry_residual < 1e-10);
        CHECK(rep.psi_symmetry_residual < 1e-10);
        CHECK(rep.dh_symmetry_residual < 1e-10);
        CHECK(rep.pass());
    }
    // the essential family is symmetric through its callables
    InvolutionReport rep = check_involution(catalog_essential(2));
    CHECK(rep.pass(1e-9));
}

TEST_CASE("check_involution: pairing is {0, inf} for the two-ended entries")
{
    InvolutionReport rep = check_involution(catalog_meeks(I, 1));
    REQUIRE(rep.puncture_pairing.size() == 1);
    CHECK(rep.puncture_pairing[0].first == 0);
    CHECK(rep.puncture_pairing[0].second == 1);
}

TEST_CASE("check_involution: a broken psi is detected")
{
    WeierstrassData d = catalog_meeks(I, 1);
    // perturb lambda off the unit circle in psi only
    Cx lam = I * 1.1;
    d.psi = RationalMap(Poly({Cx(1), std::conj(lam)}), Poly({Cx(1), lam}).shifted_up(2));
    InvolutionReport rep = check_involution(d);
    CHECK(rep.phi_symmetry_residual > 0.01);
    CHECK_FALSE(rep.pass());
}

TEST_CASE("check_involution: punctures not closed under I is structural")
{
    WeierstrassData d = catalog_meeks(I, 1);
    d.punctures = {kZero, ExtComplex(Cx(3))};
    InvolutionReport rep = check_involution(d);
    CHECK_FALSE(rep.punctures_closed);
    CHECK_FALSE(rep.pass());
}

TEST_CASE("check_involution residual is rotation invariant")
{
    WeierstrassData base = catalog_meeks(Cx(0.28, 0.96), 1);
    InvolutionReport ref = check_involution(base);
    for (double t : {0.4, 1.1, 2.7, 4.5, 5.9}) {
        // z -> e^{it} z applied to the data: phi(z e^{-it})-style reparametrization
        // is realized through the diagonal Lorentz rotation of the data
        Cx e(std::cos(t / 2), std::sin(t / 2));
        MobiusTransform A(e, Cx(0), Cx(0), Cx(1) / e);
        auto [phi, psi, h] = mobius_apply_data(A, base.phi, base.psi, base.h);
        WeierstrassData d = base;
        d.phi = phi;
        d.psi = psi;
        d.h = h;
        InvolutionReport rep = check_involution(d);
        CHECK(rep.pass());
        CHECK(std::abs(rep.phi_symmetry_residual - ref.phi_symmetry_residual) < 1e-9);
    }
}

TEST_CASE("residue_vector: catalog entries have zero residues at every end")
{
    for (const auto& d : {catalog_meeks(I, 1), catalog_epsilon(0.1), catalog_section4()}) {
        for (const ExtComplex& p : d.punctures) {
            Vec4C rv = residue_vector(d, p);
            CHECK(rv.norm() < 1e-9);
        }
    }
}

TEST_CASE("residue_vector: toy with nonzero third and fourth components")
{
    // h = 1/z, phi = psi = z: (1 -+ z^2)/z has residue 1 at 0 in both slots
    WeierstrassData d;
    d.phi = RationalMap::identity();
    d.psi = RationalMap::identity();
    d.h = RationalMap::identity().reciprocal();
    d.punctures = {kZero, kInf};
    Vec4C rv = residue_vector(d, kZero);
    CHECK(std::abs(rv[0]) < 1e-12); // (z+z)/z = 2 is constant: no residue
    CHECK(std::abs(rv[1]) < 1e-12);
    CHECK(std::abs(rv[2] - Cx(1)) < 1e-12);
    CHECK(std::abs(rv[3] - Cx(1)) < 1e-12);
}

TEST_CASE("residue_vector sums to zero over all punctures")
{
    // rational data with poles at 0, 1, -1, inf
    WeierstrassData d = catalog_section4();
    Vec4C total;
    for (const ExtComplex& p : d.punctures) total = total + residue_vector(d, p);
    CHECK(total.norm() < 1e-9);
}

TEST_CASE("flux_vanishing_check: passes on symmetric catalog entries")
{
    for (const auto& d : {catalog_epsilon(0.1), catalog_meeks(I, 1), catalog_meeks(Cx(0.6, 0.8), 3),
                          catalog_section4()}) {
        FluxReport rep = flux_vanishing_check(d);
        CHECK(rep.pass());
        for (const auto& fc : rep.per_end) {
            CHECK(fc.flux.norm() < 1e-8);
            CHECK(fc.residue_imag_norm < 1e-9);
            CHECK(fc.residue_real_norm < 1e-9);
            CHECK(fc.pair_antisymmetry < 1e-9);
        }
    }
}

TEST_CASE("flux_vanishing_check refuses unverified involutions")
{
    WeierstrassData d = catalog_meeks(I, 1);
    d.psi = RationalMap(Poly({Cx(1), Cx(0, -1.2)}), Poly({Cx(1), Cx(0, 1.2)}).shifted_up(2));
    CHECK_THROWS_AS(flux_vanishing_check(d), std::domain_error);
}

TEST_CASE("quotient_report: Moebius strips and the two-pair case")
{
    QuotientReport q1 = quotient_report(catalog_meeks(I, 1));
    CHECK(q1.cover_genus == 0);
    CHECK(q1.cover_punctures == 2);
    CHECK(q1.quotient_punctures == 1);
    CHECK(q1.moebius_strip);
    CHECK(q1.euler_characteristic == 0);
    CHECK_FALSE(q1.orientable);

    QuotientReport q2 = quotient_report(catalog_epsilon(0.3));
    CHECK(q2.moebius_strip);

    // four punctures {0, inf, c, -1/c}: projective plane minus 2 points
    QuotientReport q4 = quotient_report(catalog_section4());
    CHECK(q4.cover_punctures == 4);
    CHECK(q4.quotient_punctures == 2);
    CHECK_FALSE(q4.moebius_strip);
    CHECK(q4.euler_characteristic == -1);

    // odd puncture count is inconsistent
    WeierstrassData odd = catalog_meeks(I, 1);
    odd.punctures = {kZero, kInf, ExtComplex(Cx(2))};
    CHECK_THROWS_AS(quotient_report(odd), std::domain_error);
}
