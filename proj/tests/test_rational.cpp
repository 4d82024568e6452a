#include "doctest.h"

#include <random>

#include "stsurf/rational.hpp"

using namespace stsurf;
using Cx = Complex;

namespace {
const Cx I(0.0, 1.0);
std::mt19937 rng(777);

Cx random_point()
{
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    return {u(rng), u(rng)};
}

// Example 3.1 family at lambda = i, m = 1: phi = z^2 (z-i)/(z+i).
RationalMap meeks_phi()
{
    Poly num = Poly::linear_root(I).shifted_up(2);
    Poly den = Poly::linear_root(-I);
    return RationalMap(num, den);
}

// One-parameter family with a good singular end:
// phi = z(z-1)/(z^4 + (1+eps) z^3 + a0), a0 = sqrt(2 eps + eps^2).
RationalMap epsilon_phi(double eps)
{
    double a0 = std::sqrt(2 * eps + eps * eps);
    Poly num({Cx(0), Cx(-1), Cx(1)});
    Poly den({Cx(a0), Cx(0), Cx(0), Cx(1 + eps), Cx(1)});
    return RationalMap(num, den);
}

// Numerical contour residue: trapezoid rule on a circle around p.
Cx contour_residue(const RationalMap& f, Cx p, double radius, int nodes = 512)
{
    Cx acc(0);
    for (int k = 0; k < nodes; ++k) {
        double t = 2.0 * kPi * k / nodes;
        Cx z = p + radius * Cx(std::cos(t), std::sin(t));
        Cx dz = radius * Cx(-std::sin(t), std::cos(t)) * (2.0 * kPi / nodes);
        acc += f.eval_finite(z) * dz;
    }
    return acc / (2.0 * kPi * I);
}
} // namespace

TEST_CASE("rat_eval on the sphere")
{
    RationalMap id = RationalMap::identity();
    CHECK(id.eval(ExtComplex::inf()).is_inf());

    // hand evaluation of (1-i)/(1+i) * 1^2 = -i
    CHECK(std::abs(meeks_phi().eval_finite(Cx(1)) - (-I)) < 1e-14);

    // the good-singular-end family has psi(0) = 0; here phi(0) = 0 too
    RationalMap psi = involution_pullback(epsilon_phi(0.1));
    ExtComplex v = psi.eval(ExtComplex(Cx(0)));
    CHECK(!v.is_inf());
    CHECK(std::abs(v.value) < 1e-14);

    // reduction: common factor z cancels
    RationalMap f(Poly({Cx(0), Cx(0), Cx(1)}), Poly({Cx(0), Cx(1)})); // z^2/z
    CHECK(f.degree() == 1);
    CHECK(std::abs(f.eval_finite(Cx(3)) - Cx(3)) < 1e-14);
}

TEST_CASE("rat_degree")
{
    CHECK(RationalMap::identity().degree() == 1);
    CHECK(epsilon_phi(0.1).degree() == 4);
    CHECK(meeks_phi().degree() == 3);
}

TEST_CASE("zeros and poles with orders summing to zero")
{
    RationalMap inv = RationalMap::identity().reciprocal(); // 1/z
    auto zp = zeros_poles(inv);
    REQUIRE(zp.size() == 2);
    bool pole0 = false, zinf = false;
    for (auto& [pt, ord] : zp) {
        if (!pt.is_inf() && std::abs(pt.value) < 1e-12 && ord == -1) pole0 = true;
        if (pt.is_inf() && ord == 1) zinf = true;
    }
    CHECK(pole0);
    CHECK(zinf);

    // dh coefficient of the singular-end family: pole of order 5 at 0
    double eps = 0.1, a0 = std::sqrt(2 * eps + eps * eps);
    Poly D({Cx(a0), Cx(0), Cx(0), Cx(1 + eps), Cx(1)});
    RationalMap h(D * D.involution_star() * I, Poly({Cx(0), Cx(0), Cx(0), Cx(0), Cx(0), Cx(1)}));
    int pole_order_at_0 = 0;
    for (auto& [pt, ord] : zeros_poles(h))
        if (!pt.is_inf() && std::abs(pt.value) < 1e-9 && ord < 0) pole_order_at_0 = -ord;
    CHECK(pole_order_at_0 == 5);

    // Meeks dh coefficient h = i (z+i)(1+iz)/z^2: pole of order 2 at 0, simple
    // zeros at -i and i
    RationalMap mh(Poly::linear_root(-I) * Poly({Cx(1), I}) * I, Poly({Cx(0), Cx(0), Cx(1)}));
    int sum = 0;
    bool zero_at_minus_i = false, zero_at_i = false, pole2_at_0 = false;
    for (auto& [pt, ord] : zeros_poles(mh)) {
        sum += ord;
        if (!pt.is_inf() && std::abs(pt.value + I) < 1e-9 && ord == 1) zero_at_minus_i = true;
        if (!pt.is_inf() && std::abs(pt.value - I) < 1e-9 && ord == 1) zero_at_i = true;
        if (!pt.is_inf() && std::abs(pt.value) < 1e-9 && ord == -2) pole2_at_0 = true;
    }
    CHECK(sum == 0);
    CHECK(zero_at_minus_i);
    CHECK(zero_at_i);
    CHECK(pole2_at_0);
}

TEST_CASE("residues: closed forms and the residue theorem")
{
    // i/z at 0 -> i
    RationalMap f(Poly::constant(I), Poly::identity());
    CHECK(std::abs(residue(f, ExtComplex(Cx(0))) - I) < 1e-14);

    // 1/(z^2 (z-c)^2) at 0 -> 2/c^3
    for (Cx c : {Cx(1), Cx(2, 1), Cx(-0.5, 0.3)}) {
        RationalMap g(Poly::constant(Cx(1)),
                      (Poly::linear_root(c) * Poly::linear_root(c)).shifted_up(2));
        CHECK(std::abs(residue(g, ExtComplex(Cx(0))) - 2.0 / (c * c * c)) < 1e-12);
    }

    // residue at a regular point is 0
    CHECK(std::abs(residue(f, ExtComplex(Cx(5)))) == 0.0);
}

TEST_CASE("sum of residues over the sphere vanishes")
{
    for (int trial = 0; trial < 15; ++trial) {
        std::vector<Cx> proots, zroots;
        int np = 2 + int(rng() % 3), nz = int(rng() % 3);
        for (int k = 0; k < np; ++k) proots.push_back(random_point());
        for (int k = 0; k < nz; ++k) zroots.push_back(random_point());
        Poly num = Poly::constant(random_point() + Cx(2));
        for (Cx r : zroots) num = num * Poly::linear_root(r);
        Poly den = Poly::constant(Cx(1));
        for (Cx r : proots) den = den * Poly::linear_root(r);
        RationalMap f(num, den);
        Cx sum(0);
        for (auto& [pt, ord] : zeros_poles(f))
            if (ord < 0 && !pt.is_inf()) sum += residue(f, pt);
        sum += residue(f, ExtComplex::inf());
        CHECK(std::abs(sum) < 1e-9 * (1.0 + f.num().max_coeff_magnitude()));
    }
}

TEST_CASE("residue agrees with contour quadrature")
{
    for (int trial = 0; trial < 10; ++trial) {
        Cx p1 = random_point(), p2 = random_point();
        if (std::abs(p1 - p2) < 0.3) continue;
        Poly den = Poly::linear_root(p1) * Poly::linear_root(p1) * Poly::linear_root(p2);
        Poly num({random_point(), random_point(), random_point()});
        RationalMap f(num, den);
        if (f.order_at(ExtComplex(p1)) >= 0) continue;
        double radius = 0.5 * std::abs(p1 - p2);
        Cx exact = residue(f, ExtComplex(p1));
        Cx quad = contour_residue(f, p1, radius);
        CHECK(std::abs(exact - quad) < 1e-9 * (1.0 + std::abs(exact)));
    }
}

TEST_CASE("partial fractions: reference decompositions")
{
    // 1/(z^2(z-1)^2) = [1/z^2 + 1/(z-1)^2] + 2[1/z - 1/(z-1)]
    RationalMap f(Poly::constant(Cx(1)),
                  (Poly::linear_root(Cx(1)) * Poly::linear_root(Cx(1))).shifted_up(2));
    auto terms = partial_fractions(f);
    auto coeff_of = [&](Cx center, int power) {
        for (const auto& t : terms)
            if (t.kind == FractionTerm::Kind::PolePower && t.power == power &&
                std::abs(t.center - center) < 1e-9)
                return t.coeff;
        return Cx(0);
    };
    CHECK(std::abs(coeff_of(Cx(0), 2) - Cx(1)) < 1e-12);
    CHECK(std::abs(coeff_of(Cx(1), 2) - Cx(1)) < 1e-12);
    CHECK(std::abs(coeff_of(Cx(0), 1) - Cx(2)) < 1e-12);
    CHECK(std::abs(coeff_of(Cx(1), 1) + Cx(2)) < 1e-12);

    // 1/(z^2(z+1)^2) = 1/z^2 + 1/(z+1)^2 - 2/z + 2/(z+1)
    RationalMap g(Poly::constant(Cx(1)),
                  (Poly::linear_root(Cx(-1)) * Poly::linear_root(Cx(-1))).shifted_up(2));
    terms = partial_fractions(g);
    CHECK(std::abs(coeff_of(Cx(0), 2) - Cx(1)) < 1e-12);
    CHECK(std::abs(coeff_of(Cx(-1), 2) - Cx(1)) < 1e-12);
    CHECK(std::abs(coeff_of(Cx(0), 1) + Cx(2)) < 1e-12);
    CHECK(std::abs(coeff_of(Cx(-1), 1) - Cx(2)) < 1e-12);

    // (1/z^3 - z) / (z-1)^2 = 1/z^3 + 2/z^2 + 3/z - 4/(z-1), no polynomial part
    RationalMap s(Poly({Cx(1), Cx(0), Cx(0), Cx(0), Cx(-1)}),
                  (Poly::linear_root(Cx(1)) * Poly::linear_root(Cx(1))).shifted_up(3));
    terms = partial_fractions(s);
    CHECK(std::abs(coeff_of(Cx(0), 3) - Cx(1)) < 1e-12);
    CHECK(std::abs(coeff_of(Cx(0), 2) - Cx(2)) < 1e-12);
    CHECK(std::abs(coeff_of(Cx(0), 1) - Cx(3)) < 1e-12);
    CHECK(std::abs(coeff_of(Cx(1), 1) + Cx(4)) < 1e-12);
    CHECK(std::abs(coeff_of(Cx(1), 2)) < 1e-12);
    for (const auto& t : terms) CHECK(t.kind == FractionTerm::Kind::PolePower);
}

TEST_CASE("partial fractions re-sum reproduces the map at random points")
{
    for (int trial = 0; trial < 10; ++trial) {
        Poly num({random_point(), random_point(), random_point(), random_point(),
                  random_point(), random_point()});
        Cx p1 = random_point(), p2 = random_point(), p3 = random_point();
        if (std::abs(p1 - p2) < 0.2 || std::abs(p1 - p3) < 0.2 || std::abs(p2 - p3) < 0.2)
            continue;
        Poly den = Poly::linear_root(p1) * Poly::linear_root(p2) * Poly::linear_root(p2) *
                   Poly::linear_root(p3);
        RationalMap f(num, den);
        auto terms = partial_fractions(f);
        for (int k = 0; k < 100; ++k) {
            Cx z = random_point() * 2.0;
            if (std::min({std::abs(z - p1), std::abs(z - p2), std::abs(z - p3)}) < 0.1) continue;
            Cx direct = f.eval_finite(z);
            Cx summed = eval_terms(terms, z);
            CHECK(std::abs(direct - summed) <= 1e-9 * (1.0 + std::abs(direct)));
        }
    }
}

TEST_CASE("partial fractions: ambiguously close poles are an explicit error")
{
    Poly den = Poly::linear_root(Cx(1)) * Poly::linear_root(Cx(1) + Cx(3e-6));
    RationalMap f(Poly::constant(Cx(1)), den);
    CHECK_THROWS_AS(partial_fractions(f), std::runtime_error);
}

TEST_CASE("derivative: quotient rule and finite differences")
{
    RationalMap sq(Poly({Cx(0), Cx(0), Cx(1)}), Poly::constant(Cx(1)));
    RationalMap dsq = sq.derivative();
    CHECK(std::abs(dsq.eval_finite(Cx(3)) - Cx(6)) < 1e-12);

    RationalMap inv = RationalMap::identity().reciprocal();
    RationalMap dinv = inv.derivative();
    CHECK(std::abs(dinv.eval_finite(Cx(2)) + Cx(0.25)) < 1e-12);

    // limit member of the singular-end family: phi = (z-1)/(z^2(z+1))
    RationalMap phi0(Poly({Cx(-1), Cx(1)}), Poly({Cx(0), Cx(0), Cx(1), Cx(1)}));
    Cx z(2);
    double hstep = 1e-5;
    Cx fd = (phi0.eval_finite(z + hstep) - phi0.eval_finite(z - hstep)) / (2 * hstep);
    Cx ex = phi0.derivative().eval_finite(z);
    CHECK(std::abs(fd - ex) < 1e-8 * std::abs(ex));

    for (int trial = 0; trial < 10; ++trial) {
        RationalMap f(Poly({random_point(), random_point(), random_point()}),
                      Poly::linear_root(random_point() + Cx(0, 3)));
        Cx w = random_point();
        Cx fd2 = (f.eval_finite(w + hstep) - f.eval_finite(w - hstep)) / (2 * hstep);
        Cx ex2 = f.derivative().eval_finite(w);
        CHECK(std::abs(fd2 - ex2) < 1e-6 * (1.0 + std::abs(ex2)));
    }
}

TEST_CASE("involution pullback")
{
    // z -> -1/z
    RationalMap f = involution_pullback(RationalMap::identity());
    CHECK(std::abs(f.eval_finite(Cx(2)) + Cx(0.5)) < 1e-14);

    // pointwise identity g(z) = conj(f(-1/conj z))
    RationalMap g(Poly({Cx(1, 1), Cx(0, -2), Cx(3)}), Poly({Cx(2), Cx(0, 1)}));
    RationalMap gi = involution_pullback(g);
    for (int k = 0; k < 20; ++k) {
        Cx z = random_point();
        if (std::abs(z) < 0.1) continue;
        Cx expect = std::conj(g.eval_finite(-1.0 / std::conj(z)));
        CHECK(std::abs(gi.eval_finite(z) - expect) < 1e-10 * (1.0 + std::abs(expect)));
    }

    // applying the pullback twice returns the original map
    RationalMap gii = involution_pullback(gi);
    for (int k = 0; k < 10; ++k) {
        Cx z = random_point();
        Cx a = gii.eval_finite(z), b = g.eval_finite(z);
        CHECK(std::abs(a - b) < 1e-12 * (1.0 + std::abs(b)));
    }
}

TEST_CASE("degree counts preimages of a regular value")
{
    // solving f(z) = w for random w has deg f roots with multiplicity
    for (int trial = 0; trial < 8; ++trial) {
        Poly num({random_point(), random_point(), random_point(), random_point()});
        Poly den = Poly::linear_root(random_point()) * Poly::linear_root(random_point());
        RationalMap f(num, den);
        Cx w = random_point();
        Poly eq = f.num() - f.den() * w;
        if (eq.degree() != f.degree()) continue; // w hit the value at infinity
        int count = 0;
        for (const auto& rc : poly_roots(eq)) count += rc.multiplicity;
        CHECK(count == f.degree());
        for (const auto& rc : poly_roots(eq)) {
            Cx val = f.eval_finite(rc.center);
            CHECK(std::abs(val - w) < 1e-6 * (1.0 + std::abs(w)));
        }
    }
}

TEST_CASE("mobius transforms")
{
    CHECK_THROWS_AS(MobiusTransform(Cx(1), Cx(2), Cx(2), Cx(4)), std::invalid_argument);

    // identity leaves data unchanged
    MobiusTransform id(Cx(1), Cx(0), Cx(0), Cx(1));
    RationalMap phi = meeks_phi();
    RationalMap psi = involution_pullback(phi);
    RationalMap h(Poly::linear_root(-I) * Poly({Cx(1), I}) * I, Poly({Cx(0), Cx(0), Cx(1)}));
    auto [tphi, tpsi, th] = mobius_apply_data(id, phi, psi, h);
    for (int k = 0; k < 10; ++k) {
        Cx z = random_point();
        CHECK(std::abs(tphi.eval_finite(z) - phi.eval_finite(z)) < 1e-10);
        CHECK(std::abs(th.eval_finite(z) - h.eval_finite(z)) < 1e-10);
    }

    // upper-triangular shift: phi = z -> z + 1, dh untouched
    MobiusTransform shift(Cx(1), Cx(1), Cx(0), Cx(1));
    auto [sphi, spsi, sh] = mobius_apply_data(shift, RationalMap::identity(),
                                              RationalMap::identity(), h);
    CHECK(std::abs(sphi.eval_finite(Cx(2)) - Cx(3)) < 1e-12);
    for (int k = 0; k < 5; ++k) {
        Cx z = random_point();
        CHECK(std::abs(sh.eval_finite(z) - h.eval_finite(z)) < 1e-10);
    }
}
