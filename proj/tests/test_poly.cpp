#include "doctest.h"

#include <random>

#include "stsurf/poly.hpp"

using namespace stsurf;
using Cx = Complex;

namespace {
const Cx I(0.0, 1.0);

std::mt19937 rng(12345);
Cx random_coeff()
{
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    return {u(rng), u(rng)};
}

Poly from_roots(const std::vector<Cx>& roots, Cx lead = Cx(1))
{
    Poly p = Poly::constant(lead);
    for (Cx r : roots) p = p * Poly::linear_root(r);
    return p;
}

bool contains_root(const std::vector<RootCluster>& rs, Cx r, int mult)
{
    for (const auto& rc : rs)
        if (std::abs(rc.center - r) < 1e-7 * (1.0 + std::abs(r)) && rc.multiplicity == mult)
            return true;
    return false;
}
} // namespace

TEST_CASE("poly basics: eval, arithmetic, normalization")
{
    Poly p({Cx(1), Cx(0), Cx(1)}); // 1 + z^2
    CHECK(p.degree() == 2);
    CHECK(std::abs(p.eval(I)) < 1e-15);
    CHECK(std::abs(p.eval(Cx(2)) - Cx(5)) < 1e-15);

    Poly zero({Cx(0), Cx(0)});
    CHECK(zero.is_zero());
    CHECK((p - p).is_zero());

    Poly q = p * p; // (1+z^2)^2 = 1 + 2z^2 + z^4
    CHECK(q.degree() == 4);
    CHECK(std::abs(q.coeff(2) - Cx(2)) < 1e-15);
}

TEST_CASE("poly derivative and Taylor shift")
{
    Poly p({Cx(0), Cx(0), Cx(1)}); // z^2
    Poly d = p.derivative();
    CHECK(d.degree() == 1);
    CHECK(std::abs(d.coeff(1) - Cx(2)) < 1e-15);

    Poly s = p.shifted_arg(Cx(1)); // (z+1)^2
    CHECK(std::abs(s.coeff(0) - Cx(1)) < 1e-15);
    CHECK(std::abs(s.coeff(1) - Cx(2)) < 1e-15);
    CHECK(std::abs(s.coeff(2) - Cx(1)) < 1e-15);
}

TEST_CASE("poly division with remainder")
{
    Poly n = from_roots({Cx(1), Cx(2), Cx(3)});
    Poly d = from_roots({Cx(1)});
    Poly q, r;
    n.divide(d, q, r);
    CHECK(r.is_zero());
    CHECK(std::abs(q.eval(Cx(5)) - (5.0 - 2.0) * (5.0 - 3.0)) < 1e-12);

    Poly n2({Cx(1), Cx(0), Cx(0), Cx(1)}); // z^3 + 1
    Poly d2({Cx(1), Cx(1)});               // z + 1
    n2.divide(d2, q, r);
    CHECK(r.is_zero());
}

TEST_CASE("roots: simple, multiple, pinned at origin")
{
    auto rs = poly_roots(from_roots({Cx(1), Cx(-2), I}));
    CHECK(rs.size() == 3);
    CHECK(contains_root(rs, Cx(1), 1));
    CHECK(contains_root(rs, Cx(-2), 1));
    CHECK(contains_root(rs, I, 1));

    // double root
    auto rs2 = poly_roots(from_roots({Cx(1), Cx(1), Cx(-3)}));
    CHECK(rs2.size() == 2);
    CHECK(contains_root(rs2, Cx(1), 2));

    // z^5 factor handled exactly
    Poly p = from_roots({Cx(2)}).shifted_up(5);
    auto rs3 = poly_roots(p);
    CHECK(contains_root(rs3, Cx(0), 5));
    CHECK(contains_root(rs3, Cx(2), 1));

    // triple root refined through the second derivative
    auto rs4 = poly_roots(from_roots({Cx(0.5, 0.5), Cx(0.5, 0.5), Cx(0.5, 0.5), Cx(-1)}));
    CHECK(contains_root(rs4, Cx(0.5, 0.5), 3));
}

TEST_CASE("roots: random polynomials reproduce their factorizations")
{
    for (int trial = 0; trial < 25; ++trial) {
        int n = 1 + int(rng() % 7);
        std::vector<Cx> roots;
        for (int k = 0; k < n; ++k) roots.push_back(random_coeff());
        Poly p = from_roots(roots, random_coeff() + Cx(3));
        auto rs = poly_roots(p);
        int total = 0;
        for (const auto& rc : rs) total += rc.multiplicity;
        CHECK(total == n);
        for (Cx r : roots) {
            double best = 1e300;
            for (const auto& rc : rs) best = std::min(best, std::abs(rc.center - r));
            CHECK(best < 1e-6 * (1.0 + std::abs(r)));
        }
    }
}

TEST_CASE("involution star maps roots to antipodes")
{
    // roots r of p map to -1/conj(r) for p*
    std::vector<Cx> roots = {Cx(2, 1), Cx(-0.5), Cx(0, 3)};
    Poly p = from_roots(roots, Cx(1, 2));
    Poly s = p.involution_star();
    auto rs = poly_roots(s);
    for (Cx r : roots) {
        Cx a = -1.0 / std::conj(r);
        double best = 1e300;
        for (const auto& rc : rs) best = std::min(best, std::abs(rc.center - a));
        CHECK(best < 1e-8);
    }
    // applying the star twice returns the original up to scale
    Poly ss = s.involution_star();
    Cx ratio = ss.leading() / p.leading();
    for (int k = 0; k <= p.degree(); ++k)
        CHECK(std::abs(ss.coeff(k) - ratio * p.coeff(k)) < 1e-12 * p.max_coeff_magnitude());
}
