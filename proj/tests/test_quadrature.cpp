#include "doctest.h"

#include <sstream>

#include "stsurf/curvature_quadrature.hpp"

using namespace stsurf;
using Cx = Complex;

namespace {
const Cx I(0.0, 1.0);

// phi = z, psi = 2z: a bad (equal-multiplicity) singular structure at 0; the
// absolute curvature mass diverges logarithmically there.
WeierstrassData bad_end_datum()
{
    WeierstrassData d;
    d.phi = RationalMap::identity();
    d.psi = RationalMap::identity() * Cx(2);
    d.h = RationalMap(Poly::constant(Cx(1)), Poly({Cx(0), Cx(0), Cx(1)}));
    d.punctures = {ExtComplex(Cx(0)), ExtComplex::inf()};
    return d;
}
} // namespace

TEST_CASE("curvature_density: closed forms")
{
    // phi = z, psi = -1/z (round-sphere data): density 4/(1+|z|^2)^2; at z = 1
    // the value is 1
    WeierstrassData d;
    d.phi = RationalMap::identity();
    d.psi = RationalMap::identity().reciprocal() * Cx(-1);
    d.h = RationalMap::constant(Cx(1));
    d.punctures = {ExtComplex(Cx(0)), ExtComplex::inf()};
    CHECK(std::abs(curvature_density(d, Cx(1)) - Cx(1)) < 1e-12);
    for (Cx z : {Cx(0.5, 0.5), Cx(-2, 1)}) {
        double expect = 4.0 / std::pow(1.0 + std::norm(z), 2);
        CHECK(std::abs(curvature_density(d, z) - Cx(expect)) < 1e-12);
    }

    // the one-parameter family: density assembled from the rational
    // derivatives matches the generic formula
    WeierstrassData e = catalog_epsilon(0.1);
    Cx z(1);
    Cx direct = 4.0 * e.phi_prime(z) * std::conj(e.psi_prime(z)) /
                std::pow(e.phi_at(z) - std::conj(e.psi_at(z)), 2);
    CHECK(std::abs(curvature_density(e, z) - direct) < 1e-10 * (1.0 + std::abs(direct)));

    // essential family at z = 1: 4 * 4 * conj(2) / (1 - (-1))^2 = 8
    WeierstrassData es = catalog_essential(2);
    CHECK(std::abs(curvature_density(es, Cx(1)) - Cx(8)) < 1e-12);
}

TEST_CASE("curvature_density: errors at punctures and singular points")
{
    WeierstrassData d = catalog_epsilon(0.1);
    CHECK_THROWS_AS(curvature_density(d, Cx(0)), std::domain_error);
}

TEST_CASE("integrate_curvature: round sphere gives 4 pi")
{
    WeierstrassData d;
    d.phi = RationalMap::identity();
    d.psi = RationalMap::identity().reciprocal() * Cx(-1);
    d.h = RationalMap::constant(Cx(1));
    d.punctures = {ExtComplex(Cx(0)), ExtComplex::inf()};
    QuadratureConfig cfg;
    cfg.refinement_levels = 3;
    CurvatureQuadrature q = integrate_curvature(d, cfg);
    CHECK(q.converged);
    CHECK(std::abs(q.totalK - 4 * kPi) < 0.01 * 4 * kPi);
    CHECK(std::abs(q.totalKperp) < 1e-6);
}

TEST_CASE("integrate_curvature: Meeks matches the index value 12 pi (cover)")
{
    WeierstrassData d = catalog_meeks(I, 1);
    CurvatureQuadrature q = integrate_curvature(d, {}, true);
    CHECK(q.converged);
    CHECK(std::abs(q.totalK - 12 * kPi) < 0.01 * 12 * kPi);
    CHECK(std::abs(q.totalKperp) < 0.01 * 12 * kPi);
    REQUIRE(q.quotient.has_value());
    CHECK(std::abs(*q.quotient - 6 * kPi) < 0.01 * 6 * kPi);
    // chart halves agree for antipodally symmetric data
    CHECK(std::abs(q.chartA - q.chartB) < 0.005 * std::abs(q.totalK));
}

TEST_CASE("integrate_curvature: epsilon family matches the index formulas within 1%")
{
    CurvatureQuadrature q = integrate_curvature(catalog_epsilon(0.1), {}, true);
    CHECK(q.converged);
    CHECK(std::abs(q.totalK - 12 * kPi) < 0.01 * 12 * kPi);
    CHECK(std::abs(q.totalK - 12 * kPi) <= std::max(0.01 * 12 * kPi, q.error_estimate));
}

TEST_CASE("integrate_curvature: meeks m = 2 gives the index value 20 pi")
{
    WeierstrassData d = catalog_meeks(I, 2);
    CurvatureReport idx = total_curvature(d, false);
    CHECK(idx.n_deg_phi == 20);
    CurvatureQuadrature q = integrate_curvature(d, {}, false);
    CHECK(q.converged);
    CHECK(std::abs(q.totalK - 20 * kPi) < 0.01 * 20 * kPi);
}

TEST_CASE("integrate_curvature: essential p = 3 gives 2(2p-1) pi = 10 pi quotient")
{
    WeierstrassData d = catalog_essential(3);
    CurvatureQuadrature q = integrate_curvature(d, {}, true);
    CHECK(q.converged);
    CHECK(std::abs(q.totalK - 20 * kPi) < 0.02 * 20 * kPi);
    REQUIRE(q.quotient.has_value());
    CHECK(std::abs(*q.quotient - 10 * kPi) < 0.02 * 10 * kPi);
}

TEST_CASE("integrate_curvature: rotation invariance of the total")
{
    WeierstrassData base = catalog_meeks(I, 1);
    QuadratureConfig cfg;
    cfg.refinement_levels = 2;
    CurvatureQuadrature ref = integrate_curvature(base, cfg);
    for (double t : {0.7, 1.9, 3.1, 4.3, 5.6}) {
        Cx e(std::cos(t / 2), std::sin(t / 2));
        MobiusTransform A(e, Cx(0), Cx(0), Cx(1) / e);
        auto [phi, psi, h] = mobius_apply_data(A, base.phi, base.psi, base.h);
        WeierstrassData d = base;
        d.phi = phi;
        d.psi = psi;
        d.h = h;
        CurvatureQuadrature q = integrate_curvature(d, cfg);
        CHECK(std::abs(q.totalK - ref.totalK) <
              0.01 * std::abs(ref.totalK) + ref.error_estimate + q.error_estimate);
    }
}

TEST_CASE("integrate_curvature: essential family p = 2 gives 12 pi cover, K-perp 0")
{
    CurvatureQuadrature q = integrate_curvature(catalog_essential(2), {}, true);
    CHECK(q.converged);
    CHECK(std::abs(q.totalK - 12 * kPi) < 0.02 * 12 * kPi);
    CHECK(std::abs(q.totalKperp) < 0.02 * 12 * kPi);
    REQUIRE(q.quotient.has_value());
    CHECK(std::abs(*q.quotient - 6 * kPi) < 0.02 * 6 * kPi);
    CHECK(std::abs(q.chartA - q.chartB) < 0.005 * std::abs(q.totalK));
}

TEST_CASE("integrate_curvature: off-center punctures get exclusion rings")
{
    // Meeks data with two extra declared punctures on the unit circle; the
    // masked cells plus local rings must reproduce the same total
    WeierstrassData d = catalog_meeks(I, 1);
    d.punctures.push_back(ExtComplex(Cx(1)));
    d.punctures.push_back(ExtComplex(Cx(-1)));
    QuadratureConfig cfg;
    cfg.refinement_levels = 3;
    CurvatureQuadrature q = integrate_curvature(d, cfg);
    CHECK(std::abs(q.totalK - 12 * kPi) < 0.01 * 12 * kPi);
}

TEST_CASE("good/bad dichotomy: absolute mass stable vs divergent under halving")
{
    // good singular end: halving the inner radius changes the absolute mass
    // by less than the error estimate
    WeierstrassData good = catalog_epsilon(0.1);
    QuadratureConfig cfg;
    cfg.refinement_levels = 2;
    cfg.inner_radius = 2e-3;
    CurvatureQuadrature q1 = integrate_curvature(good, cfg);
    cfg.inner_radius = 1e-3;
    CurvatureQuadrature q2 = integrate_curvature(good, cfg);
    cfg.inner_radius = 5e-4;
    CurvatureQuadrature q3 = integrate_curvature(good, cfg);
    double d1 = std::abs(q2.total_abs - q1.total_abs);
    double d2 = std::abs(q3.total_abs - q2.total_abs);
    CHECK(d2 < 0.005 * q2.total_abs);
    CHECK(d2 < d1 + 1e-12); // increments shrink: the improper integral converges

    // bad end: the absolute mass grows without bound, by a fixed increment
    // per halving (logarithmic divergence)
    WeierstrassData bad = bad_end_datum();
    std::vector<double> mass;
    for (double rin : {1e-2, 5e-3, 2.5e-3, 1.25e-3}) {
        QuadratureConfig bc;
        bc.refinement_levels = 2;
        bc.inner_radius = rin;
        mass.push_back(integrate_curvature(bad, bc).total_abs);
    }
    for (size_t k = 1; k < mass.size(); ++k) CHECK(mass[k] > mass[k - 1] + 1.0);
    double inc1 = mass[1] - mass[0], inc3 = mass[3] - mass[2];
    CHECK(inc3 > 0.5 * inc1); // increments do not die out
}

TEST_CASE("convergence table CSV")
{
    QuadratureConfig cfg;
    cfg.refinement_levels = 1;
    CurvatureQuadrature q = integrate_curvature(catalog_meeks(I, 1), cfg);
    std::ostringstream os;
    write_convergence_csv(q, os);
    std::string s = os.str();
    CHECK(s.find("level,n_r,n_t,totalK,totalKperp,total_abs") == 0);
    CHECK(s.find("\n0,64,64,") != std::string::npos);
}

TEST_CASE("config validation")
{
    QuadratureConfig cfg;
    cfg.inner_radius = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.radial_nodes = 4;
    CHECK_THROWS_AS(integrate_curvature(catalog_meeks(I, 1), cfg), std::invalid_argument);
}
