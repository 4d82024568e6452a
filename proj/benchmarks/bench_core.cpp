#include <benchmark/benchmark.h>

#include <random>

#include "stsurf/curvature_quadrature.hpp"
#include "stsurf/singular_scan.hpp"
#include "stsurf/surface_mesh.hpp"
#include "stsurf/vector_form.hpp"

using namespace stsurf;
using Cx = Complex;

namespace {
const Cx I(0.0, 1.0);

Poly random_poly(int degree, unsigned seed)
{
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<Cx> c(static_cast<size_t>(degree + 1));
    for (auto& v : c) v = Cx(u(gen), u(gen));
    if (std::abs(c.back()) < 0.5) c.back() += Cx(1.0);
    return Poly(std::move(c));
}
} // namespace

static void BM_PolyRoots(benchmark::State& state)
{
    Poly p = random_poly(static_cast<int>(state.range(0)), 42);
    for (auto _ : state) {
        auto roots = poly_roots(p);
        benchmark::DoNotOptimize(roots);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PolyRoots)->Arg(4)->Arg(8)->Arg(12)->Arg(16)->Complexity();

static void BM_PartialFractions(benchmark::State& state)
{
    WeierstrassData d = catalog_epsilon(0.1);
    RationalMap w = (d.phi + d.psi) * d.h;
    for (auto _ : state) {
        auto terms = partial_fractions(w);
        benchmark::DoNotOptimize(terms);
    }
}
BENCHMARK(BM_PartialFractions);

static void BM_PeriodResidues(benchmark::State& state)
{
    WeierstrassData d = catalog_epsilon(0.1);
    for (auto _ : state) {
        auto rep = check_periods(d);
        benchmark::DoNotOptimize(rep);
    }
}
BENCHMARK(BM_PeriodResidues);

static void BM_IsotropyExpansion(benchmark::State& state)
{
    VectorForm vf = xz_from_data(catalog_section4());
    for (auto _ : state) {
        auto rep = check_isotropy(vf);
        benchmark::DoNotOptimize(rep);
    }
}
BENCHMARK(BM_IsotropyExpansion);

static void BM_SingularScan(benchmark::State& state)
{
    WeierstrassData d = catalog_section4();
    ScanGrid grid;
    grid.n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto res = scan_singular_points(d, grid);
        benchmark::DoNotOptimize(res);
    }
    state.SetItemsProcessed(state.iterations() * 2 * state.range(0) * state.range(0));
}
BENCHMARK(BM_SingularScan)->Arg(64)->Arg(128)->Arg(256);

static void BM_CurvatureQuadrature(benchmark::State& state)
{
    WeierstrassData d = catalog_meeks(I, 1);
    QuadratureConfig cfg;
    cfg.radial_nodes = static_cast<int>(state.range(0));
    cfg.angular_nodes = static_cast<int>(state.range(0));
    cfg.refinement_levels = 0;
    for (auto _ : state) {
        auto q = integrate_curvature(d, cfg);
        benchmark::DoNotOptimize(q);
    }
}
BENCHMARK(BM_CurvatureQuadrature)->Arg(32)->Arg(64)->Arg(128);

static void BM_SurfaceIntegration(benchmark::State& state)
{
    WeierstrassData d = catalog_meeks(I, 1);
    DomainSpec dom;
    dom.r_min = 0.5;
    dom.r_max = 2.0;
    dom.n_r = static_cast<int>(state.range(0));
    dom.n_theta = 2 * static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto mesh = integrate_surface(d, dom);
        benchmark::DoNotOptimize(mesh);
    }
}
BENCHMARK(BM_SurfaceIntegration)->Arg(8)->Arg(16)->Arg(32);

BENCHMARK_MAIN();
