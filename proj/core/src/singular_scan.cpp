#include "stsurf/singular_scan.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stsurf {

namespace {

const Complex kI(0.0, 1.0);

// Chart-local view of the data: chart 0 is the identity, chart 1 works in
// w = 1/z. Evaluators return phi, psi and their chart derivatives.
struct ChartView {
    std::function<Complex(Complex)> phi, psi, dphi, dpsi;
};

ChartView make_view(const WeierstrassData& data, int chart)
{
    ChartView v;
    if (data.is_rational) {
        RationalMap phi = chart == 0 ? data.phi : data.phi.invert_arg();
        RationalMap psi = chart == 0 ? data.psi : data.psi.invert_arg();
        RationalMap dphi = phi.derivative();
        RationalMap dpsi = psi.derivative();
        v.phi = [phi](Complex z) { return phi.eval_finite(z); };
        v.psi = [psi](Complex z) { return psi.eval_finite(z); };
        v.dphi = [dphi](Complex z) { return dphi.eval_finite(z); };
        v.dpsi = [dpsi](Complex z) { return dpsi.eval_finite(z); };
        return v;
    }
    if (chart == 0) {
        v.phi = data.phi_fn.evaluate;
        v.psi = data.psi_fn.evaluate;
        v.dphi = data.phi_fn.derivative;
        v.dpsi = data.psi_fn.derivative;
        return v;
    }
    auto pf = data.phi_fn, sf = data.psi_fn;
    v.phi = [pf](Complex w) { return pf.evaluate(1.0 / w); };
    v.psi = [sf](Complex w) { return sf.evaluate(1.0 / w); };
    v.dphi = [pf](Complex w) { return -pf.derivative(1.0 / w) / (w * w); };
    v.dpsi = [sf](Complex w) { return -sf.derivative(1.0 / w) / (w * w); };
    return v;
}

double field(const ChartView& v, Complex z)
{
    Complex f = v.phi(z) - std::conj(v.psi(z));
    double a = std::abs(f);
    return std::isfinite(a) ? a : 1e300;
}

// Damped Newton on the real 2-variable system (Re, Im) of
// phi(z) - conj(psi(z)); the map is not holomorphic, so the Jacobian mixes
// phi' and conj(psi').
bool newton_refine(const ChartView& v, Complex& z, double& resid, int max_iter)
{
    for (int it = 0; it < max_iter; ++it) {
        Complex f = v.phi(z) - std::conj(v.psi(z));
        resid = std::abs(f);
        if (!std::isfinite(resid)) return false;
        if (resid < 1e-13) return true;
        Complex dp = v.dphi(z), dqc = std::conj(v.dpsi(z));
        Complex fx = dp - dqc;
        Complex fy = kI * (dp + dqc);
        double a = fx.real(), b = fy.real(), c = fx.imag(), d = fy.imag();
        double det = a * d - b * c;
        if (std::abs(det) < 1e-300) return false;
        double rx = -f.real(), ry = -f.imag();
        double dx = (rx * d - b * ry) / det;
        double dy = (a * ry - rx * c) / det;
        Complex step(dx, dy);
        double lambda = 1.0;
        bool improved = false;
        for (int h = 0; h < 25; ++h) {
            Complex trial = z + lambda * step;
            double ft = field(v, trial);
            if (ft < resid) {
                z = trial;
                improved = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!improved) {
            resid = std::abs(v.phi(z) - std::conj(v.psi(z)));
            return resid < 1e-13;
        }
    }
    resid = std::abs(v.phi(z) - std::conj(v.psi(z)));
    return resid < 1e-13;
}

// Winding number of g - t around a small circle at z0 (argument principle),
// trapezoid on the phase increments.
int winding_order(const std::function<Complex(Complex)>& g, Complex z0, Complex t, double rho)
{
    const int nodes = 512;
    double total = 0.0;
    Complex prev = g(z0 + Complex(rho, 0)) - t;
    double prev_arg = std::arg(prev);
    for (int k = 1; k <= nodes; ++k) {
        double ang = 2.0 * kPi * k / nodes;
        Complex val = g(z0 + rho * Complex(std::cos(ang), std::sin(ang))) - t;
        double cur_arg = std::arg(val);
        double d = cur_arg - prev_arg;
        while (d > kPi) d -= 2.0 * kPi;
        while (d < -kPi) d += 2.0 * kPi;
        total += d;
        prev_arg = cur_arg;
    }
    return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

ExtComplex chart_to_sphere(int chart, Complex z)
{
    if (chart == 0) return ExtComplex(z);
    if (std::abs(z) == 0.0) return ExtComplex::inf();
    return ExtComplex(1.0 / z);
}

} // namespace

ScanResult scan_singular_points(const WeierstrassData& data, const ScanGrid& grid)
{
    ScanResult result;
    result.grid_n = grid.n;
    const int n = grid.n;

    // Non-rational data carries essential singularities at the punctures; the
    // exponential factors leave the double range well before the puncture, so
    // the excluded chart disk is enlarged there.
    const double exclusion =
        data.is_rational ? grid.puncture_exclusion : std::max(grid.puncture_exclusion, 0.02);

    std::vector<ExtComplex> found;
    auto already_found = [&](const ExtComplex& p) {
        for (const ExtComplex& q : found)
            if (chordal_distance(p, q) < 1e-7) return true;
        return false;
    };

    ChartView views[2] = {make_view(data, 0), make_view(data, 1)};
    std::vector<double> f(static_cast<size_t>(n) * static_cast<size_t>(n));

    for (int chart = 0; chart < 2; ++chart) {
        const ChartView& v = views[chart];
        // chart-local positions of the punctures
        std::vector<Complex> local_punctures;
        for (const ExtComplex& q : data.punctures) {
            if (chart == 0) {
                if (!q.is_inf()) local_punctures.push_back(q.value);
            } else if (q.is_inf()) {
                local_punctures.push_back(Complex(0));
            } else if (std::abs(q.value) > 1e-12) {
                local_punctures.push_back(1.0 / q.value);
            }
        }
        auto near_local_puncture = [&](Complex z) {
            for (Complex p : local_punctures)
                if (std::abs(z - p) < exclusion) return true;
            return false;
        };
        // polar grid on the closed unit disk of the chart
        auto node = [&](int i, int j) {
            double r = (i + 0.5) / n;
            double th = 2.0 * kPi * j / n;
            return Complex(r * std::cos(th), r * std::sin(th));
        };
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Complex z = node(i, j);
                f[static_cast<size_t>(i) * n + j] =
                    near_local_puncture(z) ? 1e300 : field(v, z);
            }

        auto at = [&](int i, int j) {
            return f[static_cast<size_t>(i) * n + ((j % n + n) % n)];
        };
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double c = at(i, j);
                if (c >= 1e299) continue;
                bool is_min = true;
                for (int di = -1; di <= 1 && is_min; ++di)
                    for (int dj = -1; dj <= 1; ++dj) {
                        if (di == 0 && dj == 0) continue;
                        int ii = i + di;
                        if (ii < 0 || ii >= n) continue;
                        if (at(ii, j + dj) < c) {
                            is_min = false;
                            break;
                        }
                    }
                if (!is_min) continue;

                Complex z = node(i, j);
                double resid = c;
                bool converged = newton_refine(v, z, resid, grid.newton_max_iter);
                if (std::abs(z) > 1.0 + 1e-9) continue; // drifted into the other chart
                if (near_local_puncture(z)) continue;
                ExtComplex sphere_pt = chart_to_sphere(chart, z);
                if (converged && resid <= grid.accept_residual) {
                    if (already_found(sphere_pt)) continue;
                    found.push_back(sphere_pt);
                    SingularPoint sp;
                    sp.z = sphere_pt;
                    sp.residual = resid;
                    Complex t = v.phi(z);
                    sp.value = ExtComplex(t);
                    double rho = 1e-3;
                    sp.m = std::abs(winding_order(v.phi, z, t, rho));
                    sp.n = std::abs(winding_order(v.psi, z, std::conj(t), rho));
                    sp.kind = sp.m == sp.n ? SingularPoint::Kind::Bad : SingularPoint::Kind::Good;
                    result.points.push_back(sp);
                } else if (c < grid.suspicious_threshold) {
                    result.suspicious.push_back({sphere_pt, resid});
                }
            }
    }

    std::sort(result.points.begin(), result.points.end(),
              [](const SingularPoint& a, const SingularPoint& b) {
                  double ra = a.z.is_inf() ? 1e300 : std::abs(a.z.value);
                  double rb = b.z.is_inf() ? 1e300 : std::abs(b.z.value);
                  if (ra != rb) return ra < rb;
                  return std::arg(a.z.value) < std::arg(b.z.value);
              });
    return result;
}

ObstructionScan epsilon_family_obstruction(double eps, int n_r, int n_theta)
{
    if (!(eps > 0.0)) throw std::invalid_argument("epsilon_family_obstruction: eps > 0 required");
    ObstructionScan out;
    out.eps = eps;
    const double s = std::sqrt(2.0 * eps + eps * eps);
    out.grid_min = 1e300;
    for (int i = 0; i < n_r; ++i) {
        double r = std::pow(10.0, -3.0 + 6.0 * i / (n_r - 1.0));
        double x = r - 1.0 / r;
        for (int j = 0; j < n_theta; ++j) {
            double th = 2.0 * kPi * j / n_theta;
            Complex e1(std::cos(th), std::sin(th));
            Complex w = x + e1;
            Complex E = e1 * e1 * (std::norm(w) + 1.0) + eps * e1 * w -
                        s * std::conj(e1) * (w - 2.0 * std::cos(th));
            double a = std::abs(E);
            if (a < out.grid_min) {
                out.grid_min = a;
                out.argmin_r = r;
                out.argmin_theta = th;
            }
        }
    }
    double M = eps + s;
    out.analytic_bound = 1.0 - M * M / 4.0 - 2.0 * M; // minimum over |w| >= 0 at |w| = M/2
    out.bound_positive = out.analytic_bound > 0.0;
    return out;
}

double obstruction_positive_eps_limit()
{
    auto bound = [](double eps) {
        double M = eps + std::sqrt(2.0 * eps + eps * eps);
        return 1.0 - M * M / 4.0 - 2.0 * M;
    };
    double lo = 1e-9, hi = 1.0;
    for (int k = 0; k < 200; ++k) {
        double mid = 0.5 * (lo + hi);
        if (bound(mid) > 0)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

CandidateRoot candidate_singular_root()
{
    const double s3 = std::sqrt(3.0);
    CandidateRoot out;
    // + branch of sqrt(3) sqrt(1 - l^2) = 2 l^2 + l - 1 on (1/2, 1)
    auto g = [&](double l) { return s3 * std::sqrt(std::max(0.0, 1.0 - l * l)) -
                                    (2.0 * l * l + l - 1.0); };
    double lo = 0.5, hi = 1.0;
    if (!(g(lo) > 0 && g(hi) < 0))
        throw std::logic_error("candidate_singular_root: bracketing failed");
    for (int k = 0; k < 100; ++k) {
        double mid = 0.5 * (lo + hi);
        if (g(mid) > 0)
            lo = mid;
        else
            hi = mid;
    }
    out.lambda0 = 0.5 * (lo + hi);
    out.eq_residual = std::abs(g(out.lambda0));

    // sign convention sqrt(3) sin 2t = cos 4t + cos 2t > 0 here
    double sin2t = (2.0 * out.lambda0 * out.lambda0 + out.lambda0 - 1.0) / s3;
    out.theta0 = 0.5 * std::atan2(sin2t, out.lambda0);
    double R = 2.0 * out.lambda0 * (2.0 * out.lambda0 * out.lambda0 + 2.0 * out.lambda0 + 1.0);
    if (!(R > 2.0))
        throw std::logic_error("candidate_singular_root: no real radius (rhs <= 2)");
    out.r0 = std::sqrt(0.5 * (R + std::sqrt(R * R - 4.0)));
    out.z0 = out.r0 * Complex(std::cos(out.theta0), std::sin(out.theta0));

    // t from the quartic z^4 - (3 + sqrt3 i) z^2 - sqrt3 i t z - sqrt3 i = 0
    Complex z0 = out.z0;
    out.t = (z0 * z0 * z0 * z0 - (3.0 + s3 * kI) * z0 * z0 - s3 * kI) / (s3 * kI * z0);

    WeierstrassData cand = catalog_section4();
    out.phi_psi_residual =
        std::abs(cand.phi.eval_finite(z0) - std::conj(cand.psi.eval_finite(z0)));
    if (out.phi_psi_residual > 1e-8)
        throw std::runtime_error(
            "candidate_singular_root: recovered point fails phi = conj(psi) (residual " +
            std::to_string(out.phi_psi_residual) + ")");

    // the - branch -sqrt(3) sqrt(1-l^2) = 2l^2 + l - 1 has no interior root
    auto gm = [&](double l) { return -s3 * std::sqrt(std::max(0.0, 1.0 - l * l)) -
                                     (2.0 * l * l + l - 1.0); };
    const int n = 4000;
    for (int k = 0; k < n; ++k) {
        double a = -1.0 + 2.0 * k / n, b = -1.0 + 2.0 * (k + 1) / n;
        if (a <= -1.0 + 1e-9) continue; // lambda = -1 is the spurious endpoint zero
        if (gm(a) == 0.0 || gm(a) * gm(b) < 0) {
            double la = a, lb = b;
            for (int it = 0; it < 80; ++it) {
                double mid = 0.5 * (la + lb);
                if (gm(la) * gm(mid) <= 0)
                    lb = mid;
                else
                    la = mid;
            }
            out.minus_branch_roots.push_back(0.5 * (la + lb));
        }
    }
    return out;
}

std::array<double, 4> viete_verify(const Poly& quartic, const std::array<Complex, 4>& roots)
{
    if (quartic.degree() != 4)
        throw std::invalid_argument("viete_verify: quartic expected");
    if (std::abs(quartic.leading() - Complex(1)) > 1e-9)
        throw std::invalid_argument("viete_verify: monic quartic expected");
    Complex e1(0), e2(0), e3(0), e4(1);
    for (const Complex& r : roots) e1 += r;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) e2 += roots[static_cast<size_t>(i)] * roots[static_cast<size_t>(j)];
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            for (int k = j + 1; k < 4; ++k)
                e3 += roots[static_cast<size_t>(i)] * roots[static_cast<size_t>(j)] *
                      roots[static_cast<size_t>(k)];
    for (const Complex& r : roots) e4 *= r;
    return {std::abs(e1 + quartic.coeff(3)), std::abs(e2 - quartic.coeff(2)),
            std::abs(e3 + quartic.coeff(1)), std::abs(e4 - quartic.coeff(0))};
}

} // namespace stsurf
