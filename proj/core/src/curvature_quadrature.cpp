#include "stsurf/curvature_quadrature.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace stsurf {

namespace {

const double kGl = 1.0 / std::sqrt(3.0); // 2-point Gauss-Legendre abscissa

struct DensityEval {
    std::function<Complex(Complex)> phi, psi, dphi, dpsi;

    Complex density(Complex z) const
    {
        Complex delta = phi(z) - std::conj(psi(z));
        Complex q1 = dphi(z) / delta;
        Complex q2 = std::conj(dpsi(z)) / delta;
        return 4.0 * q1 * q2;
    }
};

DensityEval make_eval(const WeierstrassData& data)
{
    DensityEval e;
    if (data.is_rational) {
        RationalMap phi = data.phi, psi = data.psi;
        RationalMap dphi = phi.derivative(), dpsi = psi.derivative();
        e.phi = [phi](Complex z) { return phi.eval_finite(z); };
        e.psi = [psi](Complex z) { return psi.eval_finite(z); };
        e.dphi = [dphi](Complex z) { return dphi.eval_finite(z); };
        e.dpsi = [dpsi](Complex z) { return dpsi.eval_finite(z); };
    } else {
        e.phi = data.phi_fn.evaluate;
        e.psi = data.psi_fn.evaluate;
        e.dphi = data.phi_fn.derivative;
        e.dpsi = data.psi_fn.derivative;
    }
    return e;
}

struct ExclusionDisk {
    Complex center;
    double radius;
};

// One polar annulus [r_in, r_out] x [0, 2pi) about `origin`, geometric radial
// grading, 2x2 Gauss-Legendre per cell. `masked` cells are skipped; cells
// straddling a mask boundary are subdivided a few levels so the geometric
// error shrinks with refinement.
struct AnnulusSum {
    Complex total{0.0, 0.0};
    double total_abs = 0.0;
};

class AnnulusIntegrator {
public:
    AnnulusIntegrator(const DensityEval& eval, Complex origin, bool pullback,
                      std::vector<ExclusionDisk> masks)
        : eval_(eval), origin_(origin), pullback_(pullback), masks_(std::move(masks))
    {
    }

    AnnulusSum run(double r_in, double r_out, int n_r, int n_t) const
    {
        AnnulusSum sum;
        double ratio = std::pow(r_out / r_in, 1.0 / n_r);
        double th_step = 2.0 * kPi / n_t;
        double r1 = r_in;
        for (int i = 0; i < n_r; ++i) {
            double r2 = r1 * ratio;
            for (int j = 0; j < n_t; ++j)
                cell(sum, r1, r2, j * th_step, (j + 1) * th_step, 0);
            r1 = r2;
        }
        return sum;
    }

private:
    const DensityEval& eval_;
    Complex origin_;
    bool pullback_;
    std::vector<ExclusionDisk> masks_;

    bool masked(Complex z) const
    {
        for (const auto& m : masks_)
            if (std::abs(z - m.center) < m.radius) return true;
        return false;
    }

    Complex sample(Complex z) const
    {
        if (!pullback_) return eval_.density(z);
        // chart w: z = 1/w, area element |dz/dw|^2 = 1/|w|^4
        Complex zz = 1.0 / z;
        return eval_.density(zz) / std::norm(z * z);
    }

    void cell(AnnulusSum& sum, double r1, double r2, double t1, double t2, int depth) const
    {
        Complex corners[4] = {polar(r1, t1), polar(r1, t2), polar(r2, t1), polar(r2, t2)};
        int inside = 0;
        for (const Complex& c : corners) inside += masked(c) ? 1 : 0;
        if (inside == 4) return;
        if (inside > 0 && depth < 4) {
            double rm = std::sqrt(r1 * r2), tm = 0.5 * (t1 + t2);
            cell(sum, r1, rm, t1, tm, depth + 1);
            cell(sum, r1, rm, tm, t2, depth + 1);
            cell(sum, rm, r2, t1, tm, depth + 1);
            cell(sum, rm, r2, tm, t2, depth + 1);
            return;
        }
        if (inside > 0 && masked(polar(std::sqrt(r1 * r2), 0.5 * (t1 + t2)))) return;
        double rm = 0.5 * (r1 + r2), rh = 0.5 * (r2 - r1);
        double tm = 0.5 * (t1 + t2), th = 0.5 * (t2 - t1);
        const double rs[2] = {rm - rh * kGl, rm + rh * kGl};
        const double ts[2] = {tm - th * kGl, tm + th * kGl};
        for (double r : rs)
            for (double t : ts) {
                Complex z = polar(r, t);
                if (inside > 0 && masked(z)) continue;
                Complex d = sample(z);
                if (!is_finite(d))
                    throw std::domain_error("curvature density is singular near " +
                                            to_string(ExtComplex(pullback_ ? 1.0 / z : z)));
                double w = r * rh * th; // r dr dtheta, unit GL weights
                sum.total += d * w;
                sum.total_abs += std::abs(d) * w;
            }
    }

    Complex polar(double r, double t) const
    {
        return origin_ + r * Complex(std::cos(t), std::sin(t));
    }
};

} // namespace

void QuadratureConfig::validate() const
{
    if (!(inner_radius > 0.0) || !(outer_radius > inner_radius))
        throw std::invalid_argument("QuadratureConfig: need 0 < inner_radius < outer_radius");
    if (radial_nodes < 16 || angular_nodes < 16)
        throw std::invalid_argument("QuadratureConfig: need at least 16 nodes per direction");
}

Complex curvature_density(const WeierstrassData& data, Complex z)
{
    if (data.is_puncture(ExtComplex(z), 1e-9))
        throw std::domain_error("curvature density evaluated at the puncture " +
                                to_string(ExtComplex(z)));
    DensityEval e = make_eval(data);
    Complex d = e.density(z);
    if (!is_finite(d))
        throw std::domain_error("curvature density is singular at " + to_string(ExtComplex(z)) +
                                " (phi = conj(psi) there)");
    return d;
}

CurvatureQuadrature integrate_curvature(const WeierstrassData& data,
                                        const QuadratureConfig& config, bool involution_verified)
{
    config.validate();
    DensityEval eval = make_eval(data);

    // Chart split radius: keep every finite puncture strictly inside chart A
    // when any lies near the unit circle.
    double split = config.outer_radius;
    double max_abs = 0.0;
    std::vector<Complex> off_center;
    for (const ExtComplex& p : data.punctures) {
        if (p.is_inf() || std::abs(p.value) < 1e-12) continue;
        off_center.push_back(p.value);
        max_abs = std::max(max_abs, std::abs(p.value));
    }
    if (!off_center.empty() && max_abs > 0.4 * split) split = 2.5 * std::max(max_abs, split);

    // exclusion disks and their local rings (all off-center punctures lie in
    // chart A by the split choice)
    std::vector<ExclusionDisk> masks;
    for (Complex p : off_center) {
        double limit = std::min(0.25 * std::abs(p), 0.25 * (split - std::abs(p)));
        for (Complex q : off_center)
            if (std::abs(q - p) > 1e-12) limit = std::min(limit, 0.25 * std::abs(q - p));
        double radius = std::min(0.25, limit);
        if (radius <= 2.0 * config.inner_radius)
            throw std::invalid_argument(
                "integrate_curvature: puncture " + to_string(ExtComplex(p)) +
                " sits too close to another end for the configured inner_radius");
        masks.push_back({p, radius});
    }

    AnnulusIntegrator chartA(eval, Complex(0), false, masks);
    AnnulusIntegrator chartB(eval, Complex(0), true, {});
    std::vector<AnnulusIntegrator> rings;
    rings.reserve(masks.size());
    for (const auto& m : masks) rings.emplace_back(eval, m.center, false, std::vector<ExclusionDisk>{});

    CurvatureQuadrature out;
    double prevK = 0.0, prevKperp = 0.0;
    for (int level = 0; level <= config.refinement_levels; ++level) {
        int n_r = config.radial_nodes << level;
        int n_t = config.angular_nodes << level;
        AnnulusSum a = chartA.run(config.inner_radius, split, n_r, n_t);
        AnnulusSum b = chartB.run(config.inner_radius, 1.0 / split, n_r, n_t);
        Complex total = a.total + b.total;
        double total_abs = a.total_abs + b.total_abs;
        for (size_t k = 0; k < masks.size(); ++k) {
            AnnulusSum r = rings[k].run(config.inner_radius, masks[k].radius, n_r, n_t);
            total += r.total;
            total_abs += r.total_abs;
        }
        QuadratureLevel row;
        row.level = level;
        row.n_r = n_r;
        row.n_t = n_t;
        row.totalK = total.real();
        row.totalKperp = total.imag();
        row.total_abs = total_abs;
        out.levels.push_back(row);
        out.chartA = a.total.real();
        out.chartB = b.total.real();
        out.total_abs = total_abs;
        if (level > 0) {
            double diffK = row.totalK - prevK;
            double diffP = row.totalKperp - prevKperp;
            // 2x2 Gauss-Legendre cells converge at fourth order on smooth cells
            out.totalK = row.totalK + diffK / 15.0;
            out.totalKperp = row.totalKperp + diffP / 15.0;
            out.error_estimate = (std::abs(diffK) + std::abs(diffP)) / 15.0 +
                                 1e-14 * std::abs(row.totalK);
            double scale = std::max(std::abs(out.totalK), 1e-30);
            if (out.error_estimate <= config.target_rel_error * scale) {
                out.converged = true;
                prevK = row.totalK;
                prevKperp = row.totalKperp;
                break;
            }
        } else {
            out.totalK = row.totalK;
            out.totalKperp = row.totalKperp;
        }
        prevK = row.totalK;
        prevKperp = row.totalKperp;
    }
    if (data.involution_antipodal && involution_verified) out.quotient = out.totalK / 2.0;
    return out;
}

void write_convergence_csv(const CurvatureQuadrature& result, std::ostream& os)
{
    os << "level,n_r,n_t,totalK,totalKperp,total_abs\n";
    char buf[160];
    for (const auto& row : result.levels) {
        std::snprintf(buf, sizeof(buf), "%d,%d,%d,%.12g,%.12g,%.12g\n", row.level, row.n_r,
                      row.n_t, row.totalK, row.totalKperp, row.total_abs);
        os << buf;
    }
}

} // namespace stsurf
