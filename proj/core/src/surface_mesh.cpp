#include "stsurf/surface_mesh.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace stsurf {

namespace {

// 16-point Gauss-Legendre nodes/weights on [-1, 1]
const double kGlNode[16] = {
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318, -0.7554044083550030,
    -0.6178762444026438, -0.4580167776572274, -0.2816035507792589, -0.0950125098376374,
    0.0950125098376374,  0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
    0.7554044083550030,  0.8656312023878318,  0.9445750230732326,  0.9894009349916499};
const double kGlWeight[16] = {
    0.0271524594117541, 0.0622535239386479, 0.0951585116824928, 0.1246289712555339,
    0.1495959888165767, 0.1691565193950025, 0.1826034150449236, 0.1894506104550685,
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

using Vec4Cx = std::array<Complex, 4>;

Vec4Cx operator+(const Vec4Cx& a, const Vec4Cx& b)
{
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}

// Evaluates x_z through the reduced component rationals so that cancelled
// poles of the individual factors (a Gauss map pole matched by a dh zero)
// never show up as inf * 0 at a sample point.
struct XzEvaluator {
    bool rational;
    std::array<RationalMap, 4> comps;
    const WeierstrassData* data = nullptr;

    explicit XzEvaluator(const WeierstrassData& d) : rational(d.is_rational), data(&d)
    {
        if (rational) comps = xz_components(d);
    }

    Vec4Cx operator()(Complex z) const
    {
        if (!rational) return xz_eval(*data, z);
        return {comps[0].eval_finite(z), comps[1].eval_finite(z), comps[2].eval_finite(z),
                comps[3].eval_finite(z)};
    }
};

// integral of x_z along the parametric path z(s), s in [0, 1], with composite
// 16-point Gauss-Legendre panels
template <typename PathFn, typename SpeedFn>
Vec4Cx path_integral(const XzEvaluator& xz, PathFn z_of, SpeedFn dz_of, double arc_length)
{
    int panels = std::max(1, static_cast<int>(std::ceil(arc_length / 0.2)));
    Vec4Cx acc{};
    for (int p = 0; p < panels; ++p) {
        double s0 = double(p) / panels, s1 = double(p + 1) / panels;
        double mid = 0.5 * (s0 + s1), half = 0.5 * (s1 - s0);
        for (int g = 0; g < 16; ++g) {
            double s = mid + half * kGlNode[g];
            Vec4Cx w = xz(z_of(s));
            Complex dz = dz_of(s) * half * kGlWeight[g];
            for (size_t i = 0; i < 4; ++i) acc[i] += w[i] * dz;
        }
    }
    return acc;
}

double conformal_factor_raw(const XzEvaluator& xz, Complex z)
{
    Vec4Cx w = xz(z);
    // 2 <w, conj w> = 2 (|w1|^2 + |w2|^2 + |w3|^2 - |w4|^2)
    return 2.0 * (std::norm(w[0]) + std::norm(w[1]) + std::norm(w[2]) - std::norm(w[3]));
}

} // namespace

std::vector<MeshPoint> integrate_surface(const WeierstrassData& data, const DomainSpec& domain)
{
    if (domain.n_r < 2 || domain.n_theta < 3)
        throw std::invalid_argument("integrate_surface: grid too small");
    if (!(domain.r_min > 0.0) || !(domain.r_max > domain.r_min))
        throw std::invalid_argument("integrate_surface: need 0 < r_min < r_max");
    for (const ExtComplex& p : data.punctures) {
        if (p.is_inf()) continue;
        double a = std::abs(p.value);
        if (a >= domain.r_min * (1.0 - 1e-12) && a <= domain.r_max * (1.0 + 1e-12))
            throw std::invalid_argument("integrate_surface: puncture " + to_string(p) +
                                        " lies inside the requested domain");
    }

    Complex base = domain.base_point;
    if (std::abs(base) == 0.0) base = Complex(std::sqrt(domain.r_min * domain.r_max), 0.0);
    if (std::abs(base) < domain.r_min || std::abs(base) > domain.r_max)
        throw std::invalid_argument("integrate_surface: base point outside the domain");

    // node radii (geometric for the annulus, linear for the disk chart)
    std::vector<double> radii(static_cast<size_t>(domain.n_r));
    for (int j = 0; j < domain.n_r; ++j) {
        double t = domain.n_r == 1 ? 0.0 : double(j) / (domain.n_r - 1);
        radii[static_cast<size_t>(j)] =
            domain.chart == DomainSpec::Chart::Annulus
                ? domain.r_min * std::pow(domain.r_max / domain.r_min, t)
                : domain.r_min + (domain.r_max - domain.r_min) * t;
    }

    double base_r = std::abs(base), base_th = std::arg(base);
    XzEvaluator xz(data);

    // radial leg from the base point to each ring along arg(base)
    std::vector<Vec4Cx> radial(static_cast<size_t>(domain.n_r));
    Complex dir(std::cos(base_th), std::sin(base_th));
    for (int j = 0; j < domain.n_r; ++j) {
        double r0 = base_r, r1 = radii[static_cast<size_t>(j)];
        radial[static_cast<size_t>(j)] = path_integral(
            xz, [&](double s) { return dir * (r0 + (r1 - r0) * s); },
            [&](double) { return dir * (r1 - r0); }, std::abs(r1 - r0));
    }

    std::vector<MeshPoint> mesh;
    mesh.reserve(static_cast<size_t>(domain.n_r) * static_cast<size_t>(domain.n_theta));
    for (int j = 0; j < domain.n_r; ++j) {
        double r = radii[static_cast<size_t>(j)];
        Vec4Cx acc = radial[static_cast<size_t>(j)];
        double th_prev = base_th;
        for (int k = 0; k < domain.n_theta; ++k) {
            double th = base_th + 2.0 * kPi * k / domain.n_theta;
            if (k > 0) {
                double t0 = th_prev, t1 = th;
                acc = acc + path_integral(
                                xz,
                                [&](double s) {
                                    double a = t0 + (t1 - t0) * s;
                                    return r * Complex(std::cos(a), std::sin(a));
                                },
                                [&](double s) {
                                    double a = t0 + (t1 - t0) * s;
                                    return r * Complex(-std::sin(a), std::cos(a)) * (t1 - t0);
                                },
                                r * std::abs(t1 - t0));
            }
            th_prev = th;
            MeshPoint mp;
            mp.z = r * Complex(std::cos(th), std::sin(th));
            for (size_t i = 0; i < 4; ++i) mp.x[i] = 2.0 * acc[i].real();
            mp.conformal_factor = conformal_factor_raw(xz, mp.z);
            if (!std::isfinite(mp.conformal_factor) || mp.conformal_factor <= 0.0)
                throw std::domain_error("integrate_surface: node " + to_string(ExtComplex(mp.z)) +
                                        " is a singular or degenerate point "
                                        "(conformal factor " +
                                        std::to_string(mp.conformal_factor) + ")");
            mesh.push_back(mp);
        }
    }
    return mesh;
}

std::array<double, 4> loop_defect(const WeierstrassData& data, const LoopSpec& loop)
{
    for (const ExtComplex& p : data.punctures) {
        if (p.is_inf()) continue;
        if (std::abs(std::abs(p.value - loop.center) - loop.radius) < 1e-9)
            throw std::invalid_argument("loop_defect: loop passes through the puncture " +
                                        to_string(p));
    }
    // periodic trapezoid rule: spectrally accurate on the circle
    XzEvaluator xz(data);
    Vec4Cx acc{};
    int n = std::max(64, loop.nodes);
    for (int k = 0; k < n; ++k) {
        double t = 2.0 * kPi * (k + 0.5) / n;
        Complex z = loop.center + loop.radius * Complex(std::cos(t), std::sin(t));
        Complex dz = loop.radius * Complex(-std::sin(t), std::cos(t)) * (2.0 * kPi / n);
        Vec4Cx w = xz(z);
        for (size_t i = 0; i < 4; ++i) acc[i] += w[i] * dz;
    }
    return {2.0 * acc[0].real(), 2.0 * acc[1].real(), 2.0 * acc[2].real(), 2.0 * acc[3].real()};
}

double conformal_factor(const WeierstrassData& data, Complex z)
{
    if (data.is_puncture(ExtComplex(z), 1e-9))
        throw std::domain_error("conformal_factor: " + to_string(ExtComplex(z)) +
                                " is a puncture");
    XzEvaluator xz(data);
    double e2w = conformal_factor_raw(xz, z);
    if (!std::isfinite(e2w) || e2w <= 0.0)
        throw std::domain_error("conformal_factor: nonpositive value " + std::to_string(e2w) +
                                " at " + to_string(ExtComplex(z)) +
                                " flags a singular or degenerate point");
    return e2w;
}

void export_obj(const std::vector<MeshPoint>& mesh, const DomainSpec& domain,
                MeshProjection projection, const std::string& obj_path)
{
    if (mesh.empty()) throw std::invalid_argument("export_obj: empty mesh");
    if (mesh.size() != static_cast<size_t>(domain.n_r) * static_cast<size_t>(domain.n_theta))
        throw std::invalid_argument("export_obj: mesh size does not match the domain grid");

    double s = 0.0;
    if (projection == MeshProjection::StereographicX4) {
        double m = 0.0;
        for (const MeshPoint& p : mesh) m = std::max(m, std::abs(p.x[3]));
        s = m > 0.0 ? 0.5 / m : 0.0; // keeps 1 + s x4 >= 1/2 on the mesh
    }

    std::ofstream obj(obj_path);
    if (!obj) throw std::runtime_error("export_obj: cannot open " + obj_path);
    obj << "# stsurf mesh, " << domain.n_r << " x " << domain.n_theta << " nodes\n";
    if (projection == MeshProjection::StereographicX4) {
        char hdr[96];
        std::snprintf(hdr, sizeof(hdr), "# projection stereographic_x4 s=%.12g\n", s);
        obj << hdr;
    } else {
        obj << "# projection drop_x4\n";
    }
    char line[160];
    for (const MeshPoint& p : mesh) {
        double x = p.x[0], y = p.x[1], z = p.x[2];
        if (projection == MeshProjection::StereographicX4) {
            double denom = 1.0 + s * p.x[3];
            x /= denom;
            y /= denom;
            z /= denom;
        }
        std::snprintf(line, sizeof(line), "v %.12g %.12g %.12g\n", x, y, z);
        obj << line;
    }
    // quads (j, k)-(j+1, k)-(j+1, k+1)-(j, k+1) split into two triangles along
    // the same diagonal everywhere; theta wraps around
    auto vid = [&](int j, int k) { return j * domain.n_theta + (k % domain.n_theta) + 1; };
    for (int j = 0; j + 1 < domain.n_r; ++j)
        for (int k = 0; k < domain.n_theta; ++k) {
            std::snprintf(line, sizeof(line), "f %d %d %d\n", vid(j, k), vid(j + 1, k),
                          vid(j + 1, k + 1));
            obj << line;
            std::snprintf(line, sizeof(line), "f %d %d %d\n", vid(j, k), vid(j + 1, k + 1),
                          vid(j, k + 1));
            obj << line;
        }
    if (!obj) throw std::runtime_error("export_obj: write failed for " + obj_path);

    std::string csv_path = obj_path;
    size_t dot = csv_path.rfind('.');
    if (dot != std::string::npos && csv_path.substr(dot) == ".obj")
        csv_path = csv_path.substr(0, dot);
    csv_path += ".csv";
    std::ofstream csv(csv_path);
    if (!csv) throw std::runtime_error("export_obj: cannot open " + csv_path);
    csv << "z_re,z_im,x1,x2,x3,x4,e2w\n";
    for (const MeshPoint& p : mesh) {
        std::snprintf(line, sizeof(line), "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n",
                      p.z.real(), p.z.imag(), p.x[0], p.x[1], p.x[2], p.x[3],
                      p.conformal_factor);
        csv << line;
    }
    if (!csv) throw std::runtime_error("export_obj: write failed for " + csv_path);
}

} // namespace stsurf
