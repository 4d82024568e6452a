#ifndef STSURF_SPHERE_HPP
#define STSURF_SPHERE_HPP

#include <cmath>
#include <complex>
#include <string>

namespace stsurf {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

inline bool is_finite(const Complex& z)
{
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// A point on the Riemann sphere: either a finite complex number or the
/// distinguished point at infinity. Infinity is an explicit state, never a
/// large float.
struct ExtComplex {
    Complex value{0.0, 0.0};
    bool infinite = false;

    ExtComplex() = default;
    ExtComplex(Complex v) : value(v) {}
    ExtComplex(double v) : value(v, 0.0) {}

    static ExtComplex inf()
    {
        ExtComplex p;
        p.infinite = true;
        return p;
    }

    bool is_inf() const { return infinite; }
    Complex finite() const { return value; }
};

/// Equality on the sphere with an absolute/relative mixed tolerance for the
/// finite branch.
inline bool sphere_close(const ExtComplex& a, const ExtComplex& b, double tol = 1e-9)
{
    if (a.infinite || b.infinite) return a.infinite && b.infinite;
    double scale = 1.0 + std::max(std::abs(a.value), std::abs(b.value));
    return std::abs(a.value - b.value) <= tol * scale;
}

inline ExtComplex sphere_conj(const ExtComplex& a)
{
    if (a.infinite) return a;
    return ExtComplex(std::conj(a.value));
}

/// The fixed-point-free antipodal involution z -> -1/conj(z), swapping 0 and
/// infinity.
inline ExtComplex antipode(const ExtComplex& a)
{
    if (a.infinite) return ExtComplex(Complex(0.0, 0.0));
    if (std::abs(a.value) == 0.0) return ExtComplex::inf();
    return ExtComplex(-1.0 / std::conj(a.value));
}

/// Chordal distance on the sphere (bounded metric, handles infinity).
inline double chordal_distance(const ExtComplex& a, const ExtComplex& b)
{
    auto lift = [](const ExtComplex& p, double& x, double& y, double& t) {
        if (p.infinite) {
            x = 0; y = 0; t = 1;
            return;
        }
        double n = std::norm(p.value);
        x = 2 * p.value.real() / (1 + n);
        y = 2 * p.value.imag() / (1 + n);
        t = (n - 1) / (n + 1);
    };
    double ax, ay, at, bx, by, bt;
    lift(a, ax, ay, at);
    lift(b, bx, by, bt);
    return std::sqrt((ax - bx) * (ax - bx) + (ay - by) * (ay - by) + (at - bt) * (at - bt));
}

inline std::string to_string(const ExtComplex& a)
{
    if (a.infinite) return "inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "(%.12g%+.12gi)", a.value.real(), a.value.imag());
    return buf;
}

} // namespace stsurf

#endif
