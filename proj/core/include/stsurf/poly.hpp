#ifndef STSURF_POLY_HPP
#define STSURF_POLY_HPP

#include <vector>

#include "stsurf/sphere.hpp"

namespace stsurf {

/// Polynomial with complex coefficients, stored in ascending degree with no
/// trailing near-zero coefficients (the zero polynomial has an empty
/// coefficient list).
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Complex> coeffs);
    Poly(std::initializer_list<Complex> coeffs);

    static Poly constant(Complex c) { return Poly({c}); }
    static Poly identity() { return Poly({Complex(0), Complex(1)}); }
    /// z - r
    static Poly linear_root(Complex r) { return Poly({-r, Complex(1)}); }

    const std::vector<Complex>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return c_.empty() ? 0 : static_cast<int>(c_.size()) - 1; }
    Complex leading() const { return c_.empty() ? Complex(0) : c_.back(); }
    Complex coeff(int k) const
    {
        return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[static_cast<size_t>(k)] : Complex(0);
    }
    double max_coeff_magnitude() const;

    Complex eval(Complex z) const;
    Poly derivative() const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator*(Complex s) const;
    Poly operator-() const { return *this * Complex(-1); }

    /// Multiply by z^k.
    Poly shifted_up(int k) const;

    /// Synthetic division by (z - r); the remainder is discarded.
    Poly deflate(Complex r) const;

    /// Euclidean division: *this = q * d + r with deg r < deg d.
    void divide(const Poly& d, Poly& q, Poly& r) const;

    /// Coefficient-wise conjugation: p -> conj . p . conj.
    Poly conj_coeffs() const;

    /// z^n * p(-1/z) with conjugated coefficients, n = deg p. Its roots are
    /// the antipodes -1/conj(r) of the roots r of p (roots at 0 map to a
    /// degree drop, i.e. a root at infinity).
    Poly involution_star() const;

    /// p(z + a) via Taylor shift.
    Poly shifted_arg(Complex a) const;

private:
    std::vector<Complex> c_;
    void normalize();
};

/// A cluster of numerically coincident roots reported as one root with a
/// multiplicity. `spread` is the max distance of raw approximations from the
/// refined center; `residual` is |p(center)| / max|coeff|.
struct RootCluster {
    Complex center;
    int multiplicity = 1;
    double spread = 0.0;
    double residual = 0.0;
    /// true when the multiplicity passed the derivative-vanishing validation;
    /// false for clusters formed by the distance-only fallback
    bool validated = true;
};

struct RootOptions {
    double cluster_rel_tol = 1e-6;
    int max_iterations = 400;
};

/// All roots of p with multiplicity, Aberth-Ehrlich simultaneous iteration
/// followed by cluster merging and Newton refinement of multiple roots on the
/// appropriate derivative. Exact roots at z = 0 (vanishing low-order
/// coefficients) are split off before iterating. Throws std::runtime_error
/// with residual diagnostics if the iteration stalls.
std::vector<RootCluster> poly_roots(const Poly& p, const RootOptions& opts = {});

} // namespace stsurf

#endif
