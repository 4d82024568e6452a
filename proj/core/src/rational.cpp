#include "stsurf/rational.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stsurf {

namespace {
constexpr double kMatchTol = 1e-6;

bool roots_match(Complex a, Complex b)
{
    return std::abs(a - b) <= kMatchTol * (1.0 + std::max(std::abs(a), std::abs(b)));
}
} // namespace

Complex FractionTerm::eval(Complex z) const
{
    if (kind == Kind::Monomial) {
        Complex p(1);
        for (int k = 0; k < power; ++k) p *= z;
        return coeff * p;
    }
    Complex p(1);
    for (int k = 0; k < power; ++k) p *= (z - center);
    return coeff / p;
}

RationalMap::RationalMap(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den))
{
    if (den_.is_zero()) throw std::invalid_argument("RationalMap: zero denominator");
    if (num_.is_zero()) {
        den_ = Poly::constant(Complex(1));
        return;
    }
    // Cancel common roots by root matching, then make the denominator monic.
    if (den_.degree() > 0 && num_.degree() > 0) {
        auto nroots = poly_roots(num_);
        auto droots = poly_roots(den_);
        for (auto& dr : droots) {
            for (auto& nr : nroots) {
                if (nr.multiplicity == 0 || dr.multiplicity == 0) continue;
                if (roots_match(nr.center, dr.center)) {
                    int k = std::min(nr.multiplicity, dr.multiplicity);
                    for (int i = 0; i < k; ++i) {
                        num_ = num_.deflate(nr.center);
                        den_ = den_.deflate(dr.center);
                    }
                    nr.multiplicity -= k;
                    dr.multiplicity -= k;
                }
            }
        }
    }
    Complex lead = den_.leading();
    den_ = den_ * (1.0 / lead);
    num_ = num_ * (1.0 / lead);
}

ExtComplex RationalMap::eval(const ExtComplex& z) const
{
    if (z.is_inf()) {
        int dn = num_.degree(), dd = den_.degree();
        if (num_.is_zero()) return ExtComplex(Complex(0));
        if (dn > dd) return ExtComplex::inf();
        if (dn < dd) return ExtComplex(Complex(0));
        return ExtComplex(num_.leading() / den_.leading());
    }
    Complex n = num_.eval(z.value), d = den_.eval(z.value);
    if (std::abs(d) == 0.0) return ExtComplex::inf();
    Complex v = n / d;
    if (!is_finite(v)) return ExtComplex::inf();
    return ExtComplex(v);
}

RationalMap RationalMap::derivative() const
{
    return RationalMap(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RationalMap RationalMap::operator+(const RationalMap& o) const
{
    return RationalMap(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalMap RationalMap::operator-(const RationalMap& o) const
{
    return RationalMap(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RationalMap RationalMap::operator*(const RationalMap& o) const
{
    return RationalMap(num_ * o.num_, den_ * o.den_);
}

RationalMap RationalMap::operator*(Complex s) const { return RationalMap(num_ * s, den_); }

RationalMap RationalMap::reciprocal() const
{
    if (num_.is_zero()) throw std::invalid_argument("RationalMap::reciprocal of zero map");
    return RationalMap(den_, num_);
}

RationalMap RationalMap::conj_map() const
{
    return RationalMap(num_.conj_coeffs(), den_.conj_coeffs());
}

RationalMap RationalMap::invert_arg() const
{
    // f(1/z) = z^{L-dn} rev(num) / (z^{L-dd} rev(den)), L = max degree.
    auto reverse = [](const Poly& p) {
        std::vector<Complex> c(p.coeffs());
        std::reverse(c.begin(), c.end());
        return Poly(std::move(c));
    };
    int dn = num_.degree(), dd = den_.degree();
    int L = std::max(dn, dd);
    Poly n = reverse(num_).shifted_up(L - dn);
    Poly d = reverse(den_).shifted_up(L - dd);
    return RationalMap(std::move(n), std::move(d));
}

int RationalMap::order_at(const ExtComplex& p) const
{
    if (num_.is_zero()) throw std::invalid_argument("order_at: zero map");
    if (p.is_inf()) return den_.degree() - num_.degree();
    auto order_in = [&](const Poly& poly) -> int {
        if (poly.degree() == 0) return 0;
        if (std::abs(poly.eval(p.value)) > 1e-6 * poly.max_coeff_magnitude() *
                                               std::pow(1.0 + std::abs(p.value), poly.degree()))
            return 0;
        for (const RootCluster& rc : poly_roots(poly))
            if (roots_match(rc.center, p.value)) return rc.multiplicity;
        return 0;
    };
    return order_in(num_) - order_in(den_);
}

std::vector<std::pair<ExtComplex, int>> zeros_poles(const RationalMap& f)
{
    if (f.is_zero()) throw std::invalid_argument("zeros_poles: zero map");
    std::vector<std::pair<ExtComplex, int>> out;
    if (f.num().degree() > 0)
        for (const RootCluster& rc : poly_roots(f.num()))
            out.emplace_back(ExtComplex(rc.center), rc.multiplicity);
    if (f.den().degree() > 0)
        for (const RootCluster& rc : poly_roots(f.den()))
            out.emplace_back(ExtComplex(rc.center), -rc.multiplicity);
    int inf_order = f.den().degree() - f.num().degree();
    if (inf_order != 0) out.emplace_back(ExtComplex::inf(), inf_order);
    return out;
}

namespace {

// Laurent coefficients c_k, c_{k-1}, ..., c_1 of f at a finite pole p of
// order k: c_j = g^{(k-j)}(p) / (k-j)! with g = (z-p)^k f.
std::vector<Complex> laurent_principal(const RationalMap& f, Complex p, int k)
{
    Poly den = f.den();
    for (int i = 0; i < k; ++i) den = den.deflate(p);
    RationalMap g(f.num(), den);
    std::vector<Complex> coeffs(static_cast<size_t>(k));
    double fact = 1.0;
    for (int j = 0; j <= k - 1; ++j) {
        if (j > 0) fact *= j;
        ExtComplex v = g.eval(ExtComplex(p));
        if (v.is_inf())
            throw std::runtime_error("laurent_principal: unexpected pole after deflation at " +
                                     to_string(ExtComplex(p)));
        coeffs[static_cast<size_t>(k - 1 - j)] = v.value / fact; // c_{k-j}
        if (j < k - 1) g = g.derivative();
    }
    return coeffs; // coeffs[j] = c_{j+1}: coeffs[0] is the residue
}

} // namespace

Complex residue(const RationalMap& f, const ExtComplex& p)
{
    if (f.is_zero()) return Complex(0);
    if (p.is_inf()) {
        // Res_inf(f dz) = Res_0(-f(1/w)/w^2 dw)
        RationalMap g = f.invert_arg();
        RationalMap h(g.num() * Complex(-1), g.den().shifted_up(2));
        return residue(h, ExtComplex(Complex(0)));
    }
    int ord = f.order_at(p);
    if (ord >= 0) return Complex(0);
    auto pr = laurent_principal(f, p.value, -ord);
    return pr[0];
}

Complex form_residue(const RationalMap& f, const ExtComplex& p) { return residue(f, p); }

int form_order_at(const RationalMap& f, const ExtComplex& p)
{
    int ord = f.order_at(p);
    return p.is_inf() ? ord - 2 : ord;
}

std::vector<FractionTerm> partial_fractions(const RationalMap& f)
{
    std::vector<FractionTerm> out;
    if (f.is_zero()) return out;

    Poly q, r;
    f.num().divide(f.den(), q, r);
    for (int k = 0; k <= q.degree(); ++k) {
        if (q.is_zero()) break;
        Complex c = q.coeff(k);
        if (std::abs(c) == 0.0) continue;
        FractionTerm t;
        t.kind = FractionTerm::Kind::Monomial;
        t.power = k;
        t.coeff = c;
        out.push_back(t);
    }
    if (r.is_zero() || f.den().degree() == 0) return out;

    RationalMap proper(r, f.den());
    auto clusters = poly_roots(proper.den());
    for (const RootCluster& rc : clusters)
        if (rc.multiplicity >= 2 && !rc.validated &&
            rc.spread > 1e-6 * (1.0 + std::abs(rc.center)))
            throw std::runtime_error(
                "partial_fractions: ambiguous pole clustering near " +
                to_string(ExtComplex(rc.center)) + ": " + std::to_string(rc.multiplicity) +
                " approximations merged with spread " + std::to_string(rc.spread) +
                " (distinct poles inside the clustering tolerance are not merged silently)");
    for (size_t i = 0; i < clusters.size(); ++i)
        for (size_t j = i + 1; j < clusters.size(); ++j) {
            double gap = std::abs(clusters[i].center - clusters[j].center);
            double scale = 1.0 + std::max(std::abs(clusters[i].center), std::abs(clusters[j].center));
            if (gap <= 10.0 * kMatchTol * scale)
                throw std::runtime_error(
                    "partial_fractions: ambiguous pole clustering, centers " +
                    to_string(ExtComplex(clusters[i].center)) + " and " +
                    to_string(ExtComplex(clusters[j].center)) + " are separated by " +
                    std::to_string(gap) + " (clustering tolerance would not separate them)");
        }
    for (const RootCluster& rc : clusters) {
        auto pr = laurent_principal(proper, rc.center, rc.multiplicity);
        for (int j = 1; j <= rc.multiplicity; ++j) {
            FractionTerm t;
            t.kind = FractionTerm::Kind::PolePower;
            t.center = rc.center;
            t.power = j;
            t.coeff = pr[static_cast<size_t>(j - 1)];
            if (std::abs(t.coeff) > 0.0) out.push_back(t);
        }
    }
    return out;
}

Complex eval_terms(const std::vector<FractionTerm>& terms, Complex z)
{
    Complex acc(0);
    for (const FractionTerm& t : terms) acc += t.eval(z);
    return acc;
}

RationalMap involution_pullback(const RationalMap& f)
{
    // conj(f(-1/conj z)) has numerator/denominator given by the involution
    // star of each, padded to a common degree.
    int dn = f.num().degree(), dd = f.den().degree();
    int L = std::max(dn, dd);
    Poly n = f.num().involution_star().shifted_up(L - dn);
    Poly d = f.den().involution_star().shifted_up(L - dd);
    return RationalMap(std::move(n), std::move(d));
}

MobiusTransform::MobiusTransform(Complex a_, Complex b_, Complex c_, Complex d_)
    : a(a_), b(b_), c(c_), d(d_)
{
    Complex det = a * d - b * c;
    if (std::abs(det) < 1e-14 * (std::abs(a * d) + std::abs(b * c) + 1.0))
        throw std::invalid_argument("MobiusTransform: determinant is zero");
    Complex s = 1.0 / std::sqrt(det);
    a *= s;
    b *= s;
    c *= s;
    d *= s;
}

ExtComplex MobiusTransform::apply(const ExtComplex& z) const
{
    if (z.is_inf()) {
        if (std::abs(c) == 0.0) return ExtComplex::inf();
        return ExtComplex(a / c);
    }
    Complex denom = c * z.value + d;
    if (std::abs(denom) == 0.0) return ExtComplex::inf();
    return ExtComplex((a * z.value + b) / denom);
}

RationalMap MobiusTransform::apply(const RationalMap& f) const
{
    return RationalMap(f.num() * a + f.den() * b, f.num() * c + f.den() * d);
}

WeierstrassTriple mobius_apply_data(const MobiusTransform& A, const RationalMap& phi,
                                    const RationalMap& psi, const RationalMap& h)
{
    MobiusTransform Abar;
    Abar.a = std::conj(A.a);
    Abar.b = std::conj(A.b);
    Abar.c = std::conj(A.c);
    Abar.d = std::conj(A.d);
    WeierstrassTriple out;
    out.phi = A.apply(phi);
    out.psi = Abar.apply(psi);
    RationalMap f1 = phi * A.c + RationalMap::constant(A.d);
    RationalMap f2 = psi * Abar.c + RationalMap::constant(Abar.d);
    out.h = f1 * f2 * h;
    return out;
}

} // namespace stsurf
