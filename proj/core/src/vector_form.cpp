#include "stsurf/vector_form.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace stsurf {

namespace {
const Complex kI(0.0, 1.0);
constexpr double kCenterTol = 1e-6;
} // namespace

Vec4C Vec4C::operator+(const Vec4C& o) const
{
    Vec4C r;
    for (size_t i = 0; i < 4; ++i) r.x[i] = x[i] + o.x[i];
    return r;
}

Vec4C Vec4C::operator*(Complex s) const
{
    Vec4C r;
    for (size_t i = 0; i < 4; ++i) r.x[i] = x[i] * s;
    return r;
}

double Vec4C::norm() const
{
    double s = 0;
    for (const Complex& c : x) s += std::norm(c);
    return std::sqrt(s);
}

Vec4C Vec4C::conj() const
{
    Vec4C r;
    for (size_t i = 0; i < 4; ++i) r.x[i] = std::conj(x[i]);
    return r;
}

Vec4C Vec4C::real_part() const
{
    Vec4C r;
    for (size_t i = 0; i < 4; ++i) r.x[i] = Complex(x[i].real(), 0.0);
    return r;
}

Vec4C Vec4C::imag_part() const
{
    Vec4C r;
    for (size_t i = 0; i < 4; ++i) r.x[i] = Complex(x[i].imag(), 0.0);
    return r;
}

Complex lorentz_dot(const Vec4C& u, const Vec4C& v)
{
    return u.x[0] * v.x[0] + u.x[1] * v.x[1] + u.x[2] * v.x[2] - u.x[3] * v.x[3];
}

Complex VectorBasisTerm::eval(Complex z) const
{
    Complex p(1);
    if (pole) {
        for (int k = 0; k < power; ++k) p *= (z - center);
        return 1.0 / p;
    }
    for (int k = 0; k < power; ++k) p *= z;
    return p;
}

bool VectorBasisTerm::same(const VectorBasisTerm& o) const
{
    if (pole != o.pole || power != o.power) return false;
    if (!pole) return true;
    return std::abs(center - o.center) <= kCenterTol * (1.0 + std::abs(center));
}

Vec4C VectorForm::eval(Complex z) const
{
    Vec4C acc;
    for (const auto& [b, v] : terms) acc = acc + v * b.eval(z);
    return acc;
}

namespace {

void accumulate(VectorForm& vf, const VectorBasisTerm& b, size_t component, Complex coeff)
{
    for (auto& [bt, v] : vf.terms)
        if (bt.same(b)) {
            v[component] += coeff;
            return;
        }
    Vec4C v;
    v[component] = coeff;
    vf.terms.emplace_back(b, v);
}

VectorBasisTerm basis_of(const FractionTerm& t)
{
    VectorBasisTerm b;
    b.pole = t.kind == FractionTerm::Kind::PolePower;
    b.center = b.pole ? t.center : Complex(0);
    b.power = t.power;
    return b;
}

RationalMap basis_rational(const VectorBasisTerm& b)
{
    if (!b.pole)
        return RationalMap(Poly::constant(Complex(1)).shifted_up(b.power),
                           Poly::constant(Complex(1)));
    Poly den = Poly::constant(Complex(1));
    for (int k = 0; k < b.power; ++k) den = den * Poly::linear_root(b.center);
    return RationalMap(Poly::constant(Complex(1)), den);
}

} // namespace

VectorForm xz_from_data(const WeierstrassData& data)
{
    VectorForm vf;
    auto comps = xz_components(data);
    for (size_t i = 0; i < 4; ++i) {
        if (comps[i].is_zero()) continue;
        for (const FractionTerm& t : partial_fractions(comps[i]))
            accumulate(vf, basis_of(t), i, t.coeff);
    }
    double scale = 0.0;
    for (const auto& [b, v] : vf.terms) scale = std::max(scale, v.norm());
    std::erase_if(vf.terms, [&](const auto& tv) { return tv.second.norm() <= 1e-12 * scale; });
    return vf;
}

IsotropyReport check_isotropy(const VectorForm& vf)
{
    IsotropyReport rep;
    std::vector<std::pair<VectorBasisTerm, Complex>> acc;
    auto add = [&](const VectorBasisTerm& b, Complex c) {
        rep.scale = std::max(rep.scale, std::abs(c));
        for (auto& [bt, v] : acc)
            if (bt.same(b)) {
                v += c;
                return;
            }
        acc.emplace_back(b, c);
    };
    for (size_t i = 0; i < vf.terms.size(); ++i)
        for (size_t j = i; j < vf.terms.size(); ++j) {
            Complex s = lorentz_dot(vf.terms[i].second, vf.terms[j].second);
            if (i != j) s *= 2.0;
            if (std::abs(s) == 0.0) continue;
            RationalMap prod =
                basis_rational(vf.terms[i].first) * basis_rational(vf.terms[j].first);
            for (const FractionTerm& t : partial_fractions(prod)) add(basis_of(t), t.coeff * s);
        }
    for (const auto& [b, c] : acc) rep.max_coeff = std::max(rep.max_coeff, std::abs(c));
    return rep;
}

LaurentNormalForm laurent_normal_form(const VectorForm& vf, Complex p, int m)
{
    if (m < 1) throw std::invalid_argument("laurent_normal_form: index m must be >= 1");
    LaurentNormalForm nf;
    double scale = 0.0;
    for (const auto& [b, v] : vf.terms) scale = std::max(scale, v.norm());

    auto coeff_at = [&](int power) {
        Vec4C out;
        for (const auto& [b, v] : vf.terms)
            if (b.pole && b.power == power &&
                std::abs(b.center - p) <= kCenterTol * (1.0 + std::abs(p)))
                out = out + v;
        return out;
    };

    for (const auto& [b, v] : vf.terms)
        if (b.pole && std::abs(b.center - p) <= kCenterTol * (1.0 + std::abs(p)) &&
            b.power > m + 2 && v.norm() > 1e-9 * scale)
            throw std::domain_error("laurent_normal_form: pole order exceeds m+2 at " +
                                    to_string(ExtComplex(p)) + " (the d~ = 1 hypothesis fails)");
    Vec4C flux = coeff_at(1);
    if (flux.norm() > 1e-9 * scale)
        throw std::domain_error("laurent_normal_form: nonzero flux coefficient at " +
                                to_string(ExtComplex(p)) + " (|dz/z coefficient| = " +
                                std::to_string(flux.norm()) + ")");

    nf.v0 = coeff_at(m + 2);
    if (nf.v0.norm() <= 1e-9 * scale)
        throw std::domain_error("laurent_normal_form: leading coefficient alpha_{m+2} vanishes");
    nf.v1 = coeff_at(2);

    // alpha_{k+2} extracted against the largest v0 component; alpha_{m+2} = 1
    size_t imax = 0;
    for (size_t i = 1; i < 4; ++i)
        if (std::abs(nf.v0[i]) > std::abs(nf.v0[imax])) imax = i;
    nf.alphas.assign(static_cast<size_t>(m), Complex(0));
    nf.alphas.back() = Complex(1);
    for (int k = 1; k < m; ++k) {
        Vec4C ck = coeff_at(k + 2);
        Complex alpha = ck[imax] / nf.v0[imax];
        nf.alphas[static_cast<size_t>(k - 1)] = alpha;
        Vec4C resid = ck + nf.v0 * (-alpha);
        nf.worst_residual = std::max(nf.worst_residual, resid.norm() / (1.0 + nf.v0.norm()));
    }

    double v0n = nf.v0.norm();
    double v0_imag = nf.v0.imag_part().norm();
    double v0_lightlike = std::abs(lorentz_dot(nf.v0, nf.v0));
    double v1_isotropic = std::abs(lorentz_dot(nf.v1, nf.v1));
    double v0v1 = std::abs(lorentz_dot(nf.v0, nf.v1));
    nf.worst_residual = std::max({nf.worst_residual, v0_imag / v0n, v0_lightlike / (v0n * v0n),
                                  v1_isotropic / (1.0 + nf.v1.norm() * nf.v1.norm()),
                                  v0v1 / (v0n * (1.0 + nf.v1.norm()))});
    nf.degenerate_span_ok = nf.worst_residual <= 1e-9;
    return nf;
}

TwoEndObstructionReport two_end_obstruction(double c)
{
    if (c == 0.0) throw std::invalid_argument("two_end_obstruction: c must be nonzero real");
    TwoEndObstructionReport rep;
    rep.c = c;

    // x_z = v1/z^2 + conj(v1) + u1/(z-c)^2 + conj(u1)/(cz+1)^2 with v1, u1
    // isotropic; half its square expands over six scalar products. The
    // 1/(cz+1)^2 element is (1/c^2)/(z+1/c)^2 in the monic basis.
    Poly zsq({Complex(0), Complex(0), Complex(1)});
    Poly zc = Poly::linear_root(Complex(c)) * Poly::linear_root(Complex(c));
    Poly zmc = Poly::linear_root(Complex(-1.0 / c)) * Poly::linear_root(Complex(-1.0 / c));
    const double ic2 = 1.0 / (c * c);

    RationalMap f_vu(Poly::constant(Complex(1)), zsq * zc);     // 1/(z^2 (z-c)^2)
    RationalMap f_vub(Poly::constant(Complex(ic2)), zsq * zmc); // 1/(z^2 (cz+1)^2)
    RationalMap f_uub(Poly::constant(Complex(ic2)), zc * zmc);  // 1/((z-c)^2 (cz+1)^2)
    RationalMap g_v(Poly::constant(Complex(1)), zsq);           // 1/z^2
    RationalMap g_u(Poly::constant(Complex(1)), zc);            // 1/(z-c)^2
    RationalMap g_ub(Poly::constant(Complex(ic2)), zmc);        // 1/(cz+1)^2

    // basis: {1/z, 1/z^2, 1/(z-c), 1/(z-c)^2, 1/(z+1/c), 1/(z+1/c)^2}
    auto basis_index = [&](const FractionTerm& t) -> int {
        if (t.kind != FractionTerm::Kind::PolePower) return -1;
        int off = t.power - 1;
        if (std::abs(t.center) < 1e-9) return 0 + off;
        if (std::abs(t.center - c) < 1e-9 * (1 + std::abs(c))) return 2 + off;
        if (std::abs(t.center + 1.0 / c) < 1e-9 * (1 + std::abs(1.0 / c))) return 4 + off;
        return -1;
    };
    // unknowns: A = v1 u1, B = v1 conj(u1), C = |u1|^2, D = |v1|^2 = 2 pinned,
    // plus conj(B), conj(A) multiplying the remaining two elements
    std::array<std::array<Complex, 6>, 6> col{};
    auto fill = [&](int which, const RationalMap& f) {
        for (const FractionTerm& t : partial_fractions(f)) {
            int row = basis_index(t);
            if (row < 0) throw std::logic_error("two_end_obstruction: unexpected basis term");
            col[static_cast<size_t>(which)][static_cast<size_t>(row)] += t.coeff;
        }
    };
    fill(0, f_vu);  // A
    fill(1, f_vub); // B
    fill(2, f_uub); // C
    fill(3, g_v);   // D
    fill(4, g_u);   // conj(B)
    fill(5, g_ub);  // conj(A)

    // real unknowns (Re A, Im A, Re B, Im B, C); D = 2 moves to the rhs
    Eigen::MatrixXd M(12, 5);
    Eigen::VectorXd rhs(12);
    for (int row = 0; row < 6; ++row) {
        Complex cA = col[0][static_cast<size_t>(row)];
        Complex cB = col[1][static_cast<size_t>(row)];
        Complex cC = col[2][static_cast<size_t>(row)];
        Complex cD = col[3][static_cast<size_t>(row)];
        Complex cBbar = col[4][static_cast<size_t>(row)];
        Complex cAbar = col[5][static_cast<size_t>(row)];
        Complex reA = cA + cAbar, imA = kI * (cA - cAbar);
        Complex reB = cB + cBbar, imB = kI * (cB - cBbar);
        Complex rhsv = -2.0 * cD;
        M(2 * row, 0) = reA.real();
        M(2 * row, 1) = imA.real();
        M(2 * row, 2) = reB.real();
        M(2 * row, 3) = imB.real();
        M(2 * row, 4) = cC.real();
        rhs(2 * row) = rhsv.real();
        M(2 * row + 1, 0) = reA.imag();
        M(2 * row + 1, 1) = imA.imag();
        M(2 * row + 1, 2) = reB.imag();
        M(2 * row + 1, 3) = imB.imag();
        M(2 * row + 1, 4) = cC.imag();
        rhs(2 * row + 1) = rhsv.imag();
    }
    Eigen::VectorXd sol = M.colPivHouseholderQr().solve(rhs);
    rep.solve_residual = (M * sol - rhs).norm();

    rep.v1u1_solved = Complex(sol(0), sol(1));
    rep.v1u1bar_solved = Complex(sol(2), sol(3));
    rep.u1sq_solved = sol(4);

    double cc = 1.0 + c * c;
    rep.v1u1_closed = Complex(-2.0 * c * c * c * c / cc, 0.0);
    rep.v1u1bar_closed = Complex(-2.0 / cc, 0.0);
    rep.u1sq_closed = 2.0 * cc * cc;
    rep.closed_form_gap = std::max({std::abs(rep.v1u1_solved - rep.v1u1_closed),
                                    std::abs(rep.v1u1bar_solved - rep.v1u1bar_closed),
                                    std::abs(rep.u1sq_solved - rep.u1sq_closed)});

    // u1 = (a1+ib1, a2+ib2, a3+ib3, a4+ib4): the solved products force
    // b1 = a2 = 0, a1 = -(1+c^4)/(1+c^2), b2 = c^2-1. The regular-end
    // constraints then need a3 b3 = a4 b4 with a3^2 - a4^2 = g1 > 0 and
    // b3^2 - b4^2 = g2 > 0, impossible since |a3 b3| >= |a4 b4| + sqrt(g1 g2).
    rep.alpha1 = 0.5 * (rep.v1u1_solved.real() + rep.v1u1bar_solved.real());
    rep.beta2 = 0.5 * (rep.v1u1bar_solved.real() - rep.v1u1_solved.real());
    rep.g1 = cc * cc - rep.alpha1 * rep.alpha1;
    rep.g2 = cc * cc - rep.beta2 * rep.beta2;
    if (rep.g1 > 0 && rep.g2 > 0) {
        rep.infeasibility_margin = std::sqrt(rep.g1 * rep.g2);
        rep.feasible = false;
    } else {
        rep.infeasibility_margin = 0.0;
        rep.feasible = true;
    }
    return rep;
}

} // namespace stsurf
