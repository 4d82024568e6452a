#include "stsurf/weierstrass.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stsurf {

namespace {
const Complex kI(0.0, 1.0);
} // namespace

GaussMapCallable make_checked_callable(std::function<Complex(Complex)> evaluate,
                                       std::function<Complex(Complex)> derivative,
                                       std::string description)
{
    GaussMapCallable g{std::move(evaluate), std::move(derivative), std::move(description)};
    const double step = 1e-6;
    for (int k = 0; k < 10; ++k) {
        double ang = 0.37 + 0.59 * k;
        Complex z = (0.6 + 0.12 * k) * Complex(std::cos(ang), std::sin(ang));
        Complex fd = (g.evaluate(z + step) - g.evaluate(z - step)) / (2.0 * step);
        Complex ex = g.derivative(z);
        if (std::abs(fd - ex) > 1e-5 * (1.0 + std::abs(ex)))
            throw std::invalid_argument("callable '" + g.description +
                                        "': derivative disagrees with finite differences at " +
                                        to_string(ExtComplex(z)));
    }
    return g;
}

ExtComplex WeierstrassData::eval_phi(const ExtComplex& z) const
{
    if (is_rational) return phi.eval(z);
    if (z.is_inf()) throw std::domain_error("callable Gauss map evaluated at infinity");
    return ExtComplex(phi_fn.evaluate(z.value));
}

ExtComplex WeierstrassData::eval_psi(const ExtComplex& z) const
{
    if (is_rational) return psi.eval(z);
    if (z.is_inf()) throw std::domain_error("callable Gauss map evaluated at infinity");
    return ExtComplex(psi_fn.evaluate(z.value));
}

Complex WeierstrassData::phi_at(Complex z) const
{
    return is_rational ? phi.eval_finite(z) : phi_fn.evaluate(z);
}
Complex WeierstrassData::psi_at(Complex z) const
{
    return is_rational ? psi.eval_finite(z) : psi_fn.evaluate(z);
}
Complex WeierstrassData::h_at(Complex z) const
{
    return is_rational ? h.eval_finite(z) : h_fn.evaluate(z);
}
Complex WeierstrassData::phi_prime(Complex z) const
{
    return is_rational ? phi.derivative().eval_finite(z) : phi_fn.derivative(z);
}
Complex WeierstrassData::psi_prime(Complex z) const
{
    return is_rational ? psi.derivative().eval_finite(z) : psi_fn.derivative(z);
}

bool WeierstrassData::is_puncture(const ExtComplex& p, double radius) const
{
    for (const ExtComplex& q : punctures)
        if (sphere_close(p, q, radius)) return true;
    return false;
}

void validate_data_shape(const WeierstrassData& data)
{
    for (size_t i = 0; i < data.punctures.size(); ++i)
        for (size_t j = i + 1; j < data.punctures.size(); ++j)
            if (sphere_close(data.punctures[i], data.punctures[j]))
                throw std::invalid_argument("punctures are not pairwise distinct: " +
                                            to_string(data.punctures[i]));
    if (data.is_rational) {
        if (data.phi.is_constant() || data.phi.is_zero() || data.psi.is_constant() ||
            data.psi.is_zero())
            throw std::invalid_argument(
                "constant Gauss map: the induced metric is flat and the surface degenerates "
                "to a graph in a null 3-space; such data is excluded");
        if (data.h.is_zero())
            throw std::invalid_argument("height differential is identically zero");
    }
}

std::array<RationalMap, 4> xz_components(const WeierstrassData& data)
{
    if (!data.is_rational) throw std::domain_error("xz_components requires rational data");
    const RationalMap &phi = data.phi, &psi = data.psi, &h = data.h;
    RationalMap one = RationalMap::constant(Complex(1));
    RationalMap phipsi = phi * psi;
    return {(phi + psi) * h, (phi - psi) * h * Complex(0, -1), (one - phipsi) * h,
            (one + phipsi) * h};
}

std::array<Complex, 4> xz_eval(const WeierstrassData& data, Complex z)
{
    Complex p = data.phi_at(z), q = data.psi_at(z), hh = data.h_at(z);
    return {(p + q) * hh, -kI * (p - q) * hh, (1.0 - p * q) * hh, (1.0 + p * q) * hh};
}

// ---------------------------------------------------------------------------

namespace {

// Order of the zero of (f - t) at p; for t = infinity, the pole order of f,
// computed on the reciprocal so only the value-0 path exists.
int vanishing_order(const RationalMap& f, const ExtComplex& t, const ExtComplex& p)
{
    if (t.is_inf()) return vanishing_order(f.reciprocal(), ExtComplex(Complex(0)), p);
    RationalMap g = f - RationalMap::constant(t.value);
    return std::max(g.order_at(p), 0);
}

struct PoleEntry {
    ExtComplex point;
    int order;
};

std::vector<PoleEntry> poles_of(const RationalMap& f)
{
    std::vector<PoleEntry> out;
    for (auto& [pt, ord] : zeros_poles(f))
        if (ord < 0) out.push_back({pt, -ord});
    return out;
}

int xz_pole_order(const WeierstrassData& data, const ExtComplex& p)
{
    int max_pole = 0;
    for (const RationalMap& w : xz_components(data)) {
        if (w.is_zero()) continue;
        max_pole = std::max(max_pole, -form_order_at(w, p));
    }
    return max_pole;
}

} // namespace

RegularityReport check_regularity(const WeierstrassData& data)
{
    validate_data_shape(data);
    RegularityReport rep;
    rep.note = "global phi != conj(psi) verification is the singular-point scan";
    if (!data.is_rational) {
        rep.applicable = false;
        rep.note += "; pole/zero structure of non-rational data is not enumerable here";
        return rep;
    }

    auto off_punctures = [&](const ExtComplex& p) { return !data.is_puncture(p, 1e-6); };

    auto phi_poles = poles_of(data.phi);
    auto psi_poles = poles_of(data.psi);
    for (const auto& pp : phi_poles)
        for (const auto& qp : psi_poles)
            if (sphere_close(pp.point, qp.point, 1e-6) && off_punctures(pp.point))
                rep.coincident_poles.push_back(
                    {pp.point, "phi and psi both have a pole here (orders " +
                                   std::to_string(pp.order) + ", " + std::to_string(qp.order) +
                                   ")"});

    // Zeros of the form dh off the punctures must match Gauss-map pole orders
    // exactly; dh may not blow up anywhere else. The order at infinity picks
    // up the chart correction (-2).
    std::vector<std::pair<ExtComplex, int>> dh_zeros;
    auto record_dh_point = [&](const ExtComplex& pt, int form_ord) {
        if (!off_punctures(pt)) return;
        if (form_ord > 0) dh_zeros.emplace_back(pt, form_ord);
        if (form_ord < 0)
            rep.dh_mismatches.push_back({pt, "dh has a pole off the puncture set (order " +
                                                 std::to_string(-form_ord) + ")"});
    };
    for (auto& [pt, ord] : zeros_poles(data.h))
        if (!pt.is_inf()) record_dh_point(pt, ord);
    record_dh_point(ExtComplex::inf(), form_order_at(data.h, ExtComplex::inf()));

    auto pole_order_at = [&](const std::vector<PoleEntry>& poles, const ExtComplex& p) {
        for (const auto& e : poles)
            if (sphere_close(e.point, p, 1e-6)) return e.order;
        return 0;
    };
    for (auto& [pt, ord] : dh_zeros) {
        int need = std::max(pole_order_at(phi_poles, pt), pole_order_at(psi_poles, pt));
        if (need != ord)
            rep.dh_mismatches.push_back(
                {pt, "dh vanishes to order " + std::to_string(ord) +
                         " but the Gauss map pole order here is " + std::to_string(need)});
    }
    auto check_pole_matched = [&](const std::vector<PoleEntry>& poles, const char* name) {
        for (const auto& e : poles)
            if (off_punctures(e.point)) {
                int got = 0;
                for (auto& [pt, ord] : dh_zeros)
                    if (sphere_close(pt, e.point, 1e-6)) got = ord;
                if (got != e.order)
                    rep.dh_mismatches.push_back({e.point, std::string(name) +
                                                              " has a pole of order " +
                                                              std::to_string(e.order) +
                                                              " but dh vanishes to order " +
                                                              std::to_string(got)});
            }
    };
    check_pole_matched(phi_poles, "phi");
    check_pole_matched(psi_poles, "psi");

    // every pole of x_z dz must be a puncture
    for (const RationalMap& w : xz_components(data)) {
        if (w.is_zero()) continue;
        for (auto& [pt, ord] : zeros_poles(w))
            if (!pt.is_inf() && ord < 0 && off_punctures(pt))
                rep.stray_xz_poles.push_back({pt, "x_z dz has a pole of order " +
                                                      std::to_string(-ord) +
                                                      " outside the puncture set"});
        ExtComplex inf = ExtComplex::inf();
        int inf_ord = form_order_at(w, inf);
        if (inf_ord < 0 && off_punctures(inf))
            rep.stray_xz_poles.push_back({inf, "x_z dz has a pole of order " +
                                                   std::to_string(-inf_ord) +
                                                   " at infinity outside the puncture set"});
    }
    return rep;
}

PeriodReport check_periods(const WeierstrassData& data, double tol)
{
    validate_data_shape(data);
    if (!data.is_rational)
        throw std::domain_error(
            "check_periods requires rational data; for callable data the periods are numeric "
            "loop integrals (see loop_defect in the mesh module)");
    PeriodReport rep;
    rep.tolerance = tol;
    RationalMap phih = data.phi * data.h;
    RationalMap psih = data.psi * data.h;
    RationalMap phipsih = data.phi * data.psi * data.h;
    const Complex two_pi_i = 2.0 * kPi * kI;
    for (const ExtComplex& p : data.punctures) {
        PunctureResidues pr;
        pr.point = p;
        pr.res_h = form_residue(data.h, p);
        pr.res_phih = form_residue(phih, p);
        pr.res_psih = form_residue(psih, p);
        pr.res_phipsih = form_residue(phipsih, p);
        pr.horizontal_defect =
            std::abs(two_pi_i * pr.res_phih + std::conj(two_pi_i * pr.res_psih));
        pr.vertical_defect_h = std::abs((two_pi_i * pr.res_h).real());
        pr.vertical_defect_phipsih = std::abs((two_pi_i * pr.res_phipsih).real());
        rep.horizontal_pass = rep.horizontal_pass && pr.horizontal_defect <= tol;
        rep.vertical_pass = rep.vertical_pass && pr.vertical_defect_h <= tol &&
                            pr.vertical_defect_phipsih <= tol;
        rep.per_puncture.push_back(pr);
    }
    return rep;
}

EndReport classify_end(const WeierstrassData& data, const ExtComplex& p)
{
    if (!data.is_puncture(p, 1e-6))
        throw std::invalid_argument("classify_end: " + to_string(p) + " is not a puncture");
    if (!data.is_rational)
        throw std::domain_error("classify_end requires rational data (meromorphic extension)");

    EndReport rep;
    rep.point = p;
    ExtComplex t1 = data.phi.eval(p);
    ExtComplex t2 = sphere_conj(data.psi.eval(p));
    if (!sphere_close(t1, t2, 1e-9)) {
        rep.kind = EndKind::Regular;
    } else {
        rep.value = t1;
        rep.m = vanishing_order(data.phi, t1, p);
        rep.n = vanishing_order(data.psi, sphere_conj(t1), p);
        if (rep.m == rep.n) {
            rep.kind = EndKind::BadSingular;
            // index undefined at a bad singular end; the index fields stay 0
        } else {
            rep.kind = EndKind::GoodSingular;
            rep.ind = rep.m < rep.n ? rep.m : -rep.n;
            rep.ind_plus = std::abs(rep.ind);
            rep.ind10 = (rep.ind_plus + rep.ind) / 2;
            rep.ind01 = (rep.ind_plus - rep.ind) / 2;
        }
    }
    rep.d = xz_pole_order(data, p) - 1;
    rep.d_tilde = rep.d - rep.ind_plus;
    rep.complete = rep.d_tilde >= 1;
    return rep;
}

EndMultiplicity end_multiplicity(const WeierstrassData& data, const ExtComplex& p)
{
    EndReport er = classify_end(data, p);
    return {er.d, er.d_tilde, er.complete};
}

CurvatureReport total_curvature(const WeierstrassData& data, bool involution_verified)
{
    validate_data_shape(data);
    if (!data.is_rational)
        throw std::domain_error(
            "index-formula total curvature requires rational data; use the quadrature module");
    CurvatureReport rep;
    int sum_ind10 = 0, sum_ind01 = 0, sum_dtilde = 0;
    for (const ExtComplex& p : data.punctures) {
        EndReport er = classify_end(data, p);
        if (er.kind == EndKind::BadSingular)
            throw std::domain_error(
                "total curvature is undefined with a bad singular end at " + to_string(p) +
                " (equal Gauss map multiplicities; the curvature integral diverges there)");
        if (!er.complete)
            throw std::domain_error("end at " + to_string(p) +
                                    " is not complete (multiplicity d~ = " +
                                    std::to_string(er.d_tilde) + " < 1)");
        sum_ind10 += er.ind10;
        sum_ind01 += er.ind01;
        sum_dtilde += er.d_tilde;
        rep.ends.push_back(er);
    }
    const int genus = 0;
    const int r = static_cast<int>(data.punctures.size());
    rep.n_deg_phi = 4 * (data.phi.degree() - sum_ind10);
    rep.n_deg_psi = 4 * (data.psi.degree() - sum_ind01);
    rep.n_jorge_meeks = -2 * (2 - 2 * genus - r - sum_dtilde);
    rep.by_deg_phi = rep.n_deg_phi * kPi;
    rep.by_deg_psi = rep.n_deg_psi * kPi;
    rep.by_jorge_meeks = rep.n_jorge_meeks * kPi;
    rep.agreement = rep.n_deg_phi == rep.n_deg_psi && rep.n_deg_psi == rep.n_jorge_meeks;
    if (data.involution_antipodal && involution_verified)
        rep.quotient_value = rep.by_deg_phi / 2.0;
    return rep;
}

// ---------------------------------------------------------------------------
// Catalog

WeierstrassData catalog_meeks(Complex lambda, int m)
{
    if (std::abs(std::abs(lambda) - 1.0) > 1e-9)
        throw std::invalid_argument("meeks family requires |lambda| = 1");
    if (std::abs(lambda - Complex(1)) < 1e-9 || std::abs(lambda + Complex(1)) < 1e-9)
        throw std::invalid_argument("meeks family requires lambda != +-1");
    if (m < 1) throw std::invalid_argument("meeks family requires m >= 1");
    Complex lc = std::conj(lambda);
    WeierstrassData d;
    d.phi = RationalMap(Poly::linear_root(lambda).shifted_up(2 * m), Poly::linear_root(lc));
    d.psi = RationalMap(Poly({Complex(1), lc}), Poly({Complex(1), lambda}).shifted_up(2 * m));
    d.h = RationalMap(Poly::linear_root(lc) * Poly({Complex(1), lambda}) * kI,
                      Poly({Complex(0), Complex(0), Complex(1)}));
    d.punctures = {ExtComplex(Complex(0)), ExtComplex::inf()};
    d.involution_antipodal = true;
    char buf[96];
    std::snprintf(buf, sizeof(buf), "meeks lambda=(%g,%g) m=%d", lambda.real(), lambda.imag(), m);
    d.metadata = buf;
    return d;
}

WeierstrassData catalog_epsilon(double eps)
{
    if (!(eps > 0.0)) throw std::invalid_argument("epsilon family requires eps > 0");
    double a0 = std::sqrt(2.0 * eps + eps * eps);
    Poly D({Complex(a0), Complex(0), Complex(0), Complex(1.0 + eps), Complex(1)});
    WeierstrassData d;
    d.phi = RationalMap(Poly({Complex(0), Complex(-1), Complex(1)}), D);
    d.psi = involution_pullback(d.phi);
    d.h = RationalMap(
        D * D.involution_star() * kI,
        Poly({Complex(0), Complex(0), Complex(0), Complex(0), Complex(0), Complex(1)}));
    d.punctures = {ExtComplex(Complex(0)), ExtComplex::inf()};
    d.involution_antipodal = true;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "epsilon_family eps=%g", eps);
    d.metadata = buf;
    return d;
}

WeierstrassData catalog_essential(int p)
{
    if (p < 2) throw std::invalid_argument("essential family requires integer p >= 2");
    auto E = [](Complex z) { return std::exp(0.5 * (z - 1.0 / z)); };
    double q = 2 * p - 1;
    WeierstrassData d;
    d.is_rational = false;
    d.phi_fn = make_checked_callable(
        [E, q](Complex z) { return std::pow(z, q) * E(z); },
        [E, q](Complex z) {
            return E(z) * (q * std::pow(z, q - 1) + std::pow(z, q) * 0.5 * (1.0 + 1.0 / (z * z)));
        },
        "z^(2p-1) exp((z-1/z)/2)");
    d.psi_fn = make_checked_callable(
        [E, q](Complex z) { return -std::pow(z, -q) * E(z); },
        [E, q](Complex z) {
            return E(z) *
                   (q * std::pow(z, -q - 1) - std::pow(z, -q) * 0.5 * (1.0 + 1.0 / (z * z)));
        },
        "-z^(1-2p) exp((z-1/z)/2)");
    d.h_fn = make_checked_callable(
        [E](Complex z) { return -0.5 * (1.0 + 1.0 / (z * z)) / E(z); },
        [E](Complex z) {
            Complex w = 1.0 + 1.0 / (z * z);
            return (std::pow(z, -3.0) + 0.25 * w * w) / E(z);
        },
        "d/dz of exp(-(z-1/z)/2)");
    d.callable_name = "essential";
    d.callable_params["p"] = p;
    d.punctures = {ExtComplex(Complex(0)), ExtComplex::inf()};
    d.involution_antipodal = true;
    char buf[48];
    std::snprintf(buf, sizeof(buf), "essential p=%d", p);
    d.metadata = buf;
    return d;
}

WeierstrassData catalog_section4()
{
    const double s3 = std::sqrt(3.0);
    const Complex omega(-0.5, s3 / 2.0); // primitive cube root of unity
    const Complex omega2 = omega * omega;
    WeierstrassData d;
    // phi = -sqrt(3) i z / ((z^2-1)^2 + 2 w^2 (z^2+1))
    Poly zsq_minus1({Complex(-1), Complex(0), Complex(1)});
    Poly zsq_plus1({Complex(1), Complex(0), Complex(1)});
    Poly dphi = zsq_minus1 * zsq_minus1 + zsq_plus1 * (2.0 * omega2);
    d.phi = RationalMap(Poly({Complex(0), -s3 * kI}), dphi);
    // psi = -sqrt(3) i z^3 / ((z^2-1)^2 + 2 w z^2 (z^2+1)); the involution
    // pairing forces the cube root w here, consistent with
    // psi = (phi psi dh)/(phi dh)
    Poly dpsi = zsq_minus1 * zsq_minus1 + (zsq_plus1 * (2.0 * omega)).shifted_up(2);
    d.psi = RationalMap(Poly({Complex(0), Complex(0), Complex(0), -s3 * kI}), dpsi);
    // dh = (1/z^3 - z + (16 i / sqrt 3) z / (z^2-1)^2) dz
    RationalMap term1(Poly::constant(Complex(1)),
                      Poly({Complex(0), Complex(0), Complex(0), Complex(1)}));
    RationalMap term2 = RationalMap::identity() * Complex(-1);
    RationalMap term3(Poly({Complex(0), 16.0 * kI / s3}), zsq_minus1 * zsq_minus1);
    d.h = term1 + term2 + term3;
    d.punctures = {ExtComplex(Complex(0)), ExtComplex::inf(), ExtComplex(Complex(1)),
                   ExtComplex(Complex(-1))};
    d.involution_antipodal = true;
    d.metadata = "section4 two-end candidate";
    return d;
}

WeierstrassData catalog(const std::string& name, const std::map<std::string, double>& params)
{
    auto get = [&](const std::string& key, std::optional<double> fallback = {}) {
        auto it = params.find(key);
        if (it != params.end()) return it->second;
        if (fallback) return *fallback;
        throw std::invalid_argument("catalog '" + name + "' requires parameter '" + key + "'");
    };
    if (name == "meeks")
        return catalog_meeks(Complex(get("lambda_re", 0.0), get("lambda_im", 1.0)),
                             static_cast<int>(get("m", 1.0)));
    if (name == "epsilon_family" || name == "epsilon") return catalog_epsilon(get("eps"));
    if (name == "essential") return catalog_essential(static_cast<int>(get("p")));
    if (name == "section4_candidate" || name == "section4") return catalog_section4();
    throw std::invalid_argument("unknown catalog entry '" + name + "'");
}

} // namespace stsurf
