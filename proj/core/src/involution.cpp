#include "stsurf/involution.hpp"

#include <cmath>
#include <stdexcept>

namespace stsurf {

namespace {
const Complex kI(0.0, 1.0);

Complex antipode_c(Complex z) { return -1.0 / std::conj(z); }
} // namespace

InvolutionReport check_involution(const WeierstrassData& data)
{
    InvolutionReport rep;

    // puncture pairing under I
    std::vector<int> partner(data.punctures.size(), -1);
    for (size_t i = 0; i < data.punctures.size(); ++i) {
        ExtComplex image = antipode(data.punctures[i]);
        for (size_t j = 0; j < data.punctures.size(); ++j)
            if (sphere_close(image, data.punctures[j], 1e-9)) partner[i] = static_cast<int>(j);
        if (partner[i] < 0) rep.punctures_closed = false;
        if (partner[i] == static_cast<int>(i)) rep.fixed_point_free = false;
    }
    if (!rep.punctures_closed)
        return rep; // structural failure: residuals are meaningless without it
    for (size_t i = 0; i < data.punctures.size(); ++i)
        if (static_cast<int>(i) < partner[i])
            rep.puncture_pairing.emplace_back(static_cast<int>(i), partner[i]);

    // sampled residuals on the I-paired circles |z| = 1/2 and |z| = 2
    for (int k = 0; k < 50; ++k) {
        double ang = 2.0 * kPi * (k + 0.31) / 50.0;
        for (double r : {0.5, 2.0}) {
            Complex z = r * Complex(std::cos(ang), std::sin(ang));
            if (data.is_puncture(ExtComplex(z), 1e-6)) continue;
            Complex w = antipode_c(z);
            rep.phi_symmetry_residual =
                std::max(rep.phi_symmetry_residual,
                         std::abs(data.phi_at(w) - std::conj(data.psi_at(z))));
            rep.psi_symmetry_residual =
                std::max(rep.psi_symmetry_residual,
                         std::abs(data.psi_at(w) - std::conj(data.phi_at(z))));
            // I* dh = conj(dh): h(-1/conj z) / conj(z)^2 = conj(h(z))
            Complex lhs = data.h_at(w) / (std::conj(z) * std::conj(z));
            rep.dh_symmetry_residual =
                std::max(rep.dh_symmetry_residual, std::abs(lhs - std::conj(data.h_at(z))));
        }
    }
    return rep;
}

Vec4C residue_vector(const WeierstrassData& data, const ExtComplex& p)
{
    if (!data.is_rational)
        throw std::domain_error("residue_vector requires rational data");
    Vec4C out;
    auto comps = xz_components(data);
    for (size_t i = 0; i < 4; ++i)
        out[i] = comps[i].is_zero() ? Complex(0) : form_residue(comps[i], p);
    return out;
}

double FluxVector::norm() const
{
    double s = 0;
    for (double c : components) s += c * c;
    return std::sqrt(s);
}

FluxReport flux_vanishing_check(const WeierstrassData& data)
{
    InvolutionReport inv = check_involution(data);
    if (!inv.pass(1e-8))
        throw std::domain_error(
            "flux_vanishing_check: the antipodal symmetry is not verified (residuals " +
            std::to_string(inv.phi_symmetry_residual) + ", " +
            std::to_string(inv.psi_symmetry_residual) + ", " +
            std::to_string(inv.dh_symmetry_residual) + ")");
    FluxReport rep;
    const Complex two_pi_i = 2.0 * kPi * kI;
    for (const ExtComplex& p : data.punctures) {
        FluxCheck fc;
        fc.point = p;
        Vec4C rv = residue_vector(data, p);
        Vec4C partner_rv = residue_vector(data, antipode(p));
        double imag2 = 0, real2 = 0, anti2 = 0;
        for (size_t i = 0; i < 4; ++i) {
            Complex period = two_pi_i * rv[i];
            fc.flux.components[i] = 2.0 * period.real();
            imag2 += rv[i].imag() * rv[i].imag();
            real2 += rv[i].real() * rv[i].real();
            Complex anti = partner_rv[i] + std::conj(rv[i]);
            anti2 += std::norm(anti);
        }
        fc.residue_imag_norm = std::sqrt(imag2);
        fc.residue_real_norm = std::sqrt(real2);
        fc.pair_antisymmetry = std::sqrt(anti2);
        rep.per_end.push_back(fc);
    }
    return rep;
}

QuotientReport quotient_report(const WeierstrassData& data)
{
    InvolutionReport inv = check_involution(data);
    if (!inv.structural_ok())
        throw std::domain_error("quotient_report: puncture set is not antipodally closed");
    QuotientReport rep;
    rep.cover_genus = 0;
    rep.cover_punctures = static_cast<int>(data.punctures.size());
    if (rep.cover_punctures % 2 != 0)
        throw std::domain_error("quotient_report: odd puncture count cannot descend to the "
                                "quotient (ends come in antipodal pairs)");
    rep.quotient_punctures = rep.cover_punctures / 2;
    rep.euler_characteristic = 1 - rep.quotient_punctures;
    rep.orientable = false;
    rep.moebius_strip = rep.quotient_punctures == 1;
    rep.description = "projective plane minus " + std::to_string(rep.quotient_punctures) +
                      (rep.quotient_punctures == 1 ? " point (Moebius strip)" : " points");
    return rep;
}

} // namespace stsurf
