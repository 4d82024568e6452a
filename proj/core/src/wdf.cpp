#include "stsurf/wdf.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

namespace stsurf {

using nlohmann::json;

namespace {

json poly_to_json(const Poly& p)
{
    json arr = json::array();
    for (const Complex& c : p.coeffs()) arr.push_back({c.real(), c.imag()});
    return arr;
}

Poly poly_from_json(const json& j)
{
    if (!j.is_array()) throw WdfParseError("coefficient list must be an array");
    std::vector<Complex> coeffs;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 2)
            throw WdfParseError("coefficients are [re, im] pairs");
        coeffs.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    return Poly(std::move(coeffs));
}

json map_to_json(const RationalMap& f)
{
    return {{"num", poly_to_json(f.num())}, {"den", poly_to_json(f.den())}};
}

RationalMap map_from_json(const json& j)
{
    if (!j.contains("num") || !j.contains("den"))
        throw WdfParseError("rational map needs 'num' and 'den'");
    return RationalMap(poly_from_json(j["num"]), poly_from_json(j["den"]));
}

json puncture_to_json(const ExtComplex& p)
{
    if (p.is_inf()) return "inf";
    return json::array({p.value.real(), p.value.imag()});
}

ExtComplex puncture_from_json(const json& j)
{
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return ExtComplex::inf();
        throw WdfParseError("puncture string must be \"inf\"");
    }
    if (!j.is_array() || j.size() != 2) throw WdfParseError("puncture must be [re, im] or \"inf\"");
    return ExtComplex(Complex(j[0].get<double>(), j[1].get<double>()));
}

} // namespace

json wdf_to_json(const WeierstrassData& data, bool include_xz_form)
{
    json j;
    j["version"] = 1;
    if (data.is_rational) {
        j["phi"] = map_to_json(data.phi);
        j["psi"] = map_to_json(data.psi);
        j["dh"] = map_to_json(data.h);
    } else {
        json call = {{"callable", data.callable_name}, {"params", json::object()}};
        for (const auto& [k, v] : data.callable_params) call["params"][k] = v;
        j["phi"] = call;
        j["psi"] = call;
        j["dh"] = call;
    }
    json punct = json::array();
    for (const ExtComplex& p : data.punctures) punct.push_back(puncture_to_json(p));
    j["punctures"] = punct;
    j["involution"] = data.involution_antipodal ? "antipodal" : "none";
    j["metadata"] = data.metadata;
    if (include_xz_form && data.is_rational) {
        json terms = json::array();
        for (const auto& [b, v] : xz_from_data(data).terms) {
            json t;
            t["kind"] = b.pole ? "pole_power" : "monomial";
            if (b.pole) t["center"] = {b.center.real(), b.center.imag()};
            t["power"] = b.power;
            json coeff = json::array();
            for (size_t i = 0; i < 4; ++i) coeff.push_back({v[i].real(), v[i].imag()});
            t["coeff"] = coeff;
            terms.push_back(t);
        }
        j["xz_form"] = terms;
    }
    return j;
}

WeierstrassData wdf_from_json(const json& j)
{
    if (!j.is_object()) throw WdfParseError("WDF document must be a JSON object");
    if (!j.contains("version") || j["version"].get<int>() != 1)
        throw WdfParseError("unsupported or missing WDF version (expected 1)");
    for (const char* key : {"phi", "psi", "dh", "punctures"})
        if (!j.contains(key)) throw WdfParseError(std::string("missing field '") + key + "'");

    WeierstrassData data;
    if (j["phi"].contains("callable")) {
        std::string name = j["phi"]["callable"].get<std::string>();
        for (const char* key : {"psi", "dh"})
            if (!j[key].contains("callable") || j[key]["callable"].get<std::string>() != name)
                throw WdfParseError("callable-backed data must use one catalog entry for "
                                    "phi, psi and dh");
        std::map<std::string, double> params;
        if (j["phi"].contains("params"))
            for (auto it = j["phi"]["params"].begin(); it != j["phi"]["params"].end(); ++it)
                params[it.key()] = it.value().get<double>();
        try {
            data = catalog(name, params);
        } catch (const std::invalid_argument& e) {
            throw WdfParseError(std::string("callable entry: ") + e.what());
        }
    } else {
        data.phi = map_from_json(j["phi"]);
        data.psi = map_from_json(j["psi"]);
        data.h = map_from_json(j["dh"]);
    }
    data.punctures.clear();
    for (const auto& p : j["punctures"]) data.punctures.push_back(puncture_from_json(p));
    if (j.contains("involution")) {
        std::string inv = j["involution"].get<std::string>();
        if (inv != "antipodal" && inv != "none")
            throw WdfParseError("involution must be \"antipodal\" or \"none\"");
        data.involution_antipodal = inv == "antipodal";
    }
    if (j.contains("metadata")) data.metadata = j["metadata"].get<std::string>();
    validate_data_shape(data);
    return data;
}

void save_wdf(const WeierstrassData& data, const std::string& path)
{
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    os << wdf_to_json(data).dump(2) << "\n";
    if (!os) throw std::runtime_error("write failed for " + path);
}

WeierstrassData load_wdf(const std::string& path)
{
    std::ifstream is(path);
    if (!is) throw WdfParseError("cannot open " + path);
    json j;
    try {
        is >> j;
    } catch (const json::exception& e) {
        throw WdfParseError(std::string("JSON parse error in ") + path + ": " + e.what());
    }
    return wdf_from_json(j);
}

// ---------------------------------------------------------------------------

ValidationSummary run_validation(const WeierstrassData& data, const ValidationOptions& opt)
{
    ValidationSummary s;
    validate_data_shape(data);

    s.regularity = check_regularity(data);
    if (s.regularity.applicable && !s.regularity.pass()) {
        for (const auto& issue : s.regularity.coincident_poles)
            s.failures.push_back("regularity condition 1: " + issue.what + " at " +
                                 to_string(issue.point));
        for (const auto& issue : s.regularity.dh_mismatches)
            s.failures.push_back("regularity condition 2: " + issue.what + " at " +
                                 to_string(issue.point));
        for (const auto& issue : s.regularity.stray_xz_poles)
            s.failures.push_back("data invariant: " + issue.what + " at " +
                                 to_string(issue.point));
    }

    if (data.is_rational) {
        s.periods = check_periods(data, opt.tol);
        for (const auto& pr : s.periods->per_puncture) {
            std::ostringstream os;
            if (pr.horizontal_defect > opt.tol) {
                os << "horizontal period condition at " << to_string(pr.point) << ": defect "
                   << pr.horizontal_defect;
                s.failures.push_back(os.str());
            }
            if (pr.vertical_defect_h > opt.tol) {
                std::ostringstream o2;
                o2 << "vertical period condition at " << to_string(pr.point)
                   << ": Re loop(dh) = " << -2.0 * kPi * pr.res_h.imag();
                s.failures.push_back(o2.str());
            }
            if (pr.vertical_defect_phipsih > opt.tol) {
                std::ostringstream o3;
                o3 << "vertical period condition at " << to_string(pr.point)
                   << ": Re loop(phi psi dh) = " << -2.0 * kPi * pr.res_phipsih.imag();
                s.failures.push_back(o3.str());
            }
        }
    } else {
        // loop-integral fallback for callable data
        for (const ExtComplex& p : data.punctures) {
            if (p.is_inf()) continue;
            double radius = 1.0;
            for (const ExtComplex& q : data.punctures) {
                if (q.is_inf() || sphere_close(p, q)) continue;
                radius = std::min(radius, 0.5 * std::abs(p.value - q.value));
            }
            LoopSpec loop;
            loop.center = p.value;
            loop.radius = radius;
            auto defect = loop_defect(data, loop);
            s.loop_defects.emplace_back(p, defect);
            double norm = 0;
            for (double c : defect) norm += c * c;
            if (std::sqrt(norm) > std::max(opt.tol, 1e-8))
                s.failures.push_back("period (loop closure) fails around " + to_string(p));
        }
    }

    bool involution_verified = false;
    if (data.involution_antipodal) {
        s.involution = check_involution(data);
        involution_verified = s.involution->pass(std::max(opt.tol, 1e-9));
        if (!involution_verified)
            s.failures.push_back("claimed antipodal symmetry does not hold (residuals " +
                                 std::to_string(s.involution->phi_symmetry_residual) + ", " +
                                 std::to_string(s.involution->psi_symmetry_residual) + ", " +
                                 std::to_string(s.involution->dh_symmetry_residual) + ")");
    }

    if (data.is_rational) {
        bool bad_end = false, incomplete = false;
        for (const ExtComplex& p : data.punctures) {
            EndReport er = classify_end(data, p);
            s.ends.push_back(er);
            if (er.kind == EndKind::BadSingular) {
                bad_end = true;
                s.failures.push_back("bad singular end at " + to_string(p) +
                                     " (equal multiplicities m = n = " + std::to_string(er.m) +
                                     ")");
            }
            if (!er.complete) {
                incomplete = true;
                s.failures.push_back("end at " + to_string(p) + " is not complete (d~ = " +
                                     std::to_string(er.d_tilde) + ")");
            }
        }
        if (!bad_end && !incomplete) s.curvature = total_curvature(data, involution_verified);
    }

    if (!opt.skip_scan) {
        ScanGrid grid;
        grid.n = opt.scan_grid;
        s.scan = scan_singular_points(data, grid);
        for (const auto& sp : s.scan->points)
            s.failures.push_back("singular point at " + to_string(sp.z) +
                                 " violates the regularity condition phi != conj(psi)" +
                                 (sp.kind == SingularPoint::Kind::Bad ? " (bad: m = n)" : ""));
        for (const auto& sm : s.scan->suspicious)
            s.failures.push_back("suspicious unconverged minimum of |phi - conj(psi)| near " +
                                 to_string(sm.z));
    }
    return s;
}

std::string format_pi_multiple(double value)
{
    double ratio = value / kPi;
    for (int q = 1; q <= 8; ++q) {
        double pq = std::round(ratio * q);
        if (std::abs(ratio * q - pq) <= 1e-6 * std::max(1.0, std::abs(ratio * q))) {
            long p = static_cast<long>(pq);
            if (p == 0) return "0";
            long g = std::gcd(std::abs(p), static_cast<long>(q));
            p /= g;
            long qq = q / g;
            std::ostringstream os;
            os << p;
            if (qq != 1) os << "/" << qq;
            os << " pi";
            return os.str();
        }
    }
    std::ostringstream os;
    os.precision(9);
    os << value;
    return os.str();
}

std::string render_obstruction_text(const TwoEndObstructionReport& rep)
{
    std::ostringstream os;
    os << "two-regular-ends obstruction at c = " << rep.c << "\n";
    os << "  solved inner products: v1.u1 = " << rep.v1u1_solved.real()
       << ", v1.conj(u1) = " << rep.v1u1bar_solved.real() << ", |u1|^2 = " << rep.u1sq_solved
       << " (system residual " << rep.solve_residual << ")\n";
    os << "  closed forms:          -2c^4/(1+c^2) = " << rep.v1u1_closed.real()
       << ", -2/(1+c^2) = " << rep.v1u1bar_closed.real() << ", 2(1+c^2)^2 = " << rep.u1sq_closed
       << " (gap " << rep.closed_form_gap << ")\n";
    os << "  forced components: a1 = " << rep.alpha1 << ", b2 = " << rep.beta2 << "\n";
    os << "  squared-length surpluses: g1 = " << rep.g1 << ", g2 = " << rep.g2 << "\n";
    os << "  verdict: " << (rep.feasible ? "feasible (unexpected)" : "infeasible")
       << "; |a3 b3 - a4 b4| >= sqrt(g1 g2) = " << rep.infeasibility_margin << "\n";
    return os.str();
}

std::string render_text(const ValidationSummary& s, bool quiet)
{
    std::ostringstream os;
    auto flag = [](bool ok) { return ok ? "PASS" : "FAIL"; };

    if (s.regularity.applicable)
        os << "[" << flag(s.regularity.pass()) << "] regularity (pole/zero structure)\n";
    else
        os << "[SKIP] regularity structure (non-rational data); " << s.regularity.note << "\n";

    if (s.periods) {
        os << "[" << flag(s.periods->pass()) << "] period conditions\n";
        if (!quiet)
            for (const auto& pr : s.periods->per_puncture) {
                os << "    " << to_string(pr.point) << ": horizontal defect "
                   << pr.horizontal_defect << ", vertical defects " << pr.vertical_defect_h
                   << " / " << pr.vertical_defect_phipsih << "\n";
            }
    } else if (!s.loop_defects.empty()) {
        os << "[INFO] loop-closure defects (callable data):\n";
        for (const auto& [p, d] : s.loop_defects)
            os << "    around " << to_string(p) << ": (" << d[0] << ", " << d[1] << ", " << d[2]
               << ", " << d[3] << ")\n";
    }

    if (s.involution) {
        os << "[" << flag(s.involution->pass(1e-9)) << "] antipodal symmetry (residuals "
           << s.involution->phi_symmetry_residual << ", " << s.involution->psi_symmetry_residual
           << ", " << s.involution->dh_symmetry_residual << ")\n";
    }

    if (!s.ends.empty() && !quiet) {
        os << "ends:\n";
        for (const auto& er : s.ends) {
            os << "    " << to_string(er.point) << ": ";
            switch (er.kind) {
            case EndKind::Regular: os << "regular"; break;
            case EndKind::GoodSingular: os << "good singular"; break;
            case EndKind::BadSingular: os << "bad singular"; break;
            }
            os << " (m = " << er.m << ", n = " << er.n << ", ind = " << er.ind
               << ", d = " << er.d << ", d~ = " << er.d_tilde << ")\n";
        }
    }

    if (s.curvature) {
        os << "[" << flag(s.curvature->agreement) << "] total curvature (cover): "
           << format_pi_multiple(s.curvature->by_deg_phi) << " / "
           << format_pi_multiple(s.curvature->by_deg_psi) << " / "
           << format_pi_multiple(s.curvature->by_jorge_meeks) << "\n";
        if (s.curvature->quotient_value)
            os << "    quotient: " << format_pi_multiple(*s.curvature->quotient_value) << "\n";
    }

    if (s.scan) {
        os << "[" << flag(s.scan->clean()) << "] singular scan (grid " << s.scan->grid_n
           << "): " << s.scan->points.size() << " singular point(s), "
           << s.scan->suspicious.size() << " suspicious\n";
        if (!quiet)
            for (const auto& sp : s.scan->points)
                os << "    z = " << to_string(sp.z) << " value " << to_string(sp.value)
                   << " m = " << sp.m << " n = " << sp.n << " |residual| = " << sp.residual
                   << "\n";
    }

    os << (s.pass() ? "VERDICT: PASS" : "VERDICT: FAIL") << "\n";
    if (!s.pass())
        for (const auto& f : s.failures) os << "  failing condition: " << f << "\n";
    return os.str();
}

json render_json(const ValidationSummary& s)
{
    json j;
    j["pass"] = s.pass();
    j["failures"] = s.failures;
    j["regularity"] = {{"applicable", s.regularity.applicable},
                       {"pass", s.regularity.pass()},
                       {"note", s.regularity.note}};
    if (s.periods) {
        json per = json::array();
        for (const auto& pr : s.periods->per_puncture)
            per.push_back({{"point", to_string(pr.point)},
                           {"res_h", {pr.res_h.real(), pr.res_h.imag()}},
                           {"res_phih", {pr.res_phih.real(), pr.res_phih.imag()}},
                           {"res_psih", {pr.res_psih.real(), pr.res_psih.imag()}},
                           {"res_phipsih", {pr.res_phipsih.real(), pr.res_phipsih.imag()}},
                           {"horizontal_defect", pr.horizontal_defect},
                           {"vertical_defect_h", pr.vertical_defect_h},
                           {"vertical_defect_phipsih", pr.vertical_defect_phipsih}});
        j["periods"] = {{"pass", s.periods->pass()}, {"per_puncture", per}};
    }
    if (s.involution)
        j["involution"] = {{"pass", s.involution->pass(1e-9)},
                           {"phi_residual", s.involution->phi_symmetry_residual},
                           {"psi_residual", s.involution->psi_symmetry_residual},
                           {"dh_residual", s.involution->dh_symmetry_residual},
                           {"fixed_point_free", s.involution->fixed_point_free}};
    if (!s.ends.empty()) {
        json ends = json::array();
        for (const auto& er : s.ends) {
            const char* kind = er.kind == EndKind::Regular
                                   ? "regular"
                                   : er.kind == EndKind::GoodSingular ? "good_singular"
                                                                      : "bad_singular";
            ends.push_back({{"point", to_string(er.point)},
                            {"kind", kind},
                            {"m", er.m},
                            {"n", er.n},
                            {"ind", er.ind},
                            {"ind_plus", er.ind_plus},
                            {"ind10", er.ind10},
                            {"ind01", er.ind01},
                            {"d", er.d},
                            {"d_tilde", er.d_tilde},
                            {"complete", er.complete}});
        }
        j["ends"] = ends;
    }
    if (s.curvature) {
        j["curvature"] = {{"by_deg_phi", s.curvature->by_deg_phi},
                          {"by_deg_psi", s.curvature->by_deg_psi},
                          {"by_jorge_meeks", s.curvature->by_jorge_meeks},
                          {"agreement", s.curvature->agreement}};
        if (s.curvature->quotient_value)
            j["curvature"]["quotient"] = *s.curvature->quotient_value;
    }
    if (s.scan) {
        json pts = json::array();
        for (const auto& sp : s.scan->points)
            pts.push_back({{"z", to_string(sp.z)},
                           {"m", sp.m},
                           {"n", sp.n},
                           {"kind", sp.kind == SingularPoint::Kind::Bad ? "bad" : "good"},
                           {"residual", sp.residual}});
        j["scan"] = {{"grid", s.scan->grid_n},
                     {"points", pts},
                     {"suspicious", s.scan->suspicious.size()}};
    }
    return j;
}

} // namespace stsurf
