// stsurf: Weierstrass-data toolkit for spacelike zero-mean-curvature surfaces
// in 4-dimensional Lorentz space. Subcommands: catalog, validate, curvature,
// scan, mesh. Exit codes: 0 success, 1 mathematical failure, 2 usage or parse
// failure.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "stsurf/curvature_quadrature.hpp"
#include "stsurf/involution.hpp"
#include "stsurf/singular_scan.hpp"
#include "stsurf/surface_mesh.hpp"
#include "stsurf/wdf.hpp"

using namespace stsurf;

namespace {

struct GlobalFlags {
    double tol = 1e-9;
    bool quiet = false;
    bool json_out = false;
};

WeierstrassData load_or_die(const std::string& path)
{
    try {
        return load_wdf(path);
    } catch (const WdfParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        std::exit(2);
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid data: " << e.what() << "\n";
        std::exit(1);
    }
}

void write_scan_csv(const ScanResult& res, std::ostream& os)
{
    os << "z_re,z_im,residual,m,n,kind\n";
    char line[160];
    for (const auto& sp : res.points) {
        double re = sp.z.is_inf() ? INFINITY : sp.z.value.real();
        double im = sp.z.is_inf() ? INFINITY : sp.z.value.imag();
        std::snprintf(line, sizeof(line), "%.12g,%.12g,%.3e,%d,%d,%s\n", re, im, sp.residual,
                      sp.m, sp.n, sp.kind == SingularPoint::Kind::Bad ? "bad" : "good");
        os << line;
    }
}

int cmd_catalog(const std::string& name, const std::vector<double>& lambda, int m, double eps,
                int p, const std::string& output)
{
    WeierstrassData data;
    try {
        std::map<std::string, double> params;
        if (lambda.size() == 2) {
            params["lambda_re"] = lambda[0];
            params["lambda_im"] = lambda[1];
        }
        params["m"] = m;
        if (eps > 0) params["eps"] = eps;
        if (p > 0) params["p"] = p;
        data = catalog(name, params);
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }
    if (output.empty()) {
        std::cout << wdf_to_json(data).dump(2) << "\n";
    } else {
        save_wdf(data, output);
        // round-trip check: the written document parses back to the same data
        WeierstrassData back = load_wdf(output);
        if (back.is_rational != data.is_rational ||
            back.punctures.size() != data.punctures.size()) {
            std::cerr << "internal error: WDF round-trip mismatch\n";
            return 1;
        }
    }
    return 0;
}

int cmd_validate(const GlobalFlags& g, const std::string& input, bool skip_scan, int grid)
{
    WeierstrassData data = load_or_die(input);
    ValidationOptions opt;
    opt.tol = g.tol;
    opt.skip_scan = skip_scan;
    opt.scan_grid = grid;
    ValidationSummary s;
    try {
        s = run_validation(data, opt);
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation failed: " << e.what() << "\n";
        return 1;
    }
    if (g.json_out)
        std::cout << render_json(s).dump(2) << "\n";
    else
        std::cout << render_text(s, g.quiet);
    return s.pass() ? 0 : 1;
}

int cmd_curvature(const GlobalFlags& g, const std::string& input, const std::string& method,
                  double inner_radius, int levels, const std::string& table_path)
{
    WeierstrassData data = load_or_die(input);
    bool want_index = method == "index" || method == "both";
    bool want_quad = method == "quad" || method == "both";
    if (!want_index && !want_quad) {
        std::cerr << "usage error: --method must be index, quad or both\n";
        return 2;
    }
    if (want_index && !data.is_rational) {
        std::cerr << "usage error: the index formulas need rational data; "
                     "use --method quad for callable data\n";
        return 2;
    }

    bool involution_verified = data.involution_antipodal && check_involution(data).pass(1e-8);
    nlohmann::json j;
    std::optional<CurvatureReport> index_rep;
    std::optional<CurvatureQuadrature> quad_rep;
    try {
        if (want_index) index_rep = total_curvature(data, involution_verified);
        if (want_quad) {
            QuadratureConfig cfg;
            cfg.inner_radius = inner_radius;
            cfg.refinement_levels = levels;
            quad_rep = integrate_curvature(data, cfg, involution_verified);
        }
    } catch (const std::domain_error& e) {
        std::cerr << "curvature failed: " << e.what() << "\n";
        return 1;
    }

    if (index_rep) {
        j["index"] = {{"cover", index_rep->by_deg_phi}, {"agreement", index_rep->agreement}};
        if (index_rep->quotient_value) j["index"]["quotient"] = *index_rep->quotient_value;
        if (!g.json_out) {
            std::cout << "index formulas (cover): " << format_pi_multiple(index_rep->by_deg_phi)
                      << " = " << format_pi_multiple(index_rep->by_deg_psi) << " = "
                      << format_pi_multiple(index_rep->by_jorge_meeks)
                      << (index_rep->agreement ? " (agree)" : " (DISAGREE)") << "\n";
            if (index_rep->quotient_value)
                std::cout << "index formulas (quotient): "
                          << format_pi_multiple(*index_rep->quotient_value) << "\n";
        }
    }
    if (quad_rep) {
        j["quadrature"] = {{"cover", quad_rep->totalK},
                           {"kperp", quad_rep->totalKperp},
                           {"error_estimate", quad_rep->error_estimate},
                           {"converged", quad_rep->converged}};
        if (quad_rep->quotient) j["quadrature"]["quotient"] = *quad_rep->quotient;
        if (!g.json_out) {
            std::cout << "quadrature (cover): -K = " << quad_rep->totalK / kPi
                      << " pi, K-perp = " << quad_rep->totalKperp / kPi << " pi (error est "
                      << quad_rep->error_estimate / kPi << " pi"
                      << (quad_rep->converged ? ")" : ", NOT converged)") << "\n";
            if (quad_rep->quotient)
                std::cout << "quadrature (quotient): " << *quad_rep->quotient / kPi << " pi\n";
        }
    }
    if (index_rep && quad_rep && !g.json_out) {
        double diff = std::abs(index_rep->by_deg_phi - quad_rep->totalK);
        std::cout << "index vs quadrature: |difference| = " << diff / kPi << " pi ("
                  << (diff <= std::max(0.01 * std::abs(index_rep->by_deg_phi),
                                       quad_rep->error_estimate)
                          ? "agree"
                          : "DISAGREE")
                  << ")\n";
    }
    if (g.json_out) std::cout << j.dump(2) << "\n";
    if (quad_rep && !table_path.empty()) {
        std::ofstream os(table_path);
        if (!os) {
            std::cerr << "cannot open " << table_path << "\n";
            return 1;
        }
        write_convergence_csv(*quad_rep, os);
    }
    if (quad_rep && !quad_rep->converged) return 1;
    return 0;
}

int cmd_scan(const GlobalFlags& g, const std::string& input, int grid, const std::string& output)
{
    WeierstrassData data = load_or_die(input);
    ScanGrid scan_grid;
    scan_grid.n = grid;
    ScanResult res = scan_singular_points(data, scan_grid);
    if (output.empty()) {
        write_scan_csv(res, std::cout);
    } else {
        std::ofstream os(output);
        if (!os) {
            std::cerr << "cannot open " << output << "\n";
            return 1;
        }
        write_scan_csv(res, os);
    }
    if (!g.quiet)
        std::cerr << "scan: " << res.points.size() << " singular point(s), "
                  << res.suspicious.size() << " suspicious minima at grid " << scan_grid.n << "\n";
    return 0;
}

int cmd_mesh(const GlobalFlags& g, const std::string& input, DomainSpec dom,
             const std::string& project, bool force, const std::string& output)
{
    WeierstrassData data = load_or_die(input);
    if (!force) {
        ValidationOptions opt;
        opt.tol = g.tol;
        opt.scan_grid = 256;
        ValidationSummary s = run_validation(data, opt);
        if (!s.pass()) {
            std::cerr << "mesh refused: validation failed (use --force to override)\n";
            for (const auto& f : s.failures) std::cerr << "  " << f << "\n";
            return 1;
        }
    }
    MeshProjection proj;
    if (project == "drop_x4")
        proj = MeshProjection::DropX4;
    else if (project == "stereographic_x4")
        proj = MeshProjection::StereographicX4;
    else {
        std::cerr << "usage error: --project must be drop_x4 or stereographic_x4\n";
        return 2;
    }
    try {
        auto mesh = integrate_surface(data, dom);
        export_obj(mesh, dom, proj, output);
        if (!g.quiet)
            std::cerr << "wrote " << mesh.size() << " vertices to " << output
                      << " (+ companion CSV)\n";
    } catch (const std::exception& e) {
        std::cerr << "mesh failed: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Weierstrass data toolkit for stationary surfaces in Lorentz 4-space"};
    app.require_subcommand(1);
    app.fallthrough();
    GlobalFlags g;
    app.add_option("--tol", g.tol, "numerical tolerance for validation checks");
    app.add_flag("--quiet", g.quiet, "suppress informational output");
    app.add_flag("--json", g.json_out, "machine-readable JSON output");

    auto* cat = app.add_subcommand("catalog", "write a built-in example as a WDF file");
    std::string cat_name, cat_out;
    std::vector<double> cat_lambda;
    int cat_m = 1, cat_p = 0;
    double cat_eps = 0;
    cat->add_option("name", cat_name, "meeks | epsilon | essential | section4")->required();
    cat->add_option("--lambda", cat_lambda, "unit-circle parameter (re im)")->expected(2);
    cat->add_option("--m", cat_m, "power parameter for meeks (m >= 1)");
    cat->add_option("--eps", cat_eps, "parameter for the epsilon family (> 0)");
    cat->add_option("--p", cat_p, "parameter for the essential family (>= 2)");
    cat->add_option("-o,--output", cat_out, "output WDF path (stdout when omitted)");

    auto* val = app.add_subcommand("validate", "run the full validation pipeline");
    std::string val_in;
    bool val_skip_scan = false;
    int val_grid = 512;
    val->add_option("input", val_in, "WDF file")->required();
    val->add_flag("--skip-scan", val_skip_scan, "skip the global singular scan");
    val->add_option("--grid", val_grid, "scan grid resolution per chart");

    auto* cur =
        app.add_subcommand("curvature", "total curvature by index formulas and/or quadrature");
    std::string cur_in, cur_method = "both", cur_table;
    double cur_inner = 1e-3;
    int cur_levels = 4;
    cur->add_option("input", cur_in, "WDF file")->required();
    cur->add_option("--method", cur_method, "index | quad | both (default both)");
    cur->add_option("--inner-radius", cur_inner, "quadrature cutoff around the ends");
    cur->add_option("--levels", cur_levels, "quadrature refinement levels");
    cur->add_option("--table", cur_table, "write the quadrature convergence table as CSV");

    auto* scn = app.add_subcommand("scan", "global search for singular points (CSV output)");
    std::string scn_in, scn_out;
    int scn_grid = 512;
    scn->add_option("input", scn_in, "WDF file")->required();
    scn->add_option("--grid", scn_grid, "grid resolution per chart");
    scn->add_option("-o,--output", scn_out, "CSV path (stdout when omitted)");

    auto* msh = app.add_subcommand("mesh", "integrate the immersion and export OBJ + CSV");
    std::string msh_in, msh_out, msh_project = "drop_x4";
    DomainSpec dom;
    bool msh_force = false;
    std::vector<double> msh_base;
    msh->add_option("input", msh_in, "WDF file")->required();
    msh->add_option("-o,--output", msh_out, "output OBJ path")->required();
    msh->add_option("--r-min", dom.r_min, "inner radius of the annulus");
    msh->add_option("--r-max", dom.r_max, "outer radius of the annulus");
    msh->add_option("--nr", dom.n_r, "radial node count");
    msh->add_option("--ntheta", dom.n_theta, "angular node count");
    msh->add_option("--base", msh_base, "base point (re im), x(base) = 0")->expected(2);
    msh->add_option("--project", msh_project, "drop_x4 | stereographic_x4");
    msh->add_flag("--force", msh_force, "mesh even when validation fails");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (cat->parsed()) return cmd_catalog(cat_name, cat_lambda, cat_m, cat_eps, cat_p, cat_out);
        if (val->parsed()) return cmd_validate(g, val_in, val_skip_scan, val_grid);
        if (cur->parsed())
            return cmd_curvature(g, cur_in, cur_method, cur_inner, cur_levels, cur_table);
        if (scn->parsed()) return cmd_scan(g, scn_in, scn_grid, scn_out);
        if (msh->parsed()) {
            if (msh_base.size() == 2) dom.base_point = Complex(msh_base[0], msh_base[1]);
            return cmd_mesh(g, msh_in, dom, msh_project, msh_force, msh_out);
        }
    } catch (const WdfParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
