#ifndef STSURF_WDF_HPP
#define STSURF_WDF_HPP

#include <nlohmann/json_fwd.hpp>

#include "stsurf/curvature_quadrature.hpp"
#include "stsurf/involution.hpp"
#include "stsurf/singular_scan.hpp"
#include "stsurf/surface_mesh.hpp"
#include "stsurf/vector_form.hpp"
#include "stsurf/weierstrass.hpp"

namespace stsurf {

/// WDF: the textual Weierstrass-data format. One JSON document holds phi,
/// psi and dh together (their validity conditions couple them), the puncture
/// list, the involution claim and free-form metadata. Version 1.
///
/// Rational maps serialize as ascending [re, im] coefficient pairs; the
/// non-rational catalog families serialize as a named callable with
/// parameters.
/// `include_xz_form` adds the partial-fraction form of x_z as an optional
/// derived section (ignored on load).
nlohmann::json wdf_to_json(const WeierstrassData& data, bool include_xz_form = false);
WeierstrassData wdf_from_json(const nlohmann::json& j);

void save_wdf(const WeierstrassData& data, const std::string& path);
WeierstrassData load_wdf(const std::string& path);

/// Thrown for malformed documents (distinct from mathematical failures).
struct WdfParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------

struct ValidationOptions {
    double tol = 1e-9;
    bool skip_scan = false;
    int scan_grid = 512;
};

/// Full validation pipeline: structure and regularity, periods (residues for
/// rational data, loop integrals otherwise), the involution claim, end
/// classification, the index-formula curvature, and the global singular scan.
/// The overall verdict is the conjunction of the sub-verdicts.
struct ValidationSummary {
    RegularityReport regularity;
    std::optional<PeriodReport> periods;
    std::vector<std::pair<ExtComplex, std::array<double, 4>>> loop_defects;
    std::optional<InvolutionReport> involution;
    std::vector<EndReport> ends;
    std::optional<CurvatureReport> curvature;
    std::optional<ScanResult> scan;
    std::vector<std::string> failures;
    bool pass() const { return failures.empty(); }
};

ValidationSummary run_validation(const WeierstrassData& data, const ValidationOptions& opt = {});

/// Line-oriented text report.
std::string render_text(const ValidationSummary& summary, bool quiet = false);
/// Machine-readable structured report.
nlohmann::json render_json(const ValidationSummary& summary);

/// Prints a curvature value as "p/q pi" when it is within 1e-6 of a small
/// rational multiple of pi, decimal otherwise.
std::string format_pi_multiple(double value);

/// Structured-text rendering of the two-end conformality obstruction.
std::string render_obstruction_text(const TwoEndObstructionReport& rep);

} // namespace stsurf

#endif
