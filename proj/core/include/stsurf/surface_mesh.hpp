#ifndef STSURF_SURFACE_MESH_HPP
#define STSURF_SURFACE_MESH_HPP

#include <string>

#include "stsurf/weierstrass.hpp"

namespace stsurf {

struct MeshPoint {
    Complex z;
    std::array<double, 4> x{0, 0, 0, 0}; ///< 2 Re int x_z dz from the base point
    double conformal_factor = 0.0;       ///< e^{2w} = 2 <x_z, conj x_z>
};

struct DomainSpec {
    enum class Chart { Disk, Annulus };
    Chart chart = Chart::Annulus;
    double r_min = 0.5;
    double r_max = 2.0;
    int n_r = 32;
    int n_theta = 64;
    /// integration base point; x(base_point) = 0. Defaults to the geometric
    /// mid-radius on the positive real axis when left at 0.
    Complex base_point{0.0, 0.0};
};

/// x at each grid node r_j e^{i theta_k} (row-major over r then theta) by
/// composite Gauss-Legendre quadrature along a radial-then-angular path from
/// the base point. The domain must be puncture-free; a node at a singular
/// point (vanishing conformal factor) is an error naming it.
std::vector<MeshPoint> integrate_surface(const WeierstrassData& data, const DomainSpec& domain);

struct LoopSpec {
    Complex center{0.0, 0.0};
    double radius = 1.0;
    int nodes = 1024;
};

/// 2 Re of the loop integral of x_z dz: the closure defect of the
/// representation around the loop; near zero for valid data.
std::array<double, 4> loop_defect(const WeierstrassData& data, const LoopSpec& loop);

/// e^{2w} = 2 <x_z, conj x_z> at z, equal to 4 |phi - conj psi|^2 |h|^2;
/// positive where the surface is immersed. Throws when the value collapses
/// (singular or degenerate point).
double conformal_factor(const WeierstrassData& data, Complex z);

enum class MeshProjection { DropX4, StereographicX4 };

/// Triangulated OBJ ("v x y z", 1-based "f i j k" with quads split
/// consistently) plus a companion CSV holding all four coordinates and the
/// conformal factor. Refuses to write an empty mesh.
void export_obj(const std::vector<MeshPoint>& mesh, const DomainSpec& domain,
                MeshProjection projection, const std::string& obj_path);

} // namespace stsurf

#endif
