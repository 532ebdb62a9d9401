#pragma once

// Tetrahedron volumes in S^3 and H^3 from dihedral angles by integrating the
// Schlafli differential along a shrinking path, plus Monte Carlo oracles.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "curvlab/common.hpp"
#include "curvlab/lorentz.hpp"
#include "curvlab/simplex_gram.hpp"

namespace curvlab {

enum class VolumeMethod { SchlafliPath, MonteCarlo };

std::string to_string(VolumeMethod m);

struct VolumeEstimate {
    double value = 0.0;
    double error_bound = 0.0;
    VolumeMethod method = VolumeMethod::SchlafliPath;
    Curvature curvature = Curvature::Hyperbolic;
    std::uint64_t samples = 0;      // Monte Carlo only
    std::uint64_t evaluations = 0;  // integrand evaluations, path only
    double truncated_tail = 0.0;    // part of error_bound owed to truncation
};

/// Gauss-Bonnet area of a geodesic triangle: K (sum - pi).
double area_2d(const std::array<double, 3>& angles, Curvature K);

/// dV/dtheta per angle slot: the length of the edge carrying the angle,
/// divided by 2K. Requires a compact tetrahedron of the given curvature.
std::vector<double> schlafli_gradient(const AngleVector& theta, Curvature K);

/// Tetrahedron state along the shrinking path at parameter s in [0, 1].
struct PathState {
    std::array<double, 6> angles{};   // per slot
    std::array<double, 6> lengths{};  // per slot: edge opposite the slot pair
};

/// The scaling path of a reconstructed simplex: Klein-chart homothety toward
/// the barycenter (K = -1), gnomonic-chart homothety toward the vertex
/// centroid (K = +1). Evaluation is carried out in binary128.
class ScalingPath {
public:
    explicit ScalingPath(const VertexMatrix& V);

    Curvature curvature() const { return K_; }
    PathState at(double s) const;
    /// dV/ds with dtheta/ds from central differences of step h.
    double integrand(double s, double h = 1e-6) const;

private:
    struct QuadState {
        std::array<Quad, 6> angles;
        std::array<Quad, 6> lengths;
    };
    QuadState state(double s) const;

    Curvature K_;
    std::array<QVec4, 4> chart_;  // vertices in the chart plane
    QVec4 center_;
};

/// Adaptive Simpson integration of the Schlafli differential from s = 0 to 1.
VolumeEstimate volume_tetra(const AngleVector& theta, Curvature K, double quadrature_tol = 1e-10);

struct McOptions {
    std::uint64_t samples = 10'000'000;
    std::uint64_t seed = 1;
    Exec exec = Exec::Parallel;
};

/// Samples per independently seeded block; fixes the reduction order.
inline constexpr std::uint64_t kMcBlock = 65536;

/// Uniform sampling of S^3 (K = +1) or of the Klein-chart bounding box with
/// density weight (1 - |u|^2)^-2 (K = -1); value +- 3 sigma.
VolumeEstimate mc_volume_oracle(const VertexMatrix& V, const McOptions& opt);

/// Volume of the intersection of half-spheres {x in S^3 : <n_i, x> >= 0};
/// no constraints gives the whole sphere, 2 pi^2.
VolumeEstimate mc_spherical_halfspaces(const std::vector<std::array<double, 4>>& normals, const McOptions& opt);

/// Hyperbolic tetrahedron given by Klein-chart vertices, some of which may lie
/// on the unit sphere (ideal). Integrates geodesic-polar volume along random
/// rays from the barycenter, clipped at radius `truncation`; the clipped cusp
/// volume is estimated in closed form and added to error_bound.
VolumeEstimate mc_volume_truncated(const std::array<KleinPoint, 4>& klein_vertices, const McOptions& opt,
                                   double truncation = 10.0);

struct HolderRow {
    double margin = 0.0;
    double volume = 0.0;
    double grad_norm = 0.0;
    double grad_max = 0.0;  // largest |component|
    double step = 0.0;  // distance in angle space to the family endpoint
};

struct HolderFit {
    double holder_exponent = 0.0;  // slope of log|dV| vs log|dtheta|
    double log_slope = 0.0;        // slope of |grad V| against |log margin|
    double log_r2 = 0.0;
    double grad_sup = 0.0;  // max |component| over the family
};

/// Samples theta_k = end + 2^-k (start - end), k = 0..steps-1.
/// Throws DomainError naming the first step that leaves the compact class.
std::vector<HolderRow> holder_probe(const AngleVector& start, const AngleVector& end, Curvature K, int steps,
                                    double quadrature_tol = 1e-10);

HolderFit fit_holder(const std::vector<HolderRow>& rows);

/// Least-squares line y = a + b x; returns {a, b, r2}.
std::array<double, 3> linear_fit(const std::vector<double>& x, const std::vector<double>& y);

/// Dihedral angles of a random compact tetrahedron: four points uniform in
/// the Klein ball of radius 0.8 (K = -1) or four uniform points of S^3
/// (K = +1), redrawn until boundary_margin >= min_margin and every angle lies
/// in [0.1, pi - 0.1].
AngleVector random_compact_angles(Curvature K, std::uint64_t seed, double min_margin = 1e-2);

/// Regular hyperbolic family toward the ideal corner: volumes at
/// theta_k = pi/3 + 2^-k * 0.05 for k = 0..levels-1 and the Richardson
/// extrapolation 2 V_k - V_{k-1} (first-order in the node spacing).
struct IdealExtrapolation {
    std::vector<double> thetas, volumes, extrapolated;
    double limit = 0.0;  // last extrapolated value
};
IdealExtrapolation extrapolate_regular_ideal(int levels, double quadrature_tol = 1e-10);

}  // namespace curvlab
