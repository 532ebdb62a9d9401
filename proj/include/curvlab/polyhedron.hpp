#pragma once

// Compact convex polyhedra in H^3.
//
// Faces are true (merged) faces of the hull; face normals are outward, so
// <v, n_F> <= 0 for every vertex v. All incidence predicates use the
// intrinsic quantity <n, v> = sinh(signed distance) evaluated in binary128.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "curvlab/common.hpp"
#include "curvlab/lorentz.hpp"

namespace curvlab {

/// Vertex-on-plane tolerance on |<n, v>|.
inline constexpr double kPlaneTol = 1e-9;

struct Face {
    std::vector<int> vertices;  // counterclockwise seen from outside
    QVec4 normal;               // outward unit normal
    HPlane plane() const { return HPlane::from_quad(normal); }
};

struct Edge {
    int a = -1, b = -1;        // vertex indices, a < b
    int left = -1, right = -1; // adjacent faces; a -> b runs counterclockwise in `left`
    double dihedral = 0.0;     // interior dihedral angle in (0, pi)
};

class Polyhedron {
public:
    /// Builds and validates a polyhedron from vertices and face cycles (either
    /// orientation). Throws InvalidInput naming the first violated invariant.
    static Polyhedron from_faces(std::vector<HPoint> vertices, std::vector<std::vector<int>> faces);

    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    int face_count() const { return static_cast<int>(faces_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    const std::vector<HPoint>& vertices() const { return vertices_; }
    const std::vector<Face>& faces() const { return faces_; }
    const std::vector<Edge>& edges() const { return edges_; }

    const QVec4& vertex(int i) const { return vertices_[i].exact(); }
    /// Edge index joining vertices a and b, or -1.
    int edge_index(int a, int b) const;
    /// The face across edge e from face f.
    int other_face(int e, int f) const;
    /// Edges bounding face f, in the face's vertex order.
    const std::vector<int>& face_edges(int f) const { return face_edges_[f]; }

private:
    std::vector<HPoint> vertices_;
    std::vector<Face> faces_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> face_edges_;
};

/// Convex hull of the Klein images, lifted back. Non-extreme points are
/// dropped; coplanar faces are merged. Throws InvalidInput for fewer than
/// four points or a coplanar configuration.
Polyhedron hull_klein(const std::vector<HPoint>& points);

/// Interior dihedral angles, indexed like P.edges().
std::vector<double> dihedral_angles(const Polyhedron& P);

struct Diameter {
    double rho = 0.0;
    int a = -1, b = -1;
};

Diameter diameter(const Polyhedron& P);

/// Interior angle of face f at each corner, in the face's vertex order.
std::vector<double> face_angles(const Polyhedron& P, int f);

/// (k - 2) pi - sum of interior angles.
double face_area(const Polyhedron& P, int f);

/// Area of a convex hyperbolic polygon by fan triangulation from its first
/// vertex (each triangle by its own angle defect).
double polygon_area(const std::vector<QVec4>& polygon);

struct CrossSection {
    QVec4 plane;
    std::vector<HPoint> polygon;          // one point per crossing edge, cyclic
    std::vector<int> edges;               // crossing edges, same order as polygon
    std::vector<int> faces;               // faces[i] contains polygon side i -> i+1
    std::vector<double> interior_angles;  // polygon angle at each point
    double exterior_sum = 0.0;
    double area = 0.0;                    // fan-triangulation area
};

/// Section of P by the plane with unit normal Q. Throws DomainError when Q
/// misses P or passes within kPlaneTol of a vertex (index() names it).
CrossSection cross_section(const Polyhedron& P, const QVec4& Q);
inline CrossSection cross_section(const Polyhedron& P, const HPlane& Q) { return cross_section(P, Q.exact()); }

struct StretchOptions {
    int max_attempts = 500;
    /// Also require a vertex-free gap of the equally spaced diameter grid with
    /// at least two vertices on each side (see find_short_face_cycle).
    bool require_separating_gap = true;
};

/// Random polyhedron with N vertices and diameter in [0.9 rho, 1.1 rho]: two
/// anchors at distance rho on the x2 axis, N - 2 points within distance 1 of
/// the axis, clustered toward the anchors. Throws DomainError when the
/// attempt budget is exhausted.
Polyhedron stretch_generator(int N, double rho, std::uint64_t seed, const StretchOptions& opt = {});

/// Hull of `count` points uniform in the Klein ball of Euclidean radius r.
Polyhedron random_klein_hull(int count, double r, std::uint64_t seed);

/// Applies an isometry to every vertex and rebuilds.
Polyhedron transformed(const Polyhedron& P, const LorentzTransform& T);

/// Axial coordinate of v along the oriented geodesic from A to B, measured
/// from the midpoint (orthogonal projection).
double axial_coordinate(const QVec4& A, const QVec4& B, const QVec4& v);

/// Open grid segments (index k covers (k rho/N, (k+1) rho/N) measured from
/// the diameter endpoint a) containing no projected vertex and leaving at
/// least `min_side` vertices on each side.
std::vector<int> separating_gaps(const Polyhedron& P, int min_side = 2);

nlohmann::json to_json(const Polyhedron& P);
Polyhedron polyhedron_from_json(const nlohmann::json& j);

}  // namespace curvlab
