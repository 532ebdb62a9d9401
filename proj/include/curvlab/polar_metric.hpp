#pragma once

// The polar spherical cone metric of a compact convex polyhedron, seen
// through its dual 1-skeleton: one node per face, one edge per edge of P
// weighted by the exterior dihedral angle.

#include <array>
#include <optional>
#include <vector>

#include "json.hpp"

#include "curvlab/common.hpp"
#include "curvlab/polyhedron.hpp"

namespace curvlab {

struct DualEdge {
    int f = -1, g = -1;  // faces of P (dual nodes), f = left, g = right
    double weight = 0.0; // pi - dihedral
};

struct DualMetric {
    int nodes = 0;
    std::vector<DualEdge> edges;                  // indexed like P.edges()
    std::vector<std::vector<int>> incident;       // node -> dual edge indices
    std::vector<double> cone_angles;              // per node
    std::vector<std::vector<double>> node_corners;  // per node: pi - face angle, in face vertex order
    std::vector<double> face_areas;               // per node, by fan triangulation
    std::vector<std::vector<int>> vertex_edges;   // vertex of P -> its edges (a dual face boundary)
    std::vector<std::vector<double>> corner_angles;  // vertex of P -> pi - face angle, per incident face
};

/// Builds and checks the dual metric. Throws InvalidInput if some weight is
/// outside (0, pi) or a cone angle disagrees with 2 pi + face area (1e-8).
DualMetric dual_metric(const Polyhedron& P);

struct DualCycle {
    std::vector<int> faces;  // F_1..F_k, cyclic (F_1 not repeated)
    std::vector<int> edges;  // edges[i] joins faces[i] and faces[i+1 mod k]
    double weight = 0.0;
    bool separating = false;   // both sides hold a vertex of P (a dual face)
    bool vertex_link = false;  // one side is a single vertex of P
    std::array<int, 2> side_vertices{};  // vertices of P per side
    std::array<int, 2> side_faces{};     // faces of P strictly inside each side
    bool geodesic = false;     // both side angles >= pi at every node
    double min_side_angle = 0.0;
};

/// Fills the flags of a simple dual cycle given by faces/edges.
void classify_cycle(const Polyhedron& P, const DualMetric& D, DualCycle& c);

/// True when all edges of the cycle share one vertex of P.
bool is_vertex_link(const Polyhedron& P, const std::vector<int>& edges);

/// Minimum-weight simple dual cycle that is not a vertex link. For each dual
/// edge the three shortest loopless paths between its ends (edge removed)
/// are tried in order; the edge lies on exactly two vertex links, so the
/// third never is one. Ties go to the canonical face sequence.
DualCycle min_separating_cycle(const Polyhedron& P, const DualMetric& D, Exec exec = Exec::Parallel);

/// Minimum-weight simple combinatorial closed geodesic (branch and bound),
/// or nullopt if the skeleton carries none.
std::optional<DualCycle> min_geodesic_cycle(const Polyhedron& P, const DualMetric& D);

/// Reference: enumerates vertex bipartitions (S, T) with both sides connected
/// and at least two vertices each; returns the lightest cut. V <= 24.
struct BondResult {
    double weight = 0.0;
    std::vector<int> side;  // vertices on the side containing vertex 0
    std::vector<int> edges; // cut edges
};
std::optional<BondResult> exhaustive_min_bond(const Polyhedron& P, const DualMetric& D);

struct AdmissibilityReport {
    std::vector<double> cone_margins;  // cone angle - 2 pi per face
    double min_cone_margin = 0.0;
    bool cone_ok = false;
    DualCycle witness;  // minimal non-link cycle
    double cycle_margin = 0.0;
    bool cycle_ok = false;
    std::optional<DualCycle> shortest_geodesic;  // skeleton closed geodesic, if any
    bool geodesic_ok = false;  // no skeleton closed geodesic of length <= 2 pi
    bool pass = false;         // cone_ok && cycle_ok
};

AdmissibilityReport admissibility_report(const Polyhedron& P, const DualMetric& D, Exec exec = Exec::Parallel);

/// min(min cone margin, min non-link cycle weight - 2 pi).
double boundary_proximity(const Polyhedron& P, const DualMetric& D, Exec exec = Exec::Parallel);

nlohmann::json to_json(const DualMetric& D);
nlohmann::json to_json(const DualCycle& c);

}  // namespace curvlab
