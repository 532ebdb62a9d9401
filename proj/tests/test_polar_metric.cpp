#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "curvlab/polar_metric.hpp"

using namespace curvlab;

namespace {

// Klein cube of half-width 0.3 (mpmath): cone angle 4 pi - 4 corner, the
// equatorial 4-cycle 4 (pi - dihedral), a vertex link 3 (pi - dihedral).
const double kCubeCone = 6.7230959541433422;
const double kCubeEquator = 6.6794374874475156;
const double kCubeLink = 5.0095781155856367;

Polyhedron cube(double a) {
    std::vector<HPoint> p;
    for (int i = 0; i < 8; ++i) p.push_back(klein_lift({i & 1 ? a : -a, i & 2 ? a : -a, i & 4 ? a : -a}));
    return hull_klein(p);
}

}  // namespace

TEST_CASE("cube dual metric") {
    Polyhedron P = cube(0.3);
    DualMetric D = dual_metric(P);
    CHECK(D.nodes == 6);
    CHECK(D.edges.size() == 12);
    for (int f = 0; f < D.nodes; ++f) {
        CHECK(D.cone_angles[f] == doctest::Approx(kCubeCone).epsilon(1e-12));
        CHECK(D.cone_angles[f] - kTwoPi == doctest::Approx(D.face_areas[f]).epsilon(1e-12));
        CHECK(D.incident[f].size() == 4);
    }
    for (int v = 0; v < P.vertex_count(); ++v) {
        double w = 0;
        for (int e : D.vertex_edges[v]) w += D.edges[e].weight;
        CHECK(w == doctest::Approx(kCubeLink).epsilon(1e-12));
        CHECK(w < kTwoPi);
        CHECK(is_vertex_link(P, D.vertex_edges[v]));
    }
}

TEST_CASE("cube minimal non-link cycle is the equator") {
    Polyhedron P = cube(0.3);
    DualMetric D = dual_metric(P);
    DualCycle c = min_separating_cycle(P, D);
    CHECK(c.faces.size() == 4);
    CHECK(c.weight == doctest::Approx(kCubeEquator).epsilon(1e-12));
    CHECK(c.separating);
    CHECK_FALSE(c.vertex_link);
    // the cut around an edge ties with the equator: 2 * 3 w - 2 w = 4 w
    CHECK(c.side_vertices[0] >= 2);
    CHECK(c.side_vertices[1] >= 2);
    auto g = min_geodesic_cycle(P, D);
    REQUIRE(g.has_value());
    CHECK(g->weight == doctest::Approx(c.weight));
    CHECK(g->side_vertices[0] == 4);
    CHECK(g->side_vertices[1] == 4);
    CHECK(g->geodesic);
    AdmissibilityReport r = admissibility_report(P, D);
    CHECK(r.cone_ok);
    CHECK(r.cycle_ok);
    CHECK(r.pass);
    CHECK(r.cycle_margin == doctest::Approx(kCubeEquator - kTwoPi).epsilon(1e-12));
    CHECK(boundary_proximity(P, D) == doctest::Approx(std::min(r.min_cone_margin, r.cycle_margin)));
}

TEST_CASE("shrinking cube approaches the Euclidean boundary") {
    double prev = 1e9;
    for (double a : {0.3, 0.1, 0.01}) {
        Polyhedron P = cube(a);
        DualMetric D = dual_metric(P);
        double p = boundary_proximity(P, D);
        CHECK(p > 0);
        CHECK(p < prev);
        prev = p;
    }
    CHECK(prev < 1e-3);
}

TEST_CASE("small regular tetrahedron vertex link") {
    const double s = 0.001;
    Polyhedron P = hull_klein({klein_lift({s, s, s}), klein_lift({s, -s, -s}), klein_lift({-s, s, -s}),
                               klein_lift({-s, -s, s})});
    DualMetric D = dual_metric(P);
    double w = 0;
    for (int e : D.vertex_edges[0]) w += D.edges[e].weight;
    // 3 (pi - arccos(1/3)) in the Euclidean limit
    CHECK(w == doctest::Approx(3 * (kPi - std::acos(1.0 / 3.0))).epsilon(1e-5));
    CHECK(w < kTwoPi);
}

TEST_CASE("cone angle equals two pi plus face area") {
    for (int s = 0; s < 20; ++s) {
        Polyhedron P = random_klein_hull(10 + s % 10, 0.9, derive_seed(51, s));
        DualMetric D = dual_metric(P);
        for (int f = 0; f < D.nodes; ++f) {
            CHECK(D.cone_angles[f] > kTwoPi);
            CHECK(std::fabs(D.cone_angles[f] - kTwoPi - D.face_areas[f]) < 1e-8);
        }
        for (const auto& e : D.edges) {
            CHECK(e.weight > 0);
            CHECK(e.weight < kPi);
        }
    }
}

TEST_CASE("search agrees with the exhaustive bond oracle") {
    for (int s = 0; s < 30; ++s) {
        Polyhedron P = random_klein_hull(8 + s % 8, 0.9, derive_seed(52, s));
        DualMetric D = dual_metric(P);
        DualCycle c = min_separating_cycle(P, D);
        auto b = exhaustive_min_bond(P, D);
        REQUIRE(b.has_value());
        CHECK(c.weight == doctest::Approx(b->weight).epsilon(1e-12));
        CHECK_FALSE(c.vertex_link);
        CHECK(c.side_vertices[0] >= 2);
        CHECK(c.side_vertices[1] >= 2);
    }
}

TEST_CASE("serial and parallel searches agree") {
    for (int s = 0; s < 10; ++s) {
        Polyhedron P = random_klein_hull(20, 0.9, derive_seed(53, s));
        DualMetric D = dual_metric(P);
        DualCycle a = min_separating_cycle(P, D, Exec::Serial), b = min_separating_cycle(P, D, Exec::Parallel);
        CHECK(a.faces == b.faces);
        CHECK(a.weight == b.weight);
    }
}

TEST_CASE("combinatorial geodesics have side angles of at least pi") {
    Polyhedron P = cube(0.2);
    DualMetric D = dual_metric(P);
    auto g = min_geodesic_cycle(P, D);
    REQUIRE(g.has_value());
    CHECK(g->min_side_angle >= kPi - 1e-12);
    CHECK(g->weight > kTwoPi);
}

TEST_CASE("json output") {
    Polyhedron P = cube(0.3);
    DualMetric D = dual_metric(P);
    auto j = to_json(D);
    CHECK(j.contains("cone_angles"));
    auto c = to_json(min_separating_cycle(P, D));
    CHECK(c["faces"].size() == 4);
}
