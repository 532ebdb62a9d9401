#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "curvlab/polyhedron.hpp"

using namespace curvlab;

namespace {

// Klein cube with half-width 0.3 (mpmath): interior dihedral angle
// arccos(a^2 / (1 - a^2)), face corner angle, face area 2 pi - 4 corner.
const double kCubeDihedral = 1.4717332817279143;
const double kCubeCorner = 1.4608186650539577;
const double kCubeFaceArea = 0.43991064696375575;

std::vector<HPoint> cube_points(double a) {
    std::vector<HPoint> p;
    for (int i = 0; i < 8; ++i) p.push_back(klein_lift({i & 1 ? a : -a, i & 2 ? a : -a, i & 4 ? a : -a}));
    return p;
}

void check_invariants(const Polyhedron& P) {
    CHECK(P.vertex_count() - P.edge_count() + P.face_count() == 2);
    for (const Face& f : P.faces())
        for (int v = 0; v < P.vertex_count(); ++v) CHECK(to_double(mdot(f.normal, P.vertex(v))) <= kPlaneTol);
    for (const Edge& e : P.edges()) {
        CHECK(e.dihedral > 0);
        CHECK(e.dihedral < kPi);
    }
}

}  // namespace

TEST_CASE("tetrahedron hull") {
    Polyhedron P = hull_klein({klein_lift({0.5, 0, 0}), klein_lift({0, 0.5, 0}), klein_lift({0, 0, 0.5}),
                               klein_lift({-0.3, -0.3, -0.3})});
    CHECK(P.vertex_count() == 4);
    CHECK(P.face_count() == 4);
    CHECK(P.edge_count() == 6);
    check_invariants(P);
}

TEST_CASE("interior point is dropped") {
    Polyhedron P = hull_klein({klein_lift({0.5, 0, 0}), klein_lift({0, 0.5, 0}), klein_lift({0, 0, 0.5}),
                               klein_lift({-0.3, -0.3, -0.3}), klein_lift({0.01, 0.02, 0.03})});
    CHECK(P.vertex_count() == 4);
}

TEST_CASE("degenerate input") {
    CHECK_THROWS_AS(hull_klein({klein_lift({0.1, 0, 0}), klein_lift({0, 0.1, 0}), klein_lift({0, 0, 0})}),
                    InvalidInput);
    CHECK_THROWS_AS(hull_klein({klein_lift({0.1, 0, 0}), klein_lift({0, 0.1, 0}), klein_lift({0, 0, 0}),
                                klein_lift({0.2, 0.3, 0})}),
                    InvalidInput);
}

TEST_CASE("cube") {
    Polyhedron P = hull_klein(cube_points(0.3));
    CHECK(P.vertex_count() == 8);
    CHECK(P.face_count() == 6);
    CHECK(P.edge_count() == 12);
    check_invariants(P);
    for (const Face& f : P.faces()) CHECK(f.vertices.size() == 4);
    for (double d : dihedral_angles(P)) CHECK(d == doctest::Approx(kCubeDihedral).epsilon(1e-12));
    for (int f = 0; f < P.face_count(); ++f) {
        for (double a : face_angles(P, f)) CHECK(a == doctest::Approx(kCubeCorner).epsilon(1e-12));
        CHECK(face_area(P, f) == doctest::Approx(kCubeFaceArea).epsilon(1e-12));
    }
    Diameter D = diameter(P);
    double corner = hyperbolic_distance(klein_lift({0.3, 0.3, 0.3}), klein_lift({-0.3, -0.3, -0.3}));
    CHECK(D.rho == doctest::Approx(corner));
}

TEST_CASE("face orientation and edge sides") {
    Polyhedron P = random_klein_hull(20, 0.9, 4);
    for (int e = 0; e < P.edge_count(); ++e) {
        const Edge& E = P.edges()[e];
        CHECK(E.a < E.b);
        const auto& fv = P.faces()[E.left].vertices;
        bool found = false;
        for (std::size_t i = 0; i < fv.size(); ++i)
            if (fv[i] == E.a && fv[(i + 1) % fv.size()] == E.b) found = true;
        CHECK(found);
        CHECK(P.other_face(e, E.left) == E.right);
        CHECK(P.edge_index(E.b, E.a) == e);
    }
}

TEST_CASE("from_faces validation") {
    std::vector<HPoint> v{klein_lift({0.5, 0, 0}), klein_lift({0, 0.5, 0}), klein_lift({0, 0, 0.5}),
                          klein_lift({-0.3, -0.3, -0.3})};
    Polyhedron P = hull_klein(v);
    std::vector<std::vector<int>> faces;
    for (const auto& f : P.faces()) faces.push_back(f.vertices);
    Polyhedron Q = Polyhedron::from_faces(P.vertices(), faces);
    CHECK(Q.face_count() == 4);
    // reversed cycles are accepted
    for (auto& f : faces) std::reverse(f.begin(), f.end());
    CHECK(Polyhedron::from_faces(P.vertices(), faces).edge_count() == 6);
    // a missing face breaks the edge pairing
    faces.pop_back();
    CHECK_THROWS_AS(Polyhedron::from_faces(P.vertices(), faces), InvalidInput);
    // a cube corner pushed inward leaves its three faces non-planar
    Polyhedron C = hull_klein(cube_points(0.3));
    std::vector<HPoint> w = C.vertices();
    std::vector<std::vector<int>> cf;
    for (const auto& f : C.faces()) cf.push_back(f.vertices);
    KleinPoint u = klein_embed(w[0]);
    w[0] = klein_lift({0.8 * u[0], 0.8 * u[1], 0.8 * u[2]});
    CHECK_THROWS_AS(Polyhedron::from_faces(w, cf), InvalidInput);
}

TEST_CASE("json round trip") {
    Polyhedron P = random_klein_hull(15, 0.8, 9);
    Polyhedron Q = polyhedron_from_json(to_json(P));
    CHECK(to_json(Q) == to_json(P));
    CHECK_THROWS_AS(polyhedron_from_json(nlohmann::json::parse(R"({"vertices": [[1,0,0]], "faces": []})")),
                    InvalidInput);
    CHECK_THROWS_AS(polyhedron_from_json(nlohmann::json::parse("[1,2]")), InvalidInput);
}

TEST_CASE("isometry invariance") {
    Polyhedron P = random_klein_hull(12, 0.8, 2);
    LorentzTransform T = LorentzTransform::rotation({0, 1, 1}, 0.4) * LorentzTransform::boost({1, 0, 0}, 1.5);
    Polyhedron Q = transformed(P, T);
    CHECK(Q.face_count() == P.face_count());
    auto a = dihedral_angles(P), b = dihedral_angles(Q);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-10));
    CHECK(diameter(Q).rho == doctest::Approx(diameter(P).rho).epsilon(1e-10));
}

TEST_CASE("cross section") {
    Polyhedron P = hull_klein(cube_points(0.3));
    // the plane x1 = 0 cuts the four faces around the x1 axis
    CrossSection cs = cross_section(P, widen(MinkowskiVector{{0, 1, 0, 0}}));
    CHECK(cs.polygon.size() == 4);
    CHECK(cs.faces.size() == 4);
    std::vector<QVec4> poly;
    for (const auto& p : cs.polygon) poly.push_back(p.exact());
    CHECK(cs.exterior_sum == doctest::Approx(kTwoPi + polygon_area(poly)).epsilon(1e-12));
    CHECK(cs.exterior_sum > kTwoPi);
    for (std::size_t i = 0; i < cs.faces.size(); ++i) {
        const Edge& a = P.edges()[cs.edges[i]];
        const Edge& b = P.edges()[cs.edges[(i + 1) % cs.edges.size()]];
        int f = cs.faces[i];
        CHECK(((a.left == f || a.right == f) && (b.left == f || b.right == f)));
    }
    // plane through a vertex
    QVec4 v = P.vertex(0);
    CHECK_THROWS_AS(cross_section(P, normalize_spacelike(QVec4{{Quad(0), v[2], -v[1], Quad(0)}})), DomainError);
    // plane missing P
    CHECK_THROWS_AS(cross_section(P, widen(MinkowskiVector{{std::sinh(3.0), std::cosh(3.0), 0, 0}})), DomainError);
}

TEST_CASE("polygon area of a regular hyperbolic square") {
    // circumradius 1: interior angle 2 atan(1 / cosh 1) (mpmath 1.1500123651568237)
    std::vector<QVec4> sq;
    for (int k = 0; k < 4; ++k)
        sq.push_back(widen(MinkowskiVector{{std::cosh(1.0), std::sinh(1.0) * std::cos(k * kPi / 2),
                                            std::sinh(1.0) * std::sin(k * kPi / 2), 0}}));
    CHECK(polygon_area(sq) == doctest::Approx(2 * kPi - 4 * 1.1500123651568237).epsilon(1e-12));
}

TEST_CASE("stretch generator") {
    for (int N : {4, 6, 8, 12})
        for (double rho : {10.0, 30.0}) {
            Polyhedron P = stretch_generator(N, rho, derive_seed(3, N));
            CHECK(P.vertex_count() == N);
            check_invariants(P);
            double d = diameter(P).rho;
            CHECK(d >= 0.9 * rho);
            CHECK(d <= 1.1 * rho);
            CHECK_FALSE(separating_gaps(P).empty());
        }
    Polyhedron a = stretch_generator(8, 20, 99), b = stretch_generator(8, 20, 99);
    CHECK(to_json(a).dump() == to_json(b).dump());
}

TEST_CASE("axial coordinate") {
    QVec4 A = widen(MinkowskiVector{{std::cosh(2.0), -std::sinh(2.0), 0, 0}});
    QVec4 B = widen(MinkowskiVector{{std::cosh(2.0), std::sinh(2.0), 0, 0}});
    QVec4 v = widen(MinkowskiVector{{std::cosh(0.5), std::sinh(0.5), 0, 0}});
    CHECK(axial_coordinate(A, B, v) == doctest::Approx(0.5));
    CHECK(axial_coordinate(A, B, B) == doctest::Approx(2.0));
}
