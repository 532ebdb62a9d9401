#include "curvlab/polyhedron.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

namespace curvlab {

namespace {

const Quad kQPi = 4 * atan(Quad(1));

std::string str(int i) { return std::to_string(i); }

// det[x; a; b; c] with the vectors as rows.
Quad det4(const QVec4& x, const QVec4& a, const QVec4& b, const QVec4& c) {
    QVec4 w = minkowski_cross(a, b, c);
    w[0] = -w[0];  // back to the Euclidean cofactor vector
    return x[0] * w[0] + x[1] * w[1] + x[2] * w[2] + x[3] * w[3];
}

// Unit normal through the best-conditioned triple of the given points.
std::optional<QVec4> best_plane(const std::vector<QVec4>& pts) {
    std::optional<QVec4> best;
    Quad best_q = 0;
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                Quad q = plane_conditioning(pts[i], pts[j], pts[k]);
                if (q > best_q) {
                    QVec4 w = minkowski_cross(pts[i], pts[j], pts[k]);
                    best_q = q;
                    best = w / sqrt(mdot(w, w));
                }
            }
    if (!best || !(best_q > Quad(kCollinearTol))) return std::nullopt;
    return best;
}

// Orthonormal chart of the plane with unit normal n at its point c, oriented
// so that det[c, e1, e2, n] > 0.
struct FaceChart {
    QVec4 c, e1, e2;

    FaceChart(const std::vector<QVec4>& pts, const QVec4& n) {
        QVec4 sum{};
        for (const auto& p : pts) sum = sum + p;
        c = normalize_timelike(sum);
        // Project the centroid onto the plane (exact up to rounding already).
        c = normalize_timelike(c - mdot(c, n) * n);
        std::size_t far = 0;
        Quad best = 0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            Quad d = -mdot(c, pts[i]);
            if (d > best) best = d, far = i;
        }
        e1 = normalize_spacelike(tangent_toward(c, pts[far]));
        e1 = normalize_spacelike(e1 - mdot(e1, n) * n);
        e2 = normalize_spacelike(minkowski_cross(c, e1, n));
        if (det4(c, e1, e2, n) < 0) e2 = -e2;
    }

    std::pair<Quad, Quad> coords(const QVec4& p) const {
        Quad h = -mdot(p, c);
        return {mdot(p, e1) / h, mdot(p, e2) / h};
    }
};

// Counterclockwise convex hull (Andrew's monotone chain) of chart points;
// returns indices into the input, collinear points dropped.
std::vector<int> hull_2d(const std::vector<std::pair<Quad, Quad>>& xy) {
    std::vector<int> idx(xy.size());
    for (std::size_t i = 0; i < xy.size(); ++i) idx[i] = static_cast<int>(i);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return xy[a] < xy[b]; });
    auto cross = [&](int o, int a, int b) {
        return (xy[a].first - xy[o].first) * (xy[b].second - xy[o].second) -
               (xy[a].second - xy[o].second) * (xy[b].first - xy[o].first);
    };
    const Quad eps = Quad(1e-28);
    std::vector<int> h(2 * idx.size());
    int k = 0;
    for (int i : idx) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], i) <= eps) --k;
        h[k++] = i;
    }
    for (int t = static_cast<int>(idx.size()) - 2, lo = k + 1; t >= 0; --t) {
        int i = idx[t];
        while (k >= lo && cross(h[k - 2], h[k - 1], i) <= eps) --k;
        h[k++] = i;
    }
    h.resize(std::max(0, k - 1));
    return h;
}

}  // namespace

int Polyhedron::edge_index(int a, int b) const {
    if (a > b) std::swap(a, b);
    for (std::size_t e = 0; e < edges_.size(); ++e)
        if (edges_[e].a == a && edges_[e].b == b) return static_cast<int>(e);
    return -1;
}

int Polyhedron::other_face(int e, int f) const {
    const Edge& E = edges_[e];
    if (E.left == f) return E.right;
    if (E.right == f) return E.left;
    throw InvalidInput("other_face: face " + str(f) + " is not adjacent to edge " + str(e));
}

Polyhedron Polyhedron::from_faces(std::vector<HPoint> vertices, std::vector<std::vector<int>> faces) {
    Polyhedron P;
    P.vertices_ = std::move(vertices);
    const int nv = P.vertex_count();
    if (nv < 4) throw InvalidInput("polyhedron: fewer than 4 vertices");
    if (faces.size() < 4) throw InvalidInput("polyhedron: fewer than 4 faces");

    std::vector<int> uses(nv, 0);
    for (std::size_t f = 0; f < faces.size(); ++f) {
        auto& fv = faces[f];
        if (fv.size() < 3) throw InvalidInput("polyhedron: face " + str(static_cast<int>(f)) + " has fewer than 3 vertices");
        std::set<int> seen;
        for (int v : fv) {
            if (v < 0 || v >= nv) throw InvalidInput("polyhedron: face " + str(static_cast<int>(f)) + " references vertex " + str(v));
            if (!seen.insert(v).second)
                throw InvalidInput("polyhedron: face " + str(static_cast<int>(f)) + " repeats vertex " + str(v));
            ++uses[v];
        }
        std::vector<QVec4> pts;
        for (int v : fv) pts.push_back(P.vertex(v));
        auto n = best_plane(pts);
        if (!n) throw InvalidInput("polyhedron: face " + str(static_cast<int>(f)) + " is degenerate");
        QVec4 normal = *n;
        for (int v : fv) {
            Quad s = mdot(normal, P.vertex(v));
            if (abs(s) > Quad(kPlaneTol))
                throw InvalidInput("polyhedron: face " + str(static_cast<int>(f)) + " is not planar (vertex " + str(v) +
                                   " off plane by sinh d = " + std::to_string(to_double(s)) + ")");
        }
        // Orient outward using the farthest vertex off the face.
        Quad far = 0;
        for (int v = 0; v < nv; ++v) {
            if (seen.count(v)) continue;
            Quad s = mdot(normal, P.vertex(v));
            if (abs(s) > abs(far)) far = s;
        }
        if (far > 0) normal = -normal;
        for (int v = 0; v < nv; ++v) {
            if (seen.count(v)) continue;
            Quad s = mdot(normal, P.vertex(v));
            if (s > Quad(kPlaneTol))
                throw InvalidInput("polyhedron: not convex, vertex " + str(v) + " lies outside face " +
                                   str(static_cast<int>(f)) + " (sinh d = " + std::to_string(to_double(s)) + ")");
            if (s >= -Quad(kPlaneTol))
                throw InvalidInput("polyhedron: vertex " + str(v) + " lies on the plane of face " +
                                   str(static_cast<int>(f)) + " but is not listed in it");
        }
        // The cycle must be a convex polygon; orient it counterclockwise from outside.
        FaceChart chart(pts, normal);
        std::vector<std::pair<Quad, Quad>> xy;
        for (const auto& p : pts) xy.push_back(chart.coords(p));
        const std::size_t k = xy.size();
        int sign = 0;
        Quad turning = 0;
        for (std::size_t i = 0; i < k; ++i) {
            auto [x0, y0] = xy[i];
            auto [x1, y1] = xy[(i + 1) % k];
            auto [x2, y2] = xy[(i + 2) % k];
            Quad cr = (x1 - x0) * (y2 - y1) - (y1 - y0) * (x2 - x1);
            Quad dt = (x1 - x0) * (x2 - x1) + (y1 - y0) * (y2 - y1);
            int sg = cr > 0 ? 1 : (cr < 0 ? -1 : 0);
            if (sg == 0 || (sign != 0 && sg != sign))
                throw InvalidInput("polyhedron: face " + str(static_cast<int>(f)) + " is not a strictly convex polygon at vertex " +
                                   str(fv[(i + 1) % k]));
            sign = sg;
            turning += atan2(cr, dt);
        }
        if (abs(abs(turning) - 2 * kQPi) > Quad(1e-6))
            throw InvalidInput("polyhedron: face " + str(static_cast<int>(f)) + " winds more than once");
        if (sign < 0) std::reverse(fv.begin(), fv.end());
        P.faces_.push_back(Face{fv, normal});
    }
    for (int v = 0; v < nv; ++v)
        if (uses[v] < 3) throw InvalidInput("polyhedron: vertex " + str(v) + " lies on " + str(uses[v]) + " faces (need >= 3)");

    // Edges: each undirected edge once in each direction.
    std::map<std::pair<int, int>, int> index;
    P.face_edges_.resize(P.faces_.size());
    for (std::size_t f = 0; f < P.faces_.size(); ++f) {
        const auto& fv = P.faces_[f].vertices;
        for (std::size_t i = 0; i < fv.size(); ++i) {
            int a = fv[i], b = fv[(i + 1) % fv.size()];
            auto key = std::minmax(a, b);
            auto it = index.find(key);
            int e;
            if (it == index.end()) {
                e = P.edge_count();
                index.emplace(key, e);
                Edge E;
                E.a = key.first;
                E.b = key.second;
                P.edges_.push_back(E);
            } else {
                e = it->second;
            }
            Edge& E = P.edges_[e];
            int& slot = (a < b) ? E.left : E.right;
            if (slot != -1)
                throw InvalidInput("polyhedron: edge (" + str(E.a) + "," + str(E.b) +
                                   ") is traversed twice in the same direction (non-manifold or inconsistent faces)");
            slot = static_cast<int>(f);
            P.face_edges_[f].push_back(e);
        }
    }
    for (const Edge& E : P.edges_)
        if (E.left < 0 || E.right < 0)
            throw InvalidInput("polyhedron: edge (" + str(E.a) + "," + str(E.b) + ") has only one adjacent face");
    if (P.vertex_count() - P.edge_count() + P.face_count() != 2)
        throw InvalidInput("polyhedron: Euler characteristic V - E + F = " +
                           str(P.vertex_count() - P.edge_count() + P.face_count()) + ", expected 2");
    for (std::size_t e = 0; e < P.edges_.size(); ++e) {
        Edge& E = P.edges_[e];
        const QVec4& nf = P.faces_[E.left].normal;
        const QVec4& ng = P.faces_[E.right].normal;
        if (!(abs(mdot(nf, ng)) < 1))
            throw InvalidInput("polyhedron: faces at edge (" + str(E.a) + "," + str(E.b) + ") do not intersect");
        E.dihedral = to_double(kQPi - spacelike_angle_q(nf, ng));
        if (!(E.dihedral > 0.0 && E.dihedral < kPi - 1e-12))
            throw InvalidInput("polyhedron: edge (" + str(E.a) + "," + str(E.b) + ") is not strictly convex");
    }
    return P;
}

Polyhedron hull_klein(const std::vector<HPoint>& input) {
    // Drop exact duplicates first.
    std::vector<QVec4> pts;
    std::vector<HPoint> kept;
    for (const auto& p : input) {
        bool dup = false;
        for (const auto& q : kept)
            if (hyperbolic_distance(p, q) < 1e-12) dup = true;
        if (!dup) {
            kept.push_back(p);
            pts.push_back(p.exact());
        }
    }
    const int n = static_cast<int>(pts.size());
    if (n < 4) throw InvalidInput("hull_klein: fewer than 4 distinct points");

    struct Candidate {
        QVec4 normal;
        Quad quality;
    };
    std::map<std::vector<int>, Candidate> found;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                Quad quality = plane_conditioning(pts[i], pts[j], pts[k]);
                if (!(quality > Quad(kCollinearTol))) continue;
                QVec4 w = minkowski_cross(pts[i], pts[j], pts[k]);
                QVec4 nrm = w / sqrt(mdot(w, w));
                int pos = 0, neg = 0;
                std::vector<int> on;
                for (int v = 0; v < n; ++v) {
                    Quad s = mdot(nrm, pts[v]);
                    if (s > Quad(kPlaneTol)) ++pos;
                    else if (s < -Quad(kPlaneTol)) ++neg;
                    else on.push_back(v);
                }
                if (pos > 0 && neg > 0) continue;
                if (pos == 0 && neg == 0)
                    throw InvalidInput("hull_klein: all points are coplanar (witness plane through points " + str(i) +
                                       ", " + str(j) + ", " + str(k) + ")");
                if (pos > 0) nrm = -nrm;
                auto it = found.find(on);
                if (it == found.end() || quality > it->second.quality) found[on] = Candidate{nrm, quality};
            }

    std::vector<std::vector<int>> faces;
    for (const auto& [on, cand] : found) {
        std::vector<QVec4> fp;
        for (int v : on) fp.push_back(pts[v]);
        FaceChart chart(fp, cand.normal);
        std::vector<std::pair<Quad, Quad>> xy;
        for (const auto& p : fp) xy.push_back(chart.coords(p));
        std::vector<int> h = hull_2d(xy);
        std::vector<int> cyc;
        for (int t : h) cyc.push_back(on[t]);
        if (cyc.size() >= 3) faces.push_back(cyc);
    }
    // Points interior to an edge survive in two face polygons only; drop them.
    for (;;) {
        std::vector<int> count(n, 0);
        for (const auto& f : faces)
            for (int v : f) ++count[v];
        bool changed = false;
        for (auto& f : faces) {
            std::vector<int> g;
            for (int v : f)
                if (count[v] >= 3) g.push_back(v);
            if (g.size() != f.size()) {
                f = g;
                changed = true;
            }
        }
        faces.erase(std::remove_if(faces.begin(), faces.end(), [](const auto& f) { return f.size() < 3; }), faces.end());
        if (!changed) break;
    }
    std::vector<int> remap(n, -1);
    std::vector<HPoint> verts;
    for (auto& f : faces)
        for (int& v : f) {
            if (remap[v] < 0) {
                remap[v] = static_cast<int>(verts.size());
                verts.push_back(kept[v]);
            }
            v = remap[v];
        }
    // Deterministic vertex order: by original input order.
    std::vector<int> order(verts.size());
    {
        std::vector<std::pair<int, int>> orig;  // (input index, new index)
        for (int v = 0; v < n; ++v)
            if (remap[v] >= 0) orig.push_back({v, remap[v]});
        std::vector<int> to_sorted(verts.size());
        std::vector<HPoint> sorted;
        for (std::size_t r = 0; r < orig.size(); ++r) {
            to_sorted[orig[r].second] = static_cast<int>(r);
            sorted.push_back(kept[orig[r].first]);
        }
        for (auto& f : faces)
            for (int& v : f) v = to_sorted[v];
        verts = std::move(sorted);
    }
    return Polyhedron::from_faces(std::move(verts), std::move(faces));
}

std::vector<double> dihedral_angles(const Polyhedron& P) {
    std::vector<double> out;
    for (const auto& e : P.edges()) out.push_back(e.dihedral);
    return out;
}

Diameter diameter(const Polyhedron& P) {
    Diameter d;
    for (int i = 0; i < P.vertex_count(); ++i)
        for (int j = i + 1; j < P.vertex_count(); ++j) {
            double r = hyperbolic_distance(P.vertex(i), P.vertex(j));
            if (r > d.rho) d = Diameter{r, i, j};
        }
    return d;
}

std::vector<double> face_angles(const Polyhedron& P, int f) {
    const auto& fv = P.faces().at(f).vertices;
    const std::size_t k = fv.size();
    std::vector<double> out(k);
    for (std::size_t i = 0; i < k; ++i)
        out[i] = angle_at(P.vertex(fv[i]), P.vertex(fv[(i + k - 1) % k]), P.vertex(fv[(i + 1) % k]));
    return out;
}

double face_area(const Polyhedron& P, int f) {
    auto a = face_angles(P, f);
    double s = 0.0;
    for (double x : a) s += x;
    return (static_cast<double>(a.size()) - 2.0) * kPi - s;
}

double polygon_area(const std::vector<QVec4>& poly) {
    double area = 0.0;
    for (std::size_t i = 1; i + 1 < poly.size(); ++i) {
        const QVec4& a = poly[0];
        const QVec4& b = poly[i];
        const QVec4& c = poly[i + 1];
        area += kPi - angle_at(a, b, c) - angle_at(b, c, a) - angle_at(c, a, b);
    }
    return area;
}

CrossSection cross_section(const Polyhedron& P, const QVec4& Q) {
    const int nv = P.vertex_count();
    std::vector<Quad> s(nv);
    int pos = 0, neg = 0;
    for (int v = 0; v < nv; ++v) {
        s[v] = mdot(Q, P.vertex(v));
        if (abs(s[v]) < Quad(kPlaneTol))
            throw DomainError("cross_section: plane passes within tolerance of vertex " + str(v) + "; reposition", v);
        (s[v] > 0 ? pos : neg)++;
    }
    if (pos == 0 || neg == 0) throw DomainError("cross_section: plane misses the polyhedron");

    auto crossing = [&](int e) {
        const Edge& E = P.edges()[e];
        return (s[E.a] > 0) != (s[E.b] > 0);
    };
    int start = -1;
    for (int e = 0; e < P.edge_count(); ++e)
        if (crossing(e)) {
            start = e;
            break;
        }
    CrossSection out;
    out.plane = Q;
    int e = start;
    int f = P.edges()[start].left;
    do {
        out.edges.push_back(e);
        out.faces.push_back(f);
        int next = -1;
        for (int g : P.face_edges(f))
            if (g != e && crossing(g)) {
                if (next != -1) throw InternalError("cross_section: face crossed more than twice");
                next = g;
            }
        if (next < 0) throw InternalError("cross_section: face entered but not left");
        f = P.other_face(next, f);
        e = next;
        if (out.edges.size() > static_cast<std::size_t>(P.edge_count()))
            throw InternalError("cross_section: face walk does not close");
    } while (e != start);

    std::vector<QVec4> poly;
    for (int g : out.edges) {
        const Edge& E = P.edges()[g];
        QVec4 x = s[E.a] * P.vertex(E.b) - s[E.b] * P.vertex(E.a);
        poly.push_back(normalize_timelike(x));
    }
    const std::size_t k = poly.size();
    for (std::size_t i = 0; i < k; ++i) {
        out.polygon.push_back(HPoint::from_quad(poly[i]));
        double a = angle_at(poly[i], poly[(i + k - 1) % k], poly[(i + 1) % k]);
        out.interior_angles.push_back(a);
        out.exterior_sum += kPi - a;
    }
    out.area = polygon_area(poly);
    return out;
}

double axial_coordinate(const QVec4& A, const QVec4& B, const QVec4& v) {
    QVec4 M = normalize_timelike(A + B);
    QVec4 T = normalize_spacelike(B - A);
    Quad x = mdot(v, T) / (-mdot(v, M));
    return to_double(log((1 + x) / (1 - x)) / 2);
}

std::vector<int> separating_gaps(const Polyhedron& P, int min_side) {
    Diameter D = diameter(P);
    const int N = P.vertex_count();
    const QVec4& A = P.vertex(D.a);
    const QVec4& B = P.vertex(D.b);
    std::vector<double> pos;
    for (int v = 0; v < N; ++v) pos.push_back(axial_coordinate(A, B, P.vertex(v)) + 0.5 * D.rho);
    const double len = D.rho / N;
    std::vector<int> gaps;
    for (int k = 0; k < N; ++k) {
        double lo = k * len, hi = (k + 1) * len;
        int left = 0, right = 0, inside = 0;
        for (double p : pos) {
            if (p <= lo) ++left;
            else if (p >= hi) ++right;
            else ++inside;
        }
        if (inside == 0 && left >= min_side && right >= min_side) gaps.push_back(k);
    }
    return gaps;
}

Polyhedron stretch_generator(int N, double rho, std::uint64_t seed, const StretchOptions& opt) {
    if (N < 4) throw InvalidInput("stretch_generator: N must be at least 4");
    if (!(rho > 0)) throw InvalidInput("stretch_generator: rho must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double mean = rho / (2.0 * N);
    const double xmax = rho / 3.0;
    const double tail = 1.0 - std::exp(-xmax / mean);
    for (int attempt = 0; attempt < opt.max_attempts; ++attempt) {
        std::vector<HPoint> pts;
        pts.push_back(HPoint::from_quad(AxisTranslation(-rho / 2).apply(QVec4{{1, 0, 0, 0}})));
        pts.push_back(HPoint::from_quad(AxisTranslation(rho / 2).apply(QVec4{{1, 0, 0, 0}})));
        for (int i = 0; i < N - 2; ++i) {
            double side = (i % 2 == 0) ? 1.0 : -1.0;
            double X = -mean * std::log(1.0 - unit(rng) * tail);
            double tau = side * (0.5 * rho - X);
            double r = 0.75 + 0.25 * unit(rng);
            double psi = kTwoPi * unit(rng);
            QVec4 p{{Quad(std::cosh(r)), Quad(0), Quad(std::sinh(r) * std::cos(psi)), Quad(std::sinh(r) * std::sin(psi))}};
            pts.push_back(HPoint::from_quad(AxisTranslation(tau).apply(p)));
        }
        try {
            Polyhedron P = hull_klein(pts);
            if (P.vertex_count() != N) continue;
            double d = diameter(P).rho;
            if (d < 0.9 * rho || d > 1.1 * rho) continue;
            if (opt.require_separating_gap && separating_gaps(P).empty()) continue;
            return P;
        } catch (const InvalidInput&) {
            continue;
        }
    }
    throw DomainError("stretch_generator: no admissible polyhedron after " + str(opt.max_attempts) +
                      " attempts (N = " + str(N) + ", rho = " + std::to_string(rho) + ")");
}

Polyhedron random_klein_hull(int count, double r, std::uint64_t seed) {
    if (count < 4) throw InvalidInput("random_klein_hull: need at least 4 points");
    if (!(r > 0 && r < 1)) throw InvalidInput("random_klein_hull: radius must be in (0, 1)");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int attempt = 0; attempt < 100; ++attempt) {
        std::vector<HPoint> pts;
        while (static_cast<int>(pts.size()) < count) {
            KleinPoint k{u(rng), u(rng), u(rng)};
            if (k[0] * k[0] + k[1] * k[1] + k[2] * k[2] > 1.0) continue;
            for (double& x : k) x *= r;
            pts.push_back(klein_lift(k));
        }
        try {
            return hull_klein(pts);
        } catch (const InvalidInput&) {
            continue;
        }
    }
    throw DomainError("random_klein_hull: repeated degenerate samples");
}

Polyhedron transformed(const Polyhedron& P, const LorentzTransform& T) {
    std::vector<HPoint> v;
    for (const auto& p : P.vertices()) v.push_back(T.apply(p));
    std::vector<std::vector<int>> f;
    for (const auto& F : P.faces()) f.push_back(F.vertices);
    return Polyhedron::from_faces(std::move(v), std::move(f));
}

nlohmann::json to_json(const Polyhedron& P) {
    nlohmann::json j;
    j["vertices"] = nlohmann::json::array();
    for (const auto& v : P.vertices()) {
        const auto& x = v.coords();
        j["vertices"].push_back({x[0], x[1], x[2], x[3]});
    }
    j["faces"] = nlohmann::json::array();
    for (const auto& f : P.faces()) j["faces"].push_back(f.vertices);
    return j;
}

Polyhedron polyhedron_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("vertices") || !j.contains("faces"))
        throw InvalidInput("polyhedron JSON: expected an object with \"vertices\" and \"faces\"");
    const auto& jv = j.at("vertices");
    const auto& jf = j.at("faces");
    if (!jv.is_array() || !jf.is_array()) throw InvalidInput("polyhedron JSON: vertices and faces must be arrays");
    std::vector<HPoint> verts;
    for (std::size_t i = 0; i < jv.size(); ++i) {
        const auto& row = jv[i];
        if (!row.is_array() || row.size() != 4)
            throw InvalidInput("polyhedron JSON: vertex " + str(static_cast<int>(i)) + " must have 4 coordinates");
        MinkowskiVector x;
        for (int k = 0; k < 4; ++k) {
            if (!row[k].is_number())
                throw InvalidInput("polyhedron JSON: vertex " + str(static_cast<int>(i)) + " has a non-numeric coordinate");
            x[k] = row[k].get<double>();
        }
        try {
            verts.emplace_back(x);
        } catch (const InvalidInput& e) {
            throw InvalidInput("polyhedron JSON: vertex " + str(static_cast<int>(i)) + ": " + e.what());
        }
    }
    std::vector<std::vector<int>> faces;
    for (std::size_t f = 0; f < jf.size(); ++f) {
        const auto& row = jf[f];
        if (!row.is_array()) throw InvalidInput("polyhedron JSON: face " + str(static_cast<int>(f)) + " must be an array");
        std::vector<int> cyc;
        for (const auto& x : row) {
            if (!x.is_number_integer())
                throw InvalidInput("polyhedron JSON: face " + str(static_cast<int>(f)) + " has a non-integer index");
            cyc.push_back(x.get<int>());
        }
        faces.push_back(std::move(cyc));
    }
    return Polyhedron::from_faces(std::move(verts), std::move(faces));
}

}  // namespace curvlab
