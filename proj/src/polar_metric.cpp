#include "curvlab/polar_metric.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <string>

namespace curvlab {

namespace {

struct Path {
    std::vector<int> nodes;
    std::vector<int> edges;
    double weight = 0.0;
};

// Dijkstra on the dual graph from src to dst avoiding banned edges/nodes.
std::optional<Path> shortest_path(const DualMetric& D, int src, int dst, const std::vector<char>& banned_edge,
                                  const std::vector<char>& banned_node) {
    const int n = D.nodes;
    std::vector<double> dist(n, INFINITY);
    std::vector<int> prev_edge(n, -1);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    dist[src] = 0.0;
    pq.push({0.0, src});
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d > dist[u]) continue;
        if (u == dst) break;
        for (int e : D.incident[u]) {
            if (banned_edge[e]) continue;
            int v = D.edges[e].f == u ? D.edges[e].g : D.edges[e].f;
            if (banned_node[v]) continue;
            double nd = d + D.edges[e].weight;
            if (nd < dist[v]) {
                dist[v] = nd;
                prev_edge[v] = e;
                pq.push({nd, v});
            }
        }
    }
    if (!std::isfinite(dist[dst])) return std::nullopt;
    Path p;
    for (int v = dst; v != src;) {
        int e = prev_edge[v];
        p.nodes.push_back(v);
        p.edges.push_back(e);
        v = D.edges[e].f == v ? D.edges[e].g : D.edges[e].f;
    }
    p.nodes.push_back(src);
    std::reverse(p.nodes.begin(), p.nodes.end());
    std::reverse(p.edges.begin(), p.edges.end());
    p.weight = dist[dst];
    return p;
}

double path_weight(const DualMetric& D, const std::vector<int>& edges) {
    double w = 0.0;
    for (int e : edges) w += D.edges[e].weight;
    return w;
}

bool path_less(const Path& a, const Path& b) {
    if (a.weight != b.weight) return a.weight < b.weight;
    return a.nodes < b.nodes;
}

// Yen's loopless k-shortest paths, produced lazily in order.
class KShortest {
public:
    KShortest(const DualMetric& D, int src, int dst, int removed) : D_(D), src_(src), dst_(dst) {
        base_.assign(D.edges.size(), 0);
        base_[removed] = 1;
        std::vector<char> none(D.nodes, 0);
        if (auto p = shortest_path(D, src, dst, base_, none)) A_.push_back(*p);
    }

    const Path* get(std::size_t k) {
        while (A_.size() <= k && !A_.empty()) {
            if (!advance()) return nullptr;
        }
        return k < A_.size() ? &A_[k] : nullptr;
    }

private:
    bool advance() {
        const Path& last = A_.back();
        for (std::size_t i = 0; i + 1 < last.nodes.size(); ++i) {
            std::vector<char> be = base_;
            std::vector<char> bn(D_.nodes, 0);
            std::vector<int> root_nodes(last.nodes.begin(), last.nodes.begin() + i + 1);
            for (const Path& p : A_)
                if (p.nodes.size() > i && std::equal(root_nodes.begin(), root_nodes.end(), p.nodes.begin()))
                    be[p.edges[i]] = 1;
            for (std::size_t j = 0; j < i; ++j) bn[last.nodes[j]] = 1;
            auto spur = shortest_path(D_, last.nodes[i], dst_, be, bn);
            if (!spur) continue;
            Path cand;
            cand.nodes = root_nodes;
            cand.nodes.insert(cand.nodes.end(), spur->nodes.begin() + 1, spur->nodes.end());
            cand.edges.assign(last.edges.begin(), last.edges.begin() + i);
            cand.edges.insert(cand.edges.end(), spur->edges.begin(), spur->edges.end());
            cand.weight = path_weight(D_, cand.edges);
            bool dup = false;
            for (const Path& q : B_) dup = dup || q.edges == cand.edges;
            for (const Path& q : A_) dup = dup || q.edges == cand.edges;
            if (!dup) B_.push_back(std::move(cand));
        }
        if (B_.empty()) return false;
        auto it = std::min_element(B_.begin(), B_.end(), path_less);
        A_.push_back(*it);
        B_.erase(it);
        return true;
    }

    const DualMetric& D_;
    int src_, dst_;
    std::vector<char> base_;
    std::vector<Path> A_, B_;
};

// Rotates to the smallest face and picks the direction with the smaller
// second face; weight summed over sorted edges so equal cycles compare equal.
DualCycle canonical(const DualMetric& D, std::vector<int> faces, std::vector<int> edges) {
    const std::size_t k = faces.size();
    std::size_t r = std::min_element(faces.begin(), faces.end()) - faces.begin();
    std::rotate(faces.begin(), faces.begin() + r, faces.end());
    std::rotate(edges.begin(), edges.begin() + r, edges.end());
    if (k > 2 && faces[k - 1] < faces[1]) {
        std::reverse(faces.begin() + 1, faces.end());
        std::reverse(edges.begin(), edges.end());
    }
    DualCycle c;
    c.faces = faces;
    c.edges = edges;
    std::vector<int> sorted = edges;
    std::sort(sorted.begin(), sorted.end());
    c.weight = path_weight(D, sorted);
    return c;
}

bool cycle_less(const DualCycle& a, const DualCycle& b) {
    if (a.weight != b.weight) return a.weight < b.weight;
    return a.faces < b.faces;
}

}  // namespace

DualMetric dual_metric(const Polyhedron& P) {
    DualMetric D;
    D.nodes = P.face_count();
    D.incident.resize(D.nodes);
    for (std::size_t e = 0; e < P.edges().size(); ++e) {
        const Edge& E = P.edges()[e];
        DualEdge de{E.left, E.right, kPi - E.dihedral};
        if (!(de.weight > 0.0 && de.weight < kPi))
            throw InvalidInput("dual_metric: edge " + std::to_string(e) + " has exterior angle " +
                               std::to_string(de.weight) + " outside (0, pi)");
        D.edges.push_back(de);
        D.incident[E.left].push_back(static_cast<int>(e));
        D.incident[E.right].push_back(static_cast<int>(e));
    }
    D.vertex_edges.resize(P.vertex_count());
    D.corner_angles.resize(P.vertex_count());
    for (std::size_t e = 0; e < P.edges().size(); ++e) {
        D.vertex_edges[P.edges()[e].a].push_back(static_cast<int>(e));
        D.vertex_edges[P.edges()[e].b].push_back(static_cast<int>(e));
    }
    for (int f = 0; f < D.nodes; ++f) {
        const auto& fv = P.faces()[f].vertices;
        auto ang = face_angles(P, f);
        double cone = 0.0;
        std::vector<double> corners;
        for (std::size_t i = 0; i < fv.size(); ++i) {
            cone += kPi - ang[i];
            corners.push_back(kPi - ang[i]);
            D.corner_angles[fv[i]].push_back(kPi - ang[i]);
        }
        D.node_corners.push_back(corners);
        std::vector<QVec4> poly;
        for (int v : fv) poly.push_back(P.vertex(v));
        double area = polygon_area(poly);
        if (std::fabs(cone - kTwoPi - area) > 1e-8)
            throw InternalError("dual_metric: cone angle at face " + std::to_string(f) + " differs from 2 pi + area by " +
                                std::to_string(cone - kTwoPi - area));
        D.cone_angles.push_back(cone);
        D.face_areas.push_back(area);
    }
    return D;
}

bool is_vertex_link(const Polyhedron& P, const std::vector<int>& edges) {
    if (edges.empty()) return false;
    const Edge& first = P.edges()[edges[0]];
    for (int v : {first.a, first.b}) {
        bool all = true;
        for (int e : edges) {
            const Edge& E = P.edges()[e];
            if (E.a != v && E.b != v) {
                all = false;
                break;
            }
        }
        if (all) return true;
    }
    return false;
}

namespace {

// Sum of corners at face f strictly between its edges at positions i and j,
// walking forward from i.
double side_angle(const Polyhedron& P, const DualMetric& D, int f, int from, int to) {
    const std::size_t k = P.faces()[f].vertices.size();
    double s = 0.0;
    for (std::size_t p = (from + 1) % k;; p = (p + 1) % k) {
        s += D.node_corners[f][p];
        if (p == static_cast<std::size_t>(to)) break;
    }
    return s;
}

int edge_position(const Polyhedron& P, int f, int e) {
    const auto& fe = P.face_edges(f);
    return static_cast<int>(std::find(fe.begin(), fe.end(), e) - fe.begin());
}

// Smaller of the two side angles when passing node f from edge a to edge b.
double turn_min(const Polyhedron& P, const DualMetric& D, int f, int a, int b) {
    int i = edge_position(P, f, a), j = edge_position(P, f, b);
    return std::min(side_angle(P, D, f, i, j), side_angle(P, D, f, j, i));
}

constexpr double kGeodesicTol = 1e-12;

}  // namespace

void classify_cycle(const Polyhedron& P, const DualMetric& D, DualCycle& c) {
    const int V = P.vertex_count();
    c.vertex_link = is_vertex_link(P, c.edges);
    std::vector<char> cut(P.edge_count(), 0);
    for (int e : c.edges) cut[e] = 1;
    std::vector<int> comp(V, -1);
    int ncomp = 0;
    for (int s = 0; s < V; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> stack{s};
        comp[s] = ncomp;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int e : D.vertex_edges[u]) {
                if (cut[e]) continue;
                int w = P.edges()[e].a == u ? P.edges()[e].b : P.edges()[e].a;
                if (comp[w] < 0) {
                    comp[w] = ncomp;
                    stack.push_back(w);
                }
            }
        }
        ++ncomp;
    }
    if (ncomp != 2) throw InternalError("classify_cycle: cycle cuts the vertex graph into " + std::to_string(ncomp) + " parts");
    c.side_vertices = {0, 0};
    c.side_faces = {0, 0};
    for (int v = 0; v < V; ++v) ++c.side_vertices[comp[v]];
    for (const auto& F : P.faces()) {
        int side = comp[F.vertices[0]];
        bool inside = true;
        for (int v : F.vertices) inside = inside && comp[v] == side;
        if (inside) ++c.side_faces[side];
    }
    c.separating = c.side_vertices[0] > 0 && c.side_vertices[1] > 0;
    const std::size_t k = c.faces.size();
    c.min_side_angle = INFINITY;
    for (std::size_t i = 0; i < k; ++i)
        c.min_side_angle = std::min(c.min_side_angle, turn_min(P, D, c.faces[i], c.edges[(i + k - 1) % k], c.edges[i]));
    c.geodesic = c.min_side_angle >= kPi - kGeodesicTol;
}

std::optional<DualCycle> min_geodesic_cycle(const Polyhedron& P, const DualMetric& D) {
    // Depth-first over paths that are geodesic at every interior node, starting
    // from the smallest face of the cycle; pruned by the best weight so far.
    std::optional<DualCycle> best;
    double bound = INFINITY;
    std::vector<int> faces, edges;
    std::vector<char> used(D.nodes, 0);
    std::function<void(int, double)> dfs = [&](int u, double w) {
        const int s = faces[0];
        for (int e : D.incident[u]) {
            if (!edges.empty() && e == edges.back()) continue;
            double nw = w + D.edges[e].weight;
            if (nw >= bound) continue;
            if (!edges.empty() && turn_min(P, D, u, edges.back(), e) < kPi - kGeodesicTol) continue;
            int v = D.edges[e].f == u ? D.edges[e].g : D.edges[e].f;
            if (v == s) {
                if (edges.size() < 2) continue;
                if (turn_min(P, D, s, e, edges.front()) < kPi - kGeodesicTol) continue;
                std::vector<int> ce = edges;
                ce.push_back(e);
                DualCycle c = canonical(D, faces, ce);
                if (!best || cycle_less(c, *best)) {
                    best = c;
                    bound = c.weight;
                }
                continue;
            }
            if (v < s || used[v]) continue;
            used[v] = 1;
            faces.push_back(v);
            edges.push_back(e);
            dfs(v, nw);
            faces.pop_back();
            edges.pop_back();
            used[v] = 0;
        }
    };
    for (int s = 0; s < D.nodes; ++s) {
        faces = {s};
        edges.clear();
        used.assign(D.nodes, 0);
        used[s] = 1;
        dfs(s, 0.0);
    }
    if (best) classify_cycle(P, D, *best);
    return best;
}

DualCycle min_separating_cycle(const Polyhedron& P, const DualMetric& D, Exec exec) {
    const int m = static_cast<int>(D.edges.size());
    std::vector<std::optional<DualCycle>> best(m);
    auto work = [&](int e) {
        KShortest ks(D, D.edges[e].f, D.edges[e].g, e);
        // e lies on exactly two vertex links, so the third path is never one.
        for (std::size_t k = 0; k < 3; ++k) {
            const Path* p = ks.get(k);
            if (!p) break;
            std::vector<int> edges = p->edges;
            edges.push_back(e);
            if (is_vertex_link(P, edges)) continue;
            best[e] = canonical(D, p->nodes, edges);
            break;
        }
    };
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (int e = 0; e < m; ++e) work(e);
    } else {
        for (int e = 0; e < m; ++e) work(e);
    }
    std::optional<DualCycle> out;
    for (const auto& c : best)
        if (c && (!out || cycle_less(*c, *out))) out = c;
    if (!out) throw InternalError("min_separating_cycle: no non-link cycle found");
    classify_cycle(P, D, *out);
    return *out;
}

std::optional<BondResult> exhaustive_min_bond(const Polyhedron& P, const DualMetric& D) {
    const int V = P.vertex_count();
    if (V > 24) return std::nullopt;
    std::vector<std::uint32_t> nbr(V, 0);
    for (const Edge& E : P.edges()) {
        nbr[E.a] |= 1u << E.b;
        nbr[E.b] |= 1u << E.a;
    }
    auto connected = [&](std::uint32_t set) {
        std::uint32_t seen = set & (~set + 1);
        for (;;) {
            std::uint32_t grow = seen;
            for (int v = 0; v < V; ++v)
                if (seen >> v & 1u) grow |= nbr[v] & set;
            if (grow == seen) break;
            seen = grow;
        }
        return seen == set;
    };
    const std::uint32_t all = V == 32 ? ~0u : ((1u << V) - 1);
    std::optional<BondResult> best;
    for (std::uint32_t rest = 0; rest < (1u << (V - 1)); ++rest) {
        std::uint32_t S = (rest << 1) | 1u;
        int size = __builtin_popcount(S);
        if (size < 2 || size > V - 2) continue;
        if (!connected(S) || !connected(all & ~S)) continue;
        double w = 0.0;
        for (std::size_t e = 0; e < P.edges().size(); ++e) {
            const Edge& E = P.edges()[e];
            if ((S >> E.a & 1u) != (S >> E.b & 1u)) w += D.edges[e].weight;
        }
        if (!best || w < best->weight) {
            BondResult r;
            r.weight = w;
            for (int v = 0; v < V; ++v)
                if (S >> v & 1u) r.side.push_back(v);
            for (std::size_t e = 0; e < P.edges().size(); ++e) {
                const Edge& E = P.edges()[e];
                if ((S >> E.a & 1u) != (S >> E.b & 1u)) r.edges.push_back(static_cast<int>(e));
            }
            best = r;
        }
    }
    return best;
}

AdmissibilityReport admissibility_report(const Polyhedron& P, const DualMetric& D, Exec exec) {
    AdmissibilityReport r;
    r.min_cone_margin = INFINITY;
    for (double c : D.cone_angles) {
        r.cone_margins.push_back(c - kTwoPi);
        r.min_cone_margin = std::min(r.min_cone_margin, c - kTwoPi);
    }
    r.cone_ok = r.min_cone_margin > 0.0;
    r.witness = min_separating_cycle(P, D, exec);
    r.cycle_margin = r.witness.weight - kTwoPi;
    r.cycle_ok = r.cycle_margin > 0.0;
    r.shortest_geodesic = min_geodesic_cycle(P, D);
    r.geodesic_ok = !r.shortest_geodesic || r.shortest_geodesic->weight > kTwoPi;
    r.pass = r.cone_ok && r.cycle_ok;
    return r;
}

double boundary_proximity(const Polyhedron& P, const DualMetric& D, Exec exec) {
    double m = *std::min_element(D.cone_angles.begin(), D.cone_angles.end()) - kTwoPi;
    return std::min(m, min_separating_cycle(P, D, exec).weight - kTwoPi);
}

nlohmann::json to_json(const DualMetric& D) {
    nlohmann::json j;
    j["nodes"] = D.nodes;
    j["edges"] = nlohmann::json::array();
    for (const auto& e : D.edges) j["edges"].push_back({{"faces", {e.f, e.g}}, {"weight", e.weight}});
    j["cone_angles"] = D.cone_angles;
    return j;
}

nlohmann::json to_json(const DualCycle& c) {
    return {{"faces", c.faces},
            {"edges", c.edges},
            {"weight", c.weight},
            {"separating", c.separating},
            {"vertex_link", c.vertex_link},
            {"side_vertices", c.side_vertices},
            {"side_faces", c.side_faces},
            {"geodesic", c.geodesic},
            {"min_side_angle", c.min_side_angle}};
}

}  // namespace curvlab
