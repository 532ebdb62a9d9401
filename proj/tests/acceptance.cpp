// Acceptance run: one PASS/FAIL line per criterion.
//
//   acceptance [--only 1,4,6] [--expect-fail 9,10] [--seed S]
//
// Exit status is 0 when the set of failing criteria equals the expected set.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "curvlab/degeneration.hpp"
#include "curvlab/polar_metric.hpp"
#include "curvlab/polyhedron.hpp"
#include "curvlab/schlafli.hpp"
#include "curvlab/simplex_gram.hpp"

using namespace curvlab;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
    std::vector<std::string> info;
};

class Timer {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

const std::vector<int> kScanN = {4, 6, 8, 12};
const std::vector<double> kScanRho = {10, 15, 20, 25, 30};
const int kScanTrials = 20;

std::uint64_t g_seed = 1;

// Scan rows are shared by criteria 7, 8, 10 and 11. The grid includes cells
// with rho < 2N, so the t >= 1 precondition is waived and those rows counted.
struct ScanCache {
    std::map<int, std::vector<ScanRow>> rows;
    double seconds = 0.0;
    bool ready = false;
};
ScanCache g_scan;

const ScanCache& scan_rows() {
    if (!g_scan.ready) {
        Timer t;
        for (int N : kScanN) g_scan.rows[N] = scan_degeneration(N, kScanRho, kScanTrials, g_seed, true);
        g_scan.seconds = t.seconds();
        g_scan.ready = true;
    }
    return g_scan;
}

Outcome c1_all_right() {
    Outcome o;
    Timer t;
    const double exact = kPi * kPi / 8.0;
    AngleVector th = AngleVector::uniform(3, kPi / 2);
    VolumeEstimate s = volume_tetra(th, Curvature::Spherical);
    McOptions opt;
    opt.samples = 10'000'000;
    opt.seed = derive_seed(g_seed, 1);
    VolumeEstimate mc = mc_volume_oracle(vertices_from_gram(gram_from_angles(th)), opt);
    double secs = t.seconds();
    double err = std::fabs(s.value - exact);
    double mc_err = std::fabs(mc.value - exact);
    o.pass = err < 1e-6 && mc_err <= mc.error_bound && secs < 60;
    o.detail = fmt("schlafli=%.12f |err|=%.2e mc=%.6f |err|=%.2e 3sigma=%.2e time=%.1fs", s.value, err, mc.value,
                   mc_err, mc.error_bound, secs);
    return o;
}

Outcome c2_gradient() {
    Outcome o;
    Timer t;
    double worst = 0.0;
    int instances = 0;
    for (Curvature K : {Curvature::Hyperbolic, Curvature::Spherical})
        for (int i = 0; i < 20; ++i) {
            AngleVector th = random_compact_angles(K, derive_seed(g_seed, 2, i + (K == Curvature::Spherical ? 100 : 0)));
            std::vector<double> g = schlafli_gradient(th, K);
            for (std::size_t k = 0; k < th.size(); ++k) {
                const double h = 1e-4;
                AngleVector a = th, b = th;
                a[k] += h;
                b[k] -= h;
                double fd = (volume_tetra(a, K, 1e-12).value - volume_tetra(b, K, 1e-12).value) / (2 * h);
                worst = std::max(worst, std::fabs(fd - g[k]));
            }
            ++instances;
        }
    double secs = t.seconds();
    o.pass = worst < 1e-5 && secs < 300;
    o.detail = fmt("instances=%d max|fd-l/2K|=%.2e time=%.1fs", instances, worst, secs);
    return o;
}

Outcome c3_oracle() {
    Outcome o;
    int bad = 0;
    double worst = 0.0;  // |S - MC| / (quad bound + 3 sigma)
    for (int i = 0; i < 20; ++i) {
        AngleVector th = random_compact_angles(Curvature::Hyperbolic, derive_seed(g_seed, 3, i));
        VolumeEstimate s = volume_tetra(th, Curvature::Hyperbolic);
        McOptions opt;
        opt.samples = 10'000'000;
        opt.seed = derive_seed(g_seed, 30, i);
        VolumeEstimate mc = mc_volume_oracle(vertices_from_gram(gram_from_angles(th)), opt);
        double r = std::fabs(s.value - mc.value) / (s.error_bound + mc.error_bound);
        worst = std::max(worst, r);
        if (r > 1.0) ++bad;
    }
    o.pass = bad == 0;
    o.detail = fmt("instances=20 outside=%d max ratio=%.3f", bad, worst);
    return o;
}

Outcome c4_corners() {
    Outcome o;
    IdealExtrapolation ex = extrapolate_regular_ideal(11);
    bool increasing = true;
    for (std::size_t k = 1; k < ex.volumes.size(); ++k) increasing &= ex.volumes[k] > ex.volumes[k - 1];

    McOptions opt;
    opt.samples = 10'000'000;
    opt.seed = derive_seed(g_seed, 4);
    const double s = 1.0 / std::sqrt(3.0);
    std::array<KleinPoint, 4> ideal;
    ideal[0] = {s, s, s};
    ideal[1] = {s, -s, -s};
    ideal[2] = {-s, s, -s};
    ideal[3] = {-s, -s, s};
    VolumeEstimate mc = mc_volume_truncated(ideal, opt);
    double rel = std::fabs(ex.limit - mc.value) / mc.value;

    // theta with boundary margin 1e-6 below arccos(1/3)
    const double e = std::acos(1.0 / 3.0);
    double lo = e - 0.1, hi = e - 1e-12;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (boundary_margin(AngleVector::uniform(3, mid)) > 1e-6)
            lo = mid;
        else
            hi = mid;
    }
    double theta6 = lo;
    double v6 = volume_tetra(AngleVector::uniform(3, theta6), Curvature::Hyperbolic).value;
    bool decreasing = true;
    double prev = HUGE_VAL;
    for (int k = 0; k <= 12; ++k) {
        double th = theta6 - (0.1 * std::pow(0.5, k)) * (1.0 - 1e-3 * k);
        double v = volume_tetra(AngleVector::uniform(3, th), Curvature::Hyperbolic).value;
        decreasing &= v < prev;
        prev = v;
    }
    decreasing &= v6 < prev;
    o.pass = increasing && rel < 0.01 && decreasing && v6 < 1e-4;
    o.detail = fmt("ideal: increasing=%d richardson=%.6f mc=%.6f+-%.1e rel=%.2e; euclidean: decreasing=%d "
                   "theta=%.12f V=%.3e",
                   increasing, ex.limit, mc.value, mc.error_bound, rel, decreasing, theta6, v6);
    return o;
}

Outcome c5_log_law() {
    Outcome o;
    std::vector<double> x, y;
    for (int k = 0; k < 10; ++k) {
        double delta = std::pow(10.0, -7.0 + 4.0 * k / 9.0);
        Matrix G = gram_from_angles(AngleVector::uniform(3, kPi / 3 + delta));
        Matrix C = cofactor_matrix(G);
        Matrix L = edge_lengths(G);
        x.push_back(std::log(C(0, 0)));
        y.push_back(L(0, 1));
    }
    auto f = linear_fit(x, y);
    o.pass = std::fabs(f[1] + 1.0) <= 0.05;
    o.detail = fmt("slope=%.6f r2=%.8f", f[1], f[2]);
    return o;
}

Outcome c6_suites() {
    Outcome o;
    Timer t;
    int violations = 0, suites = 0;
    std::string worst;
    double worst_margin = HUGE_VAL;
    auto run = [&](const std::string& name, double p) {
        SuiteResult r = run_suite(name, p, 10'000, g_seed);
        violations += r.violations;
        ++suites;
        if (r.min_margin < worst_margin) {
            worst_margin = r.min_margin;
            worst = fmt("%s(%g)", name.c_str(), p);
        }
    };
    for (double p : {1.0, 2.0, 5.0}) run("anglemma", p);
    for (double p : {1.0, 2.0, 5.0}) run("distlem", p);
    for (double p : {0.01, 0.05, 0.1}) run("spherical", p);
    for (double p : {1.0, 2.0}) run("circleest", p);
    double secs = t.seconds();
    o.pass = violations == 0 && secs < 120;
    o.detail = fmt("suites=%d trials=1e4 violations=%d min margin=%.2e at %s time=%.1fs", suites, violations,
                   worst_margin, worst.c_str(), secs);
    return o;
}

Outcome c7_degenthm() {
    Outcome o;
    const ScanCache& s = scan_rows();
    int rows = 0, bad = 0, cycles = 0, below = 0;
    for (const auto& [N, v] : s.rows)
        for (const ScanRow& r : v) {
            ++rows;
            if (r.rho < 2 * N * kT0) ++below;
            if (!r.generated || !r.error.empty() || !r.degen_pass) ++bad;
            if (r.generated && r.error.empty()) ++cycles;
        }
    o.pass = bad == 0 && s.seconds < 600;
    o.detail = fmt("rows=%d cycles=%d violations=%d (rows with rho < 2N: %d) scan time=%.1fs", rows, cycles, bad,
                   below, s.seconds);
    return o;
}

Outcome c8_quasig() {
    Outcome o;
    int bad = 0, pairs = 0, cos_bad = 0;
    for (const auto& [N, v] : scan_rows().rows)
        for (const ScanRow& r : v) {
            if (!r.generated || !r.error.empty() || !r.quasig_pass) ++bad;
            if (!r.cos_ok) ++cos_bad;
            pairs += r.intersecting;
        }
    o.pass = bad == 0 && cos_bad == 0;
    o.detail = fmt("violations=%d cos violations=%d intersecting pairs=%d", bad, cos_bad, pairs);
    return o;
}

Outcome c9_annelk() {
    Outcome o;
    int cone_bad = 0, cycle_bad = 0, geo_bad = 0, oracle_bad = 0, small = 0;
    double min_cone = HUGE_VAL, min_cycle = HUGE_VAL;
    for (int i = 0; i < 100; ++i) {
        Polyhedron P = random_klein_hull(6 + i % 15, 0.9, derive_seed(g_seed, 9, i));
        DualMetric D = dual_metric(P);
        AdmissibilityReport a = admissibility_report(P, D);
        double area_gap = 0.0;
        for (int f = 0; f < D.nodes; ++f)
            area_gap = std::max(area_gap, std::fabs(D.cone_angles[f] - 2 * kPi - D.face_areas[f]));
        if (!a.cone_ok || area_gap > 1e-8) ++cone_bad;
        if (!a.cycle_ok) ++cycle_bad;
        if (!a.geodesic_ok) ++geo_bad;
        min_cone = std::min(min_cone, a.min_cone_margin);
        min_cycle = std::min(min_cycle, a.cycle_margin);
        if (P.face_count() <= 8) {
            ++small;
            auto b = exhaustive_min_bond(P, D);
            if (!b || std::fabs(b->weight - a.witness.weight) > 1e-9) ++oracle_bad;
        }
    }
    o.pass = cone_bad == 0 && cycle_bad == 0 && oracle_bad == 0;
    o.detail = fmt("hulls=100 cone violations=%d (min margin %.3e) non-link cycles <= 2pi: %d (min margin %.3e) "
                   "exhaustive mismatches=%d/%d",
                   cone_bad, min_cone, cycle_bad, min_cycle, oracle_bad, small);
    o.info.push_back(fmt("skeleton closed geodesics of length <= 2pi: %d/100", geo_bad));
    return o;
}

Outcome c10_loggrowth() {
    Outcome o;
    int rows = 0, bad = 0, nonpositive = 0;
    bool slopes_ok = true;
    std::string slopes;
    for (const auto& [N, v] : scan_rows().rows) {
        std::vector<double> x, y;
        for (const ScanRow& r : v) {
            if (!r.generated) continue;
            ++rows;
            if (!r.log_pass) ++bad;
            if (r.proximity > 0) {
                x.push_back(r.rho);
                y.push_back(std::log(r.proximity));
            } else {
                ++nonpositive;
            }
        }
        double limit = -1.0 / (2 * N) + 0.1;
        double slope = NAN;
        if (x.size() >= 2) slope = linear_fit(x, y)[1];
        bool ok = std::isfinite(slope) && slope <= limit;
        slopes_ok &= ok;
        slopes += fmt(" N=%d:%.4f(<=%.4f)", N, slope, limit);
    }
    o.pass = bad == 0 && slopes_ok;
    o.detail = fmt("rows=%d violations=%d nonpositive proxy=%d slopes%s", rows, bad, nonpositive, slopes.c_str());
    return o;
}

bool certify(const Polyhedron& P, std::string& why) {
    if (P.vertex_count() - P.edge_count() + P.face_count() != 2) {
        why = "euler";
        return false;
    }
    for (int f = 0; f < P.face_count(); ++f) {
        const Face& F = P.faces()[f];
        std::set<int> on(F.vertices.begin(), F.vertices.end());
        for (int v = 0; v < P.vertex_count(); ++v) {
            double s = to_double(side_of(F.normal, P.vertex(v)));
            if (on.count(v) ? std::fabs(s) > kPlaneTol : s >= -kPlaneTol) {
                why = fmt("face %d vertex %d", f, v);
                return false;
            }
        }
    }
    for (const Edge& e : P.edges())
        if (!(e.dihedral > 0 && e.dihedral < kPi)) {
            why = "dihedral";
            return false;
        }
    return true;
}

Outcome c11_invariants() {
    Outcome o;
    double adj = 0.0, trip = 0.0;
    for (Curvature K : {Curvature::Hyperbolic, Curvature::Spherical})
        for (int i = 0; i < 100; ++i) {
            AngleVector th = random_compact_angles(K, derive_seed(g_seed, 11, i + (K == Curvature::Spherical ? 100 : 0)));
            Matrix G = gram_from_angles(th);
            Matrix C = cofactor_matrix(G);
            double det = G.determinant();
            Matrix R = G * C.transpose() - det * Matrix::Identity(G.rows(), G.cols());
            adj = std::max(adj, R.cwiseAbs().maxCoeff());
            AngleVector back = angles_from_vertices(vertices_from_gram(G));
            for (std::size_t k = 0; k < th.size(); ++k) trip = std::max(trip, std::fabs(back[k] - th[k]));
        }

    int polys = 0, cert_bad = 0, json_bad = 0;
    std::string why;
    auto check = [&](const Polyhedron& P) {
        ++polys;
        std::string w;
        if (!certify(P, w)) {
            ++cert_bad;
            why = w;
        }
        std::string a = to_json(P).dump();
        if (to_json(polyhedron_from_json(nlohmann::json::parse(a))).dump() != a) ++json_bad;
    };
    for (int i = 0; i < 100; ++i) check(random_klein_hull(6 + i % 15, 0.9, derive_seed(g_seed, 9, i)));
    for (const auto& [N, v] : scan_rows().rows)
        for (const ScanRow& r : v)
            if (r.generated) check(stretch_generator(N, r.rho, r.seed));

    int rerun_bad = 0;
    {
        McOptions opt;
        opt.samples = 1'000'000;
        opt.seed = derive_seed(g_seed, 110);
        VertexMatrix V = vertices_from_gram(gram_from_angles(AngleVector::uniform(3, 1.2)));
        opt.exec = Exec::Serial;
        VolumeEstimate a = mc_volume_oracle(V, opt);
        opt.exec = Exec::Parallel;
        VolumeEstimate b = mc_volume_oracle(V, opt);
        if (a.value != b.value || a.error_bound != b.error_bound) ++rerun_bad;
    }
    for (const char* name : {"anglemma", "distlem", "spherical", "circleest", "seplemma"}) {
        double p = std::string(name) == "spherical" ? 0.1 : 1.0;
        SuiteResult a = run_suite(name, p, 500, g_seed, Exec::Serial);
        SuiteResult b = run_suite(name, p, 500, g_seed, Exec::Parallel);
        for (std::size_t k = 0; k < a.rows.size(); ++k)
            if (a.rows[k].measured != b.rows[k].measured || a.rows[k].seed != b.rows[k].seed) {
                ++rerun_bad;
                break;
            }
    }
    {
        auto a = scan_degeneration(6, {10, 20}, 3, g_seed, true, Exec::Serial);
        const auto& b = scan_rows().rows.at(6);
        for (const ScanRow& r : a) {
            int rho_index = r.rho == 10 ? 0 : 2;
            const ScanRow& s = b[rho_index * kScanTrials + r.trial];
            if (r.seed != s.seed || r.cycle_total != s.cycle_total || r.max_edge != s.max_edge) ++rerun_bad;
        }
        Polyhedron P = random_klein_hull(12, 0.9, 77), Q = random_klein_hull(12, 0.9, 77);
        if (to_json(P).dump() != to_json(Q).dump()) ++rerun_bad;
    }
    o.pass = adj < 1e-9 && trip < 1e-9 && cert_bad == 0 && json_bad == 0 && rerun_bad == 0;
    o.detail = fmt("adjugate=%.2e roundtrip=%.2e polyhedra=%d certificate failures=%d%s json mismatches=%d "
                   "rerun mismatches=%d",
                   adj, trip, polys, cert_bad, why.empty() ? "" : (" (" + why + ")").c_str(), json_bad, rerun_bad);
    return o;
}

std::set<int> parse_set(const std::string& s) {
    std::set<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.insert(std::stoi(item));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria"};
    std::string only, expect;
    app.add_option("--only", only, "Comma-separated criteria to run");
    app.add_option("--expect-fail", expect, "Criteria expected to fail");
    app.add_option("--seed", g_seed, "Master seed");
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"all-right spherical volume", c1_all_right},
        {"schlafli gradient", c2_gradient},
        {"oracle equivalence", c3_oracle},
        {"ideal and euclidean corners", c4_corners},
        {"log edge-length law", c5_log_law},
        {"lemma suites", c6_suites},
        {"degenthm", c7_degenthm},
        {"quasig", c8_quasig},
        {"annelk conditions", c9_annelk},
        {"loggrowth", c10_loggrowth},
        {"invariants", c11_invariants},
    };
    std::set<int> selected = parse_set(only), expected = parse_set(expect), failed;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        int id = static_cast<int>(i) + 1;
        if (!selected.empty() && !selected.count(id)) continue;
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        if (!o.pass) failed.insert(id);
        std::printf("criterion %2d %s  %s: %s%s\n", id, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                    o.detail.c_str(), !o.pass && expected.count(id) ? " [expected]" : "");
        for (const auto& line : o.info) std::printf("             info  %s\n", line.c_str());
        std::fflush(stdout);
    }
    std::set<int> want;
    for (int id : expected)
        if (selected.empty() || selected.count(id)) want.insert(id);
    std::printf("failed: %zu, expected failures: %zu\n", failed.size(), want.size());
    return failed == want ? 0 : 1;
}
