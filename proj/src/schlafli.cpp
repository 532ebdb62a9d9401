#include "curvlab/schlafli.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include <omp.h>

namespace curvlab {

std::string to_string(VolumeMethod m) {
    return m == VolumeMethod::SchlafliPath ? "SchlafliPath" : "MonteCarlo";
}

double area_2d(const std::array<double, 3>& a, Curvature K) {
    for (double x : a)
        if (!(x > 0.0 && x < kPi)) throw InvalidInput("area_2d: angle outside (0, pi)");
    double area = sign_of(K) * (a[0] + a[1] + a[2] - kPi);
    if (!(area > 0.0)) throw InvalidInput("area_2d: angle sum is not realizable in this curvature");
    return area;
}

namespace {

void require_compact(const AngleVector& theta, Curvature K, const char* who) {
    if (theta.dimension() != 3) throw InvalidInput(std::string(who) + ": only tetrahedra (n = 3) are supported");
    SimplexKind kind = classify(gram_from_angles(theta)).kind;
    SimplexKind want = K == Curvature::Spherical ? SimplexKind::Spherical : SimplexKind::HyperbolicCompact;
    if (kind != want)
        throw DomainError(std::string(who) + ": angles classify as " + to_string(kind) + ", expected " +
                          to_string(want));
}

Quad form(const QVec4& a, const QVec4& b, Curvature K) {
    if (K == Curvature::Hyperbolic) return mdot(a, b);
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

Quad form_angle(const QVec4& a, const QVec4& b, Curvature K) {
    QVec4 d = a - b, s = a + b;
    Quad dd = form(d, d, K), ss = form(s, s, K);
    if (dd < 0) dd = 0;
    if (ss < 0) ss = 0;
    return 2 * atan2(sqrt(dd), sqrt(ss));
}

const Quad kQuadPi = 4 * atan(Quad(1));

constexpr int kSlotI[6] = {0, 0, 0, 1, 1, 2};
constexpr int kSlotJ[6] = {1, 2, 3, 2, 3, 3};

}  // namespace

std::vector<double> schlafli_gradient(const AngleVector& theta, Curvature K) {
    require_compact(theta, K, "schlafli_gradient");
    Matrix L = edge_lengths(gram_from_angles(theta));
    std::vector<double> g(6);
    for (int s = 0; s < 6; ++s) {
        auto [k, l] = opposite_edge(kSlotI[s], kSlotJ[s]);
        g[s] = L(k, l) / (2.0 * sign_of(K));
    }
    return g;
}

ScalingPath::ScalingPath(const VertexMatrix& V) : K_(V.curvature) {
    if (V.W.rows() != 4 || V.W.cols() != 4) throw InvalidInput("ScalingPath: tetrahedron vertex matrix must be 4x4");
    if (K_ == Curvature::Hyperbolic) {
        for (int j = 0; j < 4; ++j) {
            QVec4 q{{V.W(0, j), V.W(1, j), V.W(2, j), V.W(3, j)}};
            q = normalize_timelike(q);
            chart_[j] = q / q[0];
        }
    } else {
        // c with <w_j, c> = 1 for every vertex: the gnomonic plane through all four.
        Vector c = V.W.transpose().fullPivLu().solve(Vector::Ones(4));
        for (int j = 0; j < 4; ++j) {
            QVec4 q{{V.W(0, j), V.W(1, j), V.W(2, j), V.W(3, j)}};
            Quad dot = q[0] * c(0) + q[1] * c(1) + q[2] * c(2) + q[3] * c(3);
            if (!(dot > 0)) throw DomainError("ScalingPath: vertices not in an open hemisphere");
            chart_[j] = q / dot;
        }
    }
    center_ = Quad(0.25) * (chart_[0] + chart_[1] + chart_[2] + chart_[3]);
}

ScalingPath::QuadState ScalingPath::state(double s) const {
    std::array<QVec4, 4> P;
    Quad qs = s;
    for (int j = 0; j < 4; ++j) {
        QVec4 p = center_ + qs * (chart_[j] - center_);
        if (K_ == Curvature::Hyperbolic) {
            P[j] = normalize_timelike(p);
        } else {
            P[j] = p / sqrt(form(p, p, K_));
        }
    }
    std::array<QVec4, 4> N;
    for (int i = 0; i < 4; ++i) {
        const QVec4& a = P[(i + 1) % 4];
        const QVec4& b = P[(i + 2) % 4];
        const QVec4& c = P[(i + 3) % 4];
        QVec4 n = minkowski_cross(a, b, c);
        if (K_ == Curvature::Spherical) n[0] = -n[0];
        Quad nn = form(n, n, K_);
        if (!(nn > 0)) throw InternalError("ScalingPath: degenerate face at s = " + std::to_string(s));
        n = n / sqrt(nn);
        if (form(n, P[i], K_) < 0) n = -n;
        N[i] = n;
    }
    QuadState st;
    for (int k = 0; k < 6; ++k) {
        int i = kSlotI[k], j = kSlotJ[k];
        st.angles[k] = kQuadPi - form_angle(N[i], N[j], K_);
        auto [a, b] = opposite_edge(i, j);
        st.lengths[k] = K_ == Curvature::Hyperbolic ? hyperbolic_distance_q(P[a], P[b]) : form_angle(P[a], P[b], K_);
        if (!(st.angles[k] > 0 && st.angles[k] < kQuadPi) || !isfinite(st.lengths[k]))
            throw InternalError("ScalingPath: path left the admissible class at s = " + std::to_string(s));
    }
    return st;
}

PathState ScalingPath::at(double s) const {
    QuadState q = state(s);
    PathState out;
    for (int k = 0; k < 6; ++k) {
        out.angles[k] = to_double(q.angles[k]);
        out.lengths[k] = to_double(q.lengths[k]);
    }
    return out;
}

double ScalingPath::integrand(double s, double h) const {
    if (s <= 0.0) return 0.0;
    QuadState mid = state(s);
    std::array<Quad, 6> dtheta{};
    if (s - h > 0.0 && s + h <= 1.0) {
        QuadState lo = state(s - h), hi = state(s + h);
        for (int k = 0; k < 6; ++k) dtheta[k] = (hi.angles[k] - lo.angles[k]) / (2 * h);
    } else if (s - h <= 0.0) {
        QuadState p1 = state(s + h), p2 = state(s + 2 * h);
        for (int k = 0; k < 6; ++k) dtheta[k] = (-3 * mid.angles[k] + 4 * p1.angles[k] - p2.angles[k]) / (2 * h);
    } else {
        QuadState m1 = state(s - h), m2 = state(s - 2 * h);
        for (int k = 0; k < 6; ++k) dtheta[k] = (3 * mid.angles[k] - 4 * m1.angles[k] + m2.angles[k]) / (2 * h);
    }
    Quad acc = 0;
    for (int k = 0; k < 6; ++k) acc += mid.lengths[k] * dtheta[k];
    return to_double(acc) / (2.0 * sign_of(K_));
}

namespace {

struct Simpson {
    std::function<double(double)> f;
    std::uint64_t evals = 0;
    double err = 0.0;

    double eval(double x) {
        ++evals;
        return f(x);
    }

    double step(double a, double b, double fa, double fm, double fb, double whole, double tol, int depth,
                int min_depth) {
        double m = 0.5 * (a + b);
        double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
        double flm = eval(lm), frm = eval(rm);
        double left = (m - a) / 6.0 * (fa + 4 * flm + fm);
        double right = (b - m) / 6.0 * (fm + 4 * frm + fb);
        double delta = left + right - whole;
        if (min_depth <= 0 && (depth <= 0 || std::fabs(delta) <= 15.0 * tol)) {
            err += std::fabs(delta) / 15.0;
            return left + right + delta / 15.0;
        }
        return step(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, min_depth - 1) +
               step(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, min_depth - 1);
    }

    double integrate(double a, double b, double tol) {
        double fa = eval(a), fb = eval(b), fm = eval(0.5 * (a + b));
        double whole = (b - a) / 6.0 * (fa + 4 * fm + fb);
        return step(a, b, fa, fm, fb, whole, tol, 30, 3);
    }
};

}  // namespace

VolumeEstimate volume_tetra(const AngleVector& theta, Curvature K, double quadrature_tol) {
    if (!(quadrature_tol > 0)) throw InvalidInput("volume_tetra: tolerance must be positive");
    require_compact(theta, K, "volume_tetra");
    VertexMatrix V = vertices_from_gram(gram_from_angles(theta));
    ScalingPath path(V);
    Simpson simpson{[&](double s) { return path.integrand(s); }};
    double value = simpson.integrate(0.0, 1.0, quadrature_tol);
    VolumeEstimate out;
    out.value = value;
    out.error_bound = simpson.err;
    out.method = VolumeMethod::SchlafliPath;
    out.curvature = K;
    out.evaluations = simpson.evals;
    return out;
}

namespace {

struct BlockSums {
    double sum = 0.0;
    double sum2 = 0.0;
    std::uint64_t hits = 0;
};

// Runs kernel(block_index, count) over fixed-size blocks. Block b always draws
// from the stream seeded by derive_seed(seed, b); results are reduced in block
// order, so serial and parallel runs agree bit for bit.
template <class Kernel>
BlockSums run_blocks(const McOptions& opt, Kernel kernel) {
    if (opt.samples == 0) throw InvalidInput("Monte Carlo: samples must be positive");
    const std::uint64_t nblocks = (opt.samples + kMcBlock - 1) / kMcBlock;
    std::vector<BlockSums> blocks(nblocks);
    auto one = [&](std::uint64_t b) {
        std::uint64_t count = std::min(kMcBlock, opt.samples - b * kMcBlock);
        std::mt19937_64 rng(derive_seed(opt.seed, b));
        blocks[b] = kernel(rng, count);
    };
    if (opt.exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (std::int64_t b = 0; b < static_cast<std::int64_t>(nblocks); ++b) one(static_cast<std::uint64_t>(b));
    } else {
        for (std::uint64_t b = 0; b < nblocks; ++b) one(b);
    }
    BlockSums total;
    for (const auto& r : blocks) {
        total.sum += r.sum;
        total.sum2 += r.sum2;
        total.hits += r.hits;
    }
    return total;
}

VolumeEstimate finish(const BlockSums& t, std::uint64_t n, double scale, Curvature K) {
    double mean = t.sum / static_cast<double>(n);
    double var = std::max(0.0, t.sum2 / static_cast<double>(n) - mean * mean);
    VolumeEstimate out;
    out.value = scale * mean;
    out.error_bound = 3.0 * scale * std::sqrt(var / static_cast<double>(n));
    out.method = VolumeMethod::MonteCarlo;
    out.curvature = K;
    out.samples = n;
    return out;
}

}  // namespace

VolumeEstimate mc_spherical_halfspaces(const std::vector<std::array<double, 4>>& normals, const McOptions& opt) {
    auto kernel = [&](std::mt19937_64& rng, std::uint64_t count) {
        std::normal_distribution<double> nd(0.0, 1.0);
        BlockSums r;
        for (std::uint64_t k = 0; k < count; ++k) {
            double x[4];
            double n2 = 0.0;
            for (double& xi : x) {
                xi = nd(rng);
                n2 += xi * xi;
            }
            // Direction only matters for the sign tests; no need to normalize.
            bool inside = n2 > 0.0;
            for (const auto& n : normals) {
                if (n[0] * x[0] + n[1] * x[1] + n[2] * x[2] + n[3] * x[3] < 0.0) {
                    inside = false;
                    break;
                }
            }
            if (inside) {
                r.sum += 1.0;
                r.sum2 += 1.0;
                ++r.hits;
            }
        }
        return r;
    };
    return finish(run_blocks(opt, kernel), opt.samples, 2.0 * kPi * kPi, Curvature::Spherical);
}

VolumeEstimate mc_volume_oracle(const VertexMatrix& V, const McOptions& opt) {
    if (opt.samples == 0) throw InvalidInput("mc_volume_oracle: samples must be positive");
    if (V.W.rows() != 4 || V.W.cols() != 4) throw InvalidInput("mc_volume_oracle: tetrahedron required");
    if (V.curvature == Curvature::Spherical) {
        std::vector<std::array<double, 4>> normals(4);
        for (int i = 0; i < 4; ++i)
            for (int k = 0; k < 4; ++k) normals[i][k] = V.S(k, i);
        return mc_spherical_halfspaces(normals, opt);
    }
    std::array<KleinPoint, 4> u;
    for (int j = 0; j < 4; ++j) {
        if (!(V.W(0, j) > 0)) throw InvalidInput("mc_volume_oracle: vertex not on the upper hyperboloid");
        double r2 = 0.0;
        for (int k = 0; k < 3; ++k) {
            u[j][k] = V.W(k + 1, j) / V.W(0, j);
            r2 += u[j][k] * u[j][k];
        }
        if (!(r2 < 1.0)) throw DomainError("mc_volume_oracle: vertex on or outside the Klein ball", j);
    }
    Eigen::Matrix4d M;
    for (int j = 0; j < 4; ++j) {
        M(0, j) = 1.0;
        for (int k = 0; k < 3; ++k) M(k + 1, j) = u[j][k];
    }
    Eigen::FullPivLU<Eigen::Matrix4d> lu(M);
    if (!lu.isInvertible()) throw InvalidInput("mc_volume_oracle: degenerate simplex");
    const Eigen::Matrix4d Minv = lu.inverse();
    double lo[3], hi[3];
    for (int k = 0; k < 3; ++k) {
        lo[k] = hi[k] = u[0][k];
        for (int j = 1; j < 4; ++j) {
            lo[k] = std::min(lo[k], u[j][k]);
            hi[k] = std::max(hi[k], u[j][k]);
        }
    }
    double box = (hi[0] - lo[0]) * (hi[1] - lo[1]) * (hi[2] - lo[2]);
    auto kernel = [&](std::mt19937_64& rng, std::uint64_t count) {
        std::uniform_real_distribution<double> ux(lo[0], hi[0]), uy(lo[1], hi[1]), uz(lo[2], hi[2]);
        BlockSums r;
        for (std::uint64_t k = 0; k < count; ++k) {
            Eigen::Vector4d p(1.0, ux(rng), uy(rng), uz(rng));
            Eigen::Vector4d lam = Minv * p;
            if ((lam.array() >= 0.0).all()) {
                double q = 1.0 - (p(1) * p(1) + p(2) * p(2) + p(3) * p(3));
                double w = 1.0 / (q * q);
                r.sum += w;
                r.sum2 += w * w;
                ++r.hits;
            }
        }
        return r;
    };
    return finish(run_blocks(opt, kernel), opt.samples, box, Curvature::Hyperbolic);
}

VolumeEstimate mc_volume_truncated(const std::array<KleinPoint, 4>& kv, const McOptions& opt, double truncation) {
    if (opt.samples == 0) throw InvalidInput("mc_volume_truncated: samples must be positive");
    if (!(truncation > 0)) throw InvalidInput("mc_volume_truncated: truncation radius must be positive");
    constexpr double kIdealTol = 1e-12;
    std::array<bool, 4> ideal{};
    KleinPoint bar{0, 0, 0};
    for (int j = 0; j < 4; ++j) {
        double r2 = kv[j][0] * kv[j][0] + kv[j][1] * kv[j][1] + kv[j][2] * kv[j][2];
        if (r2 > 1.0 + kIdealTol) throw DomainError("mc_volume_truncated: vertex outside the closed Klein ball", j);
        ideal[j] = r2 >= 1.0 - kIdealTol;
        for (int k = 0; k < 3; ++k) bar[k] += 0.25 * kv[j][k];
    }
    HPoint C = klein_lift(bar);
    const QVec4& Cq = C.exact();

    // Face opposite vertex i: Klein plane a.u = beta <-> Minkowski normal (beta, a).
    std::array<QVec4, 4> n;
    for (int i = 0; i < 4; ++i) {
        const KleinPoint& p = kv[(i + 1) % 4];
        const KleinPoint& q = kv[(i + 2) % 4];
        const KleinPoint& r = kv[(i + 3) % 4];
        Quad e1[3], e2[3], a[3];
        for (int k = 0; k < 3; ++k) {
            e1[k] = Quad(q[k]) - p[k];
            e2[k] = Quad(r[k]) - p[k];
        }
        a[0] = e1[1] * e2[2] - e1[2] * e2[1];
        a[1] = e1[2] * e2[0] - e1[0] * e2[2];
        a[2] = e1[0] * e2[1] - e1[1] * e2[0];
        Quad beta = a[0] * p[0] + a[1] * p[1] + a[2] * p[2];
        QVec4 v{{beta, a[0], a[1], a[2]}};
        if (!(mdot(v, v) > 0)) throw InvalidInput("mc_volume_truncated: degenerate face");
        v = normalize_spacelike(v);
        if (mdot(v, Cq) < 0) v = -v;
        n[i] = v;
    }
    // Orthonormal frame at C: push the coordinate frame at the origin forward.
    double rb = std::sqrt(bar[0] * bar[0] + bar[1] * bar[1] + bar[2] * bar[2]);
    LorentzTransform B = rb > 0 ? LorentzTransform::boost(bar, std::atanh(rb)) : LorentzTransform();
    std::array<QVec4, 3> e;
    for (int k = 0; k < 3; ++k) {
        QVec4 t{};
        t[k + 1] = 1;
        e[k] = B.apply(t);
    }
    double a[4], Bm[4][3];
    for (int i = 0; i < 4; ++i) {
        a[i] = to_double(mdot(n[i], Cq));
        for (int k = 0; k < 3; ++k) Bm[i][k] = to_double(mdot(n[i], e[k]));
    }

    // Cusp volume beyond the truncation sphere, from the linearized cusp
    // cross-section T0 at each ideal vertex: area(T0) e^{-2 Rc} / 2.
    double tail = 0.0;
    for (int v = 0; v < 4; ++v) {
        if (!ideal[v]) continue;
        QVec4 ell{{Quad(1), Quad(kv[v][0]), Quad(kv[v][1]), Quad(kv[v][2])}};
        QVec4 w = normalize_spacelike(tangent_toward(Cq, ell));
        double g[3];
        for (int k = 0; k < 3; ++k) g[k] = to_double(mdot(w, e[k]));
        // f1, f2 orthonormal complement of g in R^3.
        double h[3] = {1, 0, 0};
        if (std::fabs(g[0]) > 0.8) h[0] = 0, h[1] = 1;
        double f1[3], f2[3];
        double hd = h[0] * g[0] + h[1] * g[1] + h[2] * g[2];
        for (int k = 0; k < 3; ++k) f1[k] = h[k] - hd * g[k];
        double f1n = std::sqrt(f1[0] * f1[0] + f1[1] * f1[1] + f1[2] * f1[2]);
        for (double& x : f1) x /= f1n;
        f2[0] = g[1] * f1[2] - g[2] * f1[1];
        f2[1] = g[2] * f1[0] - g[0] * f1[2];
        f2[2] = g[0] * f1[1] - g[1] * f1[0];
        std::vector<std::array<double, 3>> lines;  // d . delta = -a
        for (int i = 0; i < 4; ++i) {
            if (i == v) continue;
            double d1 = 0, d2 = 0;
            for (int k = 0; k < 3; ++k) {
                d1 += Bm[i][k] * f1[k];
                d2 += Bm[i][k] * f2[k];
            }
            lines.push_back({d1, d2, -a[i]});
        }
        std::array<std::array<double, 2>, 3> corner;
        for (int c = 0; c < 3; ++c) {
            const auto& L1 = lines[c];
            const auto& L2 = lines[(c + 1) % 3];
            double det = L1[0] * L2[1] - L1[1] * L2[0];
            if (std::fabs(det) < 1e-300) throw InternalError("mc_volume_truncated: degenerate cusp section");
            corner[c] = {(L1[2] * L2[1] - L1[1] * L2[2]) / det, (L1[0] * L2[2] - L1[2] * L2[0]) / det};
        }
        double area = 0.5 * std::fabs((corner[1][0] - corner[0][0]) * (corner[2][1] - corner[0][1]) -
                                      (corner[2][0] - corner[0][0]) * (corner[1][1] - corner[0][1]));
        tail += 0.5 * area * std::exp(-2.0 * truncation);
    }

    auto kernel = [&](std::mt19937_64& rng, std::uint64_t count) {
        std::normal_distribution<double> nd(0.0, 1.0);
        BlockSums r;
        for (std::uint64_t s = 0; s < count; ++s) {
            double g[3];
            double g2 = 0.0;
            for (double& x : g) {
                x = nd(rng);
                g2 += x * x;
            }
            double gn = std::sqrt(g2);
            double R = truncation;
            for (int i = 0; i < 4; ++i) {
                double b = (Bm[i][0] * g[0] + Bm[i][1] * g[1] + Bm[i][2] * g[2]) / gn;
                if (b < -a[i]) R = std::min(R, std::atanh(-a[i] / b));
            }
            double f = (std::sinh(2 * R) - 2 * R) / 4.0;
            r.sum += f;
            r.sum2 += f * f;
        }
        return r;
    };
    VolumeEstimate out = finish(run_blocks(opt, kernel), opt.samples, 4.0 * kPi, Curvature::Hyperbolic);
    out.truncated_tail = tail;
    out.value += tail;
    out.error_bound += tail;
    return out;
}

std::array<double, 3> linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw InvalidInput("linear_fit: need at least two points");
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (!(sxx > 0)) throw InvalidInput("linear_fit: abscissae are all equal");
    double b = sxy / sxx;
    double r2 = syy > 0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return {my - b * mx, b, r2};
}

std::vector<HolderRow> holder_probe(const AngleVector& start, const AngleVector& end, Curvature K, int steps,
                                    double quadrature_tol) {
    if (steps < 2) throw InvalidInput("holder_probe: need at least two steps");
    if (start.size() != end.size() || start.dimension() != 3)
        throw InvalidInput("holder_probe: start and end must be tetrahedron angle vectors");
    std::vector<HolderRow> rows;
    for (int k = 0; k < steps; ++k) {
        double f = std::ldexp(1.0, -k);
        AngleVector th = end;
        double dist2 = 0.0;
        for (std::size_t s = 0; s < th.size(); ++s) {
            th[s] = end[s] + f * (start[s] - end[s]);
            dist2 += (th[s] - end[s]) * (th[s] - end[s]);
        }
        HolderRow row;
        try {
            row.volume = volume_tetra(th, K, quadrature_tol).value;
            auto g = schlafli_gradient(th, K);
            double gn = 0.0;
            for (double x : g) {
                gn += x * x;
                row.grad_max = std::max(row.grad_max, std::fabs(x));
            }
            row.grad_norm = std::sqrt(gn);
            row.margin = boundary_margin(th);
        } catch (const DomainError& e) {
            throw DomainError("holder_probe: step " + std::to_string(k) + " left the compact class: " + e.what(), k);
        }
        row.step = std::sqrt(dist2);
        rows.push_back(row);
    }
    return rows;
}

HolderFit fit_holder(const std::vector<HolderRow>& rows) {
    HolderFit fit;
    std::vector<double> lx, ly, gx, gy;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        fit.grad_sup = std::max(fit.grad_sup, rows[k].grad_max);
        if (rows[k].margin > 0) {
            gx.push_back(std::fabs(std::log(rows[k].margin)));
            gy.push_back(rows[k].grad_norm);
        }
        if (k + 1 < rows.size()) {
            double dv = std::fabs(rows[k].volume - rows[k + 1].volume);
            double dt = std::fabs(rows[k].step - rows[k + 1].step);
            if (dv > 0 && dt > 0) {
                lx.push_back(std::log(dt));
                ly.push_back(std::log(dv));
            }
        }
    }
    if (lx.size() >= 2) fit.holder_exponent = linear_fit(lx, ly)[1];
    if (gx.size() >= 2) {
        auto f = linear_fit(gx, gy);
        fit.log_slope = f[1];
        fit.log_r2 = f[2];
    }
    return fit;
}

AngleVector random_compact_angles(Curvature K, std::uint64_t seed, double min_margin) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        VertexMatrix V;
        V.curvature = K;
        V.W = Matrix(4, 4);
        for (int j = 0; j < 4; ++j) {
            Eigen::Vector4d x;
            if (K == Curvature::Spherical) {
                for (int k = 0; k < 4; ++k) x(k) = g(rng);
                x.normalize();
            } else {
                Eigen::Vector3d u(g(rng), g(rng), g(rng));
                u *= 0.8 * std::cbrt(unit(rng)) / u.norm();
                double a = 1.0 / std::sqrt(1.0 - u.squaredNorm());
                x << a, a * u(0), a * u(1), a * u(2);
            }
            V.W.col(j) = x;
        }
        AngleVector theta;
        try {
            theta = angles_from_vertices(V);
        } catch (const InvalidInput&) {
            continue;
        }
        bool ok = std::all_of(theta.values().begin(), theta.values().end(),
                              [](double a) { return a >= 0.1 && a <= kPi - 0.1; });
        if (!ok) continue;
        SimplexKind kind = classify(gram_from_angles(theta)).kind;
        if (kind != (K == Curvature::Spherical ? SimplexKind::Spherical : SimplexKind::HyperbolicCompact)) continue;
        if (boundary_margin(theta) < min_margin) continue;
        return theta;
    }
    throw DomainError("random_compact_angles: no instance found");
}

IdealExtrapolation extrapolate_regular_ideal(int levels, double quadrature_tol) {
    if (levels < 2) throw InvalidInput("extrapolate_regular_ideal: need at least two levels");
    IdealExtrapolation r;
    for (int k = 0; k < levels; ++k) {
        double th = kPi / 3.0 + std::ldexp(0.05, -k);
        r.thetas.push_back(th);
        r.volumes.push_back(volume_tetra(AngleVector::uniform(3, th), Curvature::Hyperbolic, quadrature_tol).value);
        if (k > 0) r.extrapolated.push_back(2.0 * r.volumes[k] - r.volumes[k - 1]);
    }
    r.limit = r.extrapolated.back();
    return r;
}

}  // namespace curvlab
