#include "curvlab/lorentz.hpp"

#include <cmath>
#include <limits>

namespace curvlab {

double minkowski_dot(const MinkowskiVector& x, const MinkowskiVector& y) {
    return to_double(mdot(widen(x), widen(y)));
}

QVec4 normalize_timelike(const QVec4& x) {
    Quad m = mdot(x, x);
    if (!(m < 0)) throw InvalidInput("normalize_timelike: vector is not timelike");
    QVec4 q = x / sqrt(-m);
    if (q[0] < 0) q = -q;
    return q;
}

QVec4 normalize_spacelike(const QVec4& x) {
    Quad m = mdot(x, x);
    if (!(m > 0)) throw InvalidInput("normalize_spacelike: vector is not spacelike");
    return x / sqrt(m);
}

namespace {

// Checks |<x,x> - target| against the relative tolerance and returns the
// double rounding of the normalized vector.
MinkowskiVector checked_unit(const MinkowskiVector& x, int target, const char* what) {
    for (int i = 0; i < 4; ++i)
        if (!std::isfinite(x[i])) throw InvalidInput(std::string(what) + ": non-finite coordinate");
    QVec4 q = widen(x);
    Quad m = mdot(q, q);
    double scale = to_double(euclidean_norm2(q));
    double dev = std::fabs(to_double(m - Quad(target)));
    if (dev > kRenormalizeTol * scale)
        throw InvalidInput(std::string(what) + ": norm deviates from " + std::to_string(target) +
                           " by " + std::to_string(dev));
    // Already unit to double precision: keep the caller's coordinates.
    if (dev <= 8 * std::numeric_limits<double>::epsilon() * scale) return x;
    if (target < 0) return narrow(q / sqrt(-m));
    return narrow(q / sqrt(m));
}

}  // namespace

HPoint::HPoint(const MinkowskiVector& x) {
    if (!(x[0] > 0)) throw InvalidInput("HPoint: first coordinate must be positive");
    x_ = checked_unit(x, -1, "HPoint");
    q_ = normalize_timelike(widen(x_));
}

HPoint HPoint::from_quad(const QVec4& x) {
    QVec4 q = normalize_timelike(x);
    HPoint p(narrow(q));
    p.q_ = q;
    return p;
}

HPlane::HPlane(const MinkowskiVector& n) {
    n_ = checked_unit(n, 1, "HPlane");
    q_ = normalize_spacelike(widen(n_));
}

HPlane HPlane::from_quad(const QVec4& n) {
    QVec4 q = normalize_spacelike(n);
    HPlane h(narrow(q));
    h.q_ = q;
    return h;
}

MinkowskiVector AxisTranslation::apply(const MinkowskiVector& v) const {
    return narrow(apply(widen(v)));
}

QVec4 AxisTranslation::apply(const QVec4& v) const {
    Quad e = exp(Quad(r_)), c = (e + 1 / e) / 2, s = (e - 1 / e) / 2;
    QVec4 out = v;
    out[0] = c * v[0] + s * v[1];
    out[1] = s * v[0] + c * v[1];
    return out;
}

LorentzTransform::LorentzTransform() : m_{} {
    for (int i = 0; i < 4; ++i) m_[i][i] = 1.0;
}

LorentzTransform LorentzTransform::rotation(const std::array<double, 3>& axis, double angle) {
    double n = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
    if (!(n > 0)) throw InvalidInput("rotation: zero axis");
    double k[3] = {axis[0] / n, axis[1] / n, axis[2] / n};
    double c = std::cos(angle), s = std::sin(angle);
    std::array<std::array<double, 4>, 4> m{};
    m[0][0] = 1.0;
    const double eps[3][3][3] = {{{0, 0, 0}, {0, 0, 1}, {0, -1, 0}},
                                 {{0, 0, -1}, {0, 0, 0}, {1, 0, 0}},
                                 {{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double cross = 0.0;
            for (int l = 0; l < 3; ++l) cross -= eps[i][j][l] * k[l];
            m[i + 1][j + 1] = (i == j ? c : 0.0) + (1 - c) * k[i] * k[j] + s * cross;
        }
    return LorentzTransform(m);
}

LorentzTransform LorentzTransform::boost(const std::array<double, 3>& dir, double r) {
    double n = std::sqrt(dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2]);
    if (!(n > 0)) throw InvalidInput("boost: zero direction");
    double d[3] = {dir[0] / n, dir[1] / n, dir[2] / n};
    double c = std::cosh(r), s = std::sinh(r);
    std::array<std::array<double, 4>, 4> m{};
    m[0][0] = c;
    for (int i = 0; i < 3; ++i) {
        m[0][i + 1] = m[i + 1][0] = s * d[i];
        for (int j = 0; j < 3; ++j) m[i + 1][j + 1] = (i == j ? 1.0 : 0.0) + (c - 1) * d[i] * d[j];
    }
    return LorentzTransform(m);
}

LorentzTransform LorentzTransform::translation(const AxisTranslation& t) {
    return boost({1.0, 0.0, 0.0}, t.length());
}

LorentzTransform LorentzTransform::operator*(const LorentzTransform& rhs) const {
    std::array<std::array<double, 4>, 4> out{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Quad acc = 0;
            for (int k = 0; k < 4; ++k) acc += Quad(m_[i][k]) * Quad(rhs.m_[k][j]);
            out[i][j] = to_double(acc);
        }
    return LorentzTransform(out);
}

MinkowskiVector LorentzTransform::apply(const MinkowskiVector& v) const {
    return narrow(apply(widen(v)));
}

QVec4 LorentzTransform::apply(const QVec4& v) const {
    QVec4 out;
    for (int i = 0; i < 4; ++i) {
        Quad acc = 0;
        for (int k = 0; k < 4; ++k) acc += Quad(m_[i][k]) * v[k];
        out[i] = acc;
    }
    return out;
}

Quad hyperbolic_distance_q(const QVec4& p, const QVec4& q) {
    QVec4 d = p - q;
    Quad s = mdot(d, d);
    if (s < 0) s = 0;
    // 2 asinh(x / 2) with x = |p - q|; boost's float128 lacks asinh.
    Quad x = sqrt(s) / 2;
    return 2 * log(x + sqrt(1 + x * x));
}

double hyperbolic_distance(const QVec4& p, const QVec4& q) { return to_double(hyperbolic_distance_q(p, q)); }

double hyperbolic_distance(const HPoint& p, const HPoint& q) {
    return hyperbolic_distance(p.exact(), q.exact());
}

double hyperbolic_distance(const MinkowskiVector& p, const MinkowskiVector& q) {
    HPoint a(p), b(q);
    Quad c = -mdot(a.exact(), b.exact());
    if (c < Quad(1) - Quad(1e-12) * Quad(euclidean_norm2(p) + euclidean_norm2(q)))
        throw InvalidInput("hyperbolic_distance: -<p,q> < 1");
    return hyperbolic_distance(a, b);
}

KleinPoint klein_embed(const HPoint& p) {
    const QVec4& q = p.exact();
    return {to_double(q[1] / q[0]), to_double(q[2] / q[0]), to_double(q[3] / q[0])};
}

HPoint klein_lift(const KleinPoint& u) {
    Quad u2 = Quad(u[0]) * u[0] + Quad(u[1]) * u[1] + Quad(u[2]) * u[2];
    if (!(u2 < 1)) throw DomainError("klein_lift: point not inside the unit ball");
    Quad s = 1 / sqrt(1 - u2);
    return HPoint::from_quad(QVec4{{s, s * u[0], s * u[1], s * u[2]}});
}

Quad plane_conditioning(const QVec4& a, const QVec4& b, const QVec4& c) {
    QVec4 n = minkowski_cross(a, b, c);
    Quad nn = mdot(n, n);
    if (!(nn > 0)) return 0;
    return sqrt(nn / (euclidean_norm2(a) * euclidean_norm2(b) * euclidean_norm2(c)));
}

std::optional<QVec4> plane_normal(const QVec4& a, const QVec4& b, const QVec4& c) {
    if (!(plane_conditioning(a, b, c) > Quad(kCollinearTol))) return std::nullopt;
    QVec4 n = minkowski_cross(a, b, c);
    return n / sqrt(mdot(n, n));
}

HPlane plane_through(const HPoint& a, const HPoint& b, const HPoint& c) {
    auto n = plane_normal(a.exact(), b.exact(), c.exact());
    if (!n) throw InvalidInput("plane_through: points are collinear");
    return HPlane::from_quad(*n);
}

QVec4 tangent_toward(const QVec4& p, const QVec4& q) { return q + mdot(p, q) * p; }

Quad spacelike_angle_q(const QVec4& u, const QVec4& v) {
    QVec4 d = u - v, s = u + v;
    Quad dd = mdot(d, d), ss = mdot(s, s);
    if (dd < 0) dd = 0;
    if (ss < 0) ss = 0;
    return 2 * atan2(sqrt(dd), sqrt(ss));
}

double spacelike_angle(const QVec4& u, const QVec4& v) { return to_double(spacelike_angle_q(u, v)); }

double angle_at(const QVec4& p, const QVec4& a, const QVec4& b) {
    return spacelike_angle(normalize_spacelike(tangent_toward(p, a)),
                           normalize_spacelike(tangent_toward(p, b)));
}

}  // namespace curvlab
