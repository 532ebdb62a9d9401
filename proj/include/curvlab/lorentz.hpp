#pragma once

// Minkowski-space linear algebra for the hyperboloid model of H^3.
//
// Signature convention: <x, y> = -x0*y0 + x1*y1 + x2*y2 + x3*y3 with the first
// coordinate timelike. H^3 is the sheet <x,x> = -1, x0 > 0; a plane is stored
// by its unit spacelike normal (<n,n> = +1).
//
// Points far from the origin (hyperbolic distance R) have coordinates of size
// e^R, and Minkowski products of nearby points cancel catastrophically. Every
// product is therefore evaluated in binary128 and only rounded at the end.

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>

#include <boost/multiprecision/float128.hpp>

#include "curvlab/common.hpp"

namespace curvlab {

using Quad = boost::multiprecision::float128;

template <class T>
struct BasicVec4 {
    std::array<T, 4> c{};

    constexpr T& operator[](std::size_t i) { return c[i]; }
    constexpr const T& operator[](std::size_t i) const { return c[i]; }

    friend BasicVec4 operator+(BasicVec4 a, const BasicVec4& b) {
        for (std::size_t i = 0; i < 4; ++i) a.c[i] += b.c[i];
        return a;
    }
    friend BasicVec4 operator-(BasicVec4 a, const BasicVec4& b) {
        for (std::size_t i = 0; i < 4; ++i) a.c[i] -= b.c[i];
        return a;
    }
    friend BasicVec4 operator-(BasicVec4 a) {
        for (auto& v : a.c) v = -v;
        return a;
    }
    friend BasicVec4 operator*(const T& s, BasicVec4 a) {
        for (auto& v : a.c) v *= s;
        return a;
    }
    friend BasicVec4 operator/(BasicVec4 a, const T& s) {
        for (auto& v : a.c) v /= s;
        return a;
    }
    friend bool operator==(const BasicVec4&, const BasicVec4&) = default;
};

using MinkowskiVector = BasicVec4<double>;
using QVec4 = BasicVec4<Quad>;

template <class T>
T mdot(const BasicVec4<T>& x, const BasicVec4<T>& y) {
    return -x[0] * y[0] + x[1] * y[1] + x[2] * y[2] + x[3] * y[3];
}

template <class T>
T euclidean_norm2(const BasicVec4<T>& x) {
    return x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
}

/// n with <n, a> = <n, b> = <n, c> = 0 (unnormalized).
template <class T>
BasicVec4<T> minkowski_cross(const BasicVec4<T>& a, const BasicVec4<T>& b, const BasicVec4<T>& c) {
    auto minor3 = [&](int skip) {
        std::array<int, 3> col{};
        int k = 0;
        for (int j = 0; j < 4; ++j)
            if (j != skip) col[k++] = j;
        const T& a0 = a[col[0]]; const T& a1 = a[col[1]]; const T& a2 = a[col[2]];
        const T& b0 = b[col[0]]; const T& b1 = b[col[1]]; const T& b2 = b[col[2]];
        const T& c0 = c[col[0]]; const T& c1 = c[col[1]]; const T& c2 = c[col[2]];
        return a0 * (b1 * c2 - b2 * c1) - a1 * (b0 * c2 - b2 * c0) + a2 * (b0 * c1 - b1 * c0);
    };
    // Euclidean cofactor vector w satisfies w.x = det[x; a; b; c]; flipping
    // the time component turns it into a Minkowski-orthogonal vector.
    BasicVec4<T> w{{minor3(0), -minor3(1), minor3(2), -minor3(3)}};
    w[0] = -w[0];
    return w;
}

inline QVec4 widen(const MinkowskiVector& v) {
    return QVec4{{Quad(v[0]), Quad(v[1]), Quad(v[2]), Quad(v[3])}};
}

inline MinkowskiVector narrow(const QVec4& v) {
    return MinkowskiVector{{static_cast<double>(v[0]), static_cast<double>(v[1]),
                            static_cast<double>(v[2]), static_cast<double>(v[3])}};
}

inline double to_double(const Quad& q) { return static_cast<double>(q); }

/// -x0*y0 + x1*y1 + x2*y2 + x3*y3, accumulated in binary128.
double minkowski_dot(const MinkowskiVector& x, const MinkowskiVector& y);

/// Relative tolerance for the unit-norm invariants, measured against the
/// squared Euclidean norm of the stored coordinates.
inline constexpr double kRenormalizeTol = 1e-8;


/// A point of H^3. Points built by from_quad keep their quad representative;
/// otherwise it is the normalization of the stored double coordinates.
class HPoint {
public:
    /// Renormalizes deviations below kRenormalizeTol, throws InvalidInput otherwise.
    explicit HPoint(const MinkowskiVector& x);

    static HPoint from_quad(const QVec4& x);
    static HPoint origin() { return HPoint(MinkowskiVector{{1.0, 0.0, 0.0, 0.0}}); }

    const MinkowskiVector& coords() const { return x_; }
    const QVec4& exact() const { return q_; }
    double operator[](std::size_t i) const { return x_[i]; }

private:
    MinkowskiVector x_;
    QVec4 q_;
};

/// A totally geodesic plane, stored by unit spacelike normal. The sign picks a
/// side: points with <n, x> > 0 are on the positive side.
class HPlane {
public:
    explicit HPlane(const MinkowskiVector& n);

    static HPlane from_quad(const QVec4& n);

    const MinkowskiVector& normal() const { return n_; }
    const QVec4& exact() const { return q_; }
    HPlane flipped() const { return HPlane(-n_); }

private:
    MinkowskiVector n_;
    QVec4 q_;
};

/// Normalizes a timelike vector onto the upper sheet (binary128).
QVec4 normalize_timelike(const QVec4& x);
/// Normalizes a spacelike vector to <n,n> = 1 (binary128).
QVec4 normalize_spacelike(const QVec4& x);

/// Translation of length r along the geodesic through (1,0,0,0) in the x1
/// direction: the 4x4 matrix [[cosh r, sinh r], [sinh r, cosh r]] (+) I.
class AxisTranslation {
public:
    explicit AxisTranslation(double r) : r_(r) {}

    double length() const { return r_; }
    AxisTranslation inverse() const { return AxisTranslation(-r_); }
    AxisTranslation then(const AxisTranslation& next) const { return AxisTranslation(r_ + next.r_); }

    MinkowskiVector apply(const MinkowskiVector& v) const;
    QVec4 apply(const QVec4& v) const;
    HPoint apply(const HPoint& p) const { return HPoint::from_quad(apply(p.exact())); }
    HPlane apply(const HPlane& h) const { return HPlane::from_quad(apply(h.exact())); }

private:
    double r_;
};

/// General orthochronous Lorentz transformation (an isometry of H^3).
class LorentzTransform {
public:
    LorentzTransform();  // identity
    explicit LorentzTransform(const std::array<std::array<double, 4>, 4>& m) : m_(m) {}

    static LorentzTransform rotation(const std::array<double, 3>& axis, double angle);
    /// Boost moving the origin a distance r in the unit spatial direction dir.
    static LorentzTransform boost(const std::array<double, 3>& dir, double r);
    static LorentzTransform translation(const AxisTranslation& t);

    LorentzTransform operator*(const LorentzTransform& rhs) const;
    MinkowskiVector apply(const MinkowskiVector& v) const;
    QVec4 apply(const QVec4& v) const;
    HPoint apply(const HPoint& p) const { return HPoint::from_quad(apply(p.exact())); }
    HPlane apply(const HPlane& h) const { return HPlane::from_quad(apply(h.exact())); }

    const std::array<std::array<double, 4>, 4>& matrix() const { return m_; }

private:
    std::array<std::array<double, 4>, 4> m_;
};

/// arccosh(-<p,q>), evaluated as 2 asinh(|p-q|/2) for accuracy at short range.
double hyperbolic_distance(const HPoint& p, const HPoint& q);
/// Same on raw vectors; throws InvalidInput when -<p,q> < 1 beyond tolerance.
double hyperbolic_distance(const MinkowskiVector& p, const MinkowskiVector& q);
/// Distance between two normalized quad points.
double hyperbolic_distance(const QVec4& p, const QVec4& q);
Quad hyperbolic_distance_q(const QVec4& p, const QVec4& q);

using KleinPoint = std::array<double, 3>;

KleinPoint klein_embed(const HPoint& p);
/// Throws DomainError when |u| >= 1 (ideal or outside the ball).
HPoint klein_lift(const KleinPoint& u);

/// Plane through three points; throws InvalidInput for a collinear triple.
HPlane plane_through(const HPoint& a, const HPoint& b, const HPoint& c);
/// Quad-level variant on normalized points; nullopt when collinear.
std::optional<QVec4> plane_normal(const QVec4& a, const QVec4& b, const QVec4& c);
/// |minkowski_cross(a,b,c)| over the product of Euclidean norms: rounding
/// noise sits near 1e-34, so values below kCollinearTol mean collinear.
Quad plane_conditioning(const QVec4& a, const QVec4& b, const QVec4& c);
inline constexpr double kCollinearTol = 1e-28;

/// Signed sinh of the distance from x to the plane (positive on the normal side).
inline Quad side_of(const QVec4& plane, const QVec4& x) { return mdot(plane, x); }

/// Tangent vector at p pointing toward q (unnormalized), <t, p> = 0.
QVec4 tangent_toward(const QVec4& p, const QVec4& q);

/// Angle at p between the geodesics toward a and b, in [0, pi].
double angle_at(const QVec4& p, const QVec4& a, const QVec4& b);

/// Angle between unit spacelike vectors u, v with a spacelike span:
/// arccos <u, v>, computed from |u - v| and |u + v| for accuracy.
double spacelike_angle(const QVec4& u, const QVec4& v);
Quad spacelike_angle_q(const QVec4& u, const QVec4& v);

}  // namespace curvlab
