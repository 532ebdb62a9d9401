#include "curvlab/simplex_gram.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace curvlab {

namespace {

constexpr double kIdealRelTol = 1e-9;
constexpr double kZeroEig = 1e-10;
constexpr double kSecondEig = 1e-8;

int dimension_from_slots(std::size_t m) {
    for (int n = 1; n < 64; ++n) {
        std::size_t s = static_cast<std::size_t>(n) * (n + 1) / 2;
        if (s == m) return n;
        if (s > m) break;
    }
    return -1;
}

// 2 atan2(|a - b|, |a + b|) under the bilinear form B.
double form_angle(const Vector& a, const Vector& b, const Matrix& B) {
    Vector d = a - b, s = a + b;
    double dd = std::max(0.0, d.dot(B * d));
    double ss = std::max(0.0, s.dot(B * s));
    return 2.0 * std::atan2(std::sqrt(dd), std::sqrt(ss));
}

}  // namespace

AngleVector::AngleVector(int n, std::vector<double> values) : n_(n), v_(std::move(values)) {
    if (n < 2) throw InvalidInput("AngleVector: dimension must be at least 2");
    if (v_.size() != static_cast<std::size_t>(n) * (n + 1) / 2)
        throw InvalidInput("AngleVector: expected " + std::to_string(n * (n + 1) / 2) + " angles, got " +
                           std::to_string(v_.size()));
}

AngleVector AngleVector::uniform(int n, double theta) {
    return AngleVector(n, std::vector<double>(static_cast<std::size_t>(n) * (n + 1) / 2, theta));
}

AngleVector AngleVector::from_values(std::vector<double> values) {
    int n = dimension_from_slots(values.size());
    if (n < 2) throw InvalidInput("AngleVector: " + std::to_string(values.size()) + " angles is not n(n+1)/2 for n >= 2");
    return AngleVector(n, std::move(values));
}

std::size_t AngleVector::slot(int i, int j) const {
    if (i == j || i < 0 || j < 0 || i > n_ || j > n_) throw InvalidInput("AngleVector: bad slot");
    if (i > j) std::swap(i, j);
    // Slots before row i: sum_{r<i} (n - r).
    return static_cast<std::size_t>(i * n_ - i * (i - 1) / 2 + (j - i - 1));
}

std::pair<int, int> AngleVector::pair(std::size_t s) const {
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j <= n_; ++j)
            if (slot(i, j) == s) return {i, j};
    throw InvalidInput("AngleVector: slot out of range");
}

AngleVector AngleVector::permuted(const std::vector<int>& perm) const {
    if (perm.size() != static_cast<std::size_t>(n_ + 1)) throw InvalidInput("permuted: wrong permutation size");
    AngleVector out = *this;
    for (int i = 0; i <= n_; ++i)
        for (int j = i + 1; j <= n_; ++j) out(perm[i], perm[j]) = (*this)(i, j);
    return out;
}

std::pair<int, int> opposite_edge(int i, int j) {
    int rest[2];
    int k = 0;
    for (int v = 0; v < 4; ++v)
        if (v != i && v != j) rest[k++] = v;
    return {rest[0], rest[1]};
}

std::string to_string(SimplexKind k) {
    switch (k) {
        case SimplexKind::Spherical: return "Spherical";
        case SimplexKind::HyperbolicCompact: return "HyperbolicCompact";
        case SimplexKind::HyperbolicIdeal: return "HyperbolicIdeal";
        case SimplexKind::EuclideanBoundary: return "EuclideanBoundary";
        case SimplexKind::Inadmissible: return "Inadmissible";
    }
    return "?";
}

Matrix minkowski_form(int m) {
    Matrix J = Matrix::Identity(m, m);
    J(0, 0) = -1.0;
    return J;
}

Matrix gram_from_angles(const AngleVector& theta) {
    int m = theta.dimension() + 1;
    Matrix G = Matrix::Identity(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            double t = theta(i, j);
            if (!(t > 0.0 && t < kPi))
                throw InvalidInput("gram_from_angles: angle (" + std::to_string(i) + "," + std::to_string(j) +
                                   ") = " + std::to_string(t) + " outside (0, pi)");
            G(i, j) = G(j, i) = -std::cos(t);
        }
    return G;
}

Matrix cofactor_matrix(const Matrix& G) {
    const Eigen::Index m = G.rows();
    Matrix C(m, m);
    if (m == 1) {
        C(0, 0) = 1.0;
        return C;
    }
    Matrix minor(m - 1, m - 1);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j) {
            for (Eigen::Index r = 0, rr = 0; r < m; ++r) {
                if (r == i) continue;
                for (Eigen::Index c = 0, cc = 0; c < m; ++c) {
                    if (c == j) continue;
                    minor(rr, cc++) = G(r, c);
                }
                ++rr;
            }
            double d = minor.fullPivLu().determinant();
            C(i, j) = ((i + j) % 2 == 0) ? d : -d;
        }
    return C;
}

GramDiagnostics diagnose(const Matrix& G) {
    GramDiagnostics out;
    const Eigen::Index m = G.rows();
    if (m < 3 || G.cols() != m) throw InvalidInput("diagnose: Gram matrix must be square of size >= 3");
    Eigen::SelfAdjointEigenSolver<Matrix> es(G, Eigen::EigenvaluesOnly);
    out.eigenvalues = es.eigenvalues();
    out.cofactors = cofactor_matrix(G);
    out.determinant = G.fullPivLu().determinant();

    const Vector& ev = out.eigenvalues;
    const Matrix& C = out.cofactors;
    double cmax = C.cwiseAbs().maxCoeff();

    auto& cls = out.cls;
    if (ev(0) > kZeroEig) {
        cls.kind = SimplexKind::Spherical;
        return out;
    }
    if (std::fabs(ev(0)) < kZeroEig) {
        bool diag_pos = (C.diagonal().array() > 0.0).all();
        cls.kind = (ev(1) > kSecondEig && diag_pos) ? SimplexKind::EuclideanBoundary : SimplexKind::Inadmissible;
        return out;
    }
    if (ev(1) <= kZeroEig) {
        cls.kind = SimplexKind::Inadmissible;
        return out;
    }
    // Signature (n, 1).
    bool ok = true;
    for (Eigen::Index i = 0; i < m && ok; ++i)
        for (Eigen::Index j = 0; j < m && ok; ++j) {
            if (i == j) {
                if (std::fabs(C(i, i)) < kIdealRelTol * cmax)
                    cls.ideal_vertices.push_back(static_cast<int>(i));
                else if (C(i, i) < 0)
                    ok = false;
            } else if (!(C(i, j) > 0)) {
                ok = false;
            }
        }
    if (!ok) {
        cls.ideal_vertices.clear();
        cls.kind = SimplexKind::Inadmissible;
    } else {
        cls.kind = cls.ideal_vertices.empty() ? SimplexKind::HyperbolicCompact : SimplexKind::HyperbolicIdeal;
    }
    return out;
}

SimplexClass classify(const Matrix& G) { return diagnose(G).cls; }

VertexMatrix vertices_from_gram(const Matrix& G) {
    SimplexKind kind = classify(G).kind;
    const Eigen::Index m = G.rows();
    Eigen::SelfAdjointEigenSolver<Matrix> es(G);
    const Vector& lam = es.eigenvalues();
    const Matrix& Q = es.eigenvectors();
    VertexMatrix out;
    if (kind == SimplexKind::Spherical) {
        out.curvature = Curvature::Spherical;
        out.S = lam.cwiseSqrt().asDiagonal() * Q.transpose();
        out.W = out.S.transpose().inverse();
        for (Eigen::Index j = 0; j < m; ++j) out.W.col(j).normalize();
        return out;
    }
    if (kind != SimplexKind::HyperbolicCompact)
        throw DomainError("vertices_from_gram: class " + to_string(kind) + " has no finite vertex realization");
    out.curvature = Curvature::Hyperbolic;
    // Ascending order puts the single negative eigenvalue in the timelike slot.
    Matrix J = minkowski_form(static_cast<int>(m));
    out.S = lam.cwiseAbs().cwiseSqrt().asDiagonal() * Q.transpose();
    out.W = (out.S.transpose() * J).inverse();
    for (Eigen::Index j = 0; j < m; ++j) {
        double q = out.W.col(j).dot(J * out.W.col(j));
        if (!(q < 0)) throw InternalError("vertices_from_gram: vertex is not timelike");
        out.W.col(j) /= std::sqrt(-q);
    }
    if (out.W(0, 0) < 0) {
        out.W = -out.W;
        out.S = -out.S;
    }
    return out;
}

AngleVector angles_from_vertices(const VertexMatrix& V) {
    const Eigen::Index m = V.W.rows();
    if (V.W.cols() != m || m < 3) throw InvalidInput("angles_from_vertices: vertex matrix must be square, size >= 3");
    Matrix B = V.curvature == Curvature::Hyperbolic ? minkowski_form(static_cast<int>(m)) : Matrix::Identity(m, m);
    Matrix A = V.W.transpose() * B;
    Eigen::FullPivLU<Matrix> lu(A);
    if (!lu.isInvertible() || std::fabs(lu.rcond()) < 1e-14)
        throw InvalidInput("angles_from_vertices: degenerate simplex");
    Matrix N = lu.inverse();
    for (Eigen::Index i = 0; i < m; ++i) {
        double q = N.col(i).dot(B * N.col(i));
        if (!(q > 0)) throw InvalidInput("angles_from_vertices: face normal is not spacelike");
        N.col(i) /= std::sqrt(q);
    }
    int n = static_cast<int>(m) - 1;
    AngleVector out = AngleVector::uniform(n, 0.0);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) out(i, j) = kPi - form_angle(N.col(i), N.col(j), B);
    return out;
}

Matrix edge_lengths(const Matrix& G) {
    GramDiagnostics d = diagnose(G);
    const Eigen::Index m = G.rows();
    Matrix L = Matrix::Zero(m, m);
    switch (d.cls.kind) {
        case SimplexKind::Spherical: {
            VertexMatrix V = vertices_from_gram(G);
            Matrix I = Matrix::Identity(m, m);
            for (Eigen::Index i = 0; i < m; ++i)
                for (Eigen::Index j = i + 1; j < m; ++j) L(i, j) = L(j, i) = form_angle(V.W.col(i), V.W.col(j), I);
            return L;
        }
        case SimplexKind::HyperbolicCompact: {
            const Matrix& C = d.cofactors;
            for (Eigen::Index i = 0; i < m; ++i)
                for (Eigen::Index j = i + 1; j < m; ++j) {
                    double ch = C(i, j) / std::sqrt(C(i, i) * C(j, j));
                    L(i, j) = L(j, i) = std::acosh(std::max(1.0, ch));
                }
            return L;
        }
        case SimplexKind::HyperbolicIdeal:
            throw DomainError("edge_lengths: ideal vertex, c_ii = 0", d.cls.ideal_vertices.front());
        default: {
            for (Eigen::Index i = 0; i < m; ++i)
                if (!(d.cofactors(i, i) > 0))
                    throw DomainError("edge_lengths: non-compact vertex, c_ii <= 0", static_cast<int>(i));
            throw DomainError("edge_lengths: class " + to_string(d.cls.kind) + " has no edge lengths");
        }
    }
}

double boundary_margin(const AngleVector& theta) {
    GramDiagnostics d = diagnose(gram_from_angles(theta));
    switch (d.cls.kind) {
        case SimplexKind::Spherical: return d.eigenvalues(0);
        case SimplexKind::HyperbolicCompact:
            return std::min(d.cofactors.diagonal().minCoeff(), -d.determinant);
        case SimplexKind::HyperbolicIdeal: return 0.0;
        case SimplexKind::EuclideanBoundary: return 0.0;
        default: break;
    }
    throw DomainError("boundary_margin: inadmissible angles");
}

}  // namespace curvlab
