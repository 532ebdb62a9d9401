#pragma once

// Angle Gram matrices of n-simplices in S^n / H^n.
//
// Slot (i, j) holds the dihedral angle between the faces opposite vertices i
// and j; that angle sits along the codimension-2 face spanned by all the other
// vertices (for n = 3, the edge {k, l} with {i, j, k, l} = {0, 1, 2, 3}).

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "curvlab/common.hpp"

namespace curvlab {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Dihedral angles theta_ij, 0 <= i < j <= n, stored in lexicographic order
/// (0,1), (0,2), ..., (0,n), (1,2), ..., (n-1,n).
class AngleVector {
public:
    AngleVector() = default;
    /// Throws InvalidInput unless values.size() == n(n+1)/2 and n >= 2.
    AngleVector(int n, std::vector<double> values);

    static AngleVector uniform(int n, double theta);
    /// Recovers n from the slot count (6 -> 3, 3 -> 2, 10 -> 4, ...).
    static AngleVector from_values(std::vector<double> values);

    int dimension() const { return n_; }
    std::size_t size() const { return v_.size(); }
    const std::vector<double>& values() const { return v_; }

    double operator()(int i, int j) const { return v_[slot(i, j)]; }
    double& operator()(int i, int j) { return v_[slot(i, j)]; }
    double operator[](std::size_t k) const { return v_[k]; }
    double& operator[](std::size_t k) { return v_[k]; }

    std::size_t slot(int i, int j) const;
    std::pair<int, int> pair(std::size_t slot) const;

    /// Relabels vertices: result(perm[i], perm[j]) = this(i, j).
    AngleVector permuted(const std::vector<int>& perm) const;

private:
    int n_ = 0;
    std::vector<double> v_;
};

/// The edge {k, l} carrying the dihedral angle of slot (i, j) in a tetrahedron.
std::pair<int, int> opposite_edge(int i, int j);

enum class SimplexKind { Spherical, HyperbolicCompact, HyperbolicIdeal, EuclideanBoundary, Inadmissible };

std::string to_string(SimplexKind k);

struct SimplexClass {
    SimplexKind kind = SimplexKind::Inadmissible;
    std::vector<int> ideal_vertices;  // HyperbolicIdeal only
};

/// Spectrum and cofactor data behind a classification.
struct GramDiagnostics {
    SimplexClass cls;
    Vector eigenvalues;  // ascending
    Matrix cofactors;
    double determinant = 0.0;
};

/// G_ii = 1, G_ij = -cos theta_ij. Throws InvalidInput for angles outside (0, pi).
Matrix gram_from_angles(const AngleVector& theta);

/// Cofactor (i, j) of G: (-1)^{i+j} times the minor with row i and column j removed.
Matrix cofactor_matrix(const Matrix& G);

SimplexClass classify(const Matrix& G);
GramDiagnostics diagnose(const Matrix& G);

/// Pairwise vertex distances. Hyperbolic: cosh d_ij = c_ij / sqrt(c_ii c_jj).
/// Spherical: cos d_ij from explicit unit vertices. Throws DomainError (with
/// the offending vertex index when known) for any other class.
Matrix edge_lengths(const Matrix& G);

/// Vertices as columns of W (unit vectors in R^{n+1} or points on the upper
/// hyperboloid), together with the face normals S (column i is the unit
/// normal of the face opposite vertex i, pointing into the simplex).
struct VertexMatrix {
    Curvature curvature = Curvature::Spherical;
    Matrix W;
    Matrix S;
};

VertexMatrix vertices_from_gram(const Matrix& G);

/// Dihedral angles from vertex columns; theta_ij = arccos(-<n_i, n_j>).
/// Throws InvalidInput for a degenerate simplex.
AngleVector angles_from_vertices(const VertexMatrix& W);

/// Spherical: smallest eigenvalue of G. Hyperbolic: min(min_i c_ii, -det G).
/// Zero on the Euclidean boundary; throws DomainError for inadmissible input.
double boundary_margin(const AngleVector& theta);

/// Minkowski form matrix diag(-1, 1, ..., 1) of size m.
Matrix minkowski_form(int m);

}  // namespace curvlab
