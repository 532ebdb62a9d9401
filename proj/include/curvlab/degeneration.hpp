#pragma once

// Executable versions of the degeneration estimates: the three-plane frame
// lemmas, angle transfer through spherical links, the exterior-angle bound
// for polygons in a disk, the short face cycle of a long polyhedron and its
// quasigeodesic curvature, the log-diameter check, and the meeting ball of a
// simplex.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "curvlab/common.hpp"
#include "curvlab/lorentz.hpp"
#include "curvlab/polar_metric.hpp"
#include "curvlab/polyhedron.hpp"

namespace curvlab {

/// Smallest frame parameter the lemmas are asserted for.
inline constexpr double kT0 = 1.0;

/// Axis L = x1-axis through x0 = (1,0,0,0); P orthogonal to L at x0, P- and
/// P+ at signed distance -t and +t.
struct ThreePlaneFrame {
    double t = 0.0;
    QVec4 x0, P, Pminus, Pplus;  // basepoint and unit normals

    static ThreePlaneFrame standard(double t);
};

struct AngleLemmaResult {
    bool intersects_P = false;
    double cos_angle = 0.0;  // |<Q, P>|
    double bound = 0.0;      // 3 e^-t
    double ab2 = 0.0;        // a^2 + b^2 of the normal
    double ab2_bound = 0.0;  // 3 e^-t as in the proof
    bool pass = false;
};

/// Throws InvalidInput when t < kT0 and DomainError when Q misses P- or P+.
AngleLemmaResult check_angle_lemma(double t, const HPlane& Q);

struct DistanceLemmaResult {
    HPoint point = HPoint::origin();  // M meets P here
    double cosh_d = 0.0;   // cosh d(point, x0)
    double bound = 0.0;    // 4 e^-2t + 1
    double paper_identity = 0.0;  // 1 / sqrt(1 - 2 / cosh^2 t)
    bool pass = false;     // cosh_d < bound and cosh_d <= paper_identity
};

/// M is the line through p and q. Throws InvalidInput when t < kT0 and
/// DomainError when M misses P- or P+.
DistanceLemmaResult check_distance_lemma(double t, const HPoint& p, const HPoint& q);

struct AngleTransfer {
    double alpha = 0.0;       // angle opposite the side A
    double cos_alpha = 0.0;
    double error = 0.0;       // |alpha - A|
    double bound = 0.0;       // 2 eps
    double lower = 0.0;       // cos A - 2 eps^2
    double upper = 0.0;       // cos A + 2 eps^2
    double paper_upper = 0.0; // cos A + eps^2
    bool pass = false;        // error < bound and lower <= cos alpha <= upper
};

/// Spherical triangle with angles beta, gamma adjacent to the side A.
/// Requires |cos beta|, |cos gamma| < eps <= 0.1.
AngleTransfer spherical_angle_transfer(double beta, double gamma, double A, double eps);

struct ExteriorAngleBound {
    double sum = 0.0;    // sum of exterior angles
    double area = 0.0;   // fan-triangulation area
    double bound = 0.0;  // 2 pi cosh r
    bool pass = false;
};

/// Convex polygon (cyclic, in some plane of H^3) within distance r of O.
ExteriorAngleBound exterior_angle_bound(const std::vector<QVec4>& polygon, const QVec4& O, double r);

/// Regular n-gon in H^2 with circumradius R: its interior angle.
double regular_polygon_angle(int n, double R);

struct CyclePath {
    std::vector<int> faces;            // F_1..F_k; edges[i] is shared by faces[i] and faces[i+1 mod k]
    std::vector<int> edges;
    std::vector<double> exterior_dihedral;  // pi - theta per edge
    double dihedral_total = 0.0;       // the theorem's sum
    std::vector<double> section_angles;     // interior angles of the section polygon
    double total = 0.0;                // exterior-angle total of the section polygon
    double bound = 0.0;                // 2 pi + 12 N exp(-rho / 2N)
    double rho = 0.0, t = 0.0;
    int gap = -1;
    bool relaxed = false;              // precondition t >= kT0 was waived
    QVec4 plane, x0;
    std::vector<QVec4> section;        // section point on each edge
    bool pass = false;                 // 2 pi < total < bound and dihedral_total < bound
};

struct ShortCycleOptions {
    bool relaxed = false;  // allow t = rho / 2N < kT0
};

/// Theorem construction: diameter, vertex-free gap nearest the middle, the
/// orthogonal mid-gap plane and its section's face cycle. Throws DomainError
/// when rho < 2 N kT0 (unless relaxed; the message names the required rho)
/// or no gap with two vertices per side exists.
CyclePath find_short_face_cycle(const Polyhedron& P, const ShortCycleOptions& opt = {});

struct FaceCurvature {
    int face = -1;
    bool intersect = false;
    double gamma = 0.0;      // angle of the two edge lines at their meeting point C
    double cos_gamma = 0.0;  // via the law of cosines on ABC
    double cos_bound = 0.0;  // 1 - 8 exp(-rho / 2N)
    bool pass = true;
};

struct QuasigeodesicReport {
    std::vector<FaceCurvature> faces;
    double total = 0.0;
    double bound = 0.0;  // 3 k exp(-rho / N)
    bool pass = false;   // total <= bound and every cos_gamma >= cos_bound
};

QuasigeodesicReport quasigeodesic_curvature(const Polyhedron& P, const CyclePath& cycle);

/// L0 of the log-growth bound.
inline constexpr double kL0 = 1.0;

struct LogGrowth {
    double max_edge = 0.0;
    double proxy = 0.0;   // boundary_proximity
    double bound = 0.0;   // max(L0, -2N log(proxy / 12N)); NaN when proxy <= 0
    bool pass = false;
};

LogGrowth loggrowth_check(const Polyhedron& P, Exec exec = Exec::Parallel);

struct MeetingBall {
    QVec4 center;
    double radius = 0.0;
    std::vector<double> facet_distances;  // distance from center to each facet plane
    double paper_constant = 0.0;          // log 2 / 2
    double ideal_inradius = 0.0;          // log 3 / 2
};

/// One generated polyhedron of a degeneration sweep.
struct ScanRow {
    int N = 0;
    double rho = 0.0;  // requested diameter
    int trial = 0;
    std::uint64_t seed = 0;
    bool generated = false;
    std::string error;  // generator or precondition failure
    double diameter = 0.0;
    int faces = 0, edges = 0;
    int cycle_length = 0;
    double cycle_total = 0.0, cycle_bound = 0.0, dihedral_total = 0.0;
    double curvature_total = 0.0, curvature_bound = 0.0;
    int intersecting = 0;  // faces whose two cycle edges meet
    bool cos_ok = false;
    double max_edge = 0.0, proximity = 0.0, log_bound = 0.0;
    bool degen_pass = false, quasig_pass = false, log_pass = false;
};

std::uint64_t scan_seed(std::uint64_t seed, int N, double rho, int trial);

ScanRow scan_one(int N, double rho, int trial, std::uint64_t seed, bool relaxed = false);

/// Rows in (rho, trial) order regardless of the execution mode.
std::vector<ScanRow> scan_degeneration(int N, const std::vector<double>& rhos, int trials, std::uint64_t seed,
                                       bool relaxed = false, Exec exec = Exec::Parallel);

/// Inscribed ball of a triangle (3 points) or tetrahedron (4 points).
MeetingBall meeting_ball(const std::vector<QVec4>& vertices);

/// Inradius of the ideal triangle, log 3 / 2.
double ideal_triangle_inradius();

// Seeded property suites. Each trial draws from its own generator seeded by
// derive_seed(seed, trial), so a trial can be replayed from its seed alone.

struct SuiteRow {
    int trial = 0;
    std::uint64_t seed = 0;
    double param = 0.0;
    double measured = 0.0;
    double bound = 0.0;
    double margin = 0.0;  // slack of the inequality (>= 0 when it holds)
    bool pass = false;
    double aux = 0.0;        // suite-specific secondary quantity
    bool aux_event = false;  // suite-specific informational flag
};

struct SuiteResult {
    std::string name;
    double param = 0.0;
    std::vector<SuiteRow> rows;
    int violations = 0;
    int aux_events = 0;  // suite-specific informational count
    double min_margin = 0.0;
};

SuiteRow angle_trial(double t, std::uint64_t seed);
SuiteRow distance_trial(double t, std::uint64_t seed);
SuiteRow spherical_trial(double eps, std::uint64_t seed);
SuiteRow circle_trial(double r, std::uint64_t seed);
SuiteRow separation_trial(std::uint64_t seed);

/// name is one of "anglemma", "distlem", "spherical", "circleest", "seplemma".
SuiteRow run_trial(const std::string& name, double param, std::uint64_t seed);
SuiteResult run_suite(const std::string& name, double param, int trials, std::uint64_t seed,
                      Exec exec = Exec::Parallel);

/// Checks a suite's parameter against its precondition; throws InvalidInput.
void check_suite_param(const std::string& name, double param);

}  // namespace curvlab
