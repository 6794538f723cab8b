#pragma once

#include "liesphere/legendre.hpp"

#include <array>
#include <limits>
#include <string>
#include <vector>

namespace liesphere {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// One curvature sphere K = r Z1 + s Zn3 with mu = r/s (infinite when s = 0).
struct CurvatureSphereRecord {
    Vec K;                 // unit Euclidean norm
    double mu = 0;         // +inf for the Z1 endpoint
    double theta = 0;      // homogeneous angle in [0, pi): (r, s) = (sin theta, cos theta)
    int multiplicity = 1;
    Mat principal_basis;   // axes x multiplicity, orthonormal in parameter coordinates
    double residual = 0;   // sigma_m / sigma_max of r B1 + s B2 (0 for an exact kernel)
    double spread = 0;     // largest chordal distance inside the cluster
};

struct PointCurvatureReport {
    long sample = -1;
    bool degenerate = false;
    std::string reason;
    std::vector<CurvatureSphereRecord> records;  // mu ascending, infinity last
    int g = 0;
};

struct CurvatureOptions {
    double cluster_tol = 1e-4;
    double rank_tol = 1e-8;
};

/// Chordal distance on the projective line; handles mu = inf.
double chordal_distance(double mu1, double mu2);

/// Throws Degenerate when the projected Jacobians fail the immersion condition.
PointCurvatureReport curvature_spheres_at(const LegendreGrid& g, long idx, const CurvatureOptions& opt = {});

/// Every sample; degenerate samples are flagged instead of throwing.
std::vector<PointCurvatureReport> curvature_field(const LegendreGrid& g, const CurvatureOptions& opt = {});

/// Shape operator in an orthonormal tangent basis, from df(AX) = -dxi(X); throws Degenerate when df drops rank.
Mat shape_operator_at(const HypersurfaceSample& s, long idx, double rank_tol = 1e-8);
/// Ascending eigenvalues of the shape operator.
Vec principal_curvatures(const HypersurfaceSample& s, long idx, double rank_tol = 1e-8);

/// (mu1-mu2)(mu4-mu3) / ((mu1-mu3)(mu4-mu2)) for the ascending order, infinity allowed as the largest.
double lie_curvature(std::array<double, 4> mu);
/// Requires g = 4; uses the homogeneous pairs of the records.
double lie_curvature(const PointCurvatureReport& report);

}  // namespace liesphere
