#pragma once

#include "liesphere/legendre.hpp"

#include <cstdint>
#include <vector>

namespace liesphere {

/// Full torus of revolution in R^3 over periodic (u, v), inward normal; a > b > 0.
HypersurfaceSample torus(double a, double b, int nu = 64, int nv = 64);
/// Torus patch over [u0,u1] x [v0,v1] (non-periodic axes).
HypersurfaceSample torus_patch(double a, double b, double u0, double u1, double v0, double v1, int nu, int nv);

/// S^p(r) x S^q(s) in S^{p+q+1}, r^2 + s^2 = 1; axes of S^p first. Each sphere factor uses
/// polar angles on non-periodic axes avoiding the poles and a periodic last angle.
HypersurfaceSample product_spheres(int p, int q, double r, double s, int resolution = 32);

/// Focal submanifold S^q x {0} of the standard cyclide over its unit normal bundle (axes: S^p then S^q).
HypersurfaceSample focal_submanifold(int p, int q, int resolution = 16);
LegendreGrid focal_lift(int p, int q, int resolution = 16);
/// k1 = e1 + v, k2 = u + e_{n+3} with u in S^p, v in S^q; n = p + q + 1.
LegendreGrid cyclide_model(int p, int q, int resolution = 16);

/// Unit sphere S^k sampled with k axes (polar axes non-periodic in [margin, pi - margin]).
struct SphereChart {
    ParamGrid grid;
    Mat points;  // (k+1) x N
};
SphereChart sphere_chart(int k, int resolution, double margin = 0.3);
/// Points of S^k for an arbitrary k-axis angle grid (same angle convention as sphere_chart).
Mat sphere_points(int k, const ParamGrid& grid);

enum class PinkallKind { Cylinder, Revolution, Tube, Cone };

struct PinkallOptions {
    int samples = 0;        // new-axis sample count; 0 selects the largest existing axis count
    int multiplicity = 1;   // cylinder only: W = M x R^m
    double extent = 1.0;    // cylinder half-length
    double offset = 0.0;    // revolution: added to the last coordinate before rotating
    double epsilon = 0.5;   // tube radius
    double theta0 = 0.0, theta1 = 0.0;  // tube fiber interval; equal values select the full periodic circle
    double t0 = 0.5, t1 = 1.5;  // cone ray interval
};

/// One construction step on a Euclidean hypersurface sample M^{n-1} in R^n; returns W^n in R^{n+1}.
HypersurfaceSample pinkall_construct(PinkallKind kind, const HypersurfaceSample& M, const PinkallOptions& opt = {});

/// Sphere inversion x -> c + rho^2 (x - c)/|x - c|^2 with the reflected normal.
HypersurfaceSample invert(const HypersurfaceSample& M, const Vec& center, double radius = 1.0);

/// Proper Dupin hypersurface with the prescribed multiplicities, built by cylinders and inversions.
HypersurfaceSample multiplicity_example(const std::vector<int>& m, int resolution = 9, std::uint64_t seed = 1);

/// Preimage of a spherical hypersurface W^3 in S^4 under the quaternionic Hopf map, in S^7.
/// Adds three periodic fiber axes (unit quaternion exp(ai) exp(bj) exp(ck)) with fiber_samples each.
HypersurfaceSample hopf_preimage_sample(const HypersurfaceSample& W, int fiber_samples = 3);
LegendreGrid hopf_preimage(const HypersurfaceSample& W, int fiber_samples = 3);
/// Hopf map h(q1, q2) = (2 q1 conj(q2), |q1|^2 - |q2|^2) on R^8 = H x H.
Vec hopf_map(const Vec& q);

/// Patch of S^1(r) x S^2(s) in S^4 centred at the given angles with the given spacing; fourth-order grid.
HypersurfaceSample hopf_base_patch(double r, int resolution, double spacing, double a0 = 0.3, double phi0 = 1.1,
                                   double psi0 = 0.7);
/// Spherical sample of the image of W under a Lie transform (projections of the transformed lift).
HypersurfaceSample transform_sample(const HypersurfaceSample& W, const LieTransform& T);
/// Moebius boost in the (e1, e2) plane of R^{n+3} with rapidity t.
LieTransform moebius_boost(int n, double t);

/// rho = |r| / a for a profile sphere of signed radius r at distance a from the axis.
double revolution_invariant(double r, double a);

}  // namespace liesphere
