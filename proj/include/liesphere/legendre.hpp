#pragma once

#include "liesphere/grid.hpp"
#include "liesphere/transforms.hpp"

namespace liesphere {

/// Sampled Legendre map [Z1, Zn3] over a parameter grid with n-1 axes; columns are samples.
struct LegendreGrid {
    int n = 0;
    ParamGrid grid;
    Mat Z1;
    Mat Zn3;

    long size() const { return grid.size(); }
    Mat jacobian1(long idx) const { return fd_jacobian(Z1, grid, idx); }
    Mat jacobian3(long idx) const { return fd_jacobian(Zn3, grid, idx); }
};

/// Shape checks only.
LegendreGrid make_legendre_grid(int n, ParamGrid grid, Mat z1, Mat zn3);

struct LiftOptions {
    double unit_tol = 1e-8;
    /// Relative tolerance for df.xi = 0; negative selects default_contact_tol per axis.
    double contact_tol = -1;
};

/// 1e-6 + 10 h^p for the axis step h and the stencil order p actually used on that axis.
double default_contact_tol(const ParamGrid& grid, int axis);

/// (1,f,0), (0,xi,1) from a spherical hypersurface sample.
LegendreGrid lift_sphere_hypersurface(const HypersurfaceSample& s, const LiftOptions& opt = {});
/// Same normal forms for a submanifold sampled over its unit normal bundle (base axes x fiber axes).
LegendreGrid lift_sphere_submanifold(const HypersurfaceSample& s, const LiftOptions& opt = {});
/// ((1+F.F)/2, (1-F.F)/2, F, 0), (F.eta, -F.eta, eta, 1); codim > 1 means the grid carries fiber axes.
LegendreGrid lift_euclidean(const HypersurfaceSample& s, int codim = 1, const LiftOptions& opt = {});
/// Dispatch on the sample's ambient space.
LegendreGrid lift(const HypersurfaceSample& s, const LiftOptions& opt = {});

struct ValidationOptions {
    double scalar_tol = 1e-8;
    /// Negative selects default_contact_tol per axis (finite differences carry truncation error).
    double contact_tol = -1;
    double immersion_tol = 1e-8;
};

struct LegendreValidation {
    double isotropy = 0;       // max |<Z,Z>| / |Z|^2
    double orthogonality = 0;  // max |<Z1,Zn3>| / (|Z1| |Zn3|)
    double independence = 1;   // min sigma_2 / sigma_1 of [Z1 Zn3] (unit columns)
    double contact = 0;        // max |<dZ1(e_a), Zn3>| / (|dZ1(e_a)| |Zn3|)
    double immersion = 1;      // min sigma_min / sigma_max of the projected stacked Jacobian
    long worst_scalar_sample = -1;
    long worst_contact_sample = -1;
    long worst_immersion_sample = -1;
    bool scalar_ok = true;
    bool contact_ok = true;
    bool immersion_ok = true;
    bool passed() const { return scalar_ok && contact_ok && immersion_ok; }
};

LegendreValidation validate_legendre(const LegendreGrid& g, const ValidationOptions& opt = {});

/// Projected Jacobians at one sample: both differentials with span{Z1, Zn3} removed (Euclidean projection).
void projected_jacobians(const LegendreGrid& g, long idx, Mat& a1, Mat& a3);

/// W1 = alpha Z1 + beta Zn3, W3 = gamma Z1 + delta Zn3 per sample.
LegendreGrid reparametrize(const LegendreGrid& g, const Vec& alpha, const Vec& beta, const Vec& gamma,
                           const Vec& delta);

struct ProjectionPair {
    Mat f, xi;    // (n+1) x N
    Mat F, eta;   // n x N, zero where invalid
    std::vector<char> spherical_valid;
    std::vector<char> euclidean_valid;
    long improper_count = 0;
};

ProjectionPair projections(const LegendreGrid& g);

LegendreGrid apply(const LieTransform& t, const LegendreGrid& g);
LegendreGrid parallel_submanifold(const LegendreGrid& g, double t);

/// Radii t in [0, pi) where cos t f + sin t xi fails to be an immersion at sample idx.
std::vector<double> singular_radii(const LegendreGrid& g, long idx, int resolution = 128, double threshold = 1e-2);
std::vector<double> singular_radii(const ProjectionPair& p, const ParamGrid& grid, long idx, int resolution = 128,
                                   double threshold = 1e-2);

}  // namespace liesphere
