#pragma once

#include "liesphere/curvature.hpp"
#include "liesphere/linalg.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace liesphere {

struct DupinOptions {
    CurvatureOptions curvature;
    /// Bound on |dK/dX| along principal directions; negative selects 1e-6 + h^2 (largest grid step).
    double dupin_tol = -1;
    /// Largest projective distance accepted when matching curvature spheres of neighbouring samples.
    double match_tol = 1.0;
    /// Fraction of samples that must be non-degenerate.
    double min_analyzed = 0.9;
};

/// Per-sample curvature reports plus neighbour matching.
struct CurvatureAnalysis {
    const LegendreGrid* grid = nullptr;
    std::vector<PointCurvatureReport> reports;
    double match_tol = 1.0;

    long analyzed() const;
    /// Index of the record at sample t closest to rec (sphere distance plus principal-space containment),
    /// if the sphere distance is within match_tol.
    std::optional<int> match(long t, const CurvatureSphereRecord& rec) const;
    /// Derivative of the normalized sphere of record r at sample idx along one axis, from matched neighbours.
    std::optional<Vec> sphere_derivative(long idx, int r, int axis) const;
};

/// The analysis keeps a pointer to g, which must outlive it.
CurvatureAnalysis analyze_curvature(const LegendreGrid& g, const CurvatureOptions& opt = {}, double match_tol = 1.0);
CurvatureAnalysis analyze_curvature(LegendreGrid&&, const CurvatureOptions& = {}, double = 1.0) = delete;

struct DupinReport {
    bool is_dupin = false;
    bool is_proper = false;
    std::vector<int> g_field;  // 0 at degenerate samples
    double worst_derivative = 0;
    long worst_sample = -1;
    double tolerance = 0;
    std::vector<long> flagged_samples;
    double flagged_fraction = 0;
    std::vector<int> g_values;  // distinct g over unflagged samples, ascending
};

/// Throws Analysis when fewer than min_analyzed of the samples are non-degenerate.
DupinReport dupin_report(const CurvatureAnalysis& a, const DupinOptions& opt = {});
DupinReport dupin_report(const LegendreGrid& g, const DupinOptions& opt = {});

/// Matching cost between two records: projective distance of the spheres plus the sine of the largest angle
/// between the smaller principal space and the larger one.
double record_distance(const CurvatureSphereRecord& a, const CurvatureSphereRecord& b);

/// Global curvature-sphere families from breadth-first matching over grid neighbours.
struct FamilyTracking {
    int families = 0;
    std::vector<std::vector<int>> label;  // sample -> record -> family, -1 when untracked
    long untracked_samples = 0;
    long conflicts = 0;  // neighbour pairs whose matching disagrees with the labels
    std::vector<double> mean_mu_angle;  // per family: mean homogeneous angle (doubled-angle average)
    std::vector<int> multiplicity;      // per family: most frequent multiplicity
    std::vector<std::vector<double>> axis_weight;  // per family: mean squared principal-basis weight per axis
};

FamilyTracking track_families(const CurvatureAnalysis& a);

struct IsoparametricOptions {
    double tol = 1e-6;
    int restarts = 8;
    int iterations = 400;
    std::uint64_t seed = 7;
};

struct IsoparametricFit {
    bool found = false;
    bool timelike = false;
    Mat line;              // (n+3) x 2, <a,a> = <b,b> = -1, <a,b> = 0
    std::vector<Vec> points;  // P_i per family, <P,P> = -1
    std::vector<double> radii;  // P_i = sin(rho) a - cos(rho) b
    double residual = 0;   // max |<K_i, P_i>| over samples, unit Euclidean vectors
    double objective = 0;  // sum of squared invariant residuals
    std::string message;
};

IsoparametricFit isoparametric_fit(const CurvatureAnalysis& a, const FamilyTracking& fam,
                                   const IsoparametricOptions& opt = {});

enum class Reduction { None, Revolution, Cylinder, Tube };
const char* to_string(Reduction r);

struct FamilyReducibility {
    int family = 0;
    int span_dim = 0;  // projective
    Signature complement_signature;
    int complement_dim = 0;
    Reduction classification = Reduction::None;
    double residual = 0;
    std::vector<double> axis_weight;
    int multiplicity = 0;
};

struct ReducibilityReport {
    std::vector<FamilyReducibility> families;
    bool reducible() const;
};

ReducibilityReport reducibility(const CurvatureAnalysis& a, const FamilyTracking& fam, double rank_tol = 1e-8);

struct CyclideFit {
    bool ok = false;
    int p = 0, q = 0;
    SubspaceFit E, E_perp;
    int k1_family = -1, k2_family = -1;
    double residual = 0;
    std::string message;
};

CyclideFit cyclide_fit(const CurvatureAnalysis& a, const FamilyTracking& fam, double rank_tol = 1e-8,
                       double fit_tol = 1e-6);

}  // namespace liesphere
