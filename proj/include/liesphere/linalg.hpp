#pragma once

#include "liesphere/error.hpp"

#include <vector>

namespace liesphere {

/// Diagonal sign pattern of an indefinite scalar product.
struct MetricSignature {
    std::vector<int> order;
    int n_plus = 0;
    int n_minus = 0;

    int dim() const { return static_cast<int>(order.size()); }
    Mat gram() const;
    bool operator==(const MetricSignature& other) const { return order == other.order; }

    static MetricSignature from_order(std::vector<int> order);
    /// (-,+,...,+,-) on R^{n+3}.
    static MetricSignature lie(int n);
    /// (-,+,...,+) on R^dim.
    static MetricSignature lorentz(int dim);
    static MetricSignature euclidean(int dim);
};

enum class CausalType { Spacelike, Timelike, Lightlike };

const char* to_string(CausalType t);

struct Signature {
    int plus = 0;
    int minus = 0;
    int zero = 0;
    bool operator==(const Signature& o) const { return plus == o.plus && minus == o.minus && zero == o.zero; }
};

struct SubspaceFit {
    Mat basis;  // columns, orthonormal for the Euclidean form
    int dim = 0;
    Signature signature;
    double residual = 0.0;  // largest discarded singular value, relative to the largest kept one
};

struct ProjectiveVector {
    Vec coords;
    MetricSignature metric;
};

constexpr double kDefaultRankTol = 1e-8;
constexpr double kDefaultProjectiveTol = 1e-9;

double inner(const Vec& x, const Vec& y, const MetricSignature& metric);
double inner_unchecked(const Vec& x, const Vec& y, const MetricSignature& metric);

CausalType causal_type(const Vec& x, const MetricSignature& metric, double tol = 1e-12);

/// Numerical span of the columns and the signature of the form restricted to it.
SubspaceFit subspace_signature(const Mat& columns, const MetricSignature& metric,
                               double rank_tol = kDefaultRankTol);
SubspaceFit subspace_signature(const std::vector<Vec>& vectors, const MetricSignature& metric,
                               double rank_tol = kDefaultRankTol);

/// {y : <v,y> = 0 for all v in span}.
SubspaceFit polar_complement(const Mat& columns, const MetricSignature& metric,
                             double rank_tol = kDefaultRankTol);
SubspaceFit polar_complement(const std::vector<Vec>& span, const MetricSignature& metric,
                             double rank_tol = kDefaultRankTol);

/// Signature of the form restricted to the span of an orthonormal basis.
Signature restricted_signature(const Mat& basis, const MetricSignature& metric, double zero_tol);

/// Sine of the angle between the lines spanned by x and y.
double projective_distance(const Vec& x, const Vec& y);
bool projective_equal(const ProjectiveVector& x, const ProjectiveVector& y, double tol = kDefaultProjectiveTol);

/// Sine of the largest principal angle between two column spans of equal dimension.
double subspace_distance(const Mat& a, const Mat& b);

/// Orthonormal basis (Euclidean) of the column span, rank decided relative to the largest singular value.
Mat orthonormal_span(const Mat& columns, double rank_tol = kDefaultRankTol);

/// Unit Euclidean norm, first nonzero coordinate positive.
Vec normalized_for_output(const Vec& x);

}  // namespace liesphere
