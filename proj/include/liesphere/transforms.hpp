#pragma once

#include "liesphere/lie_coords.hpp"

#include <cstdint>

namespace liesphere {

/// Element of O(n+1,2) acting on R^{n+3}.
struct LieTransform {
    int n = 0;
    Mat matrix;
};

constexpr double kTransformTol = 1e-10;

/// Accepts B iff B^T G B = G entrywise within tol * max(1, max|B_ij|^2).
LieTransform validate(const Mat& b, double tol = kTransformTol);

LieTransform identity_transform(int n);
/// Rotation of the (e1, e_{n+3}) plane adding t to every spherical radius.
LieTransform parallel_transform(int n, double t);
/// Gamma = diag(1,...,1,-1).
LieTransform orientation_change(int n);
/// Block diag(A, 1) for A in O(n+1,1).
LieTransform moebius_extension(const Mat& a, double tol = kTransformTol);
/// x -> x - 2 <x,v>/<v,v> v.
LieTransform lie_reflection(const Vec& v);

struct TransformKind {
    enum class Kind { Identity, Parallel, OrientationChange, MoebiusExtension } kind = Kind::Identity;
    double t = 0;
    Mat moebius;
};
LieTransform make_transform(int n, const TransformKind& kind);

/// Product of k reflections in random non-lightlike mirrors; k <= 0 selects n+3.
LieTransform random_lie_transform(int n, std::uint64_t seed, int k = 0);

LieTransform compose(const LieTransform& a, const LieTransform& b);  // a after b
LieTransform inverse(const LieTransform& t);

ProjectiveVector apply(const LieTransform& t, const ProjectiveVector& x);
PencilLine apply(const LieTransform& t, const PencilLine& line);

/// True iff the transform fixes [e_{n+3}].
bool is_moebius(const LieTransform& t, double tol = kDefaultProjectiveTol);

}  // namespace liesphere
