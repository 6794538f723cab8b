#include "liesphere/transforms.hpp"

#include <cmath>
#include <random>

namespace liesphere {

LieTransform validate(const Mat& b, double tol) {
    require(b.rows() == b.cols() && b.rows() >= 4, ErrorKind::Usage, "transform must be a square matrix of size n+3 >= 4");
    require(b.allFinite(), ErrorKind::Validation, "transform has non-finite entries");
    const int n = static_cast<int>(b.rows()) - 3;
    const Mat g = MetricSignature::lie(n).gram();
    const double scale = std::max(1.0, b.cwiseAbs().maxCoeff() * b.cwiseAbs().maxCoeff());
    const double err = (b.transpose() * g * b - g).cwiseAbs().maxCoeff();
    require(err <= tol * scale, ErrorKind::Validation,
            "matrix does not preserve the Lie metric (max deviation " + std::to_string(err) + ")");
    return {n, b};
}

LieTransform identity_transform(int n) {
    require(n >= 1, ErrorKind::Usage, "transform needs n >= 1");
    return {n, Mat::Identity(n + 3, n + 3)};
}

LieTransform parallel_transform(int n, double t) {
    LieTransform p = identity_transform(n);
    const int l = n + 2;
    p.matrix(0, 0) = std::cos(t);
    p.matrix(l, 0) = std::sin(t);
    p.matrix(0, l) = -std::sin(t);
    p.matrix(l, l) = std::cos(t);
    return p;
}

LieTransform orientation_change(int n) {
    LieTransform g = identity_transform(n);
    g.matrix(n + 2, n + 2) = -1;
    return g;
}

LieTransform moebius_extension(const Mat& a, double tol) {
    require(a.rows() == a.cols() && a.rows() >= 3, ErrorKind::Usage, "moebius_extension: A must be square of size n+2");
    const int n = static_cast<int>(a.rows()) - 2;
    const Mat g = MetricSignature::lorentz(n + 2).gram();
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff() * a.cwiseAbs().maxCoeff());
    require((a.transpose() * g * a - g).cwiseAbs().maxCoeff() <= tol * scale, ErrorKind::Validation,
            "moebius_extension: A is not in O(n+1,1)");
    LieTransform t = identity_transform(n);
    t.matrix.topLeftCorner(n + 2, n + 2) = a;
    return t;
}

LieTransform lie_reflection(const Vec& v) {
    const int n = static_cast<int>(v.size()) - 3;
    const MetricSignature m = MetricSignature::lie(n);
    const double vv = inner(v, v, m);
    require(std::abs(vv) > 0, ErrorKind::Usage, "reflection mirror must not be lightlike");
    Vec gv = v;
    for (int i = 0; i < v.size(); ++i) gv[i] *= m.order[i];
    return {n, Mat::Identity(n + 3, n + 3) - (2.0 / vv) * v * gv.transpose()};
}

LieTransform make_transform(int n, const TransformKind& k) {
    switch (k.kind) {
        case TransformKind::Kind::Identity: return identity_transform(n);
        case TransformKind::Kind::Parallel: return parallel_transform(n, k.t);
        case TransformKind::Kind::OrientationChange: return orientation_change(n);
        case TransformKind::Kind::MoebiusExtension: {
            require(k.moebius.rows() == n + 2, ErrorKind::Usage, "moebius_extension: A has the wrong size");
            return moebius_extension(k.moebius);
        }
    }
    fail(ErrorKind::Usage, "unknown transform kind");
}

LieTransform random_lie_transform(int n, std::uint64_t seed, int k) {
    require(n >= 1, ErrorKind::Usage, "transform needs n >= 1");
    if (k <= 0) k = n + 3;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    const MetricSignature m = MetricSignature::lie(n);
    Mat b = Mat::Identity(n + 3, n + 3);
    for (int r = 0; r < k; ++r) {
        Vec v(n + 3);
        do {
            for (int i = 0; i < n + 3; ++i) v[i] = unif(rng);
        } while (std::abs(inner(v, v, m)) < 0.05 * v.squaredNorm());  // keep mirrors away from the light cone
        b = lie_reflection(v).matrix * b;
    }
    return {n, b};
}

LieTransform compose(const LieTransform& a, const LieTransform& b) {
    require(a.n == b.n, ErrorKind::Usage, "compose: dimension mismatch");
    return {a.n, a.matrix * b.matrix};
}

LieTransform inverse(const LieTransform& t) {
    const Mat g = MetricSignature::lie(t.n).gram();
    return {t.n, g * t.matrix.transpose() * g};
}

ProjectiveVector apply(const LieTransform& t, const ProjectiveVector& x) {
    require(x.coords.size() == t.n + 3, ErrorKind::Usage, "apply: dimension mismatch");
    return {t.matrix * x.coords, x.metric};
}

PencilLine apply(const LieTransform& t, const PencilLine& line) { return {apply(t, line.k1), apply(t, line.k2)}; }

bool is_moebius(const LieTransform& t, double tol) {
    Vec e = Vec::Zero(t.n + 3);
    e[t.n + 2] = 1;
    return projective_distance(t.matrix * e, e) <= tol;
}

}  // namespace liesphere
