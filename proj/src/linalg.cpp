#include "liesphere/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

namespace liesphere {

MetricSignature MetricSignature::from_order(std::vector<int> order) {
    MetricSignature m;
    for (int s : order) {
        require(s == 1 || s == -1, ErrorKind::Usage, "metric signs must be +1 or -1");
        (s > 0 ? m.n_plus : m.n_minus)++;
    }
    m.order = std::move(order);
    return m;
}

MetricSignature MetricSignature::lie(int n) {
    require(n >= 1, ErrorKind::Usage, "Lie metric needs n >= 1");
    std::vector<int> o(n + 3, 1);
    o.front() = -1;
    o.back() = -1;
    return from_order(std::move(o));
}

MetricSignature MetricSignature::lorentz(int dim) {
    require(dim >= 2, ErrorKind::Usage, "Lorentz metric needs dimension >= 2");
    std::vector<int> o(dim, 1);
    o.front() = -1;
    return from_order(std::move(o));
}

MetricSignature MetricSignature::euclidean(int dim) {
    require(dim >= 1, ErrorKind::Usage, "Euclidean metric needs dimension >= 1");
    return from_order(std::vector<int>(dim, 1));
}

Mat MetricSignature::gram() const {
    Mat g = Mat::Zero(dim(), dim());
    for (int i = 0; i < dim(); ++i) g(i, i) = order[i];
    return g;
}

const char* to_string(CausalType t) {
    switch (t) {
        case CausalType::Spacelike: return "spacelike";
        case CausalType::Timelike: return "timelike";
        case CausalType::Lightlike: return "lightlike";
    }
    return "?";
}

double inner_unchecked(const Vec& x, const Vec& y, const MetricSignature& metric) {
    double s = 0.0;
    for (int i = 0; i < metric.dim(); ++i) s += metric.order[i] * x[i] * y[i];
    return s;
}

double inner(const Vec& x, const Vec& y, const MetricSignature& metric) {
    require(x.size() == metric.dim() && y.size() == metric.dim(), ErrorKind::Usage,
            "inner: dimension mismatch");
    return inner_unchecked(x, y, metric);
}

CausalType causal_type(const Vec& x, const MetricSignature& metric, double tol) {
    require(x.size() == metric.dim(), ErrorKind::Usage, "causal_type: dimension mismatch");
    const double nn = x.squaredNorm();
    require(nn > 0.0, ErrorKind::Usage, "causal_type: zero vector");
    const double q = inner_unchecked(x, x, metric);
    if (std::abs(q) <= tol * nn) return CausalType::Lightlike;
    return q > 0 ? CausalType::Spacelike : CausalType::Timelike;
}

namespace {

// Left singular vectors and singular values of a d x k matrix; wide inputs go through a QR first.
void left_svd(const Mat& a, Mat& left, Vec& sigma) {
    const Eigen::Index d = a.rows();
    if (a.cols() > d) {
        Eigen::HouseholderQR<Mat> qr(a.transpose());
        Mat r = qr.matrixQR().topRows(d).triangularView<Eigen::Upper>();
        Eigen::JacobiSVD<Mat> svd(r, Eigen::ComputeFullV);
        left = svd.matrixV();
        sigma = svd.singularValues();
    } else {
        Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullU);
        left = svd.matrixU();
        sigma = Vec::Zero(d);
        sigma.head(svd.singularValues().size()) = svd.singularValues();
    }
}

Mat stack(const std::vector<Vec>& vs) {
    require(!vs.empty(), ErrorKind::Usage, "empty vector list");
    Mat m(vs.front().size(), static_cast<Eigen::Index>(vs.size()));
    for (size_t i = 0; i < vs.size(); ++i) {
        require(vs[i].size() == m.rows(), ErrorKind::Usage, "vector list has mixed dimensions");
        m.col(static_cast<Eigen::Index>(i)) = vs[i];
    }
    return m;
}

}  // namespace

Signature restricted_signature(const Mat& basis, const MetricSignature& metric, double zero_tol) {
    Signature s;
    if (basis.cols() == 0) return s;
    Mat g = basis.transpose() * metric.gram() * basis;
    g = 0.5 * (g + g.transpose());
    Eigen::SelfAdjointEigenSolver<Mat> es(g, Eigen::EigenvaluesOnly);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double l = es.eigenvalues()[i];
        if (std::abs(l) <= zero_tol) s.zero++;
        else if (l > 0) s.plus++;
        else s.minus++;
    }
    return s;
}

SubspaceFit subspace_signature(const Mat& columns, const MetricSignature& metric, double rank_tol) {
    require(columns.cols() > 0, ErrorKind::Usage, "subspace_signature: empty input");
    require(columns.rows() == metric.dim(), ErrorKind::Usage, "subspace_signature: dimension mismatch");
    Mat left;
    Vec sigma;
    left_svd(columns, left, sigma);
    require(sigma[0] > 0.0, ErrorKind::Usage, "subspace_signature: all vectors are zero");
    int r = 0;
    while (r < sigma.size() && sigma[r] > rank_tol * sigma[0]) ++r;
    SubspaceFit fit;
    fit.dim = r;
    fit.basis = left.leftCols(r);
    fit.residual = r < sigma.size() ? sigma[r] / sigma[0] : 0.0;
    fit.signature = restricted_signature(fit.basis, metric, rank_tol);
    return fit;
}

SubspaceFit subspace_signature(const std::vector<Vec>& vectors, const MetricSignature& metric, double rank_tol) {
    return subspace_signature(stack(vectors), metric, rank_tol);
}

SubspaceFit polar_complement(const Mat& columns, const MetricSignature& metric, double rank_tol) {
    const SubspaceFit span = subspace_signature(columns, metric, rank_tol);
    const int d = metric.dim();
    SubspaceFit out;
    out.residual = span.residual;
    out.dim = d - span.dim;
    if (out.dim == 0) {
        out.basis = Mat(d, 0);
        return out;
    }
    Mat m = span.basis.transpose() * metric.gram();
    Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
    out.basis = svd.matrixV().rightCols(out.dim);
    out.signature = restricted_signature(out.basis, metric, rank_tol);
    return out;
}

SubspaceFit polar_complement(const std::vector<Vec>& span, const MetricSignature& metric, double rank_tol) {
    return polar_complement(stack(span), metric, rank_tol);
}

double projective_distance(const Vec& x, const Vec& y) {
    require(x.size() == y.size(), ErrorKind::Usage, "projective_distance: dimension mismatch");
    const double nx = x.norm(), ny = y.norm();
    require(nx > 0 && ny > 0, ErrorKind::Usage, "projective_distance: zero vector");
    const Vec a = x / nx, b = y / ny;
    return (a - a.dot(b) * b).norm();
}

bool projective_equal(const ProjectiveVector& x, const ProjectiveVector& y, double tol) {
    return projective_distance(x.coords, y.coords) <= tol;
}

Mat orthonormal_span(const Mat& columns, double rank_tol) {
    if (columns.cols() == 0) return Mat(columns.rows(), 0);
    Mat left;
    Vec sigma;
    left_svd(columns, left, sigma);
    if (sigma[0] == 0.0) return Mat(columns.rows(), 0);
    int r = 0;
    while (r < sigma.size() && sigma[r] > rank_tol * sigma[0]) ++r;
    return left.leftCols(r);
}

double subspace_distance(const Mat& a, const Mat& b) {
    const Mat qa = orthonormal_span(a), qb = orthonormal_span(b);
    require(qa.cols() == qb.cols(), ErrorKind::Usage, "subspace_distance: spans have different dimensions");
    if (qa.cols() == 0) return 0.0;
    const Mat resid = qa - qb * (qb.transpose() * qa);
    Eigen::JacobiSVD<Mat> svd(resid);
    return svd.singularValues()[0];
}

Vec normalized_for_output(const Vec& x) {
    const double nx = x.norm();
    require(nx > 0, ErrorKind::Usage, "cannot normalize a zero vector");
    Vec y = x / nx;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        if (y[i] != 0.0) {
            if (y[i] < 0) y = -y;
            break;
        }
    }
    return y;
}

}  // namespace liesphere
