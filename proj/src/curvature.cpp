#include "liesphere/curvature.hpp"

#include "liesphere/parallel.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>

namespace liesphere {

namespace {

constexpr double kPi = std::numbers::pi;
// |cos theta| below this is reported as mu = inf.
constexpr double kInfiniteCut = 1e-12;

double wrap_pi(double t) {
    t = std::fmod(t, kPi);
    return t < 0 ? t + kPi : t;
}

double mu_from_theta(double theta) {
    const double c = std::cos(theta);
    return std::abs(c) <= kInfiniteCut ? kInfinity : std::sin(theta) / c;
}

// Sort key realizing "mu ascending, infinity last".
double order_key(const CurvatureSphereRecord& r) {
    if (std::isinf(r.mu)) return kPi;
    return r.theta > kPi / 2 ? r.theta - kPi : r.theta;
}

}  // namespace

double chordal_distance(double mu1, double mu2) {
    const double t1 = std::isinf(mu1) ? kPi / 2 : std::atan(mu1);
    const double t2 = std::isinf(mu2) ? kPi / 2 : std::atan(mu2);
    return std::abs(std::sin(t1 - t2));
}

PointCurvatureReport curvature_spheres_at(const LegendreGrid& g, long idx, const CurvatureOptions& opt) {
    require(idx >= 0 && idx < g.size(), ErrorKind::Usage, "curvature: sample index out of range");
    const int k = g.n - 1;
    const double n1 = g.Z1.col(idx).norm(), n3 = g.Zn3.col(idx).norm();
    require(n1 > 0 && n3 > 0, ErrorKind::Degenerate, "curvature: zero Legendre vector at sample " + std::to_string(idx));
    const double cosang = std::abs(g.Z1.col(idx).dot(g.Zn3.col(idx))) / (n1 * n3);
    require(std::sqrt(std::max(0.0, 1 - cosang * cosang)) > opt.rank_tol, ErrorKind::Degenerate,
            "curvature: Z1 and Zn3 are linearly dependent at sample " + std::to_string(idx));

    Mat a1, a3;
    projected_jacobians(g, idx, a1, a3);

    Mat stacked(2 * (g.n + 3), k);
    stacked << a1 / n1, a3 / n3;
    Eigen::JacobiSVD<Mat> vs(stacked);
    const Vec& vsv = vs.singularValues();
    if (!(vsv[0] > 0) || vsv[k - 1] <= opt.rank_tol * vsv[0])
        fail(ErrorKind::Degenerate, "curvature: immersion condition fails at sample " + std::to_string(idx));

    Mat horiz(g.n + 3, 2 * k);
    horiz << a1 / n1, a3 / n3;
    Eigen::JacobiSVD<Mat> hs(horiz, Eigen::ComputeThinU);
    const Vec& hsv = hs.singularValues();
    if (hsv[k - 1] <= opt.rank_tol * hsv[0])
        fail(ErrorKind::Degenerate, "curvature: tangent image has rank below n-1 at sample " + std::to_string(idx));
    const Mat w = hs.matrixU().leftCols(k);
    const Mat b1 = w.transpose() * a1;
    const Mat b2 = w.transpose() * a3;

    // r B1 X + s B2 X = 0  <=>  B2 X = mu (-B1) X with mu = r/s.
    Eigen::GeneralizedEigenSolver<Mat> ges(b2, -b1, false);
    require(ges.info() == Eigen::Success, ErrorKind::Degenerate,
            "curvature: pencil eigensolver failed at sample " + std::to_string(idx));
    std::vector<double> thetas(k);
    for (int i = 0; i < k; ++i) thetas[i] = wrap_pi(std::atan2(ges.alphas()[i].real(), ges.betas()[i]));
    std::sort(thetas.begin(), thetas.end());

    // Single linkage around the projective circle.
    std::vector<int> label(k, -1);
    int clusters = 0;
    for (int i = 0; i < k; ++i) {
        if (i > 0 && std::abs(std::sin(thetas[i] - thetas[i - 1])) <= opt.cluster_tol)
            label[i] = label[i - 1];
        else
            label[i] = clusters++;
    }
    if (clusters > 1 && std::abs(std::sin(thetas[k - 1] - thetas[0])) <= opt.cluster_tol) {
        const int merged = label[k - 1];
        for (int i = 0; i < k; ++i)
            if (label[i] == merged) label[i] = 0;
        clusters--;
    }

    PointCurvatureReport rep;
    rep.sample = idx;
    for (int c = 0; c < clusters; ++c) {
        double ss = 0, cc = 0;
        int m = 0;
        std::vector<double> members;
        for (int i = 0; i < k; ++i)
            if (label[i] == c) {
                ss += std::sin(2 * thetas[i]);
                cc += std::cos(2 * thetas[i]);
                members.push_back(thetas[i]);
                ++m;
            }
        if (m == 0) continue;
        CurvatureSphereRecord r;
        r.theta = wrap_pi(0.5 * std::atan2(ss, cc));
        r.mu = mu_from_theta(r.theta);
        r.multiplicity = m;
        for (double a : members)
            for (double b : members) r.spread = std::max(r.spread, std::abs(std::sin(a - b)));
        const double rr = std::sin(r.theta), sc = std::cos(r.theta);
        const Mat pencil = rr * b1 + sc * b2;
        Eigen::JacobiSVD<Mat> ps(pencil, Eigen::ComputeFullV);
        r.principal_basis = ps.matrixV().rightCols(m);
        const Vec& psv = ps.singularValues();
        r.residual = psv[0] > 0 ? psv[k - m] / psv[0] : 0.0;
        r.K = (rr * g.Z1.col(idx) + sc * g.Zn3.col(idx)).normalized();
        rep.records.push_back(std::move(r));
    }
    std::sort(rep.records.begin(), rep.records.end(),
              [](const auto& a, const auto& b) { return order_key(a) < order_key(b); });
    rep.g = static_cast<int>(rep.records.size());
    return rep;
}

std::vector<PointCurvatureReport> curvature_field(const LegendreGrid& g, const CurvatureOptions& opt) {
    std::vector<PointCurvatureReport> out(g.size());
    parallel_for(g.size(), [&](long i) {
        try {
            out[i] = curvature_spheres_at(g, i, opt);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::Degenerate) throw;
            out[i] = PointCurvatureReport{};
            out[i].sample = i;
            out[i].degenerate = true;
            out[i].reason = e.what();
        }
    });
    return out;
}

Mat shape_operator_at(const HypersurfaceSample& s, long idx, double rank_tol) {
    require(idx >= 0 && idx < s.size(), ErrorKind::Usage, "shape operator: sample index out of range");
    require(s.grid.axes() == s.n - 1, ErrorKind::Usage, "shape operator needs a hypersurface sample (n-1 axes)");
    const Mat df = fd_jacobian(s.points, s.grid, idx);
    const Mat dxi = fd_jacobian(s.normals, s.grid, idx);
    Eigen::JacobiSVD<Mat> svd(df);
    const Vec& sv = svd.singularValues();
    if (!(sv[0] > 0) || sv[sv.size() - 1] <= rank_tol * sv[0])
        fail(ErrorKind::Degenerate, "shape operator: df is rank-deficient at sample " + std::to_string(idx));
    Eigen::HouseholderQR<Mat> qr(df);
    const int k = static_cast<int>(df.cols());
    const Mat q = qr.householderQ() * Mat::Identity(df.rows(), k);
    const Mat r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    // A in the orthonormal frame Q: -Q^T dxi R^{-1}.
    const Mat a = -(r.transpose().triangularView<Eigen::Lower>().solve((q.transpose() * dxi).transpose())).transpose();
    return 0.5 * (a + a.transpose());
}

Vec principal_curvatures(const HypersurfaceSample& s, long idx, double rank_tol) {
    Eigen::SelfAdjointEigenSolver<Mat> es(shape_operator_at(s, idx, rank_tol), Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

double lie_curvature(std::array<double, 4> mu) {
    int infinite = 0;
    for (double m : mu) {
        require(!std::isnan(m), ErrorKind::Usage, "lie curvature: NaN coordinate");
        if (std::isinf(m)) ++infinite;
    }
    require(infinite <= 1, ErrorKind::Degenerate, "lie curvature: coincident curvature spheres at infinity");
    for (double& m : mu)
        if (std::isinf(m)) m = kInfinity;
    std::sort(mu.begin(), mu.end());
    for (int i = 0; i < 3; ++i)
        require(mu[i] != mu[i + 1], ErrorKind::Degenerate, "lie curvature: coincident curvature spheres");
    if (infinite == 1) return (mu[0] - mu[1]) / (mu[0] - mu[2]);
    return (mu[0] - mu[1]) * (mu[3] - mu[2]) / ((mu[0] - mu[2]) * (mu[3] - mu[1]));
}

double lie_curvature(const PointCurvatureReport& report) {
    require(!report.degenerate, ErrorKind::Degenerate, "lie curvature: degenerate sample");
    require(report.g == 4, ErrorKind::Usage,
            "lie curvature needs exactly 4 distinct curvature spheres (got " + std::to_string(report.g) + ")");
    std::array<double, 4> r{}, s{};
    for (int i = 0; i < 4; ++i) {
        r[i] = std::sin(report.records[i].theta);
        s[i] = std::cos(report.records[i].theta);
    }
    auto d = [&](int i, int j) { return r[i] * s[j] - r[j] * s[i]; };
    const double den = d(0, 2) * d(3, 1);
    require(std::abs(den) > 1e-14, ErrorKind::Degenerate, "lie curvature: coincident curvature spheres");
    return d(0, 1) * d(3, 2) / den;
}

}  // namespace liesphere
