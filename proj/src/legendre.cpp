#include "liesphere/legendre.hpp"

#include "liesphere/lie_coords.hpp"
#include "liesphere/linalg.hpp"
#include "liesphere/parallel.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace liesphere {

LegendreGrid make_legendre_grid(int n, ParamGrid grid, Mat z1, Mat zn3) {
    require(n >= 2, ErrorKind::Usage, "Legendre grid needs n >= 2");
    require(grid.axes() == n - 1, ErrorKind::Usage,
            "Legendre grid needs n-1 parameter axes (got " + std::to_string(grid.axes()) + " for n=" +
                std::to_string(n) + ")");
    require(z1.rows() == n + 3 && zn3.rows() == n + 3, ErrorKind::Usage, "Legendre grid: maps must have n+3 rows");
    require(z1.cols() == grid.size() && zn3.cols() == grid.size(), ErrorKind::Usage,
            "Legendre grid: sample count does not match the grid");
    require(z1.allFinite() && zn3.allFinite(), ErrorKind::Validation, "Legendre grid: non-finite values");
    return {n, std::move(grid), std::move(z1), std::move(zn3)};
}

double default_contact_tol(const ParamGrid& grid, int axis) {
    const int order = (grid.fd_order == 4 && grid.dims[axis] >= 5) ? 4 : 2;
    return 1e-6 + 10.0 * std::pow(grid.step(axis), order);
}

namespace {

// Pointwise unit/orthogonality checks plus df.nu = 0 along every axis; nu is the normal field.
void check_lift_input(const HypersurfaceSample& s, bool spherical, const LiftOptions& opt) {
    check_sample(s, opt.unit_tol);
    require(s.grid.axes() == s.n - 1, ErrorKind::Usage,
            "lift needs n-1 parameter axes (base plus fiber axes for submanifolds)");
    double worst_unit = 0, worst_contact = 0;  // contact measured relative to the axis tolerance
    long worst_unit_i = -1, worst_contact_i = -1;
    for (long i = 0; i < s.size(); ++i) {
        const auto f = s.points.col(i);
        const auto nu = s.normals.col(i);
        const double e = spherical ? std::max(std::abs(f.dot(nu)), std::abs(f.norm() - 1)) : 0.0;
        if (e > worst_unit) {
            worst_unit = e;
            worst_unit_i = i;
        }
        for (int a = 0; a < s.grid.axes(); ++a) {
            const Vec df = fd_derivative(s.points, s.grid, i, a);
            const double scale = df.norm();
            if (scale == 0) continue;
            const double tol = opt.contact_tol >= 0 ? opt.contact_tol : default_contact_tol(s.grid, a);
            const double c = std::abs(df.dot(nu)) / (scale * tol);
            if (c > worst_contact) {
                worst_contact = c;
                worst_contact_i = i;
            }
        }
    }
    if (worst_unit > opt.unit_tol)
        fail(ErrorKind::Validation, "lift input violates |f|=1 / f.xi=0 at sample " + std::to_string(worst_unit_i) +
                                        " (deviation " + std::to_string(worst_unit) + ")");
    if (worst_contact > 1.0)
        fail(ErrorKind::Validation, "lift input normal is not orthogonal to the tangent space at sample " +
                                        std::to_string(worst_contact_i) + " (deviation " +
                                        std::to_string(worst_contact) + " x tolerance)");
}

LegendreGrid lift_spherical_impl(const HypersurfaceSample& s, const LiftOptions& opt) {
    require(s.ambient == Ambient::Spherical, ErrorKind::Usage, "expected a sample in S^n");
    check_lift_input(s, true, opt);
    const int n = s.n;
    const long N = s.size();
    Mat z1 = Mat::Zero(n + 3, N), zn3 = Mat::Zero(n + 3, N);
    z1.row(0).setOnes();
    z1.middleRows(1, n + 1) = s.points;
    zn3.middleRows(1, n + 1) = s.normals;
    zn3.row(n + 2).setOnes();
    return make_legendre_grid(n, s.grid, std::move(z1), std::move(zn3));
}

}  // namespace

LegendreGrid lift_sphere_hypersurface(const HypersurfaceSample& s, const LiftOptions& opt) {
    return lift_spherical_impl(s, opt);
}

LegendreGrid lift_sphere_submanifold(const HypersurfaceSample& s, const LiftOptions& opt) {
    return lift_spherical_impl(s, opt);
}

LegendreGrid lift_euclidean(const HypersurfaceSample& s, int codim, const LiftOptions& opt) {
    require(s.ambient == Ambient::Euclidean, ErrorKind::Usage, "expected a sample in R^n");
    require(codim >= 1 && codim <= s.n, ErrorKind::Usage, "codimension out of range");
    check_lift_input(s, false, opt);
    const int n = s.n;
    const long N = s.size();
    Mat z1 = Mat::Zero(n + 3, N), zn3 = Mat::Zero(n + 3, N);
    for (long i = 0; i < N; ++i) {
        const auto F = s.points.col(i);
        const auto eta = s.normals.col(i);
        const double ff = F.squaredNorm(), fe = F.dot(eta);
        z1(0, i) = 0.5 * (1 + ff);
        z1(1, i) = 0.5 * (1 - ff);
        z1.col(i).segment(2, n) = F;
        zn3(0, i) = fe;
        zn3(1, i) = -fe;
        zn3.col(i).segment(2, n) = eta;
        zn3(n + 2, i) = 1;
    }
    return make_legendre_grid(n, s.grid, std::move(z1), std::move(zn3));
}

LegendreGrid lift(const HypersurfaceSample& s, const LiftOptions& opt) {
    return s.ambient == Ambient::Spherical ? lift_sphere_hypersurface(s, opt) : lift_euclidean(s, 1, opt);
}

void projected_jacobians(const LegendreGrid& g, long idx, Mat& a1, Mat& a3) {
    Mat span(g.n + 3, 2);
    span.col(0) = g.Z1.col(idx);
    span.col(1) = g.Zn3.col(idx);
    Eigen::HouseholderQR<Mat> qr(span);
    const Mat q = qr.householderQ() * Mat::Identity(g.n + 3, 2);
    a1 = g.jacobian1(idx);
    a3 = g.jacobian3(idx);
    a1 -= q * (q.transpose() * a1);
    a3 -= q * (q.transpose() * a3);
}

LegendreValidation validate_legendre(const LegendreGrid& g, const ValidationOptions& opt) {
    const MetricSignature m = MetricSignature::lie(g.n);
    const long N = g.size();
    std::vector<double> iso(N), orth(N), indep(N), cont(N), cont_ratio(N), imm(N);
    parallel_for(N, [&](long i) {
        const Vec z1 = g.Z1.col(i), z3 = g.Zn3.col(i);
        const double n1 = z1.norm(), n3 = z3.norm();
        iso[i] = std::max(std::abs(inner_unchecked(z1, z1, m)) / (n1 * n1),
                          std::abs(inner_unchecked(z3, z3, m)) / (n3 * n3));
        orth[i] = std::abs(inner_unchecked(z1, z3, m)) / (n1 * n3);
        Mat zz(g.n + 3, 2);
        zz.col(0) = z1 / n1;
        zz.col(1) = z3 / n3;
        Eigen::JacobiSVD<Mat> zsvd(zz);
        indep[i] = zsvd.singularValues()[1] / zsvd.singularValues()[0];
        const Mat j1 = g.jacobian1(i);
        double c = 0, ratio = 0;
        for (int a = 0; a < j1.cols(); ++a) {
            const double d = j1.col(a).norm();
            if (d == 0) continue;
            const double ca = std::abs(inner_unchecked(j1.col(a), z3, m)) / (d * n3);
            const double tol = opt.contact_tol >= 0 ? opt.contact_tol : default_contact_tol(g.grid, a);
            c = std::max(c, ca);
            ratio = std::max(ratio, ca / tol);
        }
        cont[i] = c;
        cont_ratio[i] = ratio;
        if (indep[i] <= opt.scalar_tol) {
            imm[i] = 0;
            return;
        }
        Mat a1, a3;
        projected_jacobians(g, i, a1, a3);
        Mat stacked(2 * (g.n + 3), a1.cols());
        stacked << a1 / n1, a3 / n3;
        Eigen::JacobiSVD<Mat> svd(stacked);
        const Vec& sv = svd.singularValues();
        imm[i] = sv[0] > 0 ? sv[sv.size() - 1] / sv[0] : 0.0;
    });
    LegendreValidation v;
    double worst_scalar = -1, worst_ratio = 0;
    for (long i = 0; i < N; ++i) {
        v.isotropy = std::max(v.isotropy, iso[i]);
        v.orthogonality = std::max(v.orthogonality, orth[i]);
        v.independence = std::min(v.independence, indep[i]);
        if (std::max(iso[i], orth[i]) > worst_scalar) {
            worst_scalar = std::max(iso[i], orth[i]);
            v.worst_scalar_sample = i;
        }
        if (v.worst_contact_sample < 0 || cont_ratio[i] > worst_ratio) {
            worst_ratio = cont_ratio[i];
            v.worst_contact_sample = i;
        }
        v.contact = std::max(v.contact, cont[i]);
        if (v.worst_immersion_sample < 0 || imm[i] < v.immersion) {
            v.immersion = imm[i];
            v.worst_immersion_sample = i;
        }
    }
    v.scalar_ok = v.isotropy <= opt.scalar_tol && v.orthogonality <= opt.scalar_tol && v.independence > opt.scalar_tol;
    v.contact_ok = worst_ratio <= 1.0;
    v.immersion_ok = v.immersion > opt.immersion_tol;
    return v;
}

LegendreGrid reparametrize(const LegendreGrid& g, const Vec& alpha, const Vec& beta, const Vec& gamma,
                           const Vec& delta) {
    const long N = g.size();
    require(alpha.size() == N && beta.size() == N && gamma.size() == N && delta.size() == N, ErrorKind::Usage,
            "reparametrize: coefficient fields must have one value per sample");
    LegendreGrid out = g;
    for (long i = 0; i < N; ++i) {
        const double det = alpha[i] * delta[i] - beta[i] * gamma[i];
        const double scale = (std::abs(alpha[i]) + std::abs(beta[i])) * (std::abs(gamma[i]) + std::abs(delta[i]));
        require(std::abs(det) > 1e-12 * scale && scale > 0, ErrorKind::Usage,
                "reparametrize: singular coefficient matrix at sample " + std::to_string(i));
        out.Z1.col(i) = alpha[i] * g.Z1.col(i) + beta[i] * g.Zn3.col(i);
        out.Zn3.col(i) = gamma[i] * g.Z1.col(i) + delta[i] * g.Zn3.col(i);
    }
    return out;
}

ProjectionPair projections(const LegendreGrid& g) {
    const int n = g.n;
    const long N = g.size();
    const int last = n + 2;
    ProjectionPair p;
    p.f = Mat::Zero(n + 1, N);
    p.xi = Mat::Zero(n + 1, N);
    p.F = Mat::Zero(n, N);
    p.eta = Mat::Zero(n, N);
    p.spherical_valid.assign(N, 0);
    p.euclidean_valid.assign(N, 0);
    for (long i = 0; i < N; ++i) {
        const Vec a = g.Z1.col(i), b = g.Zn3.col(i);
        const Vec point = b[last] * a - a[last] * b;
        const Vec great = b[0] * a - a[0] * b;
        const double pn = point.norm(), gn = great.norm();
        if (pn == 0 || gn == 0 || std::abs(point[0]) <= kBranchCut * pn || std::abs(great[last]) <= kBranchCut * gn)
            continue;
        const Vec ps = point / point[0];
        p.f.col(i) = ps.segment(1, n + 1);
        p.xi.col(i) = (great / great[last]).segment(1, n + 1);
        p.spherical_valid[i] = 1;
        const double s = ps[0] + ps[1];
        if (std::abs(s) <= kBranchCut * ps.norm()) {
            p.improper_count++;
            continue;
        }
        const Vec plane = (b[0] + b[1]) * a - (a[0] + a[1]) * b;
        if (std::abs(plane[last]) <= kBranchCut * plane.norm()) continue;
        p.F.col(i) = ps.segment(2, n) / s;
        p.eta.col(i) = (plane / plane[last]).segment(2, n);
        p.euclidean_valid[i] = 1;
    }
    return p;
}

LegendreGrid apply(const LieTransform& t, const LegendreGrid& g) {
    require(t.n == g.n, ErrorKind::Usage, "apply: transform and grid dimensions differ");
    LegendreGrid out = g;
    out.Z1 = t.matrix * g.Z1;
    out.Zn3 = t.matrix * g.Zn3;
    return out;
}

LegendreGrid parallel_submanifold(const LegendreGrid& g, double t) { return apply(parallel_transform(g.n, t), g); }

namespace {

double sigma_ratio(const Mat& df, const Mat& dxi, double t, double scale) {
    const Mat m = std::cos(t) * df + std::sin(t) * dxi;
    Eigen::JacobiSVD<Mat> svd(m);
    const Vec& s = svd.singularValues();
    return s[s.size() - 1] / scale;
}

}  // namespace

std::vector<double> singular_radii(const ProjectionPair& p, const ParamGrid& grid, long idx, int resolution,
                                   double threshold) {
    require(resolution >= 64, ErrorKind::Usage, "singular_radii needs at least 64 scan points");
    require(idx >= 0 && idx < grid.size(), ErrorKind::Usage, "singular_radii: sample index out of range");
    require(p.spherical_valid[idx], ErrorKind::Degenerate, "singular_radii: no spherical projection at this sample");
    const Mat df = fd_jacobian(p.f, grid, idx);
    const Mat dxi = fd_jacobian(p.xi, grid, idx);
    Eigen::JacobiSVD<Mat> s1(df), s2(dxi);
    const double scale = std::max(s1.singularValues()[0], s2.singularValues()[0]);
    require(scale > 0, ErrorKind::Degenerate, "singular_radii: vanishing differentials");
    const double pi = std::numbers::pi;
    std::vector<double> vals(resolution);
    for (int j = 0; j < resolution; ++j) vals[j] = sigma_ratio(df, dxi, pi * j / resolution, scale);
    std::vector<double> out;
    const double gr = (std::sqrt(5.0) - 1) / 2;
    for (int j = 0; j < resolution; ++j) {
        const double prev = vals[(j + resolution - 1) % resolution], next = vals[(j + 1) % resolution];
        if (!(vals[j] <= prev && vals[j] < next)) continue;
        double a = pi * (j - 1) / resolution, b = pi * (j + 1) / resolution;
        double c = b - gr * (b - a), d = a + gr * (b - a);
        double fc = sigma_ratio(df, dxi, c, scale), fd = sigma_ratio(df, dxi, d, scale);
        while (b - a > 1e-13) {
            if (fc < fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - gr * (b - a);
                fc = sigma_ratio(df, dxi, c, scale);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + gr * (b - a);
                fd = sigma_ratio(df, dxi, d, scale);
            }
        }
        const double t = 0.5 * (a + b);
        if (sigma_ratio(df, dxi, t, scale) > threshold) continue;
        double tm = std::fmod(t, pi);
        if (tm < 0) tm += pi;
        bool dup = false;
        for (double o : out) {
            const double dd = std::abs(o - tm);
            if (std::min(dd, pi - dd) < 1e-6) dup = true;
        }
        if (!dup) out.push_back(tm);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<double> singular_radii(const LegendreGrid& g, long idx, int resolution, double threshold) {
    return singular_radii(projections(g), g.grid, idx, resolution, threshold);
}

}  // namespace liesphere
