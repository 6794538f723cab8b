#include "liesphere/constructions.hpp"

#include "liesphere/curvature.hpp"
#include "liesphere/lie_coords.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace liesphere {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

ParamGrid periodic_axis(int samples) { return ParamGrid({samples}, {0.0}, {kTwoPi}, {true}); }

ParamGrid interval_axes(int count, int samples, double lo, double hi) {
    return ParamGrid(std::vector<int>(count, samples), std::vector<double>(count, lo), std::vector<double>(count, hi),
                     std::vector<bool>(count, false));
}

int largest_axis(const ParamGrid& g) { return *std::max_element(g.dims.begin(), g.dims.end()); }

Vec angles_to_sphere(const std::vector<double>& ang) {
    const int k = static_cast<int>(ang.size());
    Vec x(k + 1);
    double prod = 1;
    for (int i = 0; i < k - 1; ++i) {
        x[i] = prod * std::cos(ang[i]);
        prod *= std::sin(ang[i]);
    }
    x[k - 1] = prod * std::cos(ang[k - 1]);
    x[k] = prod * std::sin(ang[k - 1]);
    return x;
}

// Quaternions as 4-vectors (scalar first).
Eigen::Vector4d qmul(const Eigen::Vector4d& a, const Eigen::Vector4d& b) {
    return {a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3], a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
            a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1], a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]};
}

Eigen::Vector4d qconj(const Eigen::Vector4d& a) { return {a[0], -a[1], -a[2], -a[3]}; }

Eigen::Vector4d qexp(int axis, double angle) {
    Eigen::Vector4d q = Eigen::Vector4d::Zero();
    q[0] = std::cos(angle);
    q[axis] = std::sin(angle);
    return q;
}

void require_euclidean_hypersurface(const HypersurfaceSample& M, const char* what) {
    check_sample(M);
    require(M.ambient == Ambient::Euclidean, ErrorKind::Usage, std::string(what) + ": needs a Euclidean sample");
    require(M.grid.axes() == M.n - 1, ErrorKind::Usage, std::string(what) + ": needs a hypersurface (n-1 axes)");
}

// Largest |kappa| and smallest |kappa| over all samples.
std::pair<double, double> curvature_range(const HypersurfaceSample& M) {
    double lo = kInfinity, hi = 0;
    for (long i = 0; i < M.size(); ++i) {
        const Vec k = principal_curvatures(M, i);
        lo = std::min(lo, k.cwiseAbs().minCoeff());
        hi = std::max(hi, k.cwiseAbs().maxCoeff());
    }
    return {lo, hi};
}

}  // namespace

namespace {

HypersurfaceSample sample_torus(double a, double b, ParamGrid grid) {
    require(a > b && b > 0, ErrorKind::Usage, "torus: needs a > b > 0");
    HypersurfaceSample s;
    s.grid = std::move(grid);
    s.ambient = Ambient::Euclidean;
    s.n = 3;
    s.points.resize(3, s.grid.size());
    s.normals.resize(3, s.grid.size());
    for (long i = 0; i < s.grid.size(); ++i) {
        const auto c = s.grid.coords(i);
        const double cu = std::cos(c[0]), su = std::sin(c[0]), cv = std::cos(c[1]), sv = std::sin(c[1]);
        s.points.col(i) << (a + b * cv) * cu, (a + b * cv) * su, b * sv;
        s.normals.col(i) << -cv * cu, -cv * su, -sv;
    }
    return s;
}

}  // namespace

HypersurfaceSample torus_patch(double a, double b, double u0, double u1, double v0, double v1, int nu, int nv) {
    return sample_torus(a, b, ParamGrid({nu, nv}, {u0, v0}, {u1, v1}, {false, false}));
}

HypersurfaceSample torus(double a, double b, int nu, int nv) {
    return sample_torus(a, b, ParamGrid({nu, nv}, {0.0, 0.0}, {kTwoPi, kTwoPi}, {true, true}));
}

Mat sphere_points(int k, const ParamGrid& grid) {
    require(k >= 1 && grid.axes() == k, ErrorKind::Usage, "sphere chart: needs k axes for S^k");
    Mat x(k + 1, grid.size());
    for (long i = 0; i < grid.size(); ++i) x.col(i) = angles_to_sphere(grid.coords(i));
    return x;
}

SphereChart sphere_chart(int k, int resolution, double margin) {
    require(k >= 1, ErrorKind::Usage, "sphere chart: k >= 1");
    require(margin > 0 && margin < std::numbers::pi / 2, ErrorKind::Usage, "sphere chart: margin out of range");
    std::vector<int> dims(k, resolution);
    std::vector<double> lo(k, margin), hi(k, std::numbers::pi - margin);
    std::vector<bool> per(k, false);
    lo[k - 1] = 0;
    hi[k - 1] = kTwoPi;
    per[k - 1] = true;
    ParamGrid g(dims, lo, hi, per);
    return {g, sphere_points(k, g)};
}

HypersurfaceSample product_spheres(int p, int q, double r, double s, int resolution) {
    require(p >= 1 && q >= 1, ErrorKind::Usage, "product_spheres: p, q >= 1");
    require(r > 0 && s > 0 && std::abs(r * r + s * s - 1) <= 1e-12, ErrorKind::Usage,
            "product_spheres: radii must satisfy r^2 + s^2 = 1");
    const SphereChart cx = sphere_chart(p, resolution), cy = sphere_chart(q, resolution);
    HypersurfaceSample out;
    out.grid = product(cx.grid, cy.grid);
    out.ambient = Ambient::Spherical;
    out.n = p + q + 1;
    const long ny = cy.grid.size();
    out.points.resize(out.n + 1, out.grid.size());
    out.normals.resize(out.n + 1, out.grid.size());
    for (long i = 0; i < out.grid.size(); ++i) {
        const auto x = cx.points.col(i / ny);
        const auto y = cy.points.col(i % ny);
        out.points.col(i) << r * x, s * y;
        out.normals.col(i) << -s * x, r * y;
    }
    return out;
}

HypersurfaceSample focal_submanifold(int p, int q, int resolution) {
    require(p >= 1 && q >= 1, ErrorKind::Usage, "cyclide: p, q >= 1");
    const SphereChart cu = sphere_chart(p, resolution), cv = sphere_chart(q, resolution);
    HypersurfaceSample out;
    out.grid = product(cu.grid, cv.grid);
    out.ambient = Ambient::Spherical;
    out.n = p + q + 1;
    const long nv = cv.grid.size();
    out.points = Mat::Zero(out.n + 1, out.grid.size());
    out.normals = Mat::Zero(out.n + 1, out.grid.size());
    for (long i = 0; i < out.grid.size(); ++i) {
        out.points.col(i).head(q + 1) = cv.points.col(i % nv);
        out.normals.col(i).tail(p + 1) = cu.points.col(i / nv);
    }
    return out;
}

LegendreGrid focal_lift(int p, int q, int resolution) {
    return lift_sphere_submanifold(focal_submanifold(p, q, resolution));
}

LegendreGrid cyclide_model(int p, int q, int resolution) {
    const HypersurfaceSample f = focal_submanifold(p, q, resolution);
    const int n = f.n;
    Mat k1 = Mat::Zero(n + 3, f.size()), k2 = Mat::Zero(n + 3, f.size());
    k1.row(0).setOnes();
    k1.middleRows(1, n + 1) = f.points;
    k2.middleRows(1, n + 1) = f.normals;
    k2.row(n + 2).setOnes();
    return make_legendre_grid(n, f.grid, std::move(k1), std::move(k2));
}

HypersurfaceSample pinkall_construct(PinkallKind kind, const HypersurfaceSample& M, const PinkallOptions& opt) {
    require_euclidean_hypersurface(M, "construction");
    const int n = M.n;
    const int samples = opt.samples > 0 ? opt.samples : largest_axis(M.grid);
    HypersurfaceSample W;
    W.ambient = Ambient::Euclidean;
    const long nm = M.size();

    switch (kind) {
        case PinkallKind::Cylinder: {
            const int m = opt.multiplicity;
            require(m >= 1, ErrorKind::Usage, "cylinder: multiplicity >= 1");
            require(opt.extent > 0, ErrorKind::Usage, "cylinder: extent > 0");
            const ParamGrid line = interval_axes(m, samples, -opt.extent, opt.extent);
            W.grid = product(M.grid, line);
            W.n = n + m;
            W.points = Mat::Zero(W.n, W.grid.size());
            W.normals = Mat::Zero(W.n, W.grid.size());
            for (long i = 0; i < W.grid.size(); ++i) {
                const long im = i / line.size();
                const auto z = line.coords(i % line.size());
                W.points.col(i).head(n) = M.points.col(im);
                for (int j = 0; j < m; ++j) W.points(n + j, i) = z[j];
                W.normals.col(i).head(n) = M.normals.col(im);
            }
            return W;
        }
        case PinkallKind::Revolution: {
            for (long i = 0; i < nm; ++i)
                require(M.points(n - 1, i) + opt.offset > 0, ErrorKind::Domain,
                        "revolution: profile must lie in the open half-space x_n + offset > 0 (sample " +
                            std::to_string(i) + ")");
            const ParamGrid circle = periodic_axis(samples);
            W.grid = product(M.grid, circle);
            W.n = n + 1;
            W.points.resize(W.n, W.grid.size());
            W.normals.resize(W.n, W.grid.size());
            for (long i = 0; i < W.grid.size(); ++i) {
                const long im = i / samples;
                const double phi = circle.coord(0, static_cast<int>(i % samples));
                const double rad = M.points(n - 1, im) + opt.offset, en = M.normals(n - 1, im);
                W.points.col(i) << M.points.col(im).head(n - 1), rad * std::cos(phi), rad * std::sin(phi);
                W.normals.col(i) << M.normals.col(im).head(n - 1), en * std::cos(phi), en * std::sin(phi);
            }
            return W;
        }
        case PinkallKind::Tube: {
            const double eps = opt.epsilon;
            require(eps > 0, ErrorKind::Usage, "tube: radius must be positive");
            std::vector<long> bad;
            for (long i = 0; i < nm; ++i)
                if (eps * principal_curvatures(M, i).cwiseAbs().maxCoeff() >= 1 - 1e-9) bad.push_back(i);
            if (!bad.empty()) {
                std::string list;
                for (size_t j = 0; j < std::min<size_t>(bad.size(), 8); ++j) list += " " + std::to_string(bad[j]);
                fail(ErrorKind::Degenerate, "tube: radius reaches a focal radius (1/|kappa|) at " +
                                                std::to_string(bad.size()) + " samples:" + list);
            }
            const bool full = opt.theta0 == opt.theta1;
            const ParamGrid fiber = full ? periodic_axis(samples)
                                         : ParamGrid({samples}, {opt.theta0}, {opt.theta1}, {false});
            W.grid = product(M.grid, fiber);
            W.n = n + 1;
            W.points.resize(W.n, W.grid.size());
            W.normals.resize(W.n, W.grid.size());
            for (long i = 0; i < W.grid.size(); ++i) {
                const long im = i / samples;
                const double th = fiber.coord(0, static_cast<int>(i % samples));
                const double c = std::cos(th), s = std::sin(th);
                W.points.col(i) << M.points.col(im) + eps * c * M.normals.col(im), eps * s;
                W.normals.col(i) << -c * M.normals.col(im), -s;
            }
            return W;
        }
        case PinkallKind::Cone: {
            require(opt.t1 > opt.t0 && opt.t0 > 0, ErrorKind::Usage, "cone: needs 0 < t0 < t1");
            const ParamGrid ray({samples}, {opt.t0}, {opt.t1}, {false});
            W.grid = product(M.grid, ray);
            W.n = n + 1;
            W.points.resize(W.n, W.grid.size());
            W.normals.resize(W.n, W.grid.size());
            for (long im = 0; im < nm; ++im) {
                const Vec u = M.points.col(im), w = M.normals.col(im);
                const double uu = u.squaredNorm(), uw = u.dot(w), d = 1 + uu;
                const Vec sig = stereographic(u);
                Vec ds(n + 1);
                ds[0] = -4 * uw / (d * d);
                ds.tail(n) = 2 * w / d - 4 * uw * u / (d * d);
                ds.normalize();
                for (int j = 0; j < samples; ++j) {
                    const long i = im * samples + j;
                    W.points.col(i) = ray.coord(0, j) * sig;
                    W.normals.col(i) = ds;
                }
            }
            return W;
        }
    }
    fail(ErrorKind::Usage, "unknown construction kind");
}

HypersurfaceSample invert(const HypersurfaceSample& M, const Vec& center, double radius) {
    check_sample(M);
    require(M.ambient == Ambient::Euclidean, ErrorKind::Usage, "inversion: needs a Euclidean sample");
    require(center.size() == M.n && radius > 0, ErrorKind::Usage, "inversion: bad centre or radius");
    HypersurfaceSample W = M;
    for (long i = 0; i < M.size(); ++i) {
        const Vec d = M.points.col(i) - center;
        const double dd = d.squaredNorm();
        require(dd > 1e-20, ErrorKind::Domain, "inversion: sample at the centre");
        W.points.col(i) = center + radius * radius * d / dd;
        const Vec w = d / std::sqrt(dd);
        const Vec nu = M.normals.col(i);
        W.normals.col(i) = nu - 2 * nu.dot(w) * w;
    }
    return W;
}

HypersurfaceSample multiplicity_example(const std::vector<int>& m, int resolution, std::uint64_t seed) {
    require(m.size() >= 2, ErrorKind::Usage, "multiplicity_example: needs at least two multiplicities");
    for (int k : m) require(k >= 1, ErrorKind::Usage, "multiplicity_example: multiplicities must be >= 1");
    HypersurfaceSample M;
    if (m[0] == 1 && m[1] == 1) {
        M = torus_patch(2, 1, 0, 0.8, -0.6, 0.6, resolution, resolution);
    } else {
        // Cap of S^{m1} times a square of R^{m2}.
        const int p = m[0], q = m[1];
        ParamGrid cap(std::vector<int>(p, resolution), std::vector<double>(p, 1.2), std::vector<double>(p, 1.9),
                      std::vector<bool>(p, false));
        if (p == 1) cap = ParamGrid({resolution}, {-0.35}, {0.35}, {false});
        const Mat x = sphere_points(p, cap);
        const ParamGrid flat = interval_axes(q, resolution, -0.5, 0.5);
        M.grid = product(cap, flat);
        M.ambient = Ambient::Euclidean;
        M.n = p + 1 + q;
        M.points = Mat::Zero(M.n, M.grid.size());
        M.normals = Mat::Zero(M.n, M.grid.size());
        for (long i = 0; i < M.grid.size(); ++i) {
            const auto z = flat.coords(i % flat.size());
            M.points.col(i).head(p + 1) = x.col(i / flat.size());
            for (int j = 0; j < q; ++j) M.points(p + 1 + j, i) = z[j];
            M.normals.col(i).head(p + 1) = -x.col(i / flat.size());
        }
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    for (size_t k = 2; k < m.size(); ++k) {
        const auto [kmin, kmax] = curvature_range(M);
        if (kmin <= 1e-6 * std::max(kmax, 1.0)) {
            const Vec centroid = M.points.rowwise().mean();
            double diam = 0;
            for (long i = 0; i < M.size(); ++i) diam = std::max(diam, 2 * (M.points.col(i) - centroid).norm());
            Vec dir = M.normals.rowwise().mean();
            dir.normalize();
            bool ok = false;
            for (int attempt = 0; attempt < 8 && !ok; ++attempt) {
                Vec c = centroid + 3 * diam * dir;
                if (attempt > 0)
                    for (int j = 0; j < c.size(); ++j) c[j] += 0.5 * diam * gauss(rng);
                const HypersurfaceSample inv = invert(M, c);
                const auto [lo, hi] = curvature_range(inv);
                if (lo > 1e-3 * hi) {
                    M = inv;
                    ok = true;
                }
            }
            require(ok, ErrorKind::Analysis,
                    "multiplicity_example: no inversion found that keeps every principal curvature nonzero");
        }
        PinkallOptions opt;
        opt.multiplicity = m[k];
        opt.samples = resolution;
        opt.extent = 0.5;
        M = pinkall_construct(PinkallKind::Cylinder, M, opt);
    }
    return M;
}

Vec hopf_map(const Vec& q) {
    require(q.size() == 8, ErrorKind::Usage, "hopf_map: needs a vector of R^8");
    const Eigen::Vector4d q1 = q.head<4>(), q2 = q.tail<4>();
    Vec w(5);
    w.head(4) = 2 * qmul(q1, qconj(q2));
    w[4] = q1.squaredNorm() - q2.squaredNorm();
    return w;
}

HypersurfaceSample hopf_preimage_sample(const HypersurfaceSample& W, int fiber_samples) {
    check_sample(W);
    require(W.ambient == Ambient::Spherical && W.n == 4 && W.grid.axes() == 3, ErrorKind::Usage,
            "hopf_preimage: needs a hypersurface sample in S^4");
    require(fiber_samples >= 3, ErrorKind::Usage, "hopf_preimage: at least 3 samples per fiber axis");
    const ParamGrid fiber({fiber_samples, fiber_samples, fiber_samples}, {0, 0, 0}, {kTwoPi, kTwoPi, kTwoPi},
                          {true, true, true});
    HypersurfaceSample M;
    M.grid = product(W.grid, fiber);
    M.ambient = Ambient::Spherical;
    M.n = 7;
    M.points.resize(8, M.grid.size());
    M.normals.resize(8, M.grid.size());
    const long nf = fiber.size();
    for (long iw = 0; iw < W.size(); ++iw) {
        const Vec w = W.points.col(iw), nu = W.normals.col(iw);
        require(w[4] > -1 + 1e-6, ErrorKind::Domain, "hopf_preimage: base sample too close to the section's pole");
        // Section: q1 real, q2 = conj(w_H) / (2 q1).
        const double a = std::sqrt(0.5 * (1 + w[4]));
        const Eigen::Vector4d wh = w.head<4>();
        const Eigen::Vector4d s1(a, 0, 0, 0);
        const Eigen::Vector4d s2 = qconj(wh) / (2 * a);
        const Eigen::Vector4d nh = nu.head<4>();
        for (long jf = 0; jf < nf; ++jf) {
            const auto c = fiber.coords(jf);
            const Eigen::Vector4d u = qmul(qmul(qexp(1, c[0]), qexp(2, c[1])), qexp(3, c[2]));
            const Eigen::Vector4d q1 = qmul(s1, u), q2 = qmul(s2, u);
            const long i = iw * nf + jf;
            M.points.col(i) << q1, q2;
            // Horizontal lift: gradient of <h(q), nu>.
            Vec nrm(8);
            nrm << qmul(nh, q2) + nu[4] * q1, qmul(qconj(nh), q1) - nu[4] * q2;
            M.normals.col(i) = nrm.normalized();
        }
    }
    return M;
}

LegendreGrid hopf_preimage(const HypersurfaceSample& W, int fiber_samples) {
    return lift_sphere_hypersurface(hopf_preimage_sample(W, fiber_samples));
}

HypersurfaceSample hopf_base_patch(double r, int resolution, double spacing, double a0, double phi0, double psi0) {
    require(r > 0 && r < 1, ErrorKind::Usage, "hopf base: radius must be in (0, 1)");
    require(resolution >= 5 && spacing > 0, ErrorKind::Usage, "hopf base: resolution >= 5 and spacing > 0");
    const double s = std::sqrt(1 - r * r);
    const double half = 0.5 * spacing * (resolution - 1);
    HypersurfaceSample W;
    W.grid = ParamGrid({resolution, resolution, resolution}, {a0 - half, phi0 - half, psi0 - half},
                       {a0 + half, phi0 + half, psi0 + half}, {false, false, false}, 4);
    W.ambient = Ambient::Spherical;
    W.n = 4;
    W.points.resize(5, W.grid.size());
    W.normals.resize(5, W.grid.size());
    for (long i = 0; i < W.grid.size(); ++i) {
        const auto c = W.grid.coords(i);
        const Vec x = Eigen::Vector2d(std::cos(c[0]), std::sin(c[0]));
        const Vec y = Eigen::Vector3d(std::cos(c[1]), std::sin(c[1]) * std::cos(c[2]), std::sin(c[1]) * std::sin(c[2]));
        W.points.col(i) << r * x, s * y;
        W.normals.col(i) << -s * x, r * y;
    }
    return W;
}

LieTransform moebius_boost(int n, double t) {
    LieTransform T = identity_transform(n);
    T.matrix(0, 0) = T.matrix(1, 1) = std::cosh(t);
    T.matrix(0, 1) = T.matrix(1, 0) = std::sinh(t);
    return T;
}

HypersurfaceSample transform_sample(const HypersurfaceSample& W, const LieTransform& T) {
    require(W.ambient == Ambient::Spherical, ErrorKind::Usage, "transform_sample: needs a spherical sample");
    LiftOptions lo;
    lo.contact_tol = kInfinity;
    const LegendreGrid g = apply(T, lift_sphere_hypersurface(W, lo));
    const ProjectionPair p = projections(g);
    for (long i = 0; i < g.size(); ++i)
        require(p.spherical_valid[i], ErrorKind::Degenerate,
                "transform_sample: no spherical projection at sample " + std::to_string(i));
    HypersurfaceSample out = W;
    out.points = p.f;
    out.normals = p.xi;
    return out;
}

double revolution_invariant(double r, double a) {
    require(a > 0, ErrorKind::Usage, "revolution_invariant: axis distance must be positive");
    return std::abs(r) / a;
}

}  // namespace liesphere
