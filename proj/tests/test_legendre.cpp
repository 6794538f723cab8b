#include "liesphere/constructions.hpp"
#include "liesphere/legendre.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace liesphere;

namespace {

constexpr double kPi = std::numbers::pi;

HypersurfaceSample great_circle(int res) {
    HypersurfaceSample s;
    s.grid = ParamGrid({res}, {0}, {2 * kPi}, {true});
    s.ambient = Ambient::Spherical;
    s.n = 2;
    s.points = Mat::Zero(3, res);
    s.normals = Mat::Zero(3, res);
    for (int i = 0; i < res; ++i) {
        const double t = s.grid.coord(0, i);
        s.points.col(i) << std::cos(t), std::sin(t), 0;
        s.normals.col(i) << 0, 0, 1;
    }
    return s;
}

// Explicit product torus (cos u, sin u, cos v, sin v)/sqrt2 with normal (-cos u, -sin u, cos v, sin v)/sqrt2.
HypersurfaceSample product_torus(int res) {
    HypersurfaceSample s;
    s.grid = ParamGrid({res, res}, {0, 0}, {2 * kPi, 2 * kPi}, {true, true});
    s.ambient = Ambient::Spherical;
    s.n = 3;
    s.points.resize(4, s.grid.size());
    s.normals.resize(4, s.grid.size());
    const double h = std::sqrt(0.5);
    for (long i = 0; i < s.grid.size(); ++i) {
        const auto c = s.grid.coords(i);
        s.points.col(i) << h * std::cos(c[0]), h * std::sin(c[0]), h * std::cos(c[1]), h * std::sin(c[1]);
        s.normals.col(i) << -h * std::cos(c[0]), -h * std::sin(c[0]), h * std::cos(c[1]), h * std::sin(c[1]);
    }
    return s;
}

// Great 2-sphere x4 = 0 in S^3 with constant normal e4.
HypersurfaceSample great_sphere(int res) {
    const SphereChart chart = sphere_chart(2, res);
    HypersurfaceSample s;
    s.grid = chart.grid;
    s.ambient = Ambient::Spherical;
    s.n = 3;
    s.points = Mat::Zero(4, chart.grid.size());
    s.points.topRows(3) = chart.points;
    s.normals = Mat::Zero(4, chart.grid.size());
    s.normals.row(3).setOnes();
    return s;
}

HypersurfaceSample unit_circle_r2(int res) {
    HypersurfaceSample s;
    s.grid = ParamGrid({res}, {0}, {2 * kPi}, {true});
    s.ambient = Ambient::Euclidean;
    s.n = 2;
    s.points.resize(2, res);
    s.normals.resize(2, res);
    for (int i = 0; i < res; ++i) {
        const double t = s.grid.coord(0, i);
        s.points.col(i) << std::cos(t), std::sin(t);
        s.normals.col(i) << std::cos(t), std::sin(t);
    }
    return s;
}

}  // namespace

TEST_CASE("spherical lifts validate") {
    const auto circle = lift(great_circle(32));
    CHECK(circle.n == 2);
    CHECK(validate_legendre(circle).passed());
    const auto t = lift(product_torus(32));
    const auto v = validate_legendre(t);
    CHECK(v.passed());
    CHECK(v.isotropy < 1e-14);
    CHECK(v.orthogonality < 1e-14);
    CHECK(v.contact < 1e-12);
}

TEST_CASE("non-unit spherical input is rejected") {
    auto s = great_circle(16);
    s.points *= 1.1;
    try {
        lift(s);
        FAIL("expected a validation error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Validation);
    }
}

TEST_CASE("Euclidean lifts validate") {
    const auto c = lift(unit_circle_r2(48));
    CHECK(validate_legendre(c).passed());
    CHECK(projections(c).improper_count == 0);
    CHECK(validate_legendre(lift(torus(2, 1, 48, 48))).passed());

    HypersurfaceSample line;
    line.grid = ParamGrid({9}, {-1}, {1}, {false});
    line.n = 2;
    line.points = Mat::Zero(2, 9);
    line.normals = Mat::Zero(2, 9);
    for (int i = 0; i < 9; ++i) line.points(0, i) = line.grid.coord(0, i);
    line.normals.row(1).setOnes();
    CHECK(validate_legendre(lift(line)).passed());
}

TEST_CASE("point sphere as a submanifold with its full normal sphere") {
    const SphereChart chart = sphere_chart(2, 12);
    HypersurfaceSample s;
    s.grid = chart.grid;
    s.ambient = Ambient::Spherical;
    s.n = 3;
    s.points = Mat::Zero(4, chart.grid.size());
    s.points.row(0).setOnes();
    s.normals = Mat::Zero(4, chart.grid.size());
    s.normals.bottomRows(3) = chart.points;
    const auto g = lift_sphere_submanifold(s);
    const auto p = projections(g);
    double spread = 0;
    for (long i = 0; i < g.size(); ++i) spread = std::max(spread, (p.f.col(i) - p.f.col(0)).norm());
    CHECK(spread < 1e-15);
    CHECK(validate_legendre(g).passed());
}

TEST_CASE("validation detects broken conditions") {
    auto g = lift(product_torus(24));
    SUBCASE("dependent maps") {
        g.Zn3 = g.Z1;
        CHECK_FALSE(validate_legendre(g).scalar_ok);
    }
    SUBCASE("normal tilted off the tangent plane") {
        // Rotate xi towards the u-tangent by 0.1 (keeps |xi| = 1 and <f, xi> = 0); this exceeds the default
        // tolerance 1e-6 + 10 h^2 at 128 samples per axis.
        const double eps = 0.1;
        HypersurfaceSample s = product_torus(128);
        for (long i = 0; i < s.size(); ++i) {
            const double u = s.grid.coords(i)[0];
            Vec tu(4);
            tu << -std::sin(u), std::cos(u), 0, 0;
            s.normals.col(i) = std::cos(eps) * s.normals.col(i) + std::sin(eps) * tu;
        }
        LiftOptions lo;
        lo.contact_tol = 1.0;  // accept the input so the validator sees it
        const auto v = validate_legendre(lift_sphere_hypersurface(s, lo));
        CHECK_FALSE(v.contact_ok);
        // |<dZ1(d_u), Zn3>| / (|dZ1(d_u)| |Zn3|) = sin(eps) / sqrt(2) for Zn3 = (0, xi, 1).
        CHECK(v.contact == doctest::Approx(std::sin(eps) / std::sqrt(2.0)).epsilon(1e-3));
    }
}

TEST_CASE("reparametrization") {
    const auto g = lift(product_torus(16));
    const long N = g.size();
    const Vec one = Vec::Ones(N), zero = Vec::Zero(N);
    const auto same = reparametrize(g, one, zero, zero, one);
    CHECK((same.Z1 - g.Z1).norm() == 0);
    const auto swapped = reparametrize(g, zero, one, one, zero);
    CHECK(validate_legendre(swapped).passed());
    CHECK((swapped.Z1 - g.Zn3).norm() == 0);
    const auto scaled = reparametrize(g, 2 * one, zero, zero, one);
    CHECK(validate_legendre(scaled).passed());
    CHECK_THROWS_AS(reparametrize(g, one, one, one, one), Error);
}

TEST_CASE("projections invert the lifts") {
    const auto s = product_torus(16);
    const auto p = projections(lift(s));
    CHECK((p.f - s.points).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((p.xi - s.normals).cwiseAbs().maxCoeff() < 1e-15);

    const auto t = torus(2, 1, 16, 16);
    const auto q = projections(lift(t));
    CHECK((q.F - t.points).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((q.eta - t.normals).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("the cyclide model has a non-immersed spherical projection") {
    const auto g = cyclide_model(1, 1, 12);
    const auto p = projections(g);
    // f is constant along the first (S^p) axis.
    const Mat J = fd_jacobian(p.f, g.grid, 5);
    CHECK(J.col(0).norm() < 1e-12);
    CHECK(J.col(1).norm() > 0.1);
}

TEST_CASE("parallel submanifolds") {
    const auto g = lift(product_torus(16));
    CHECK((parallel_submanifold(g, 0).Z1 - g.Z1).norm() < 1e-15);

    // At t = pi/4 the spherical projection collapses one direction.
    const auto p = projections(parallel_submanifold(g, kPi / 4));
    Eigen::JacobiSVD<Mat> svd(fd_jacobian(p.f, g.grid, 37));
    CHECK(svd.singularValues()[1] < 1e-12 * svd.singularValues()[0]);

    // At t = pi the projections are the antipodal map with the normal reversed.
    const auto q = projections(parallel_submanifold(g, kPi));
    const auto p0 = projections(g);
    CHECK((q.f + p0.f).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((q.xi + p0.xi).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("singular radii") {
    SUBCASE("great sphere: pi/2 only") {
        const auto g = lift(great_sphere(12));
        const auto r = singular_radii(g, 40);
        REQUIRE(r.size() == 1);
        CHECK(r[0] == doctest::Approx(kPi / 2).epsilon(1e-6));
    }
    SUBCASE("product torus: pi/4 and 3pi/4") {
        const auto g = lift(product_torus(32));
        for (long idx : {0L, 77L, 500L}) {
            const auto r = singular_radii(g, idx);
            REQUIRE(r.size() == 2);
            CHECK(r[0] == doctest::Approx(kPi / 4).epsilon(1e-6));
            CHECK(r[1] == doctest::Approx(3 * kPi / 4).epsilon(1e-6));
        }
    }
}

TEST_CASE("Lie transforms act samplewise") {
    const auto g = lift(torus(2, 1, 16, 16));
    const auto t = random_lie_transform(3, 9);
    const auto h = apply(t, g);
    CHECK((h.Z1 - t.matrix * g.Z1).norm() == 0);
    CHECK(validate_legendre(h).passed());
}
