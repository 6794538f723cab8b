#include "liesphere/lie_coords.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace liesphere;

namespace {

Vec vec(std::initializer_list<double> xs) {
    Vec v(static_cast<long>(xs.size()));
    long i = 0;
    for (double x : xs) v[i++] = x;
    return v;
}

bool same_class(const Vec& a, const Vec& b, double tol = 1e-12) { return projective_distance(a, b) <= tol; }

}  // namespace

TEST_CASE("Euclidean objects encode to the standard Lie coordinates") {
    CHECK(same_class(euclidean_to_lie(EuclideanObject::point(vec({0, 0, 0}))).coords, vec({1, 1, 0, 0, 0, 0})));
    CHECK(same_class(euclidean_to_lie(EuclideanObject::sphere(vec({0, 0, 0}), 1)).coords, vec({0, 1, 0, 0, 0, 1})));
    CHECK(same_class(euclidean_to_lie(EuclideanObject::plane(vec({1, 0, 0}), 0)).coords, vec({0, 0, 1, 0, 0, 1})));
    CHECK(same_class(euclidean_to_lie(EuclideanObject::improper(3)).coords, vec({1, -1, 0, 0, 0, 0})));
}

TEST_CASE("decoding recovers the object type and parameters") {
    const auto lie = MetricSignature::lie(3);
    CHECK(lie_to_euclidean({vec({1, -1, 0, 0, 0, 0}), lie}).kind == EuclideanObject::Kind::ImproperPoint);
    const auto s = lie_to_euclidean({vec({0, 1, 0, 0, 0, 1}), lie});
    CHECK(s.kind == EuclideanObject::Kind::Sphere);
    CHECK(s.vec.norm() < 1e-15);
    CHECK(s.scalar == doctest::Approx(1));
    const auto p = lie_to_euclidean({vec({0, 0, 1, 0, 0, 1}), lie});
    CHECK(p.kind == EuclideanObject::Kind::Plane);
    CHECK((p.vec - vec({1, 0, 0})).norm() < 1e-15);
    CHECK(p.scalar == doctest::Approx(0));
    CHECK_THROWS_AS(lie_to_euclidean({vec({0, 1, 0, 0, 0, 0}), lie}), Error);
}

TEST_CASE("spherical spheres") {
    const Vec p = vec({0, 1, 0, 0});
    CHECK(same_class(spherical_to_lie(make_spherical_sphere(p, 0)).coords, vec({1, 0, 1, 0, 0, 0})));
    CHECK(same_class(spherical_to_lie(make_spherical_sphere(p, std::numbers::pi / 2)).coords, vec({0, 0, 1, 0, 0, 1})));
    const double h = std::sqrt(0.5);
    CHECK(same_class(spherical_to_lie(make_spherical_sphere(p, std::numbers::pi / 4)).coords,
                     vec({h, 0, 1, 0, 0, h})));

    const auto lie = MetricSignature::lie(3);
    auto s = lie_to_spherical({vec({0, 0, 1, 0, 0, 1}), lie});
    CHECK(s.radius == doctest::Approx(std::numbers::pi / 2));
    CHECK((s.center - p).norm() < 1e-15);
    s = lie_to_spherical({vec({-h, 0, -1, 0, 0, -h}), lie});
    CHECK(s.radius == doctest::Approx(std::numbers::pi / 4));
    CHECK((s.center - p).norm() < 1e-15);
    CHECK_THROWS_AS(make_spherical_sphere(vec({1, 1, 0, 0}), 0.1), Error);
}

TEST_CASE("Moebius coordinates and orthogonality") {
    const auto m = moebius_coords(EuclideanObject::sphere(vec({0, 0, 0}), 1));
    CHECK((m.coords - vec({0, 1, 0, 0, 0})).norm() < 1e-15);
    CHECK(inner(m.coords, m.coords, m.metric) == doctest::Approx(1));
    CHECK((moebius_coords(EuclideanObject::plane(vec({1, 0, 0}), 2)).coords - vec({2, -2, 1, 0, 0})).norm() < 1e-15);
    CHECK(moebius_coords(make_spherical_sphere(vec({0, 1, 0, 0}), std::numbers::pi / 2)).coords[0] ==
          doctest::Approx(0).epsilon(1e-15));

    const auto s0 = moebius_coords(EuclideanObject::sphere(vec({0, 0, 0}), 1));
    CHECK(orthogonal_spheres(s0, moebius_coords(EuclideanObject::sphere(vec({std::sqrt(2.0), 0, 0}), 1))));
    CHECK(orthogonal_spheres(s0, moebius_coords(EuclideanObject::plane(vec({0, 1, 0}), 0))));
    CHECK_FALSE(orthogonal_spheres(s0, moebius_coords(EuclideanObject::sphere(vec({3, 0, 0}), 1))));
}

TEST_CASE("stereographic projection") {
    CHECK((stereographic(vec({0, 0})) - vec({1, 0, 0})).norm() < 1e-15);
    const Vec u = vec({0.6, 0.8});
    CHECK((stereographic(u) - vec({0, 0.6, 0.8})).norm() < 1e-15);
    const Vec w = vec({3, -2});
    CHECK((inverse_stereographic(stereographic(w)) - w).norm() < 1e-13);
    CHECK(stereographic(w).norm() == doctest::Approx(1));
}

TEST_CASE("quadric membership") {
    const auto lie = MetricSignature::lie(3);
    CHECK(on_quadric(euclidean_to_lie(EuclideanObject::sphere(vec({0.3, -1, 2}), -0.7))));
    CHECK_FALSE(on_quadric({vec({0, 1, 0, 0, 0, 0}), lie}));
    CHECK(on_quadric({vec({1, 1, 0, 0, 0, 0}), lie}));
}

TEST_CASE("oriented contact matches the metric conditions") {
    const auto k = [](const Vec& c, double r) { return euclidean_to_lie(EuclideanObject::sphere(c, r)); };
    CHECK(oriented_contact(k(vec({0, 0, 0}), 1), k(vec({3, 0, 0}), -2)));
    CHECK_FALSE(oriented_contact(k(vec({0, 0, 0}), 1), k(vec({3, 0, 0}), 2)));
    CHECK(oriented_contact(k(vec({0, 0, 0}), 1), euclidean_to_lie(EuclideanObject::plane(vec({1, 0, 0}), -1))));
    // Internally tangent spheres with equal orientation.
    CHECK(oriented_contact(k(vec({0, 0, 0}), 2), k(vec({1, 0, 0}), 1)));
    CHECK_FALSE(oriented_contact(k(vec({0, 0, 0}), 2), k(vec({1, 0, 0}), -1)));
}

TEST_CASE("parabolic pencil through a contact element") {
    const Vec p = vec({0, 1, 0, 0});
    const Vec xi = vec({0, 0, 1, 0});
    const auto line = pencil_from_contact_element(make_contact_element(p, xi));
    auto s = lie_to_spherical(pencil_point(line, 0));
    CHECK((s.center - p).norm() < 1e-15);
    CHECK(s.radius == doctest::Approx(0));
    s = lie_to_spherical(pencil_point(line, std::numbers::pi / 2));
    CHECK((s.center - xi).norm() < 1e-15);
    CHECK(s.radius == doctest::Approx(std::numbers::pi / 2));
    s = lie_to_spherical(pencil_point(line, std::numbers::pi / 4));
    CHECK((s.center - (p + xi) / std::sqrt(2.0)).norm() < 1e-15);
    CHECK(s.radius == doctest::Approx(std::numbers::pi / 4));
}

TEST_CASE("contact element recovery from any basis of the line") {
    const Vec p = vec({0.6, 0.8, 0, 0});
    const Vec xi = vec({0, 0, 0.6, 0.8});
    const auto line = pencil_from_contact_element(make_contact_element(p, xi));
    auto check_line = [&](const PencilLine& l) {
        const auto ce = line_to_contact_element(l);
        CHECK((ce.point - p).norm() < 1e-12);
        CHECK((ce.normal - xi).norm() < 1e-12);
    };
    check_line(line);
    const auto lie = line.k1.metric;
    check_line({{2 * line.k1.coords - 3 * line.k2.coords, lie}, {0.5 * line.k1.coords + line.k2.coords, lie}});
    check_line({line.k1, pencil_point(line, 0.9)});
}

TEST_CASE("random round trips") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> nd;
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + trial % 5;
        Vec c(n);
        for (int i = 0; i < n; ++i) c[i] = nd(rng);
        const double r = nd(rng);
        const auto back = lie_to_euclidean(euclidean_to_lie(EuclideanObject::sphere(c, r)));
        REQUIRE(back.kind == EuclideanObject::Kind::Sphere);
        CHECK((back.vec - c).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(std::abs(back.scalar - r) < 1e-12);
    }
}
