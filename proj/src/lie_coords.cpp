#include "liesphere/lie_coords.hpp"

#include <cmath>
#include <numbers>

namespace liesphere {

namespace {

constexpr double kUnitTol = 1e-12;

ProjectiveVector lie_vector(Vec coords) {
    const int n = static_cast<int>(coords.size()) - 3;
    return {std::move(coords), MetricSignature::lie(n)};
}

void require_lie(const ProjectiveVector& x) {
    require(x.coords.size() >= 4 && x.metric == MetricSignature::lie(static_cast<int>(x.coords.size()) - 3),
            ErrorKind::Usage, "expected a vector under the Lie metric");
    require(x.coords.squaredNorm() > 0, ErrorKind::Usage, "zero vector is not a projective point");
}

}  // namespace

EuclideanObject EuclideanObject::point(const Vec& u) {
    require(u.size() >= 1, ErrorKind::Usage, "point needs n >= 1");
    return {Kind::Point, static_cast<int>(u.size()), u, 0.0};
}

EuclideanObject EuclideanObject::improper(int n) {
    require(n >= 1, ErrorKind::Usage, "improper point needs n >= 1");
    return {Kind::ImproperPoint, n, Vec::Zero(n), 0.0};
}

EuclideanObject EuclideanObject::sphere(const Vec& center, double signed_radius) {
    require(center.size() >= 1, ErrorKind::Usage, "sphere needs n >= 1");
    require(signed_radius != 0.0 && std::isfinite(signed_radius), ErrorKind::Usage,
            "sphere radius must be finite and nonzero (use a point for radius zero)");
    return {Kind::Sphere, static_cast<int>(center.size()), center, signed_radius};
}

EuclideanObject EuclideanObject::plane(const Vec& unit_normal, double offset) {
    require(unit_normal.size() >= 1, ErrorKind::Usage, "plane needs n >= 1");
    require(std::abs(unit_normal.norm() - 1.0) <= kUnitTol, ErrorKind::Usage, "plane normal must be a unit vector");
    return {Kind::Plane, static_cast<int>(unit_normal.size()), unit_normal, offset};
}

const char* to_string(EuclideanObject::Kind k) {
    switch (k) {
        case EuclideanObject::Kind::Point: return "point";
        case EuclideanObject::Kind::ImproperPoint: return "improper";
        case EuclideanObject::Kind::Sphere: return "sphere";
        case EuclideanObject::Kind::Plane: return "plane";
    }
    return "?";
}

ProjectiveVector euclidean_to_lie(const EuclideanObject& obj) {
    const int n = obj.n;
    Vec x = Vec::Zero(n + 3);
    switch (obj.kind) {
        case EuclideanObject::Kind::Point: {
            const double uu = obj.vec.squaredNorm();
            x[0] = 0.5 * (1 + uu);
            x[1] = 0.5 * (1 - uu);
            x.segment(2, n) = obj.vec;
            break;
        }
        case EuclideanObject::Kind::ImproperPoint:
            x[0] = 1;
            x[1] = -1;
            break;
        case EuclideanObject::Kind::Sphere: {
            const double pp = obj.vec.squaredNorm(), rr = obj.scalar * obj.scalar;
            x[0] = 0.5 * (1 + pp - rr);
            x[1] = 0.5 * (1 - pp + rr);
            x.segment(2, n) = obj.vec;
            x[n + 2] = obj.scalar;
            break;
        }
        case EuclideanObject::Kind::Plane:
            x[0] = obj.scalar;
            x[1] = -obj.scalar;
            x.segment(2, n) = obj.vec;
            x[n + 2] = 1;
            break;
    }
    return lie_vector(std::move(x));
}

EuclideanObject lie_to_euclidean(const ProjectiveVector& x, double quadric_tol) {
    require_lie(x);
    require(on_quadric(x, quadric_tol), ErrorKind::Domain, "lie_to_euclidean: vector is not on the Lie quadric");
    const Vec& c = x.coords;
    const int n = static_cast<int>(c.size()) - 3;
    const double scale = c.norm();
    const double s = c[0] + c[1];
    const double last = c[n + 2];
    if (std::abs(s) > kBranchCut * scale) {
        if (std::abs(last) <= kBranchCut * scale) return EuclideanObject::point(c.segment(2, n) / s);
        return EuclideanObject::sphere(c.segment(2, n) / s, last / s);
    }
    if (std::abs(last) <= kBranchCut * scale) return EuclideanObject::improper(n);
    Vec normal = c.segment(2, n) / last;
    normal /= normal.norm();
    return EuclideanObject::plane(normal, c[0] / last);
}

SphericalSphere make_spherical_sphere(const Vec& center, double radius) {
    require(std::abs(center.norm() - 1.0) <= kUnitTol, ErrorKind::Usage, "spherical center must be a unit vector");
    require(std::abs(radius) < std::numbers::pi, ErrorKind::Usage, "spherical radius must lie in (-pi, pi)");
    return {center, radius};
}

ProjectiveVector spherical_to_lie(const SphericalSphere& s) {
    const int m = static_cast<int>(s.center.size());
    Vec x(m + 2);
    x[0] = std::cos(s.radius);
    x.segment(1, m) = s.center;
    x[m + 1] = std::sin(s.radius);
    return lie_vector(std::move(x));
}

SphericalSphere lie_to_spherical(const ProjectiveVector& x, double quadric_tol) {
    require_lie(x);
    require(on_quadric(x, quadric_tol), ErrorKind::Domain, "lie_to_spherical: vector is not on the Lie quadric");
    Vec c = x.coords;
    const int m = static_cast<int>(c.size()) - 2;
    const double scale = c.norm();
    SphericalSphere out;
    if (std::abs(c[0]) <= kBranchCut * scale) {
        if (c[m + 1] < 0) c = -c;
        out.radius = std::numbers::pi / 2;
        out.center = c.segment(1, m) / c[m + 1];
    } else {
        if (c[0] < 0) c = -c;
        out.radius = std::atan(c[m + 1] / c[0]);
        out.center = c.segment(1, m) / std::hypot(c[0], c[m + 1]);
    }
    return out;
}

ProjectiveVector moebius_coords(const EuclideanObject& obj) {
    const int n = obj.n;
    Vec x = Vec::Zero(n + 2);
    switch (obj.kind) {
        case EuclideanObject::Kind::Sphere: {
            const double pp = obj.vec.squaredNorm(), rr = obj.scalar * obj.scalar;
            x[0] = 0.5 * (1 + pp - rr);
            x[1] = 0.5 * (1 - pp + rr);
            x.segment(2, n) = obj.vec;
            break;
        }
        case EuclideanObject::Kind::Plane:
            x[0] = obj.scalar;
            x[1] = -obj.scalar;
            x.segment(2, n) = obj.vec;
            break;
        default:
            fail(ErrorKind::Domain, "moebius_coords: points are lightlike and have no sphere coordinates");
    }
    return {std::move(x), MetricSignature::lorentz(n + 2)};
}

ProjectiveVector moebius_coords(const SphericalSphere& s) {
    const int m = static_cast<int>(s.center.size());
    require(std::abs(std::sin(s.radius)) > kBranchCut, ErrorKind::Domain,
            "moebius_coords: a point sphere has no sphere coordinates");
    Vec x(m + 1);
    x[0] = std::cos(s.radius);
    x.tail(m) = s.center;
    return {std::move(x), MetricSignature::lorentz(m + 1)};
}

bool orthogonal_spheres(const ProjectiveVector& a, const ProjectiveVector& b, double tol) {
    require(a.coords.size() == b.coords.size() && a.metric == b.metric &&
                a.metric == MetricSignature::lorentz(static_cast<int>(a.coords.size())),
            ErrorKind::Usage, "orthogonal_spheres: expected Lorentz vectors of equal dimension");
    require(causal_type(a.coords, a.metric, tol) == CausalType::Spacelike &&
                causal_type(b.coords, b.metric, tol) == CausalType::Spacelike,
            ErrorKind::Domain, "orthogonal_spheres: inputs must be spacelike");
    const double ip = inner_unchecked(a.coords, b.coords, a.metric);
    return std::abs(ip) <= tol * a.coords.norm() * b.coords.norm();
}

Vec stereographic(const Vec& u) {
    const double uu = u.squaredNorm();
    Vec x(u.size() + 1);
    x[0] = (1 - uu) / (1 + uu);
    x.tail(u.size()) = 2 * u / (1 + uu);
    return x;
}

Vec inverse_stereographic(const Vec& x) {
    require(x.size() >= 2, ErrorKind::Usage, "inverse_stereographic needs dimension >= 2");
    require(1 + x[0] > 1e-14, ErrorKind::Domain, "inverse_stereographic: the south pole has no preimage");
    return x.tail(x.size() - 1) / (1 + x[0]);
}

bool on_quadric(const ProjectiveVector& x, double tol) {
    return std::abs(inner(x.coords, x.coords, x.metric)) <= tol * x.coords.squaredNorm();
}

bool oriented_contact(const ProjectiveVector& k1, const ProjectiveVector& k2, double tol) {
    require_lie(k1);
    require_lie(k2);
    require(k1.coords.size() == k2.coords.size(), ErrorKind::Usage, "oriented_contact: dimension mismatch");
    require(on_quadric(k1) && on_quadric(k2), ErrorKind::Domain, "oriented_contact: inputs must lie on the quadric");
    return std::abs(inner_unchecked(k1.coords, k2.coords, k1.metric)) <= tol * k1.coords.norm() * k2.coords.norm();
}

ContactElement make_contact_element(const Vec& point, const Vec& normal) {
    require(point.size() == normal.size() && point.size() >= 2, ErrorKind::Usage, "contact element: bad dimensions");
    require(std::abs(point.norm() - 1) <= kUnitTol && std::abs(normal.norm() - 1) <= kUnitTol &&
                std::abs(point.dot(normal)) <= kUnitTol,
            ErrorKind::Usage, "contact element needs orthonormal point and normal");
    return {point, normal};
}

PencilLine pencil_from_contact_element(const ContactElement& ce) {
    make_contact_element(ce.point, ce.normal);
    const int m = static_cast<int>(ce.point.size());
    Vec k1 = Vec::Zero(m + 2), k2 = Vec::Zero(m + 2);
    k1[0] = 1;
    k1.segment(1, m) = ce.point;
    k2.segment(1, m) = ce.normal;
    k2[m + 1] = 1;
    return {lie_vector(std::move(k1)), lie_vector(std::move(k2))};
}

ContactElement line_to_contact_element(const PencilLine& line, double tol) {
    require_lie(line.k1);
    require_lie(line.k2);
    const Vec& a = line.k1.coords;
    const Vec& b = line.k2.coords;
    const auto& g = line.k1.metric;
    const double scale = a.norm() * b.norm();
    require(std::abs(inner_unchecked(a, a, g)) <= tol * a.squaredNorm() &&
                std::abs(inner_unchecked(b, b, g)) <= tol * b.squaredNorm() &&
                std::abs(inner_unchecked(a, b, g)) <= tol * scale,
            ErrorKind::Domain, "line_to_contact_element: the line does not lie on the quadric");
    require(projective_distance(a, b) > tol, ErrorKind::Domain, "line_to_contact_element: degenerate line");
    const int last = static_cast<int>(a.size()) - 1;
    Vec point_sphere = b[last] * a - a[last] * b;
    Vec great_sphere = b[0] * a - a[0] * b;
    require(std::abs(point_sphere[0]) > kBranchCut * point_sphere.norm() &&
                std::abs(great_sphere[last]) > kBranchCut * great_sphere.norm(),
            ErrorKind::Domain, "line_to_contact_element: degenerate line");
    point_sphere /= point_sphere[0];
    great_sphere /= great_sphere[last];
    const int m = last - 1;
    return {point_sphere.segment(1, m), great_sphere.segment(1, m)};
}

ProjectiveVector pencil_point(const PencilLine& line, double t) {
    return {std::cos(t) * line.k1.coords + std::sin(t) * line.k2.coords, line.k1.metric};
}

}  // namespace liesphere
