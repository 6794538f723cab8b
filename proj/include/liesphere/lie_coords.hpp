#pragma once

#include "liesphere/linalg.hpp"

namespace liesphere {

/// Point, improper point, oriented sphere or oriented plane of R^n.
struct EuclideanObject {
    enum class Kind { Point, ImproperPoint, Sphere, Plane };

    Kind kind = Kind::Point;
    int n = 0;
    Vec vec;            // point u, center p, or unit normal N
    double scalar = 0;  // signed radius r or plane offset h

    static EuclideanObject point(const Vec& u);
    static EuclideanObject improper(int n);
    static EuclideanObject sphere(const Vec& center, double signed_radius);
    static EuclideanObject plane(const Vec& unit_normal, double offset);
};

const char* to_string(EuclideanObject::Kind k);

/// Oriented sphere in S^n with signed spherical radius.
struct SphericalSphere {
    Vec center;  // unit vector in R^{n+1}
    double radius = 0;
};

struct ContactElement {
    Vec point;   // unit vector in R^{n+1}
    Vec normal;  // unit vector orthogonal to point
};

/// Projective line on the Lie quadric spanned by a point sphere and a great sphere.
struct PencilLine {
    ProjectiveVector k1;
    ProjectiveVector k2;
};

constexpr double kBranchCut = 1e-10;
constexpr double kQuadricTol = 1e-9;

ProjectiveVector euclidean_to_lie(const EuclideanObject& obj);
EuclideanObject lie_to_euclidean(const ProjectiveVector& x, double quadric_tol = kQuadricTol);

SphericalSphere make_spherical_sphere(const Vec& center, double radius);
ProjectiveVector spherical_to_lie(const SphericalSphere& s);
SphericalSphere lie_to_spherical(const ProjectiveVector& x, double quadric_tol = kQuadricTol);

/// Lorentz coordinates in R^{n+2} of an unoriented sphere or plane.
ProjectiveVector moebius_coords(const EuclideanObject& obj);
ProjectiveVector moebius_coords(const SphericalSphere& s);
bool orthogonal_spheres(const ProjectiveVector& a, const ProjectiveVector& b, double tol = kQuadricTol);

Vec stereographic(const Vec& u);
Vec inverse_stereographic(const Vec& x);

bool on_quadric(const ProjectiveVector& x, double tol = kQuadricTol);
/// |<k1,k2>| <= tol * |k1| |k2|.
bool oriented_contact(const ProjectiveVector& k1, const ProjectiveVector& k2, double tol = kQuadricTol);

ContactElement make_contact_element(const Vec& point, const Vec& normal);
PencilLine pencil_from_contact_element(const ContactElement& ce);
ContactElement line_to_contact_element(const PencilLine& line, double tol = kQuadricTol);
/// cos t k1 + sin t k2.
ProjectiveVector pencil_point(const PencilLine& line, double t);

}  // namespace liesphere
