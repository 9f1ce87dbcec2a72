#pragma once

#include <array>
#include <cmath>

#include "hypflow/errors.hpp"

namespace hypflow {

// Tolerances shared by the geometry kernel and its callers.
inline constexpr double kAdmissibleTol = 1e-12;   // triangle-inequality margin
inline constexpr double kOrthogonalityTol = 1e-9; // orthocircle residuals
inline constexpr double kAngleTol = 1e-8;         // angle comparisons

// Vector in the Minkowski space R^{2,1}; <a,b> = -a.t*b.t + a.x*b.x + a.y*b.y.
// Points of the hyperbolic plane sit on the hyperboloid <p,p> = -1, t > 0.
// A circle is stored as the vector f with circle = {x : <x,f> = -1}; for a
// distance circle of center z and radius rho this is f = z/cosh(rho), and the
// same representation continues through horocycles and hypercycles.
struct Mink3 {
    double t = 0, x = 0, y = 0;
};

inline double mdot(const Mink3& a, const Mink3& b) {
    return -a.t * b.t + a.x * b.x + a.y * b.y;
}

inline Mink3 operator+(const Mink3& a, const Mink3& b) { return {a.t + b.t, a.x + b.x, a.y + b.y}; }
inline Mink3 operator-(const Mink3& a, const Mink3& b) { return {a.t - b.t, a.x - b.x, a.y - b.y}; }
inline Mink3 operator*(double s, const Mink3& a) { return {s * a.t, s * a.x, s * a.y}; }

// Lorentzian cross product: <mcross(a,b), a> = <mcross(a,b), b> = 0.
inline Mink3 mcross(const Mink3& a, const Mink3& b) {
    // J * (a x b) with J = diag(-1,1,1)
    return {-(a.x * b.y - a.y * b.x), a.y * b.t - a.t * b.y, a.t * b.x - a.x * b.t};
}

// acosh with full relative accuracy near 1.
inline double acosh_stable(double x) {
    const double u = x - 1.0;
    if (u < 0) {
        if (u > -1e-14) return 0.0; // round-off below the branch point
        throw DegenerateTriangle("acosh argument below 1");
    }
    if (u < 0.5) return std::log1p(u + std::sqrt(u * (2.0 + u)));
    return std::acosh(x);
}

// distance between two hyperboloid points
inline double hyp_distance(const Mink3& p, const Mink3& q) { return acosh_stable(-mdot(p, q)); }

struct TriangleLengths {
    double a = 0, b = 0, c = 0; // any fixed labelling of the three sides
};

// Side lengths of a geodesic hinge: faces {i,j,k} and {j,i,l} share edge {ij}.
struct HingeLengths {
    double ij = 0, ik = 0, jk = 0, il = 0, jl = 0;
};

struct HingeEmbedding {
    Mink3 pi, pj, pk, pl; // pk has y > 0, pl has y < 0
};

bool triangle_admissible(double a, double b, double c, double tol = kAdmissibleTol);

// center distance of two vertex-circles from their inversive distance
double length_from_inversive(double r_i, double r_j, double inversive);
double inversive_from_length(double r_i, double r_j, double length);

// interior angle opposite side c (adjacent sides a, b)
double interior_angle(double a, double b, double c);
// hyperbolic area via the angle defect pi - sum of angles
double triangle_area(double a, double b, double c);

// Isometric hinge embedding: pi=(1,0,0), pj on the x-axis geodesic, k above,
// l below. Throws DegenerateTriangle if either face is inadmissible.
HingeEmbedding embed_hinge(const HingeLengths& len);

// Face circle simultaneously orthogonal to the three vertex-circles
// (p_m, r_m), as the vector f with <f, p_m/cosh(r_m)> = -1.
Mink3 orthocircle(const Mink3& p_i, const Mink3& p_j, const Mink3& p_k,
                  double r_i, double r_j, double r_k);

// cos of the interior intersection angle of circle f with the geodesic
// through pa, pb; "interior" = measured on the side of the opposite point.
// Continues analytically outside [-1,1] when circle and edge do not meet.
double edge_circle_cos(const Mink3& f, const Mink3& pa, const Mink3& pb, const Mink3& opposite);

// Monotone continuous extension of acos: acos on [-1,1], -acosh(x) for x > 1,
// pi + acosh(-x) for x < -1. The Delaunay predicate consumes these values.
double angle_from_cos_extended(double x);

// interior intersection angle of circle f and edge (pa,pb), continued
double edge_circle_angle(const Mink3& f, const Mink3& pa, const Mink3& pb, const Mink3& opposite);

// cos of the intersection angles of the face circle with the three edges of a
// single decorated face, without an explicit embedding. Returns values for
// edges {ij}, {jk}, {ki} in that order.
std::array<double, 3> face_edge_circle_cosines(double l_ij, double l_jk, double l_ki,
                                               double r_i, double r_j, double r_k);

// length of the new edge {kl} created by flipping the hinge diagonal {ij}
double flip_length(const HingeLengths& len);

} // namespace hypflow
